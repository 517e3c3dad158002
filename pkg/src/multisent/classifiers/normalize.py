"""Per-feature min-max normalization fitted on training rows only."""

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NormalizationParams:
    """Maps each feature linearly from [min, max] to [-1, 1].

    Degenerate features (max == min on the training fold) map to 0.
    Fitted once on the training rows and then applied verbatim to any
    row, including test rows outside the training range.
    """
    minimum: np.ndarray
    maximum: np.ndarray

    @classmethod
    def fit(cls, rows: np.ndarray) -> "NormalizationParams":
        rows = np.asarray(rows, dtype=float)
        if rows.ndim != 2 or len(rows) == 0:
            raise ValueError("need a non-empty 2-D array to fit normalization")
        return cls(minimum=rows.min(axis=0), maximum=rows.max(axis=0))

    def apply(self, rows: np.ndarray) -> np.ndarray:
        rows = np.atleast_2d(np.asarray(rows, dtype=float))
        span = self.maximum - self.minimum
        safe = np.where(span == 0, 1.0, span)
        out = 2.0 * (rows - self.minimum) / safe - 1.0
        return np.where(span == 0, 0.0, out)

    def to_dict(self) -> dict:
        return {"minimum": [float(x) for x in self.minimum],
                "maximum": [float(x) for x in self.maximum]}

    @classmethod
    def from_dict(cls, d: dict) -> "NormalizationParams":
        return cls(minimum=np.asarray(d["minimum"], dtype=float),
                   maximum=np.asarray(d["maximum"], dtype=float))
