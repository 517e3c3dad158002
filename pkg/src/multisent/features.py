"""Feature vectors for term-level and document-level classification.

Term-level rows summarize a document's adjusted token scores (counts,
sums, and averages of each sign plus the first and last subjective
scores); document-level rows summarize its sentence scores. Smaller
variants are exact prefixes/projections of the full ones.
"""

import enum
from dataclasses import dataclass

import numpy as np

from .errors import DataError
from .util import atomic_write_text

TERM8_NAMES = ("count_pos", "count_neg", "sum_pos", "sum_neg",
               "avg_pos", "avg_neg", "first_subj", "last_subj")
DOC7_NAMES = ("count_pos_sent", "count_neg_sent", "max_pos", "max_neg",
              "first_score", "middle_score", "last_score")


class Variant(enum.Enum):
    TERM8 = ("term", TERM8_NAMES)
    TERM6 = ("term", TERM8_NAMES[:6])
    DOC7 = ("document", DOC7_NAMES)
    DOC5 = ("document", ("count_pos_sent", "count_neg_sent",
                         "first_score", "middle_score", "last_score"))
    DOC4 = ("document", ("count_pos_sent", "count_neg_sent",
                         "max_pos", "max_neg"))

    @property
    def level(self) -> str:
        return self.value[0]

    @property
    def names(self) -> tuple:
        return self.value[1]

    @property
    def width(self) -> int:
        return len(self.names)

    @classmethod
    def from_level_and_width(cls, level: str, width: int) -> "Variant":
        for v in cls:
            if v.level == level and v.width == width:
                return v
        raise ValueError(f"no {level}-level variant with {width} features")

    @classmethod
    def from_names(cls, names) -> "Variant":
        names = tuple(names)
        for v in cls:
            if v.names == names:
                return v
        raise ValueError(f"feature names match no known variant: {names}")


def term_features(scores, label: int, variant: Variant = Variant.TERM8):
    """Build one term-level row from a document's adjusted token scores.

    first_subj/last_subj are the first and last nonzero scores (0 when
    the document has no subjective token).
    """
    if variant.level != "term":
        raise ValueError(f"{variant.name} is not a term-level variant")
    pos = [s for s in scores if s > 0]
    neg = [s for s in scores if s < 0]
    subjective = [s for s in scores if s != 0]
    row = [
        float(len(pos)),
        float(len(neg)),
        sum(pos),
        sum(neg),
        sum(pos) / len(pos) if pos else 0.0,
        sum(neg) / len(neg) if neg else 0.0,
        subjective[0] if subjective else 0.0,
        subjective[-1] if subjective else 0.0,
    ]
    return row[:variant.width]


def doc_features(sent_scores, label: int, variant: Variant = Variant.DOC7):
    """Build one document-level row from a document's sentence scores.

    first/middle/last are the scores at sentence index 0, (n-1)//2, and
    n-1. A document with zero sentences yields an all-zero row.
    """
    if variant.level != "document":
        raise ValueError(f"{variant.name} is not a document-level variant")
    values = list(sent_scores)
    pos = [v for v in values if v > 0]
    neg = [v for v in values if v < 0]
    n = len(values)
    full = {
        "count_pos_sent": float(len(pos)),
        "count_neg_sent": float(len(neg)),
        "max_pos": max(pos) if pos else 0.0,
        "max_neg": min(neg) if neg else 0.0,
        "first_score": values[0] if n else 0.0,
        "middle_score": values[(n - 1) // 2] if n else 0.0,
        "last_score": values[-1] if n else 0.0,
    }
    return [full[name] for name in variant.names]


@dataclass
class Dataset:
    """Fixed-width numeric rows with binary labels for one variant."""
    rows: np.ndarray     # shape (n, variant.width), float64
    labels: np.ndarray   # shape (n,), int values in {0, 1}
    variant: Variant

    def __post_init__(self):
        self.rows = np.asarray(self.rows, dtype=float)
        self.labels = np.asarray(self.labels, dtype=int)
        if self.rows.ndim != 2 or self.rows.shape[1] != self.variant.width:
            raise ValueError(
                f"rows must be (n, {self.variant.width}) for {self.variant.name}")
        if len(self.labels) != len(self.rows):
            raise ValueError("labels length must match row count")
        bad = set(np.unique(self.labels)) - {0, 1}
        if bad:
            raise ValueError(f"labels must be 0 or 1, found {sorted(bad)}")

    def __len__(self) -> int:
        return len(self.rows)

    def subset(self, indices) -> "Dataset":
        indices = np.asarray(indices)
        return Dataset(rows=self.rows[indices], labels=self.labels[indices],
                       variant=self.variant)


def dataset_from_rows(rows, labels, variant: Variant) -> Dataset:
    rows = np.asarray(rows, dtype=float)
    if rows.size == 0:
        rows = rows.reshape(0, variant.width)
    return Dataset(rows=rows, labels=np.asarray(labels, dtype=int),
                   variant=variant)


def write_features_csv(dataset: Dataset, path) -> None:
    """Emit ``label,<feature names>`` rows at full float precision."""
    lines = ["label," + ",".join(dataset.variant.names)]
    for label, row in zip(dataset.labels, dataset.rows):
        lines.append(str(int(label)) + "," + ",".join(repr(float(x)) for x in row))
    atomic_write_text(path, "\n".join(lines) + "\n")


def read_features_csv(path) -> Dataset:
    """Read a features CSV back into a Dataset, inferring the variant."""
    try:
        with open(path, encoding="utf-8") as fh:
            lines = [ln.rstrip("\n") for ln in fh]
    except FileNotFoundError:
        raise DataError(f"features file not found: {path}")
    if not lines:
        raise DataError(f"features file is empty: {path}")
    header = lines[0].split(",")
    if header[:1] != ["label"]:
        raise DataError(f"{path}:1: header must start with 'label'")
    try:
        variant = Variant.from_names(header[1:])
    except ValueError as exc:
        raise DataError(f"{path}:1: {exc}")
    labels = []
    rows = []
    for n, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split(",")
        if len(parts) != variant.width + 1:
            raise DataError(
                f"{path}:{n}: expected {variant.width + 1} fields, got {len(parts)}")
        try:
            labels.append(int(parts[0]))
            rows.append([float(x) for x in parts[1:]])
        except ValueError:
            raise DataError(f"{path}:{n}: non-numeric field")
    return dataset_from_rows(rows, labels, variant)
