"""Soft-margin SVM with an RBF kernel trained by sequential minimal
optimization.

Each sweep visits every sample; a sample violating the KKT conditions by
more than ``tol`` is paired with partner samples (in seeded random order)
until a pair step makes progress. Pair updates conserve the equality
constraint sum(alpha_i * y_i) = 0 exactly, and every alpha stays in
[0, C]. Training stops after a sweep with no violations, after a sweep
where no violating pair could move, or at the sweep budget. Inputs are
min-max normalized to [-1, 1], matching the network classifier.
"""

from dataclasses import dataclass

import numpy as np

from ..errors import DataError
from ..util import derive_seed, make_rng
from .normalize import NormalizationParams

# Minimum change in an alpha for a pair step to count as progress.
_STEP_EPS = 1e-7


@dataclass(frozen=True)
class SvmConfig:
    c: float = 1.0
    gamma: float | None = None   # None -> 1 / n_features
    tol: float = 1e-3
    max_passes: int = 200        # sweep budget over the training set
    seed: int = 0


@dataclass
class SvmModel:
    support_vectors: np.ndarray   # (m, features), normalized space
    coefficients: np.ndarray      # (m,), alpha_i * y_i
    bias: float
    gamma: float
    c: float
    normalization: NormalizationParams
    config: SvmConfig
    # Full training-time duals kept so feasibility is checkable.
    alphas: np.ndarray
    train_labels_pm: np.ndarray

    @property
    def kind(self) -> str:
        return "svm"

    @property
    def input_width(self) -> int:
        return self.support_vectors.shape[1] if self.support_vectors.size \
            else len(self.normalization.minimum)

    def decision_values(self, rows: np.ndarray) -> np.ndarray:
        x = self.normalization.apply(rows)
        if self.support_vectors.size == 0:
            return np.full(len(x), self.bias)
        k = rbf_kernel(x, self.support_vectors, self.gamma)
        return k @ self.coefficients + self.bias


def rbf_kernel(a: np.ndarray, b: np.ndarray, gamma: float) -> np.ndarray:
    """exp(-gamma * ||a_i - b_j||^2) for all pairs."""
    sq = (np.sum(a * a, axis=1)[:, None] + np.sum(b * b, axis=1)[None, :]
          - 2.0 * a @ b.T)
    return np.exp(-gamma * np.maximum(sq, 0.0))


def _pair_step(i, j, alphas, y, kernel, errors_fn, b, c, tol):
    """Try one SMO pair update; returns (new_b, True) on progress."""
    if i == j:
        return b, False
    e_i, e_j = errors_fn(i), errors_fn(j)
    a_i_old, a_j_old = alphas[i], alphas[j]
    if y[i] != y[j]:
        lo = max(0.0, a_j_old - a_i_old)
        hi = min(c, c + a_j_old - a_i_old)
    else:
        lo = max(0.0, a_i_old + a_j_old - c)
        hi = min(c, a_i_old + a_j_old)
    if hi - lo < _STEP_EPS:
        return b, False
    eta = 2.0 * kernel[i, j] - kernel[i, i] - kernel[j, j]
    if eta >= 0:
        return b, False
    a_j = a_j_old - y[j] * (e_i - e_j) / eta
    a_j = min(hi, max(lo, a_j))
    if abs(a_j - a_j_old) < _STEP_EPS:
        return b, False
    a_i = a_i_old + y[i] * y[j] * (a_j_old - a_j)
    # The constraint keeps a_i inside [0, C] mathematically; rounding can
    # push it out by an ulp, so snap it back.
    a_i = min(c, max(0.0, a_i))
    alphas[i], alphas[j] = a_i, a_j

    b1 = b - e_i - y[i] * (a_i - a_i_old) * kernel[i, i] \
        - y[j] * (a_j - a_j_old) * kernel[i, j]
    b2 = b - e_j - y[i] * (a_i - a_i_old) * kernel[i, j] \
        - y[j] * (a_j - a_j_old) * kernel[j, j]
    if 0.0 < a_i < c:
        return b1, True
    if 0.0 < a_j < c:
        return b2, True
    return (b1 + b2) / 2.0, True


def train_svm(rows: np.ndarray, labels: np.ndarray,
              config: SvmConfig | None = None) -> SvmModel:
    cfg = config or SvmConfig()
    rows = np.asarray(rows, dtype=float)
    labels = np.asarray(labels, dtype=int)
    if len(rows) == 0:
        raise DataError("cannot train on an empty dataset")
    if len(set(labels.tolist())) < 2:
        raise DataError("training data contains a single class")

    norm = NormalizationParams.fit(rows)
    x = norm.apply(rows)
    y = 2.0 * labels - 1.0
    n = len(x)
    gamma = cfg.gamma if cfg.gamma is not None else 1.0 / x.shape[1]

    kernel = rbf_kernel(x, x, gamma)
    alphas = np.zeros(n)
    b = 0.0
    rng = make_rng(derive_seed(cfg.seed, "svm"))

    def error(i):
        return float(kernel[i] @ (alphas * y) + b - y[i])

    for _ in range(cfg.max_passes):
        violations = 0
        progressed = 0
        for i in range(n):
            r_i = y[i] * error(i)
            if (r_i < -cfg.tol and alphas[i] < cfg.c) or \
                    (r_i > cfg.tol and alphas[i] > 0):
                violations += 1
                for j in rng.permutation(n):
                    b, moved = _pair_step(int(j), i, alphas, y, kernel,
                                          error, b, cfg.c, cfg.tol)
                    if moved:
                        progressed += 1
                        break
        if violations == 0 or progressed == 0:
            break

    support = alphas > 0.0
    return SvmModel(support_vectors=x[support],
                    coefficients=(alphas * y)[support],
                    bias=b, gamma=gamma, c=cfg.c, normalization=norm,
                    config=cfg, alphas=alphas, train_labels_pm=y)
