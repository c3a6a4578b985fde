"""Plain and tapered covariance estimators for the pair kernel, plus spectra."""

from dataclasses import dataclass

import numpy as np

from .statistic import pair_aggregates


def _symmetrize(a):
    return (a + a.T) / 2.0


def delta_hat(x, y, kernel):
    """Mean of the kernel over all n1*n2 pairs.

    For the identity kernel this equals mean(x) - mean(y) exactly up to
    summation order.
    """
    g, sx, sy, _ = pair_aggregates(x, y, kernel)
    return g / (sx.shape[0] * sy.shape[0])


def estimate_plain(x, y, kernel):
    """Pooled outer-product estimator of the kernel covariance.

    (1/(n n1 n2)) [sum_i sx_i sx_i^T + sum_j sy_j sy_j^T] - dh dh^T with
    dh the pair mean, emitted exactly symmetric. The spectrum is not forced
    positive semidefinite.
    """
    g, sx, sy, _ = pair_aggregates(x, y, kernel)
    n1, n2 = sx.shape[0], sy.shape[0]
    n = n1 + n2
    dh = g / (n1 * n2)
    est = (sx.T @ sx + sy.T @ sy) / (n * n1 * n2) - np.outer(dh, dh)
    return _symmetrize(est)


@dataclass(frozen=True)
class TaperSpec:
    """Taper bandwidth: weights ramp from 1 inside k/2 down to 0 at k."""

    beta: float
    k: float

    def __post_init__(self):
        if not self.beta > 0:
            raise ValueError("beta must be positive")
        if not self.k > 0:
            raise ValueError("bandwidth k must be positive")

    @classmethod
    def derive(cls, beta, n, p):
        """Bandwidth k = min(n^(1/(2 beta + 2)), p), kept real-valued."""
        if not beta > 0:
            raise ValueError("beta must be positive")
        if n < 1 or p < 1:
            raise ValueError("n and p must be at least 1")
        k = min(float(n) ** (1.0 / (2.0 * float(beta) + 2.0)), float(p))
        return cls(beta=float(beta), k=k)


def taper_weight(i, j, k):
    """Weight for entry (i, j): 1 if |i-j| <= k/2, linear ramp below k, else 0."""
    if not k > 0:
        raise ValueError("bandwidth k must be positive")
    d = abs(i - j)
    if d <= k / 2.0:
        return 1.0
    if d < k:
        return 1.0 - d / k
    return 0.0


def _weight_matrix(p, k):
    d = np.abs(np.subtract.outer(np.arange(p, dtype=float), np.arange(p, dtype=float)))
    return np.where(d <= k / 2.0, 1.0, np.where(d < k, 1.0 - d / k, 0.0))


def estimate_tapered(x, y, kernel, taper):
    """Elementwise taper of the plain estimator; entries at |i-j| >= k are 0."""
    est = estimate_plain(x, y, kernel)
    return _symmetrize(est * _weight_matrix(est.shape[0], taper.k))


def eigenvalues_sym(m):
    """All eigenvalues of a symmetric matrix, sorted descending.

    Negative eigenvalues are retained; callers that feed the spectrum into
    the null reference expect them verbatim.
    """
    a = np.asarray(m, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError("m must be a square 2-d array")
    if not np.isfinite(a).all():
        raise ValueError("m contains non-finite entries")
    lam = np.linalg.eigvalsh(_symmetrize(a))
    return lam[::-1].copy()
