"""Per-cluster density models and the Jeffrey divergence between them.

Two backends are available. ``"gaussian"`` fits a maximum-likelihood normal
and uses the closed-form divergence. ``"kde"`` fits a product Gaussian kernel
density with Scott's-rule bandwidth and estimates the divergence by
averaging log density ratios over each model's own samples.
"""

from dataclasses import dataclass

import numpy as np
from scipy.linalg import cholesky, solve_triangular
from scipy.special import logsumexp

from ._validation import check_points, freeze

BACKENDS = ("gaussian", "kde")

KDE_VARIANCE_FLOOR = 1e-12
KDE_DENSITY_FLOOR = 1e-300

# pairwise kernel evaluations per chunk; bounds peak memory to ~64 MB for d=1
_CHUNK_ELEMENTS = 8_000_000


@dataclass(frozen=True, eq=False)
class GaussianModel:
    mean: np.ndarray
    cov: np.ndarray
    chol: np.ndarray
    n_fit: int

    @classmethod
    def from_params(cls, mean, cov, n_fit=0):
        """Model with the given mean and covariance (no ridge added)."""
        mean = np.asarray(mean, dtype=np.float64).reshape(-1)
        cov = np.asarray(cov, dtype=np.float64).reshape(mean.size, mean.size)
        return cls(freeze(mean), freeze(cov), freeze(cholesky(cov, lower=True)), int(n_fit))

    @property
    def d(self):
        return self.mean.shape[0]

    def score_samples(self, X):
        """Log density at each row of ``X``."""
        X = check_points(X)
        z = solve_triangular(self.chol, (X - self.mean).T, lower=True)
        log_det = 2.0 * np.sum(np.log(np.diag(self.chol)))
        return -0.5 * (np.sum(z * z, axis=0) + log_det + self.d * np.log(2.0 * np.pi))


@dataclass(frozen=True, eq=False)
class KdeModel:
    samples: np.ndarray
    bandwidth: np.ndarray
    log_norm: float

    @property
    def d(self):
        return self.samples.shape[1]

    @property
    def n_fit(self):
        return self.samples.shape[0]

    def score_samples(self, X):
        """Log of the kernel density estimate at each row of ``X``."""
        X = check_points(X)
        if X.shape[1] != self.d:
            raise ValueError(f"expected {self.d} features, got {X.shape[1]}")
        inv_h = 1.0 / np.diag(self.bandwidth)
        S = self.samples * np.sqrt(inv_h)
        Xs = X * np.sqrt(inv_h)
        s_sq = np.sum(S * S, axis=1)
        step = max(1, _CHUNK_ELEMENTS // max(1, S.shape[0]))
        out = np.empty(X.shape[0])
        for start in range(0, X.shape[0], step):
            block = Xs[start : start + step]
            q = np.sum(block * block, axis=1)[:, None] - 2.0 * block @ S.T + s_sq[None, :]
            np.maximum(q, 0.0, out=q)
            out[start : start + step] = logsumexp(-0.5 * q, axis=1)
        return out - np.log(self.n_fit) + self.log_norm


def fit_gaussian(points):
    """Maximum-likelihood normal fit with a small ridge on the diagonal.

    The covariance uses the ``1/N`` normaliser. A ridge of
    ``max(1e-8 * trace / d, 1e-12)`` keeps singleton or flat clusters
    positive definite.
    """
    X = check_points(points, name="points")
    n, d = X.shape
    mean = X.mean(axis=0)
    centered = X - mean
    cov = centered.T @ centered / n
    cov = 0.5 * (cov + cov.T)
    eps = max(1e-8 * np.trace(cov) / d, 1e-12)
    cov = cov + eps * np.eye(d)
    chol = cholesky(cov, lower=True)
    return GaussianModel(freeze(mean), freeze(cov), freeze(chol), n)


def _trace_inv_product(chol_a, chol_b):
    # tr(A^-1 B) = ||L_a^-1 L_b||_F^2
    w = solve_triangular(chol_a, chol_b, lower=True)
    return float(np.sum(w * w))


def _mahalanobis_sq(chol, delta):
    z = solve_triangular(chol, delta, lower=True)
    return float(z @ z)


def jd_gaussian(a, b):
    """Closed-form Jeffrey divergence between two normal models.

    Evaluated with triangular solves against the cached Cholesky factors;
    no matrix is inverted.
    """
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} vs {b.d}")
    delta = a.mean - b.mean
    traces = _trace_inv_product(a.chol, b.chol) + _trace_inv_product(b.chol, a.chol)
    quad = _mahalanobis_sq(a.chol, delta) + _mahalanobis_sq(b.chol, delta)
    return 0.5 * traces + 0.5 * quad - a.d


def jd_gaussian_direct(a, b):
    """Same quantity through explicit inverses; kept as a cross-check."""
    ia = np.linalg.inv(a.cov)
    ib = np.linalg.inv(b.cov)
    delta = a.mean - b.mean
    return float(
        0.5 * (np.trace(ia @ b.cov) + np.trace(ib @ a.cov))
        + 0.5 * delta @ (ia + ib) @ delta
        - a.d
    )


def fit_kde(points):
    """Product-kernel KDE with Scott's-rule diagonal bandwidth.

    ``H_jj = N**(-2/(d+4)) * var_j``; per-dimension variances below 1e-12
    are floored so constant coordinates still get a usable kernel.
    """
    X = check_points(points, name="points")
    n, d = X.shape
    var = X.var(axis=0, ddof=1) if n > 1 else np.zeros(d)
    var = np.maximum(var, KDE_VARIANCE_FLOOR)
    h = n ** (-2.0 / (d + 4)) * var
    log_norm = float(-0.5 * np.sum(np.log(h)) - 0.5 * d * np.log(2.0 * np.pi))
    return KdeModel(freeze(X), freeze(np.diag(h)), log_norm)


def _kl_on_samples(p, q, log_floor):
    x = p.samples
    lp = np.maximum(p.score_samples(x), log_floor)
    lq = np.maximum(q.score_samples(x), log_floor)
    return float(np.mean(lp - lq))


def jd_kde(a, b, floor=KDE_DENSITY_FLOOR):
    """Plug-in Jeffrey divergence between two kernel density models.

    Each direction averages ``log(p(x) / q(x))`` over the samples of ``p``,
    with both densities clamped below at ``floor``.
    """
    if a.d != b.d:
        raise ValueError(f"dimension mismatch: {a.d} vs {b.d}")
    log_floor = np.log(floor)
    return _kl_on_samples(a, b, log_floor) + _kl_on_samples(b, a, log_floor)


def fit_density(points, backend="gaussian"):
    if backend == "gaussian":
        return fit_gaussian(points)
    if backend == "kde":
        return fit_kde(points)
    raise ValueError(f"unknown density backend {backend!r}; expected one of {BACKENDS}")


def jeffrey_divergence(a, b):
    if isinstance(a, GaussianModel) and isinstance(b, GaussianModel):
        return jd_gaussian(a, b)
    if isinstance(a, KdeModel) and isinstance(b, KdeModel):
        return jd_kde(a, b)
    raise TypeError(f"cannot compare {type(a).__name__} with {type(b).__name__}")
