"""Cluster validity indexes.

Membership-only indexes (PC, PE, P), geometric baselines (XB, PBMF,
PBM_FVG, OS) and the divergence-based index I, which divides a compactness
term (sum of squared cluster radii) by a separation term (sum over clusters
of the smallest Jeffrey divergence to any other cluster).
"""

import math
from dataclasses import dataclass, field
from types import MappingProxyType

import numba
import numpy as np

from ._validation import check_points
from .core import CrispPartition, Dataset, MembershipMatrix, cluster_members, harden
from .density import fit_density, jeffrey_divergence
from .exceptions import (
    DegenerateCentersError,
    EmptyClusterError,
    InsufficientClustersError,
    JdcviError,
    ZeroDispersionError,
    ZeroSeparationError,
)

INDEX_NAMES = ("PC", "PE", "P", "XB", "PBMF", "PBM_FVG", "OS", "I")

MINIMIZE = "minimize"
MAXIMIZE = "maximize"

DIRECTIONS = MappingProxyType(
    {
        "PC": MAXIMIZE,
        "PE": MINIMIZE,
        "P": MAXIMIZE,
        "XB": MINIMIZE,
        "PBMF": MAXIMIZE,
        "PBM_FVG": MAXIMIZE,
        "OS": MINIMIZE,
        "I": MINIMIZE,
    }
)

OVERLAP_THRESHOLD = 0.4


def _points(ds):
    return ds.points if isinstance(ds, Dataset) else check_points(ds)


def _require_pairs(k):
    if k < 2:
        raise InsufficientClustersError(f"index needs at least 2 clusters, got k={k}")


def _center_distances(centers):
    diff = centers[:, None, :] - centers[None, :, :]
    return np.sqrt(np.einsum("ijd,ijd->ij", diff, diff))


def _point_center_sq(X, centers):
    diff = X[None, :, :] - centers[:, None, :]
    return np.einsum("knd,knd->kn", diff, diff)


# --------------------------------------------------------------------------
# membership-only indexes
# --------------------------------------------------------------------------


def pc(m):
    """Partition coefficient, in ``[1/k, 1]``; larger is crisper."""
    return float(np.sum(m.u**2) / m.n)


def pe(m):
    """Partition entropy (natural log, ``0 log 0 = 0``), in ``[0, log k]``."""
    u = m.u
    terms = np.zeros_like(u)
    pos = u > 0.0
    terms[pos] = u[pos] * np.log(u[pos])
    return float(-np.sum(terms) / m.n)


def p_index(m):
    _require_pairs(m.k)
    u = m.u
    first = np.mean(u.max(axis=0))
    overlap = 0.0
    for i in range(m.k - 1):
        overlap += float(np.sum(np.mean(np.minimum(u[i], u[i + 1 :]), axis=1)))
    pairs = m.k * (m.k - 1) / 2
    return float(first - overlap / pairs)


# --------------------------------------------------------------------------
# indexes using the data
# --------------------------------------------------------------------------


def xb(ds, m):
    """Xie-Beni: fuzzy within-cluster scatter over the closest center pair."""
    _require_pairs(m.k)
    X = _points(ds)
    num = float(np.sum(m.u**2 * _point_center_sq(X, m.centers)))
    dist = _center_distances(m.centers)
    sep = float(np.min(dist[~np.eye(m.k, dtype=bool)])) ** 2
    if sep == 0.0:
        raise DegenerateCentersError("two cluster centers coincide")
    return num / (X.shape[0] * sep)


def pbmf(ds, m):
    """PBMF index; the reference dispersion is taken about the grand mean."""
    _require_pairs(m.k)
    X = _points(ds)
    jm = float(np.sum(m.u * np.sqrt(_point_center_sq(X, m.centers))))
    if jm == 0.0:
        raise ZeroDispersionError("fuzzy dispersion J_m is zero")
    e1 = float(np.sum(np.linalg.norm(X - X.mean(axis=0), axis=1)))
    dc = float(np.max(_center_distances(m.centers)))
    return (e1 / jm * dc / m.k) ** 2


def pbm_fvg(ds, m):
    """PBMF variant driven by the granulation (reconstruction) error.

    Returns ``inf`` when every point is reconstructed exactly.
    """
    _require_pairs(m.k)
    X = _points(ds)
    w = m.u**2
    x_hat = (w.T @ m.centers) / w.sum(axis=0)[:, None]
    gran_error = float(np.sum((X - x_hat) ** 2))
    dc = float(np.max(_center_distances(m.centers)))
    if gran_error == 0.0:
        return math.inf
    return (dc / math.sqrt(gran_error) / m.k) ** 2


def _check_nonempty(partition):
    sizes = partition.sizes()
    if np.any(sizes == 0):
        empty = np.flatnonzero(sizes == 0).tolist()
        raise EmptyClusterError(f"clusters {empty} have no members")
    return sizes


def _centers_of(partition, centers):
    c = partition.centers if centers is None else check_points(centers, name="centers")
    if c is None:
        raise ValueError("centers are required")
    if c.shape[0] != partition.k:
        raise ValueError(f"got {c.shape[0]} centers for k={partition.k}")
    return c


@numba.njit(cache=True)
def _own_and_total_distance(X, labels):
    # per point: summed distance to its own cluster and to every point
    n, d = X.shape
    own = np.zeros(n)
    total = np.zeros(n)
    for i in range(n):
        for j in range(i + 1, n):
            acc = 0.0
            for t in range(d):
                diff = X[i, t] - X[j, t]
                acc += diff * diff
            dist = np.sqrt(acc)
            total[i] += dist
            total[j] += dist
            if labels[i] == labels[j]:
                own[i] += dist
                own[j] += dist
    return own, total


def os_index(ds, partition, centers=None):
    """Overlap-separation index on a crisp partition.

    For every point, ``a`` is its mean distance to its own cluster (itself
    included) and ``b`` its mean distance to all other points. Points whose
    contrast ``(b - a) / (b + a)`` falls below 0.4 contribute ``a / b``.
    The sum is divided by the summed nearest-center distances.
    """
    _require_pairs(partition.k)
    X = _points(ds)
    centers = _centers_of(partition, centers)
    sizes = _check_nonempty(partition)
    n = X.shape[0]
    labels = partition.assignment
    own_sum, total_sum = _own_and_total_distance(np.ascontiguousarray(X), labels)
    own_size = sizes[labels]
    a = own_sum / own_size
    b = (total_sum - own_sum) / (n - own_size)
    overlap = np.zeros(n)
    both = a + b
    nz = both > 0.0
    contrast = np.ones(n)
    contrast[nz] = (b[nz] - a[nz]) / both[nz]
    hit = contrast < OVERLAP_THRESHOLD
    with np.errstate(divide="ignore"):
        overlap[hit] = a[hit] / b[hit]
    dist = _center_distances(centers)
    np.fill_diagonal(dist, np.inf)
    denom = float(np.sum(dist.min(axis=1)))
    if denom == 0.0:
        raise DegenerateCentersError("cluster centers coincide")
    return float(np.sum(overlap)) / denom


def compactness_v(ds, partition, centers=None):
    """Sum over clusters of the squared distance from the center to its farthest member."""
    X = _points(ds)
    centers = _centers_of(partition, centers)
    _check_nonempty(partition)
    d2 = np.sum((X - centers[partition.assignment]) ** 2, axis=1)
    radii = np.full(partition.k, -np.inf)
    np.maximum.at(radii, partition.assignment, d2)
    return float(np.sum(radii))


def divergence_matrix(models):
    k = len(models)
    jd = np.zeros((k, k))
    for i in range(k):
        for j in range(i + 1, k):
            jd[i, j] = jd[j, i] = jeffrey_divergence(models[i], models[j])
    return jd


def separation_s(models):
    """Return ``(S, per_cluster)`` where ``per_cluster[i]`` is the smallest
    divergence between model ``i`` and any other model."""
    _require_pairs(len(models))
    jd = divergence_matrix(models)
    np.fill_diagonal(jd, np.inf)
    per_cluster = jd.min(axis=1)
    return float(np.sum(per_cluster)), per_cluster


def fit_cluster_models(ds, partition, divergence="gaussian"):
    _check_nonempty(partition)
    return [
        fit_density(cluster_members(partition, ds, i), divergence)
        for i in range(partition.k)
    ]


def index_i_partition(ds, partition, centers=None, divergence="gaussian"):
    """Index I on a crisp partition; lower is better."""
    _require_pairs(partition.k)
    if not isinstance(ds, Dataset):
        ds = Dataset(check_points(ds))
    centers = _centers_of(partition, centers)
    models = fit_cluster_models(ds, partition, divergence)
    s, _ = separation_s(models)
    if s == 0.0:
        raise ZeroSeparationError("all cluster densities are identical")
    return compactness_v(ds, partition, centers) / s


def index_i(ds, m, divergence="gaussian"):
    """Index I of fuzzy memberships ``m``: hardens, fits one density per
    cluster, and returns compactness over separation."""
    return index_i_partition(ds, harden(m), m.centers, divergence)


# --------------------------------------------------------------------------
# report
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CviReport:
    """Values of every index for one partition. ``None`` marks an index
    that could not be evaluated on it."""

    k: int
    values: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    @property
    def direction(self):
        return DIRECTIONS

    def is_defined(self, name):
        return self.values.get(name) is not None

    def as_dict(self):
        return {"k": self.k, **{name: self.values.get(name) for name in INDEX_NAMES}}


def evaluate_all(ds, m, divergence="gaussian"):
    """Evaluate all eight indexes; failures are recorded, not raised."""
    partition = harden(m)
    calls = {
        "PC": lambda: pc(m),
        "PE": lambda: pe(m),
        "P": lambda: p_index(m),
        "XB": lambda: xb(ds, m),
        "PBMF": lambda: pbmf(ds, m),
        "PBM_FVG": lambda: pbm_fvg(ds, m),
        "OS": lambda: os_index(ds, partition, m.centers),
        "I": lambda: index_i(ds, m, divergence),
    }
    values, errors = {}, {}
    for name in INDEX_NAMES:
        try:
            values[name] = calls[name]()
        except (JdcviError, np.linalg.LinAlgError) as exc:
            values[name] = None
            errors[name] = f"{type(exc).__name__}: {exc}"
    return CviReport(k=m.k, values=values, errors=errors)


__all__ = [
    "CviReport",
    "DIRECTIONS",
    "INDEX_NAMES",
    "MAXIMIZE",
    "MINIMIZE",
    "compactness_v",
    "divergence_matrix",
    "evaluate_all",
    "fit_cluster_models",
    "index_i",
    "index_i_partition",
    "os_index",
    "p_index",
    "pbm_fvg",
    "pbmf",
    "pc",
    "pe",
    "separation_s",
    "xb",
]
