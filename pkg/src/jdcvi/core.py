"""Datasets, fuzzy memberships, crisp partitions, and hardening between them."""

from dataclasses import dataclass, field

import numpy as np

from ._validation import check_labels, check_points, freeze

MEMBERSHIP_ATOL = 1e-9


@dataclass(frozen=True, eq=False)
class Dataset:
    """``n`` points in ``d`` dimensions with optional ground-truth labels.

    Labels, when present, must be contiguous integer ids starting at 0.
    """

    points: np.ndarray
    labels: np.ndarray | None = None
    name: str = ""

    def __post_init__(self):
        pts = check_points(self.points, name="points")
        object.__setattr__(self, "points", freeze(pts))
        if self.labels is not None:
            lab = check_labels(self.labels, pts.shape[0])
            uniq = np.unique(lab)
            if uniq[0] != 0 or uniq[-1] != uniq.size - 1:
                raise ValueError("labels must be contiguous ids starting at 0")
            object.__setattr__(self, "labels", freeze(lab))

    @property
    def n(self):
        return self.points.shape[0]

    @property
    def d(self):
        return self.points.shape[1]

    @property
    def n_labels(self):
        return 0 if self.labels is None else int(self.labels.max()) + 1

    def __eq__(self, other):
        if not isinstance(other, Dataset):
            return NotImplemented
        same_labels = (self.labels is None and other.labels is None) or (
            self.labels is not None
            and other.labels is not None
            and np.array_equal(self.labels, other.labels)
        )
        return (
            self.name == other.name
            and np.array_equal(self.points, other.points)
            and same_labels
        )

    __hash__ = None


@dataclass(frozen=True, eq=False)
class MembershipMatrix:
    """Fuzzy memberships ``u`` of shape ``(k, n)`` and centers of shape ``(k, d)``."""

    u: np.ndarray
    centers: np.ndarray

    def __post_init__(self):
        u = np.asarray(self.u, dtype=np.float64)
        if u.ndim != 2 or u.shape[0] < 1 or u.shape[1] < 1:
            raise ValueError(f"u must be a non-empty (k, n) matrix, got shape {u.shape}")
        if not np.all(np.isfinite(u)):
            raise ValueError("u must be finite")
        if u.min() < 0.0 or u.max() > 1.0:
            raise ValueError("memberships must lie in [0, 1]")
        colsum = u.sum(axis=0)
        if np.max(np.abs(colsum - 1.0)) > MEMBERSHIP_ATOL:
            raise ValueError("every membership column must sum to 1")
        centers = check_points(self.centers, name="centers")
        if centers.shape[0] != u.shape[0]:
            raise ValueError(
                f"got {centers.shape[0]} centers for {u.shape[0]} membership rows"
            )
        object.__setattr__(self, "u", freeze(u))
        object.__setattr__(self, "centers", freeze(centers))

    @property
    def k(self):
        return self.u.shape[0]

    @property
    def n(self):
        return self.u.shape[1]

    @classmethod
    def from_partition(cls, partition, centers):
        """Crisp (0/1) memberships for ``partition``."""
        u = np.zeros((partition.k, partition.n))
        u[partition.assignment, np.arange(partition.n)] = 1.0
        return cls(u, centers)


@dataclass(frozen=True, eq=False)
class CrispPartition:
    assignment: np.ndarray
    k: int
    centers: np.ndarray | None = field(default=None)

    def __post_init__(self):
        a = np.asarray(self.assignment)
        if a.ndim != 1:
            raise ValueError("assignment must be 1-D")
        a = check_labels(a, a.shape[0], name="assignment")
        k = int(self.k)
        if k < 1:
            raise ValueError("k must be >= 1")
        if a.size and (a.min() < 0 or a.max() >= k):
            raise ValueError(f"assignment ids must lie in [0, {k})")
        object.__setattr__(self, "assignment", freeze(a))
        object.__setattr__(self, "k", k)
        if self.centers is not None:
            c = check_points(self.centers, name="centers")
            if c.shape[0] != k:
                raise ValueError(f"got {c.shape[0]} centers for k={k}")
            object.__setattr__(self, "centers", freeze(c))

    @property
    def n(self):
        return self.assignment.shape[0]

    def sizes(self):
        return np.bincount(self.assignment, minlength=self.k)

    @classmethod
    def from_labels(cls, labels, k=None):
        labels = np.asarray(labels, dtype=np.int64)
        return cls(labels, int(labels.max()) + 1 if k is None else k)


def harden(m):
    """Assign each point to its highest-membership cluster.

    ``np.argmax`` returns the first maximum, so ties go to the lowest id.
    """
    return CrispPartition(np.argmax(m.u, axis=0), m.k, centers=m.centers)


def cluster_members(partition, ds, i):
    """Points of ``ds`` assigned to cluster ``i``, in their original order."""
    if not 0 <= i < partition.k:
        raise ValueError(f"cluster id {i} outside [0, {partition.k})")
    points = ds.points if isinstance(ds, Dataset) else check_points(ds)
    if points.shape[0] != partition.n:
        raise ValueError("partition and dataset disagree on n")
    return points[partition.assignment == i]
