"""K-means and fuzzy C-means with seeded, reproducible initialisation.

Both algorithms start from ``k`` dataset points drawn uniformly without
replacement, so a fixed seed reproduces a run bit for bit.
"""

from dataclasses import dataclass

import numba
import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_count, check_points, check_random_seed
from .core import CrispPartition, Dataset, MembershipMatrix
from .exceptions import EmptyClusterError


@dataclass(frozen=True)
class FcmConfig:
    k: int
    m: float = 2.0
    max_iter: int = 300
    tol: float = 1e-6
    seed: int | None = 0
    n_init: int = 1
    init_iter: int = 10

    def __post_init__(self):
        check_count(self.k, "k")
        check_count(self.max_iter, "max_iter")
        check_count(self.n_init, "n_init")
        check_count(self.init_iter, "init_iter")
        if not self.m > 1.0:
            raise ValueError(f"fuzzifier m must be > 1, got {self.m}")
        if not self.tol > 0.0:
            raise ValueError(f"tol must be > 0, got {self.tol}")


def _points(ds):
    return ds.points if isinstance(ds, Dataset) else check_points(ds)


def _exact_sq_distances(X, centers):
    # (k, n); accumulated per feature, which is exact and fast for small d
    d2 = np.zeros((centers.shape[0], X.shape[0]))
    for j in range(X.shape[1]):
        diff = X[None, :, j] - centers[:, j, None]
        d2 += diff * diff
    return d2


def _init_centers(X, k, rng):
    idx = rng.choice(X.shape[0], size=k, replace=False)
    return X[np.sort(idx)].copy()


# --------------------------------------------------------------------------
# K-means
# --------------------------------------------------------------------------


def _kmeans_objective(X, assignment, centers):
    diff = X - centers[assignment]
    return float(np.sum(diff * diff))


def _lloyd(X, k, rng, max_iter, tol):
    n = X.shape[0]
    centers = _init_centers(X, k, rng)
    history = []
    assignment = None
    for it in range(max_iter):
        d2 = _exact_sq_distances(X, centers)
        new_assignment = np.argmin(d2, axis=0)
        sizes = np.bincount(new_assignment, minlength=k)
        # re-seed each empty cluster once with the point farthest from its center
        for i in np.flatnonzero(sizes == 0):
            own = d2[new_assignment, np.arange(n)]
            donor_ok = sizes[new_assignment] > 1
            if not donor_ok.any():
                break
            j = int(np.argmax(np.where(donor_ok, own, -np.inf)))
            sizes[new_assignment[j]] -= 1
            new_assignment[j] = i
            sizes[i] = 1
            centers[i] = X[j]
        new_centers = centers.copy()
        for i in range(k):
            members = X[new_assignment == i]
            if members.shape[0]:
                new_centers[i] = members.mean(axis=0)
        history.append(_kmeans_objective(X, new_assignment, new_centers))
        shift = np.max(np.sqrt(np.sum((new_centers - centers) ** 2, axis=1)))
        converged = assignment is not None and np.array_equal(assignment, new_assignment)
        assignment, centers = new_assignment, new_centers
        if converged or shift < tol:
            break
    if np.any(np.bincount(assignment, minlength=k) == 0):
        raise EmptyClusterError("k-means terminated with an empty cluster")
    return assignment, centers, history, it + 1


def kmeans(ds, k, seed=0, max_iter=300, tol=1e-6):
    """Lloyd's algorithm.

    Returns the crisp partition (centers attached) and the sum of squared
    point-to-center distances.
    """
    X = _points(ds)
    k = check_count(k, "k")
    if k > X.shape[0]:
        raise ValueError(f"k={k} exceeds the number of points n={X.shape[0]}")
    rng = np.random.default_rng(check_random_seed(seed))
    assignment, centers, history, _ = _lloyd(X, k, rng, max_iter, tol)
    return CrispPartition(assignment, k, centers=centers), history[-1]


# --------------------------------------------------------------------------
# Fuzzy C-means
# --------------------------------------------------------------------------


def _fcm_memberships(d2, m):
    # u_ij = d_ij^(-2/(m-1)) / sum_l d_lj^(-2/(m-1)); ratios to the column
    # minimum are >= 1, so the power cannot overflow for m close to 1
    zero = d2 == 0.0
    if not zero.any():
        r = d2 / d2.min(axis=0)
        w = 1.0 / r if m == 2.0 else r ** (-1.0 / (m - 1.0))
        return w / w.sum(axis=0)
    singular = zero.any(axis=0)
    u = np.zeros_like(d2)
    regular = ~singular
    if regular.any():
        u[:, regular] = _fcm_memberships(d2[:, regular], m)
    cols = np.flatnonzero(singular)
    u[np.argmax(zero[:, cols], axis=0), cols] = 1.0
    return u


def _fcm_centers(X, u, m, previous):
    w = u**m
    total = w.sum(axis=1)
    centers = previous.copy()
    ok = total > 0.0
    centers[ok] = (w[ok] @ X) / total[ok, None]
    return centers


@numba.njit(cache=True, error_model="numpy", fastmath={"reassoc", "contract", "arcp", "nsz"})
def _fcm_iterate(X, centers, m, max_iter, tol):
    """Alternate membership and center updates until no center moves more
    than ``tol``.

    Returns the final centers, the objective after each iteration and the
    iteration count. The objective of iteration t pairs u_t with the centers
    it produced; it is accumulated during the following pass over the data.
    """
    n, d = X.shape
    k = centers.shape[0]
    square = m == 2.0
    expo = -1.0 / (m - 1.0)
    u = np.zeros((n, k))
    d2 = np.empty(k)
    history = np.empty(max_iter + 1)
    n_iter = 0
    shift = np.inf
    for it in range(max_iter + 1):
        num = np.zeros((k, d))
        den = np.zeros(k)
        obj = 0.0
        for j in range(n):
            dmin = np.inf
            for i in range(k):
                acc = 0.0
                for f in range(d):
                    diff = X[j, f] - centers[i, f]
                    acc += diff * diff
                d2[i] = acc
                if acc < dmin:
                    dmin = acc
                ui = u[j, i]
                obj += (ui * ui if square else ui**m) * acc
            if dmin == 0.0:
                hit = False
                for i in range(k):
                    if d2[i] == 0.0 and not hit:
                        u[j, i] = 1.0
                        hit = True
                    else:
                        u[j, i] = 0.0
            else:
                total = 0.0
                for i in range(k):
                    w = dmin / d2[i] if square else (d2[i] / dmin) ** expo
                    u[j, i] = w
                    total += w
                inv = 1.0 / total
                for i in range(k):
                    u[j, i] *= inv
            for i in range(k):
                ui = u[j, i]
                um = ui * ui if square else ui**m
                den[i] += um
                for f in range(d):
                    num[i, f] += um * X[j, f]
        if it > 0:
            history[it - 1] = obj
            if np.sqrt(shift) < tol or it == max_iter:
                break
        n_iter = it + 1
        shift = 0.0
        new_centers = centers.copy()
        for i in range(k):
            if den[i] > 0.0:
                moved = 0.0
                for f in range(d):
                    new_centers[i, f] = num[i, f] / den[i]
                    diff = new_centers[i, f] - centers[i, f]
                    moved += diff * diff
                if moved > shift:
                    shift = moved
        centers = new_centers
    return centers, history[:n_iter], n_iter


def _fcm_run(X, cfg):
    """Run FCM from ``cfg.n_init`` sampled starts.

    With several starts, each one is advanced ``cfg.init_iter`` iterations
    and only the start with the lowest objective is run to convergence.
    """
    X = np.ascontiguousarray(X)
    rng = np.random.default_rng(check_random_seed(cfg.seed))
    m, tol = float(cfg.m), float(cfg.tol)
    centers = _init_centers(X, cfg.k, rng)
    history = []
    if cfg.n_init > 1:
        best = None
        for attempt in range(cfg.n_init):
            if attempt:
                centers = _init_centers(X, cfg.k, rng)
            cand, hist, _ = _fcm_iterate(X, centers, m, cfg.init_iter, tol)
            if best is None or hist[-1] < best[1][-1]:
                best = (cand, hist)
        centers, hist = best
        history = hist.tolist()
    centers, hist, n_iter = _fcm_iterate(X, centers, m, cfg.max_iter, tol)
    history += hist.tolist()
    # memberships consistent with the returned centers
    d2 = _exact_sq_distances(X, centers)
    u = _fcm_memberships(d2, cfg.m)
    objective = float(np.sum(u**cfg.m * d2))
    history.append(objective)
    return MembershipMatrix(u, centers), objective, history, n_iter


def fcm(ds, cfg):
    """Run fuzzy C-means; returns ``(MembershipMatrix, objective)``."""
    X = _points(ds)
    if cfg.k > X.shape[0]:
        raise ValueError(f"k={cfg.k} exceeds the number of points n={X.shape[0]}")
    membership, objective, _, _ = _fcm_run(X, cfg)
    return membership, objective


# --------------------------------------------------------------------------
# Estimators
# --------------------------------------------------------------------------


class FuzzyCMeans(ClusterMixin, TransformerMixin, BaseEstimator):
    """Fuzzy C-means clustering.

    Parameters
    ----------
    n_clusters : int, default=2
    m : float, default=2.0
        Fuzzifier; values close to 1 give nearly crisp memberships.
    max_iter : int, default=300
    tol : float, default=1e-6
        Stop when no center moves farther than this between iterations.
    random_state : int or None, default=0
    n_init : int, default=1
        Sampled initialisations. With more than one, each start is advanced
        ``init_iter`` iterations and the one with the lowest objective is
        run to convergence.
    init_iter : int, default=10

    Attributes
    ----------
    cluster_centers_ : ndarray of shape (n_clusters, n_features)
    membership_ : MembershipMatrix
        Memberships of the training points, ``u`` has shape (n_clusters, n_samples).
    labels_ : ndarray of shape (n_samples,)
    objective_ : float
    objective_history_ : list of float
    n_iter_ : int
    """

    def __init__(
        self,
        n_clusters=2,
        m=2.0,
        max_iter=300,
        tol=1e-6,
        random_state=0,
        n_init=1,
        init_iter=10,
    ):
        self.n_clusters = n_clusters
        self.m = m
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state
        self.n_init = n_init
        self.init_iter = init_iter

    def _config(self):
        return FcmConfig(
            k=self.n_clusters,
            m=self.m,
            max_iter=self.max_iter,
            tol=self.tol,
            seed=self.random_state,
            n_init=self.n_init,
            init_iter=self.init_iter,
        )

    def fit(self, X, y=None):
        cfg = self._config()
        X = check_points(X)
        if cfg.k > X.shape[0]:
            raise ValueError(f"n_clusters={cfg.k} exceeds n_samples={X.shape[0]}")
        membership, objective, history, n_iter = _fcm_run(X, cfg)
        self.membership_ = membership
        self.cluster_centers_ = membership.centers
        self.labels_ = np.argmax(membership.u, axis=0)
        self.objective_ = objective
        self.objective_history_ = history
        self.n_iter_ = n_iter
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        """Memberships of ``X`` in each fitted cluster, shape (n_samples, n_clusters)."""
        check_is_fitted(self, "cluster_centers_")
        X = check_points(X)
        return _fcm_memberships(_exact_sq_distances(X, self.cluster_centers_), self.m).T

    def predict(self, X):
        return np.argmax(self.transform(X), axis=1)


class KMeans(ClusterMixin, BaseEstimator):
    """Lloyd's k-means with uniform sampled initialisation.

    Empty clusters are re-seeded with the point farthest from its center.
    """

    def __init__(self, n_clusters=2, max_iter=300, tol=1e-6, random_state=0):
        self.n_clusters = n_clusters
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state

    def fit(self, X, y=None):
        X = check_points(X)
        k = check_count(self.n_clusters, "n_clusters")
        if k > X.shape[0]:
            raise ValueError(f"n_clusters={k} exceeds n_samples={X.shape[0]}")
        rng = np.random.default_rng(check_random_seed(self.random_state))
        assignment, centers, history, n_iter = _lloyd(X, k, rng, self.max_iter, self.tol)
        self.labels_ = assignment
        self.cluster_centers_ = centers
        self.inertia_ = history[-1]
        self.objective_history_ = history
        self.n_iter_ = n_iter
        self.n_features_in_ = X.shape[1]
        return self

    def predict(self, X):
        check_is_fitted(self, "cluster_centers_")
        return np.argmin(_exact_sq_distances(check_points(X), self.cluster_centers_), axis=0)
