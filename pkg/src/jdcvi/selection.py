"""Choosing the number of clusters with a validity index."""

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from ._validation import check_points
from .bench.sweep import classic_sweep
from .clustering import FcmConfig, FuzzyCMeans
from .core import Dataset
from .cvi import INDEX_NAMES
from .exceptions import JdcviError


class ClusterCountSelector(ClusterMixin, TransformerMixin, BaseEstimator):
    """Fuzzy C-means with ``n_clusters`` picked by a validity index.

    Runs FCM for every ``k`` in ``[k_min, k_max]``, keeps the ``k`` that
    ``index`` scores best, and refits at that ``k``.

    Parameters
    ----------
    k_min, k_max : int, default=2, 10
    index : str, default="I"
        One of ``PC, PE, P, XB, PBMF, PBM_FVG, OS, I``.
    divergence : {"gaussian", "kde"}, default="gaussian"
        Density backend for index I.
    m, max_iter, tol, random_state, n_init, init_iter
        Passed to fuzzy C-means.

    Attributes
    ----------
    n_clusters_ : int
    sweep_ : SweepResult
    estimator_ : FuzzyCMeans
        Refit at ``n_clusters_``.
    labels_ : ndarray of shape (n_samples,)
    """

    def __init__(
        self,
        k_min=2,
        k_max=10,
        index="I",
        divergence="gaussian",
        m=2.0,
        max_iter=300,
        tol=1e-6,
        random_state=0,
        n_init=10,
        init_iter=10,
    ):
        self.k_min = k_min
        self.k_max = k_max
        self.index = index
        self.divergence = divergence
        self.m = m
        self.max_iter = max_iter
        self.tol = tol
        self.random_state = random_state
        self.n_init = n_init
        self.init_iter = init_iter

    def fit(self, X, y=None):
        if self.index not in INDEX_NAMES:
            raise ValueError(f"index must be one of {INDEX_NAMES}, got {self.index!r}")
        X = check_points(X)
        cfg = FcmConfig(
            k=self.k_min,
            m=self.m,
            max_iter=self.max_iter,
            tol=self.tol,
            seed=self.random_state,
            n_init=self.n_init,
            init_iter=self.init_iter,
        )
        self.sweep_ = classic_sweep(Dataset(X), (self.k_min, self.k_max), cfg, self.divergence)
        best = self.sweep_.best_k[self.index]
        if best is None:
            raise JdcviError(f"index {self.index} is undefined for every k in the range")
        self.n_clusters_ = best
        self.estimator_ = FuzzyCMeans(
            n_clusters=best,
            m=self.m,
            max_iter=self.max_iter,
            tol=self.tol,
            random_state=self.random_state,
            n_init=self.n_init,
            init_iter=self.init_iter,
        ).fit(X)
        self.labels_ = self.estimator_.labels_
        self.cluster_centers_ = self.estimator_.cluster_centers_
        self.n_features_in_ = X.shape[1]
        return self

    def transform(self, X):
        check_is_fitted(self, "estimator_")
        return self.estimator_.transform(X)

    def predict(self, X):
        check_is_fitted(self, "estimator_")
        return np.asarray(self.estimator_.predict(X))
