"""Cluster validity indexes built on the Jeffrey divergence between
per-cluster densities, with fuzzy C-means, baseline indexes and
evaluation harnesses."""

from .clustering import FcmConfig, FuzzyCMeans, KMeans, fcm, kmeans
from .core import CrispPartition, Dataset, MembershipMatrix, cluster_members, harden
from .cvi import (
    DIRECTIONS,
    INDEX_NAMES,
    CviReport,
    compactness_v,
    evaluate_all,
    index_i,
    index_i_partition,
    os_index,
    p_index,
    pbm_fvg,
    pbmf,
    pc,
    pe,
    separation_s,
    xb,
)
from .density import (
    GaussianModel,
    KdeModel,
    fit_density,
    fit_gaussian,
    fit_kde,
    jd_gaussian,
    jd_kde,
    jeffrey_divergence,
)
from .exceptions import JdcviError
from .selection import ClusterCountSelector
from .similarity import MEASURES, PairCounts, ari, fm, jaccard, pair_counts, rand

__version__ = "0.1.0"

__all__ = [
    "DIRECTIONS",
    "INDEX_NAMES",
    "MEASURES",
    "ClusterCountSelector",
    "CrispPartition",
    "CviReport",
    "Dataset",
    "FcmConfig",
    "FuzzyCMeans",
    "GaussianModel",
    "JdcviError",
    "KMeans",
    "KdeModel",
    "MembershipMatrix",
    "PairCounts",
    "ari",
    "cluster_members",
    "compactness_v",
    "evaluate_all",
    "fcm",
    "fit_density",
    "fit_gaussian",
    "fit_kde",
    "fm",
    "harden",
    "index_i",
    "index_i_partition",
    "jaccard",
    "jd_gaussian",
    "jd_kde",
    "jeffrey_divergence",
    "kmeans",
    "os_index",
    "p_index",
    "pair_counts",
    "pbm_fvg",
    "pbmf",
    "pc",
    "pe",
    "rand",
    "separation_s",
    "xb",
]
