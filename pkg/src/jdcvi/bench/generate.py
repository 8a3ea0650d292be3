"""Seeded Gaussian-mixture datasets and the shipped recipes."""

import json
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import cholesky

from .._validation import check_random_seed
from ..core import Dataset


@dataclass(frozen=True, eq=False)
class MixtureSpec:
    """Weighted Gaussian components plus a sample count and seed.

    ``components`` is a sequence of ``(weight, mean, cov)`` triples.
    """

    components: tuple
    n_total: int
    seed: int | None = 0
    name: str = "mixture"

    def __post_init__(self):
        comps = []
        for weight, mean, cov in self.components:
            mean = np.asarray(mean, dtype=np.float64).reshape(-1)
            cov = np.asarray(cov, dtype=np.float64).reshape(mean.size, mean.size)
            if not weight > 0:
                raise ValueError("component weights must be positive")
            if not np.allclose(cov, cov.T, atol=1e-12):
                raise ValueError("component covariance must be symmetric")
            cholesky(cov, lower=True)
            comps.append((float(weight), mean, cov))
        if not comps:
            raise ValueError("a mixture needs at least one component")
        if len({c[1].size for c in comps}) != 1:
            raise ValueError("all components must share a dimension")
        total = sum(c[0] for c in comps)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"weights must sum to 1, got {total}")
        if int(self.n_total) < 1:
            raise ValueError("n_total must be >= 1")
        object.__setattr__(self, "components", tuple(comps))
        object.__setattr__(self, "n_total", int(self.n_total))

    @property
    def d(self):
        return self.components[0][1].size

    def with_seed(self, seed):
        return MixtureSpec(self.components, self.n_total, seed, self.name)

    def to_dict(self):
        return {
            "name": self.name,
            "n_total": self.n_total,
            "seed": self.seed,
            "components": [
                {"weight": w, "mean": m.tolist(), "cov": c.tolist()}
                for w, m, c in self.components
            ],
        }

    @classmethod
    def from_dict(cls, data):
        if "recipe" in data:
            kwargs = {k: v for k, v in data.items() if k != "recipe"}
            return recipe(data["recipe"], **kwargs)
        comps = tuple((c["weight"], c["mean"], c["cov"]) for c in data["components"])
        return cls(comps, data["n_total"], data.get("seed", 0), data.get("name", "mixture"))

    @classmethod
    def from_json(cls, path):
        with open(path, encoding="utf-8") as fh:
            return cls.from_dict(json.load(fh))


def generate(spec):
    """Draw ``spec.n_total`` labelled points from the mixture."""
    rng = np.random.default_rng(check_random_seed(spec.seed))
    weights = np.array([c[0] for c in spec.components])
    weights = weights / weights.sum()
    labels = rng.choice(len(spec.components), size=spec.n_total, p=weights)
    z = rng.standard_normal((spec.n_total, spec.d))
    points = np.empty_like(z)
    for i, (_, mean, cov) in enumerate(spec.components):
        rows = labels == i
        points[rows] = mean + z[rows] @ cholesky(cov, lower=True).T
    # components that drew no points would leave gaps in the label ids
    _, labels = np.unique(labels, return_inverse=True)
    return Dataset(points, labels, name=spec.name)


# --------------------------------------------------------------------------
# recipes
# --------------------------------------------------------------------------

# 15 cluster centers on a 100 x 100 field, nearest neighbours ~23 apart
_FIFTEEN_CENTERS = (
    (12, 15), (38, 10), (65, 14), (88, 20), (20, 40),
    (47, 35), (75, 42), (8, 65), (33, 62), (58, 60),
    (85, 66), (18, 88), (45, 85), (70, 87), (93, 92),
)
# (major std, minor/major ratio, angle in degrees) per cluster
_FIFTEEN_SHAPES = (
    (3.0, 1.0, 0), (4.0, 0.5, 30), (3.5, 1.0, 0), (4.5, 0.5, 120), (3.0, 0.6, 75),
    (4.0, 1.0, 0), (3.5, 0.5, 160), (4.5, 0.7, 45), (3.0, 1.0, 0), (4.0, 0.5, 100),
    (3.5, 0.6, 10), (4.5, 1.0, 0), (3.0, 0.5, 60), (4.0, 0.7, 140), (3.5, 1.0, 0),
)

# layout scale per S-set analog; smaller spacing means more overlap
S_SPACING = {"s1": 1.0, "s2": 0.8, "s3": 0.65, "s4": 0.5}


def _rotated_cov(major, ratio, angle_deg):
    t = math.radians(angle_deg)
    rot = np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])
    return rot @ np.diag([major**2, (major * ratio) ** 2]) @ rot.T


def fifteen_blobs(spacing=1.0, spread=1.0, n_total=5000, seed=0, name="s1"):
    """15 equally weighted 2-D clusters, circular and elliptical.

    ``spacing`` scales the center layout and ``spread`` the cluster widths.
    """
    comps = tuple(
        (1.0 / 15, spacing * np.array(c, dtype=float), spread**2 * _rotated_cov(*shape))
        for c, shape in zip(_FIFTEEN_CENTERS, _FIFTEEN_SHAPES)
    )
    return MixtureSpec(comps, n_total, seed, name)


def r15(n_total=600, seed=0):
    """Ring-and-core layout of 15 tight circular clusters."""
    centers = [(0.0, 0.0)]
    centers += [(3.0 * math.cos(a), 3.0 * math.sin(a)) for a in np.linspace(0, 2 * math.pi, 7)[:-1]]
    centers += [
        (8.0 * math.cos(a + 0.2), 8.0 * math.sin(a + 0.2))
        for a in np.linspace(0, 2 * math.pi, 9)[:-1]
    ]
    comps = tuple((1.0 / 15, np.array(c), 0.35**2 * np.eye(2)) for c in centers)
    return MixtureSpec(comps, n_total, seed, "r15")


def fig1(n_total=900, seed=0):
    """Three 2-D clusters: A far from B, B and C overlapping along B's long axis.

    Center distances are 14.5 between A and B and 13.2 between B and C.
    """
    a = (np.array([0.0, 0.0]), np.diag([4.0, 4.0]))
    b = (np.array([14.5, 0.0]), np.diag([1.5**2, 6.0**2]))
    c = (np.array([14.5, 13.2]), np.diag([1.5**2, 6.0**2]))
    comps = tuple((1.0 / 3, mean, cov) for mean, cov in (a, b, c))
    return MixtureSpec(comps, n_total, seed, "fig1")


def two_blobs(delta=10.0, n_per=500, d=2, seed=0):
    """Two unit-covariance blobs at ``-delta/2`` and ``+delta/2`` on the first axis."""
    offset = np.zeros(d)
    offset[0] = delta / 2.0
    comps = ((0.5, -offset, np.eye(d)), (0.5, offset, np.eye(d)))
    return MixtureSpec(comps, 2 * n_per, seed, f"two_blobs_{delta:g}")


def recipe(name, **kwargs):
    """Look up a shipped recipe by name (``s1``-``s4``, ``r15``, ``fig1``, ``two_blobs``)."""
    key = name.lower()
    if key in S_SPACING:
        kwargs.setdefault("spacing", S_SPACING[key])
        return fifteen_blobs(name=key, **kwargs)
    if key == "r15":
        return r15(**kwargs)
    if key == "fig1":
        return fig1(**kwargs)
    if key == "two_blobs":
        return two_blobs(**kwargs)
    raise ValueError(f"unknown recipe {name!r}")
