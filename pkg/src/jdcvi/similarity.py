"""Pair-counting similarity between two crisp partitions.

``a`` counts pairs together in both partitions, ``b`` pairs apart in both,
``c`` pairs together only in the first and ``d`` together only in the second.
"""

import math
from dataclasses import dataclass

import numpy as np

from .core import CrispPartition
from .exceptions import LengthMismatchError, UndefinedSimilarityError

MEASURES = ("Rand", "FM", "Jacc", "ARI")


@dataclass(frozen=True)
class PairCounts:
    a: int
    b: int
    c: int
    d: int

    @property
    def total(self):
        return self.a + self.b + self.c + self.d


def _assignment(p):
    if isinstance(p, CrispPartition):
        return p.assignment
    return np.asarray(p, dtype=np.int64)


def _comb2(x):
    return x * (x - 1) // 2


def pair_counts(p1, p2):
    """Pair counts from the contingency table, O(n + k1*k2)."""
    l1, l2 = _assignment(p1), _assignment(p2)
    if l1.shape != l2.shape:
        raise LengthMismatchError(f"partitions cover {l1.size} and {l2.size} points")
    n = l1.size
    _, r = np.unique(l1, return_inverse=True)
    _, c = np.unique(l2, return_inverse=True)
    table = np.zeros((r.max(initial=-1) + 1, c.max(initial=-1) + 1), dtype=np.int64)
    np.add.at(table, (r, c), 1)
    together_both = int(_comb2(table).sum())
    together_1 = int(_comb2(table.sum(axis=1)).sum())
    together_2 = int(_comb2(table.sum(axis=0)).sum())
    total = _comb2(n)
    a = together_both
    c_ = together_1 - a
    d_ = together_2 - a
    b = total - a - c_ - d_
    return PairCounts(a, b, c_, d_)


def pair_counts_bruteforce(p1, p2):
    """Reference O(n^2) loop over every unordered pair."""
    l1, l2 = _assignment(p1), _assignment(p2)
    if l1.shape != l2.shape:
        raise LengthMismatchError(f"partitions cover {l1.size} and {l2.size} points")
    a = b = c = d = 0
    n = l1.size
    for i in range(n):
        for j in range(i + 1, n):
            s1 = l1[i] == l1[j]
            s2 = l2[i] == l2[j]
            if s1 and s2:
                a += 1
            elif not s1 and not s2:
                b += 1
            elif s1:
                c += 1
            else:
                d += 1
    return PairCounts(a, b, c, d)


def rand(pc):
    if pc.total == 0:
        raise UndefinedSimilarityError("Rand needs at least one pair")
    return (pc.a + pc.b) / pc.total


def fm(pc):
    denom = (pc.a + pc.d) * (pc.a + pc.c)
    if denom == 0:
        raise UndefinedSimilarityError("Fowlkes-Mallows undefined: no pair is together in either partition")
    return pc.a / math.sqrt(denom)


def jaccard(pc):
    denom = pc.a + pc.c + pc.d
    if denom == 0:
        raise UndefinedSimilarityError("Jaccard undefined: a + c + d = 0")
    return pc.a / denom


def ari(pc):
    """Adjusted Rand index from pair counts.

    Two identical partitions score 1 even in the degenerate cases (all
    singletons, or a single cluster) where the chance correction is 0/0.
    """
    total = pc.total
    if total == 0:
        raise UndefinedSimilarityError("ARI needs at least one pair")
    expected = (pc.a + pc.d) * (pc.a + pc.c) / total
    max_index = ((pc.a + pc.d) + (pc.a + pc.c)) / 2
    denom = max_index - expected
    if denom == 0:
        if pc.c == 0 and pc.d == 0:
            return 1.0
        raise UndefinedSimilarityError("ARI undefined: chance-corrected denominator is 0")
    return (pc.a - expected) / denom


MEASURE_FUNCS = {"Rand": rand, "FM": fm, "Jacc": jaccard, "ARI": ari}


def similarity(p1, p2, measure):
    return MEASURE_FUNCS[measure](pair_counts(p1, p2))


def all_measures(p1, p2):
    counts = pair_counts(p1, p2)
    return {name: MEASURE_FUNCS[name](counts) for name in MEASURES}
