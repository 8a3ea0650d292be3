import itertools
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import random_membership
from jdcvi.core import CrispPartition, Dataset, MembershipMatrix, harden
from jdcvi.cvi import (
    DIRECTIONS,
    INDEX_NAMES,
    compactness_v,
    evaluate_all,
    fit_cluster_models,
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
from jdcvi.density import fit_gaussian, jd_gaussian
from jdcvi.exceptions import (
    DegenerateCentersError,
    EmptyClusterError,
    InsufficientClustersError,
    ZeroDispersionError,
    ZeroSeparationError,
)

EXAMPLE = MembershipMatrix([[0.8, 0.3], [0.2, 0.7]], [[0.0], [1.0]])


def crisp(assignment, centers):
    p = CrispPartition(assignment, len(centers))
    return MembershipMatrix.from_partition(p, np.asarray(centers, float).reshape(len(centers), -1))


def uniform(k, n):
    return MembershipMatrix(np.full((k, n), 1.0 / k), np.arange(k, dtype=float).reshape(k, 1))


def blobs(delta, n_per=500, seed=0):
    rng = np.random.default_rng(seed)
    X = np.vstack([rng.normal(size=(n_per, 2)), rng.normal(size=(n_per, 2))])
    X[:n_per, 0] -= delta / 2
    X[n_per:, 0] += delta / 2
    return Dataset(X, np.repeat([0, 1], n_per))


def truth_membership(ds):
    centers = np.array([ds.points[ds.labels == i].mean(axis=0) for i in range(ds.n_labels)])
    return MembershipMatrix.from_partition(CrispPartition(ds.labels, ds.n_labels), centers)


# ---- membership-only indexes ---------------------------------------------


def test_pc_examples():
    assert pc(crisp([0, 1, 1], [0.0, 1.0])) == 1.0
    assert pc(uniform(4, 5)) == pytest.approx(0.25)
    assert pc(EXAMPLE) == pytest.approx(0.63)


def test_pe_examples():
    assert pe(crisp([0, 1, 1], [0.0, 1.0])) == 0.0
    assert pe(uniform(3, 4)) == pytest.approx(math.log(3))
    assert pe(uniform(2, 2)) == pytest.approx(0.6931, abs=1e-4)


def test_p_index_examples():
    assert p_index(crisp([0, 1, 1], [0.0, 1.0])) == 1.0
    assert p_index(uniform(2, 3)) == pytest.approx(0.0)
    assert p_index(EXAMPLE) == pytest.approx(0.5)
    with pytest.raises(InsufficientClustersError):
        p_index(uniform(1, 3))


def _p_index_naive(u):
    k, n = u.shape
    first = sum(u[:, j].max() for j in range(n)) / n
    pairs = [(i, l) for i in range(k) for l in range(i + 1, k)]
    second = sum(sum(min(u[i, j], u[l, j]) for j in range(n)) / n for i, l in pairs)
    return first - second / len(pairs)


@given(st.integers(2, 6), st.integers(1, 40), st.integers(0, 2**32 - 1))
def test_bounds_and_p_oracle(k, n, seed):
    m = random_membership(np.random.default_rng(seed), k, n)
    assert 1.0 / k - 1e-12 <= pc(m) <= 1.0 + 1e-12
    assert -1e-12 <= pe(m) <= math.log(k) + 1e-12
    assert p_index(m) == pytest.approx(_p_index_naive(m.u), abs=1e-12)


# ---- XB, PBMF, PBM_FVG ---------------------------------------------------


def test_xb_examples():
    ds = Dataset([0.0, 1.0, 9.0, 10.0])
    assert xb(ds, crisp([0, 0, 1, 1], [0.5, 9.5])) == pytest.approx(1 / 324)
    assert xb(Dataset([0.0, 5.0]), crisp([0, 1], [0.0, 5.0])) == 0.0
    with pytest.raises(DegenerateCentersError):
        xb(ds, crisp([0, 0, 1, 1], [3.0, 3.0]))


def _xb_naive(X, u, v):
    num = sum(u[i, j] ** 2 * np.sum((X[j] - v[i]) ** 2) for i in range(len(v)) for j in range(len(X)))
    sep = min(np.sum((v[i] - v[l]) ** 2) for i in range(len(v)) for l in range(len(v)) if i != l)
    return num / (len(X) * sep)


@given(st.integers(2, 5), st.integers(0, 2**32 - 1))
def test_xb_matches_naive(k, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(25, 2))
    m = random_membership(rng, k, 25)
    assert xb(Dataset(X), m) == pytest.approx(_xb_naive(X, m.u, m.centers), rel=1e-10)


def test_pbmf_zero_dispersion():
    with pytest.raises(ZeroDispersionError):
        pbmf(Dataset([0.0, 10.0]), crisp([0, 1], [0.0, 10.0]))


def test_pbmf_scales_quadratically(rng):
    X = rng.normal(size=(40, 2))
    m = random_membership(rng, 3, 40)
    scaled = MembershipMatrix(m.u, 2 * m.centers)
    assert pbmf(Dataset(2 * X), scaled) == pytest.approx(4 * pbmf(Dataset(X), m), rel=1e-10)


def test_pbmf_naive(rng):
    X = rng.normal(size=(30, 2))
    m = random_membership(rng, 3, 30)
    jm = sum(m.u[i, j] * np.linalg.norm(X[j] - m.centers[i]) for i in range(3) for j in range(30))
    e1 = sum(np.linalg.norm(x - X.mean(axis=0)) for x in X)
    dc = max(np.linalg.norm(a - b) for a in m.centers for b in m.centers)
    assert pbmf(Dataset(X), m) == pytest.approx((e1 / jm * dc / 3) ** 2, rel=1e-10)


def test_pbm_fvg_crisp_uses_kmeans_error():
    X = np.array([0.0, 1.0, 9.0, 11.0])
    m = crisp([0, 0, 1, 1], [0.5, 10.0])
    gran = 0.25 + 0.25 + 1 + 1
    assert pbm_fvg(Dataset(X), m) == pytest.approx((9.5 / math.sqrt(gran) / 2) ** 2)


def test_pbm_fvg_exact_reconstruction_is_infinite():
    assert pbm_fvg(Dataset([0.0, 5.0]), crisp([0, 1], [0.0, 5.0])) == math.inf
    m = MembershipMatrix([[0.5], [0.5]], [[0.0], [10.0]])
    assert pbm_fvg(Dataset([5.0]), m) == math.inf


# ---- OS ------------------------------------------------------------------


def _os_naive(X, labels, centers):
    n = len(X)
    num = 0.0
    for j in range(n):
        own = [np.linalg.norm(X[j] - X[l]) for l in range(n) if labels[l] == labels[j]]
        other = [np.linalg.norm(X[j] - X[l]) for l in range(n) if labels[l] != labels[j]]
        a, b = sum(own) / len(own), sum(other) / len(other)
        if a + b > 0 and (b - a) / (b + a) < 0.4:
            num += a / b
    k = len(centers)
    den = sum(min(np.linalg.norm(centers[i] - centers[l]) for l in range(k) if l != i) for i in range(k))
    return num / den


def test_os_hand_example():
    ds = Dataset([0.0, 1.0, 2.0, 3.0])
    # only the point at 2 overlaps: a = 1, b = 1
    p = CrispPartition([0, 0, 0, 1], 2)
    assert os_index(ds, p, [[1.0], [3.0]]) == pytest.approx(0.25)
    assert os_index(ds, CrispPartition([0, 0, 1, 1], 2), [[0.5], [2.5]]) == 0.0


def test_os_no_overlap_and_singletons():
    ds = Dataset([0.0, 0.1, 1000.0, 1000.1])
    assert os_index(ds, CrispPartition([0, 0, 1, 1], 2), [[0.05], [1000.05]]) == 0.0
    assert os_index(Dataset([0.0, 1.0, 2.0]), CrispPartition([0, 1, 2], 3), [[0.0], [1.0], [2.0]]) == 0.0


@given(st.integers(2, 4), st.integers(0, 2**32 - 1))
def test_os_matches_naive(k, seed):
    rng = np.random.default_rng(seed)
    X = rng.normal(size=(30, 2))
    labels = np.concatenate([np.arange(k), rng.integers(0, k, 30 - k)])
    centers = np.array([X[labels == i].mean(axis=0) for i in range(k)])
    got = os_index(Dataset(X), CrispPartition(labels, k), centers)
    assert got == pytest.approx(_os_naive(X, labels, centers), rel=1e-10)


def test_os_empty_cluster():
    with pytest.raises(EmptyClusterError):
        os_index(Dataset([0.0, 1.0]), CrispPartition([0, 0], 2), [[0.0], [1.0]])


# ---- index I ---------------------------------------------------------------


def test_compactness_examples(rng):
    assert compactness_v(Dataset([1.0, 5.0]), CrispPartition([0, 1], 2), [[1.0], [5.0]]) == 0.0
    assert compactness_v(Dataset([0.0, 4.0]), CrispPartition([0, 0], 1), [[2.0]]) == 4.0
    X = rng.normal(size=(20, 2))
    labels = rng.integers(0, 3, 20)
    labels[:3] = [0, 1, 2]
    p = CrispPartition(labels, 3)
    c = rng.normal(size=(3, 2))
    shift = np.array([7.0, -3.0])
    assert compactness_v(Dataset(X + shift), p, c + shift) == pytest.approx(compactness_v(Dataset(X), p, c), rel=1e-12)


def test_separation_two_clusters_is_twice_jd(rng):
    a, b = fit_gaussian(rng.normal(size=(40, 2))), fit_gaussian(rng.normal(3, 1, size=(40, 2)))
    s, per = separation_s([a, b])
    assert s == 2 * jd_gaussian(a, b)
    np.testing.assert_array_equal(per, [jd_gaussian(a, b)] * 2)


def test_identical_densities_have_zero_separation():
    # every cluster holds the points {0, 1, 2}
    ds = Dataset(np.repeat([0.0, 1.0, 2.0], 3))
    p = CrispPartition([0, 1, 2] * 3, 3)
    assert separation_s(fit_cluster_models(ds, p))[0] == 0.0
    with pytest.raises(ZeroSeparationError):
        index_i_partition(ds, p, [[1.0]] * 3)


def test_separation_translation_invariant(rng):
    X = rng.normal(size=(60, 2))
    p = CrispPartition(np.repeat([0, 1, 2], 20), 3)
    s = separation_s(fit_cluster_models(Dataset(X), p))[0]
    moved = separation_s(fit_cluster_models(Dataset(X + 50.0), p))[0]
    assert moved == pytest.approx(s, rel=1e-9)


def test_index_i_prefers_true_two_blob_split():
    ds = blobs(20.0, n_per=100)
    two = index_i(ds, truth_membership(ds))
    assign = ds.labels.copy()
    assign[(ds.labels == 1) & (ds.points[:, 1] > 0)] = 2
    centers = np.array([ds.points[assign == i].mean(axis=0) for i in range(3)])
    three = index_i_partition(ds, CrispPartition(assign, 3), centers)
    assert two < three


def test_index_i_decreases_with_blob_separation():
    values = [index_i(ds, truth_membership(ds)) for ds in (blobs(d) for d in (2.0, 4.0, 8.0))]
    assert values[0] > values[1] > values[2] > 0


def _index_i_oracle(X, labels, k):
    # explicit inverses and loops; shares only the ridge rule with the library
    v = 0.0
    models = []
    for i in range(k):
        pts = X[labels == i]
        mu = pts.mean(axis=0)
        v += max(float(np.sum((p - mu) ** 2)) for p in pts)
        cov = (pts - mu).T @ (pts - mu) / len(pts)
        cov += max(1e-8 * np.trace(cov) / X.shape[1], 1e-12) * np.eye(X.shape[1])
        models.append((mu, cov))
    s = 0.0
    for i in range(k):
        best = np.inf
        for l in range(k):
            if l == i:
                continue
            (ma, ca), (mb, cb) = models[i], models[l]
            ia, ib = np.linalg.inv(ca), np.linalg.inv(cb)
            dm = ma - mb
            jd = 0.5 * (np.trace(ia @ cb) + np.trace(ib @ ca)) + 0.5 * dm @ (ia + ib) @ dm - len(ma)
            best = min(best, jd)
        s += best
    return v / s


@pytest.mark.parametrize("n", [4, 6, 8])
def test_index_i_exhaustive_bipartitions(n):
    X = np.random.default_rng(n).normal(size=(n, 2)) * [1.0, 2.0]
    ds = Dataset(X)
    for bits in itertools.product([0, 1], repeat=n - 1):
        labels = np.array((0,) + bits)
        if labels.min() == labels.max():
            continue
        p = CrispPartition(labels, 2)
        centers = np.array([X[labels == i].mean(axis=0) for i in range(2)])
        got = index_i_partition(ds, p, centers)
        composed = compactness_v(ds, p, centers) / separation_s(fit_cluster_models(ds, p))[0]
        assert got == composed
        assert got == pytest.approx(_index_i_oracle(X, labels, 2), rel=1e-6)


# ---- evaluate_all ----------------------------------------------------------


def test_evaluate_all_schema_and_equality(rng):
    ds = blobs(6.0, n_per=60)
    m = random_membership(rng, 3, ds.n)
    m = MembershipMatrix(m.u, np.array([[-3.0, 0.0], [3.0, 0.0], [0.0, 2.0]]))
    report = evaluate_all(ds, m)
    assert tuple(report.values) == INDEX_NAMES
    assert dict(report.direction) == dict(DIRECTIONS)
    standalone = {
        "PC": pc(m),
        "PE": pe(m),
        "P": p_index(m),
        "XB": xb(ds, m),
        "PBMF": pbmf(ds, m),
        "PBM_FVG": pbm_fvg(ds, m),
        "OS": os_index(ds, harden(m), m.centers),
        "I": index_i(ds, m),
    }
    for name in INDEX_NAMES:
        assert report.values[name] == standalone[name], name


def test_directions():
    assert {n for n, d in DIRECTIONS.items() if d == "minimize"} == {"PE", "XB", "OS", "I"}
    assert {n for n, d in DIRECTIONS.items() if d == "maximize"} == {"PC", "P", "PBMF", "PBM_FVG"}


def test_evaluate_all_crisp_blobs():
    ds = blobs(10.0, n_per=50)
    report = evaluate_all(ds, truth_membership(ds))
    assert report.values["PC"] == 1.0 and report.values["PE"] == 0.0
    for name in ("XB", "OS", "I"):
        assert report.values[name] >= 0.0


def test_evaluate_all_records_failures():
    ds = Dataset([0.0, 1.0, 2.0])
    m = MembershipMatrix([[1.0, 1.0, 1.0], [0.0, 0.0, 0.0]], [[1.0], [1.0]])
    report = evaluate_all(ds, m)
    assert report.values["XB"] is None and "XB" in report.errors
    assert not report.is_defined("OS")
    assert report.values["PC"] == 1.0
