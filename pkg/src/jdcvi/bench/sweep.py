"""The two index-evaluation methodologies.

``classic_sweep`` clusters once per candidate ``k`` and records which ``k``
each index prefers. ``alt_eval`` repeats clustering over several seeded
runs and counts how often each index picks the partition that is most
similar to the ground truth.
"""

import logging
from dataclasses import dataclass, field, replace

import numpy as np

from ..clustering import FcmConfig, fcm
from ..core import Dataset, harden
from ..cvi import DIRECTIONS, INDEX_NAMES, MAXIMIZE, CviReport, evaluate_all
from ..density import BACKENDS
from ..exceptions import JdcviError, MissingLabelsError
from ..similarity import MEASURE_FUNCS, MEASURES, pair_counts

log = logging.getLogger(__name__)

# FCM settings used by the sweeps unless the caller passes its own config:
# 30 sampled starts, each screened for 10 iterations.
DEFAULT_FCM = FcmConfig(k=2, n_init=30, init_iter=10)


def select_best(values, direction):
    """Pick the key whose value is best for ``direction``.

    ``values`` maps ``k`` to a float or ``None``; ``None`` and NaN never win
    and ties go to the smallest ``k``. Returns ``None`` if nothing is defined.
    """
    best_k, best_v = None, None
    for k in sorted(values):
        v = values[k]
        if v is None or (isinstance(v, float) and np.isnan(v)):
            continue
        better = best_v is None or (v > best_v if direction == MAXIMIZE else v < best_v)
        if better:
            best_k, best_v = k, v
    return best_k


def _check_k_range(k_range, n):
    k_min, k_max = (int(k_range[0]), int(k_range[-1]))
    if not 2 <= k_min <= k_max <= n:
        raise ValueError(f"k range [{k_min}, {k_max}] must lie within [2, {n}]")
    return k_min, k_max


def _config_echo(cfg):
    return {
        "m": cfg.m,
        "tol": cfg.tol,
        "max_iter": cfg.max_iter,
        "seed": cfg.seed,
        "n_init": cfg.n_init,
        "init_iter": cfg.init_iter,
    }


def _cluster_and_score(ds, cfg, divergence):
    membership, _ = fcm(ds, cfg)
    return membership, evaluate_all(ds, membership, divergence)


@dataclass(frozen=True)
class SweepResult:
    k_range: tuple
    reports: list
    best_k: dict
    divergence: str = "gaussian"
    config: dict = field(default_factory=dict)
    dataset: str = ""

    @property
    def ks(self):
        return [r.k for r in self.reports]

    def values(self, name):
        return {r.k: r.values.get(name) for r in self.reports}


def classic_sweep(ds, k_range, fcm_cfg=None, divergence="gaussian"):
    """Cluster at every ``k`` in the inclusive range and score each partition."""
    if divergence not in BACKENDS:
        raise ValueError(f"unknown divergence backend {divergence!r}")
    cfg = fcm_cfg or DEFAULT_FCM
    k_min, k_max = _check_k_range(k_range, ds.n)
    reports = []
    for k in range(k_min, k_max + 1):
        try:
            _, report = _cluster_and_score(ds, replace(cfg, k=k), divergence)
        except JdcviError as exc:
            log.warning("k=%d failed: %s", k, exc)
            report = CviReport(k, {n: None for n in INDEX_NAMES}, {"FCM": str(exc)})
        log.info(
            "k=%d %s",
            k,
            " ".join(f"{n}={report.values[n]!r}" for n in INDEX_NAMES),
        )
        reports.append(report)
    best_k = {
        name: select_best({r.k: r.values[name] for r in reports}, DIRECTIONS[name])
        for name in INDEX_NAMES
    }
    return SweepResult(
        k_range=(k_min, k_max),
        reports=reports,
        best_k=best_k,
        divergence=divergence,
        config=_config_echo(cfg),
        dataset=ds.name,
    )


def run_seed(base_seed, run):
    """Seed for run ``run``, mixed from ``(base_seed, run)``."""
    base = 0 if base_seed is None else int(base_seed)
    return int(np.random.SeedSequence([base, int(run)]).generate_state(1, np.uint32)[0])


@dataclass(frozen=True)
class AltEvalResult:
    """Per measure, how many runs each index picked the most similar partition.

    ``runs_detail`` keeps one record per run (reference-best ``k`` per
    measure and chosen ``k`` per index) so sub-totals can be recomputed.
    """

    runs: int
    k_candidates: tuple
    counts: dict
    runs_detail: list
    divergence: str = "gaussian"
    config: dict = field(default_factory=dict)
    dataset: str = ""

    def table(self):
        """``len(MEASURES) x len(INDEX_NAMES)`` integer array of counts."""
        return np.array([[self.counts[m][i] for i in INDEX_NAMES] for m in MEASURES])


def _run_once(ds, ks, cfg, divergence, seed):
    reports, similarities = {}, {m: {} for m in MEASURES}
    for k in ks:
        try:
            membership, report = _cluster_and_score(ds, replace(cfg, k=k, seed=seed), divergence)
        except JdcviError as exc:
            log.warning("k=%d failed: %s", k, exc)
            continue
        reports[k] = report
        counts = pair_counts(harden(membership), ds.labels)
        for m in MEASURES:
            try:
                similarities[m][k] = MEASURE_FUNCS[m](counts)
            except JdcviError:
                similarities[m][k] = None
    reference = {m: select_best(similarities[m], MAXIMIZE) for m in MEASURES}
    chosen = {
        name: select_best({k: r.values[name] for k, r in reports.items()}, DIRECTIONS[name])
        for name in INDEX_NAMES
    }
    return {"seed": seed, "reference": reference, "chosen": chosen}


def alt_eval(ds, k_candidates, runs, fcm_cfg=None, divergence="gaussian"):
    """Count, per similarity measure, how often each index selects the
    candidate partition most similar to the labels."""
    if not isinstance(ds, Dataset) or ds.labels is None:
        raise MissingLabelsError("alternative evaluation needs ground-truth labels")
    if divergence not in BACKENDS:
        raise ValueError(f"unknown divergence backend {divergence!r}")
    runs = int(runs)
    if runs < 1:
        raise ValueError("runs must be >= 1")
    ks = tuple(sorted({int(k) for k in k_candidates}))
    if not ks:
        raise ValueError("k_candidates is empty")
    if ks[0] < 2 or ks[-1] > ds.n:
        raise ValueError(f"candidate k must lie within [2, {ds.n}]")
    cfg = fcm_cfg or DEFAULT_FCM
    counts = {m: {name: 0 for name in INDEX_NAMES} for m in MEASURES}
    detail = []
    for r in range(runs):
        record = _run_once(ds, ks, cfg, divergence, run_seed(cfg.seed, r))
        record["run"] = r
        for m in MEASURES:
            ref = record["reference"][m]
            for name in INDEX_NAMES:
                if ref is not None and record["chosen"][name] == ref:
                    counts[m][name] += 1
        log.info("run %d/%d done", r + 1, runs)
        detail.append(record)
    return AltEvalResult(
        runs=runs,
        k_candidates=ks,
        counts=counts,
        runs_detail=detail,
        divergence=divergence,
        config=_config_echo(cfg),
        dataset=ds.name,
    )
