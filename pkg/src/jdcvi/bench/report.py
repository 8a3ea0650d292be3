"""CSV/JSON reports for sweep and alternative-evaluation results, and
experiment config files."""

import csv
import io
import json
import math
from pathlib import Path

from ..clustering import FcmConfig
from ..cvi import INDEX_NAMES
from ..similarity import MEASURES
from .sweep import AltEvalResult, SweepResult

NA = "NA"
FORMATS = ("csv", "json")


def _csv_cell(value):
    if value is None:
        return NA
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _json_value(value):
    # JSON has no inf/nan literal; spell them out as strings
    if isinstance(value, float) and not math.isfinite(value):
        return repr(value)
    return value


def result_to_dict(result):
    """Plain-data form of a result, as written to JSON reports."""
    if isinstance(result, SweepResult):
        return {
            "kind": "sweep",
            "dataset": result.dataset,
            "divergence": result.divergence,
            "k_range": list(result.k_range),
            "fcm": dict(result.config),
            "best_k": {name: result.best_k[name] for name in INDEX_NAMES},
            "rows": [
                {"k": r.k, **{name: _json_value(r.values.get(name)) for name in INDEX_NAMES}}
                for r in result.reports
            ],
        }
    if isinstance(result, AltEvalResult):
        return {
            "kind": "alt_eval",
            "dataset": result.dataset,
            "divergence": result.divergence,
            "runs": result.runs,
            "k_candidates": list(result.k_candidates),
            "fcm": dict(result.config),
            "counts": {m: {name: result.counts[m][name] for name in INDEX_NAMES} for m in MEASURES},
        }
    raise TypeError(f"cannot report a {type(result).__name__}")


def _csv_text(result):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if isinstance(result, SweepResult):
        writer.writerow(["k", *INDEX_NAMES])
        for r in result.reports:
            writer.writerow([r.k, *(_csv_cell(r.values.get(name)) for name in INDEX_NAMES)])
    elif isinstance(result, AltEvalResult):
        writer.writerow(["measure", *INDEX_NAMES])
        for m in MEASURES:
            writer.writerow([m, *(result.counts[m][name] for name in INDEX_NAMES)])
    else:
        raise TypeError(f"cannot report a {type(result).__name__}")
    return buf.getvalue()


def render_report(result, fmt="csv"):
    """Report text for ``result`` in ``fmt`` (``csv`` or ``json``)."""
    if fmt == "csv":
        return _csv_text(result)
    if fmt == "json":
        return json.dumps(result_to_dict(result), indent=2, allow_nan=False) + "\n"
    raise ValueError(f"unknown report format {fmt!r}; expected one of {FORMATS}")


def emit_report(result, fmt, path):
    """Write the report to ``path``. ``OSError`` propagates on I/O failure."""
    text = render_report(result, fmt)
    Path(path).write_text(text, encoding="utf-8")
    return text


def load_config(path):
    """Read an experiment config file.

    Recognised keys: ``fcm`` (``k`` or ``k_range``, ``m``, ``tol``,
    ``max_iter``, ``seed``, ``n_init``), ``divergence``, ``runs``, and one
    of ``data`` (CSV path) or ``mixture`` (a mixture spec dict). Returns a
    dict with an ``FcmConfig`` under ``fcm_config``.
    """
    with open(path, encoding="utf-8") as fh:
        raw = json.load(fh)
    fcm = dict(raw.get("fcm", {}))
    k_range = fcm.pop("k_range", None)
    k = fcm.pop("k", None)
    if k is None and k_range is None:
        raise ValueError("config needs fcm.k or fcm.k_range")
    base_k = int(k if k is not None else k_range[0])
    unknown = set(fcm) - {"m", "tol", "max_iter", "seed", "n_init", "init_iter"}
    if unknown:
        raise ValueError(f"unknown fcm keys: {sorted(unknown)}")
    return {
        "fcm_config": FcmConfig(k=base_k, **fcm),
        "k": k,
        "k_range": tuple(k_range) if k_range is not None else None,
        "divergence": raw.get("divergence", "gaussian"),
        "runs": raw.get("runs"),
        "data": raw.get("data"),
        "mixture": raw.get("mixture"),
    }
