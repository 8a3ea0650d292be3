"""Synthetic data, CSV I/O, evaluation methodologies and reports."""

from .generate import MixtureSpec, fig1, fifteen_blobs, generate, r15, recipe, two_blobs
from .io import iris_path, load_csv, load_iris, load_partition_csv, save_csv
from .report import emit_report, load_config, render_report, result_to_dict
from .sweep import AltEvalResult, SweepResult, alt_eval, classic_sweep, run_seed, select_best

__all__ = [
    "AltEvalResult",
    "MixtureSpec",
    "SweepResult",
    "alt_eval",
    "classic_sweep",
    "emit_report",
    "fifteen_blobs",
    "fig1",
    "generate",
    "iris_path",
    "load_config",
    "load_csv",
    "load_iris",
    "load_partition_csv",
    "r15",
    "recipe",
    "render_report",
    "result_to_dict",
    "run_seed",
    "save_csv",
    "select_best",
    "two_blobs",
]
