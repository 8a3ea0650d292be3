"""Command-line front end.

Exit codes: 0 on success, 1 on a usage error, 2 on a data error.
"""

import argparse
import functools
import json
import logging
import sys
from dataclasses import replace
from pathlib import Path

from .bench.generate import MixtureSpec, generate
from .bench.io import load_csv, load_partition_csv, save_csv
from .bench.report import FORMATS, emit_report
from .bench.sweep import DEFAULT_FCM, alt_eval, classic_sweep
from .clustering import fcm
from .core import CrispPartition, cluster_members, harden
from .density import BACKENDS, fit_density, jeffrey_divergence
from .exceptions import JdcviError
from .similarity import MEASURES, all_measures

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2
HELP_WIDTH = 80


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _formatter(prog):
    return argparse.HelpFormatter(prog, width=HELP_WIDTH)


def _int_list(text):
    try:
        values = [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("expected at least one integer")
    return values


def _pair(text):
    values = _int_list(text)
    if len(values) != 2:
        raise argparse.ArgumentTypeError(f"expected two cluster ids like 0,1, got {text!r}")
    return values


def _fcm_options(p, seed_help="seed for FCM initialisation"):
    p.add_argument("--m", type=float, default=DEFAULT_FCM.m, help="fuzzifier (default: 2)")
    p.add_argument("--seed", type=int, default=0, help=f"{seed_help} (default: 0)")
    p.add_argument(
        "--n-init",
        type=int,
        default=DEFAULT_FCM.n_init,
        help=f"sampled FCM starts per run (default: {DEFAULT_FCM.n_init})",
    )
    p.add_argument(
        "--max-iter", type=int, default=DEFAULT_FCM.max_iter, help="FCM iteration cap (default: 300)"
    )
    p.add_argument("--tol", type=float, default=DEFAULT_FCM.tol, help="FCM tolerance (default: 1e-06)")


def _report_options(p):
    p.add_argument("--out", required=True, help="report path (.csv or .json)")
    p.add_argument(
        "--format",
        choices=FORMATS,
        help="report format (default: taken from the --out suffix, else csv)",
    )


def build_parser():
    parser = _Parser(
        prog="jdcvi",
        description="Cluster validity experiments with the Jeffrey-divergence index.",
        formatter_class=_formatter,
    )
    parser.add_argument("-v", "--verbose", action="store_true", help="log one line per k to stderr")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)
    sub.required = True
    add = functools.partial(sub.add_parser, formatter_class=_formatter)

    p = add("generate", help="sample a dataset from a mixture spec", description="Sample a labelled dataset from a mixture spec JSON.")
    p.add_argument("--spec", required=True, help="mixture spec JSON (components or a named recipe)")
    p.add_argument("--out", required=True, help="output dataset CSV")
    p.add_argument("--seed", type=int, help="override the seed stored in the mixture file")

    p = add("cluster", help="run fuzzy C-means once", description="Run fuzzy C-means and write memberships and centers as JSON.")
    p.add_argument("--data", required=True, help="dataset CSV")
    p.add_argument("--k", type=int, required=True, help="number of clusters")
    _fcm_options(p)
    p.add_argument("--out", required=True, help="output JSON")

    p = add("sweep", help="classic k-sweep", description="Cluster at every k in a range and report all indexes.")
    p.add_argument("--data", required=True, help="dataset CSV")
    p.add_argument("--k-min", type=int, required=True, help="smallest k")
    p.add_argument("--k-max", type=int, required=True, help="largest k")
    p.add_argument("--divergence", choices=BACKENDS, default="gaussian", help="density backend for index I (default: gaussian)")
    _fcm_options(p)
    _report_options(p)

    p = add("alt-eval", help="alternative evaluation over repeated runs", description="Count how often each index picks the partition most similar to the labels.")
    p.add_argument("--data", required=True, help="labelled dataset CSV")
    p.add_argument("--runs", type=int, required=True, help="number of runs")
    p.add_argument("--k-list", type=_int_list, required=True, help="candidate k values, e.g. 2,3,4")
    p.add_argument("--divergence", choices=BACKENDS, default="gaussian", help="density backend for index I (default: gaussian)")
    _fcm_options(p, seed_help="base seed; run seeds are derived from it")
    _report_options(p)

    p = add("jd", help="Jeffrey divergence between two clusters", description="Print the Jeffrey divergence between two clusters of a dataset.")
    p.add_argument("--data", required=True, help="dataset CSV")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--labels", action="store_true", help="take clusters from the label column")
    src.add_argument("--partition", help="partition CSV whose last column holds cluster ids")
    p.add_argument("--pair", type=_pair, required=True, help="two cluster ids, e.g. 0,1")
    p.add_argument("--backend", choices=BACKENDS, default="gaussian", help="density backend (default: gaussian)")

    p = add("similarity", help="compare two partitions", description="Print Rand, FM, Jaccard and ARI between two partitions.")
    p.add_argument("--p1", required=True, help="first partition CSV")
    p.add_argument("--p2", required=True, help="second partition CSV")
    return parser


def _fmt(value):
    return format(value, ".17g")


def _report_format(args):
    if args.format:
        return args.format
    return "json" if Path(args.out).suffix.lower() == ".json" else "csv"


def _fcm_config(args, k):
    try:
        return replace(
            DEFAULT_FCM,
            k=k,
            m=args.m,
            seed=args.seed,
            n_init=args.n_init,
            max_iter=args.max_iter,
            tol=args.tol,
        )
    except (TypeError, ValueError) as exc:
        raise UsageError(str(exc)) from None


def _cmd_generate(args, out):
    spec = MixtureSpec.from_json(args.spec)
    if args.seed is not None:
        spec = spec.with_seed(args.seed)
    save_csv(generate(spec), args.out)


def _cmd_cluster(args, out):
    ds = load_csv(args.data)
    if not 1 <= args.k <= ds.n:
        raise UsageError(f"--k must lie within [1, {ds.n}], got {args.k}")
    cfg = _fcm_config(args, args.k)
    membership, objective = fcm(ds, cfg)
    doc = {
        "k": cfg.k,
        "m": cfg.m,
        "seed": cfg.seed,
        "n_init": cfg.n_init,
        "objective": objective,
        "centers": membership.centers.tolist(),
        "labels": harden(membership).assignment.tolist(),
        "memberships": membership.u.T.tolist(),
    }
    Path(args.out).write_text(json.dumps(doc, indent=2) + "\n", encoding="utf-8")


def _cmd_sweep(args, out):
    ds = load_csv(args.data)
    if not 2 <= args.k_min <= args.k_max:
        raise UsageError("--k-min and --k-max must satisfy 2 <= k-min <= k-max")
    if args.k_max > ds.n:
        raise UsageError(f"--k-max exceeds the {ds.n} points in the dataset")
    result = classic_sweep(ds, (args.k_min, args.k_max), _fcm_config(args, args.k_min), args.divergence)
    emit_report(result, _report_format(args), args.out)


def _cmd_alt_eval(args, out):
    if args.runs < 1:
        raise UsageError("--runs must be >= 1")
    if min(args.k_list) < 2:
        raise UsageError("--k-list values must be >= 2")
    ds = load_csv(args.data)
    result = alt_eval(ds, args.k_list, args.runs, _fcm_config(args, min(args.k_list)), args.divergence)
    emit_report(result, _report_format(args), args.out)


def _cmd_jd(args, out):
    ds = load_csv(args.data)
    if args.labels:
        if ds.labels is None:
            raise JdcviError(f"{args.data} has no label column")
        ids = ds.labels
    else:
        ids = load_partition_csv(args.partition)
        if ids.size != ds.n:
            raise JdcviError(f"partition has {ids.size} ids for {ds.n} points")
    partition = CrispPartition(ids, int(ids.max()) + 1)
    models = []
    for i in args.pair:
        if not 0 <= i < partition.k:
            raise JdcviError(f"cluster {i} does not exist (ids run 0..{partition.k - 1})")
        members = cluster_members(partition, ds, i)
        if members.shape[0] == 0:
            raise JdcviError(f"cluster {i} has no members")
        models.append(fit_density(members, args.backend))
    print(_fmt(jeffrey_divergence(*models)), file=out)


def _cmd_similarity(args, out):
    values = all_measures(load_partition_csv(args.p1), load_partition_csv(args.p2))
    print(" ".join(_fmt(values[m]) for m in MEASURES), file=out)


COMMANDS = {
    "generate": _cmd_generate,
    "cluster": _cmd_cluster,
    "sweep": _cmd_sweep,
    "alt-eval": _cmd_alt_eval,
    "jd": _cmd_jd,
    "similarity": _cmd_similarity,
}


def run(argv=None, out=None, err=None):
    """Run the CLI on ``argv`` and return the exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as exc:
        print(exc, file=err)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    if args.verbose:
        logging.basicConfig(level=logging.INFO, stream=err, format="%(message)s")
    try:
        COMMANDS[args.command](args, out)
    except UsageError as exc:
        print(f"jdcvi {args.command}: error: {exc}", file=err)
        return EXIT_USAGE
    except (JdcviError, ValueError, OSError) as exc:
        print(f"jdcvi {args.command}: error: {exc}", file=err)
        return EXIT_DATA
    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
