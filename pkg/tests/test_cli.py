import csv
import io
import json
from pathlib import Path

import pytest

from jdcvi.bench import generate, recipe, save_csv
from jdcvi.cli import EXIT_DATA, EXIT_OK, EXIT_USAGE, build_parser, run

GOLDEN = Path(__file__).parent / "golden"
SUBCOMMANDS = ["generate", "cluster", "sweep", "alt-eval", "jd", "similarity"]


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(scope="module")
def data_csv(tmp_path_factory):
    path = tmp_path_factory.mktemp("cli") / "d.csv"
    save_csv(generate(recipe("two_blobs", delta=8.0, n_per=40, seed=2)), path)
    return path


@pytest.mark.parametrize("sub", ["main", *SUBCOMMANDS])
def test_help_matches_golden(sub, capsys):
    argv = ["--help"] if sub == "main" else [sub, "--help"]
    assert run(argv) == EXIT_OK
    assert capsys.readouterr().out == (GOLDEN / f"help_{sub}.txt").read_text()


@pytest.mark.parametrize("sub", SUBCOMMANDS)
def test_help_documents_every_flag(sub):
    parser = build_parser()
    subparser = parser._subparsers._group_actions[0].choices[sub]
    text = subparser.format_help()
    for action in subparser._actions:
        for flag in action.option_strings:
            assert flag in text


def test_generate_and_cluster(tmp_path):
    spec = tmp_path / "s.json"
    spec.write_text(json.dumps({"recipe": "fig1", "n_total": 90}))
    assert call("generate", "--spec", str(spec), "--out", str(tmp_path / "d.csv"), "--seed", "3")[0] == 0
    code, _, _ = call("cluster", "--data", str(tmp_path / "d.csv"), "--k", "3", "--m", "2", "--seed", "7", "--out", str(tmp_path / "m.json"))
    assert code == EXIT_OK
    doc = json.loads((tmp_path / "m.json").read_text())
    assert doc["k"] == 3 and len(doc["memberships"]) == 90 and len(doc["centers"]) == 3
    assert all(abs(sum(row) - 1.0) < 1e-9 for row in doc["memberships"])


def test_sweep_and_alt_eval_reports(tmp_path, data_csv):
    out = tmp_path / "r.csv"
    assert call("sweep", "--data", str(data_csv), "--k-min", "2", "--k-max", "4", "--n-init", "2", "--out", str(out))[0] == 0
    rows = list(csv.reader(out.open()))
    assert rows[0] == ["k", "PC", "PE", "P", "XB", "PBMF", "PBM_FVG", "OS", "I"]
    assert [r[0] for r in rows[1:]] == ["2", "3", "4"]
    out = tmp_path / "t.json"
    assert call("alt-eval", "--data", str(data_csv), "--runs", "2", "--k-list", "2,3", "--n-init", "2", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["runs"] == 2


def test_jd_prints_one_number(data_csv):
    code, out, _ = call("jd", "--data", str(data_csv), "--labels", "--pair", "0,1", "--backend", "gaussian")
    assert code == EXIT_OK
    assert float(out.strip()) > 0 and len(out.split()) == 1


def test_jd_with_partition_file(tmp_path, data_csv):
    code, out, _ = call("jd", "--data", str(data_csv), "--partition", str(data_csv), "--pair", "0,1")
    assert code == EXIT_OK
    assert out == call("jd", "--data", str(data_csv), "--labels", "--pair", "0,1")[1]


def test_similarity_identical_files(data_csv):
    code, out, _ = call("similarity", "--p1", str(data_csv), "--p2", str(data_csv))
    assert code == EXIT_OK and out == "1 1 1 1\n"


def test_missing_data_is_usage_error():
    code, _, err = call("sweep", "--k-min", "2", "--k-max", "3", "--out", "x.csv")
    assert code == EXIT_USAGE
    assert "usage:" in err and "--data" in err


def test_unknown_flag_is_rejected(data_csv):
    code, _, err = call("similarity", "--p1", str(data_csv), "--p2", str(data_csv), "--verbose-mode")
    assert code == EXIT_USAGE and "--verbose-mode" in err


def test_bad_values_are_usage_errors(data_csv):
    assert call("jd", "--data", str(data_csv), "--labels", "--pair", "0")[0] == EXIT_USAGE
    assert call("sweep", "--data", str(data_csv), "--k-min", "5", "--k-max", "3", "--out", "x.csv")[0] == EXIT_USAGE
    assert call("alt-eval", "--data", str(data_csv), "--runs", "0", "--k-list", "2", "--out", "x.csv")[0] == EXIT_USAGE
    assert call("frobnicate")[0] == EXIT_USAGE
    assert call("sweep", "--data", str(data_csv), "--k-min", "2", "--k-max", "3", "--m", "0.5", "--out", "x.csv")[0] == EXIT_USAGE


def test_data_errors_carry_context(tmp_path):
    bad = tmp_path / "bad.csv"
    bad.write_text("x0,x1\n1,2\n3,oops\n")
    code, _, err = call("cluster", "--data", str(bad), "--k", "2", "--out", str(tmp_path / "m.json"))
    assert code == EXIT_DATA and "row 3, column 2" in err
    assert call("cluster", "--data", str(tmp_path / "nope.csv"), "--k", "2", "--out", "m.json")[0] == EXIT_DATA


def test_alt_eval_without_labels_is_data_error(tmp_path):
    path = tmp_path / "nolabels.csv"
    path.write_text("x0\n0\n1\n5\n6\n")
    code, _, err = call("alt-eval", "--data", str(path), "--runs", "1", "--k-list", "2", "--out", str(tmp_path / "t.csv"))
    assert code == EXIT_DATA and "labels" in err


def test_sweep_on_s1_picks_fifteen_for_index_i(tmp_path):
    data = tmp_path / "s1.csv"
    save_csv(generate(recipe("s1", seed=0)), data)
    out = tmp_path / "r.json"
    assert call("sweep", "--data", str(data), "--k-min", "10", "--k-max", "20", "--seed", "0", "--out", str(out))[0] == 0
    assert json.loads(out.read_text())["best_k"]["I"] == 15
