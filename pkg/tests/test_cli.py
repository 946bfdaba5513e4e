"""End-to-end command tests: output shape, determinism, exit codes."""

from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from starvedpoly import __version__
from starvedpoly.cli import main

CUBIC_ARGS = ["--coeffs", "0,-3,0"]


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_lattice_node_and_edge_counts(capsys):
    code, out, err = run_cli(capsys, ["lattice", "--d", "5"])
    assert code == 0 and err == ""
    doc = json.loads(out)
    assert len(doc["nodes"]) == 16
    assert doc["metadata"]["version"] == __version__
    assert doc["metadata"]["command"] == "lattice"
    ranks = [n["rank"] for n in doc["nodes"]]
    assert sorted(ranks) == sorted(len(n["parts"]) - 1 for n in doc["nodes"])
    # each cover adds one part
    for i, j in doc["edges"]:
        assert len(doc["nodes"][j]["parts"]) == len(doc["nodes"][i]["parts"]) + 1


def test_lattice_min_len_filter(capsys):
    code, out, _ = run_cli(capsys, ["lattice", "--d", "5", "--min-len", "2"])
    assert code == 0
    assert len(json.loads(out)["nodes"]) == 15


def test_lattice_dot_format(capsys):
    code, out, _ = run_cli(capsys, ["lattice", "--d", "3", "--format", "dot"])
    assert code == 0
    assert out.startswith("digraph composition_lattice {")
    assert out.count(" -> ") == 4  # cover edges of the d=3 refinement order


def test_classify_fulldim(capsys):
    code, out, _ = run_cli(capsys, ["classify", *CUBIC_ARGS, "--s", "2", "--u", "1,1,1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["classification"]["tag"] == "fulldim"
    assert doc["classification"]["dim"] == 1
    assert doc["metadata"]["input"]["u"] == [1, 1, 1]


def test_classify_accepts_roots_input(capsys):
    code, out, _ = run_cli(
        capsys,
        ["classify", "--roots", "-1.7320508075688772,0,1.7320508075688772", "--s", "2", "--u", "3"],
    )
    assert code == 0
    assert json.loads(out)["classification"]["tag"] == "empty"


def test_occurs_with_oracle(capsys):
    code, out, _ = run_cli(capsys, ["occurs", *CUBIC_ARGS, "--s", "2", "--oracle"])
    assert code == 0
    doc = json.loads(out)
    assert doc["U"] == [[1, 2], [2, 1]]
    assert doc["final"] == [[1, 2], [1, 1, 1], [2, 1]]
    assert doc["oracle"]["match"] is True


def test_atoms_of_the_cubic(capsys):
    code, out, _ = run_cli(capsys, ["atoms", *CUBIC_ARGS, "--s", "2"])
    assert code == 0
    atoms = json.loads(out)["atoms"]
    assert [a["composition"] for a in atoms] == [[1, 2], [2, 1]]
    tails = sorted(a["witness"]["coeffs"][2] for a in atoms)
    assert abs(tails[0] + 2.0) <= 1e-9 and abs(tails[1] - 2.0) <= 1e-9


def test_subdisc_exact_values(capsys):
    code, out, _ = run_cli(capsys, ["subdisc", "--coeffs", "0,-3,2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["mode"] == "exact"
    assert doc["values"] == [0, 18, 3]
    assert doc["certificate"] == "hyperbolic"
    assert doc["distinct_roots"] == 2


def test_subdisc_non_hyperbolic_skips_count(capsys):
    code, out, _ = run_cli(capsys, ["subdisc", "--coeffs", "0,1"])
    assert code == 0
    doc = json.loads(out)
    assert doc["certificate"] == "not_hyperbolic"
    assert doc["distinct_roots"] is None


def test_verify_report(capsys):
    code, out, _ = run_cli(capsys, ["verify", *CUBIC_ARGS, "--s", "2"])
    assert code == 0
    doc = json.loads(out)
    assert doc["report"] == {
        "graded": True,
        "max_chain_len": 2,
        "atomic": True,
        "coatomic": True,
        "rank_counts": [1, 2, 1],
    }
    assert doc["lattice"]["covers"] == [[0, 1], [0, 2], [1, 3], [2, 3]]


def test_mesh_writes_per_stratum_files(capsys, tmp_path):
    out_dir = tmp_path / "mesh"
    code, out, _ = run_cli(
        capsys,
        ["mesh", *CUBIC_ARGS, "--s", "2", "--grid", "5", "--format", "csv", "--out", str(out_dir)],
    )
    assert code == 0
    names = sorted(p.name for p in out_dir.iterdir())
    assert names == [
        "metadata.json",
        "stratum_1-1-1.csv",
        "stratum_1-2.csv",
        "stratum_2-1.csv",
    ]
    meta = json.loads((out_dir / "metadata.json").read_text())
    assert json.loads(out) == meta
    rows = list(csv.reader(io.StringIO((out_dir / "stratum_1-1-1.csv").read_text())))
    assert rows[0] == ["composition", "x1", "x2", "x3", "f3"]
    assert all(r[0] == "(1,1,1)" for r in rows[1:])
    assert len(rows) > 1
    vertex = list(csv.reader(io.StringIO((out_dir / "stratum_1-2.csv").read_text())))
    assert vertex[0] == ["composition", "x1", "x2", "f3"]
    assert abs(float(vertex[1][3]) - 2.0) <= 1e-9


def test_mesh_requires_out_directory(capsys):
    code, _, err = run_cli(capsys, ["mesh", *CUBIC_ARGS, "--s", "2", "--grid", "5"])
    assert code == 1
    assert json.loads(err)["error"] == "UsageError"


def test_outputs_are_byte_identical_across_runs(capsys, tmp_path):
    argv = ["occurs", *CUBIC_ARGS, "--s", "2"]
    _, first, _ = run_cli(capsys, argv)
    _, second, _ = run_cli(capsys, argv)
    assert first == second

    dirs = [tmp_path / "a", tmp_path / "b"]
    for d in dirs:
        code, _, _ = run_cli(
            capsys,
            ["mesh", *CUBIC_ARGS, "--s", "2", "--grid", "7", "--format", "csv", "--out", str(d)],
        )
        assert code == 0
    for name in ("metadata.json", "stratum_1-1-1.csv"):
        assert (dirs[0] / name).read_bytes() == (dirs[1] / name).read_bytes()


def test_out_flag_writes_file(capsys, tmp_path):
    target = tmp_path / "occ.json"
    code, out, _ = run_cli(capsys, ["occurs", *CUBIC_ARGS, "--s", "2", "--out", str(target)])
    assert code == 0
    assert out == ""
    assert json.loads(target.read_text())["U"] == [[1, 2], [2, 1]]


def test_seed_env_override(capsys, monkeypatch):
    monkeypatch.setenv("STARVED_POLY_SEED", "7")
    _, out, _ = run_cli(capsys, ["occurs", *CUBIC_ARGS, "--s", "2"])
    assert json.loads(out)["metadata"]["seed"] == 7
    monkeypatch.setenv("STARVED_POLY_SEED", "not-a-number")
    code, _, err = run_cli(capsys, ["occurs", *CUBIC_ARGS, "--s", "2"])
    assert code == 1
    assert json.loads(err)["error"] == "UsageError"


def test_seed_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("STARVED_POLY_SEED", "7")
    _, out, _ = run_cli(capsys, ["occurs", *CUBIC_ARGS, "--s", "2", "--seed", "99"])
    assert json.loads(out)["metadata"]["seed"] == 99


def test_usage_exit_codes(capsys):
    code, _, err = run_cli(capsys, ["classify", "--coeffs", "0,-3,0", "--s", "2"])
    assert code == 1  # missing --u
    code, _, err = run_cli(capsys, ["classify", "--coeffs", "0,-3,0", "--s", "3", "--u", "1,1,1"])
    assert code == 1  # s out of range
    code, _, err = run_cli(capsys, ["occurs", "--s", "2"])
    assert code == 1  # no polynomial given
    code, _, err = run_cli(
        capsys, ["occurs", "--coeffs", "0,-3,0", "--roots", "0,1", "--s", "2"]
    )
    assert code == 1  # both polynomial inputs given
    code, _, err = run_cli(capsys, ["lattice", "--d", "0"])
    assert code == 1


def test_hypothesis_violation_exit_code(capsys):
    code, _, err = run_cli(capsys, ["occurs", "--coeffs", "-3,3,-1", "--s", "2"])
    assert code == 3
    assert json.loads(err)["error"] == "HypothesisViolation"


def test_solver_error_exit_code(capsys):
    # degree 9 trips the brute-force cost guard behind --oracle
    roots = ",".join(str(v) for v in range(-4, 5))
    code, _, err = run_cli(capsys, ["occurs", "--roots", roots, "--s", "2", "--oracle"])
    assert code == 2
    assert json.loads(err)["error"] == "CostGuardExceeded"


def test_console_entry_point_runs():
    proc = subprocess.run(
        [sys.executable, "-m", "starvedpoly.cli", "lattice", "--d", "3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert len(json.loads(proc.stdout)["nodes"]) == 4
