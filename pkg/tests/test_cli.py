"""End-to-end tests for the command-line interface."""

import json
import os
import subprocess
import sys

import pytest

from golden import CIRCLE_LINE, MONOMIAL_SURFACE, SYLVESTER

from resnewt.cli import main

SYLVESTER_TEXT = """\
1
2; 1; 0
2; 0
projection: full
"""

SURFACE_TEXT = """\
2
0 0; 1 1
0 0; 1 2
0 0; 2 0
projection: implicitization
"""

CIRCLE_LINE_TEXT = """\
2
0 0; 1 0; 0 1
0 0; 2 0; 0 2
0 0; 1 0; 0 1
projection: u-resultant
"""

NOT_ESSENTIAL_TEXT = """\
2
0 0; 0 1
0 0; 0 2
0 0; 1 0; 0 1
projection: full
"""


def _run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


# -- compute: plain output -----------------------------------------------------


def test_compute_plain_golden_vertices(tmp_path, capsys):
    path = _write(tmp_path, "sylvester.txt", SYLVESTER_TEXT)
    code, out, err = _run(["compute", path], capsys)
    assert code == 0
    vlines = [l for l in out.splitlines() if l.startswith("v ")]
    got = {tuple(int(x) for x in l[2:].split()) for l in vlines}
    assert got == SYLVESTER["vertices"]
    assert "mode: exact" in out
    assert "dim: 2" in out
    assert err == ""


def test_compute_plain_is_deterministic(tmp_path, capsys):
    path = _write(tmp_path, "surface.txt", SURFACE_TEXT)
    code1, out1, _ = _run(["compute", path, "--seed", "4"], capsys)
    code2, out2, _ = _run(["compute", path, "--seed", "4"], capsys)
    assert code1 == code2 == 0
    assert out1 == out2


def test_compute_vertices_sorted_lexicographically(tmp_path, capsys):
    path = _write(tmp_path, "circle.txt", CIRCLE_LINE_TEXT)
    code, out, err = _run(["compute", path], capsys)
    assert code == 0
    vlines = [
        tuple(int(x) for x in l[2:].split())
        for l in out.splitlines()
        if l.startswith("v ")
    ]
    assert vlines == sorted(vlines)
    assert set(vlines) == CIRCLE_LINE["vertices"]


def test_compute_reads_stdin(tmp_path, capsys, monkeypatch):
    import io

    monkeypatch.setattr(sys, "stdin", io.StringIO(SYLVESTER_TEXT))
    code, out, err = _run(["compute"], capsys)
    assert code == 0
    assert "v 0 0 2 2 0" in out


def test_compute_equations_reported_for_lower_dim(tmp_path, capsys):
    path = _write(tmp_path, "surface.txt", SURFACE_TEXT)
    code, out, err = _run(["compute", path], capsys)
    assert code == 0
    elines = [l for l in out.splitlines() if l.startswith("e ")]
    assert len(elines) == 2  # dim 1 in ambient 3
    verts = [
        tuple(int(x) for x in l[2:].split())
        for l in out.splitlines()
        if l.startswith("v ")
    ]
    for line in elines:
        body = line[2:]
        lhs, rhs = body.split(" = ")
        coeffs = [int(x) for x in lhs.split()]
        for v in verts:
            assert sum(c * x for c, x in zip(coeffs, v)) == int(rhs)


# -- compute: json output ------------------------------------------------------------


def test_compute_json_structure(tmp_path, capsys):
    path = _write(tmp_path, "surface.txt", SURFACE_TEXT)
    code, out, err = _run(
        ["compute", path, "--format", "json", "--f-vector"], capsys
    )
    assert code == 0
    doc = json.loads(out)
    assert doc["mode"] == "exact"
    assert doc["dim"] == 1
    assert doc["ambient"] == 3
    assert {tuple(v) for v in doc["vertices"]} == MONOMIAL_SURFACE[
        "mode_implicit_vertices"
    ]
    assert doc["f_vector"] == [2]
    # Emitted with sorted keys: byte-stable across runs.
    assert out == json.dumps(doc, indent=2, sort_keys=True) + "\n"


def test_compute_json_matches_plain_content(tmp_path, capsys):
    path = _write(tmp_path, "sylvester.txt", SYLVESTER_TEXT)
    _, out_plain, _ = _run(["compute", path], capsys)
    _, out_json, _ = _run(["compute", path, "--format", "json"], capsys)
    doc = json.loads(out_json)
    plain_verts = {
        tuple(int(x) for x in l[2:].split())
        for l in out_plain.splitlines()
        if l.startswith("v ")
    }
    assert {tuple(v) for v in doc["vertices"]} == plain_verts


# -- compute: option surface --------------------------------------------------------


def test_compute_no_hash_same_stdout(tmp_path, capsys):
    path = _write(tmp_path, "circle.txt", CIRCLE_LINE_TEXT)
    _, out_hashed, _ = _run(["compute", path], capsys)
    _, out_plainrun, _ = _run(["compute", path, "--no-hash"], capsys)
    assert out_hashed == out_plainrun


def test_compute_stats_on_stderr_only(tmp_path, capsys):
    path = _write(tmp_path, "sylvester.txt", SYLVESTER_TEXT)
    _, out_quiet, err_quiet = _run(["compute", path], capsys)
    _, out_stats, err_stats = _run(["compute", path, "--stats"], capsys)
    assert out_quiet == out_stats  # stdout unaffected
    assert err_quiet == ""
    assert "oracle calls" in err_stats
    assert "predicate time" in err_stats
    assert "backend" in err_stats


def test_compute_unproject_lines(tmp_path, capsys):
    path = _write(tmp_path, "surface.txt", SURFACE_TEXT)
    code, out, err = _run(["compute", path, "--unproject"], capsys)
    assert code == 0
    ulines = {
        tuple(int(x) for x in l[2:].split())
        for l in out.splitlines()
        if l.startswith("u ")
    }
    assert ulines == MONOMIAL_SURFACE["mode_full_vertices"]


def test_compute_projection_override(tmp_path, capsys):
    # The same supports computed in full mode via --projection.
    path = _write(tmp_path, "surface.txt", SURFACE_TEXT)
    code, out, err = _run(["compute", path, "--projection", "full"], capsys)
    assert code == 0
    verts = {
        tuple(int(x) for x in l[2:].split())
        for l in out.splitlines()
        if l.startswith("v ")
    }
    assert verts == MONOMIAL_SURFACE["mode_full_vertices"]


def test_compute_approx_mode(tmp_path, capsys):
    path = _write(tmp_path, "circle.txt", CIRCLE_LINE_TEXT)
    code, out, err = _run(
        ["compute", path, "--mode", "approx", "--threshold", "0.9"], capsys
    )
    assert code == 0
    assert "ratio: " in out
    assert "reached: yes" in out
    assert "threshold: 9/10" in out


def test_compute_random_mode(tmp_path, capsys):
    path = _write(tmp_path, "circle.txt", CIRCLE_LINE_TEXT)
    code, out, err = _run(
        ["compute", path, "--mode", "random", "--directions", "400"], capsys
    )
    assert code == 0
    pts = {
        tuple(int(x) for x in l[2:].split())
        for l in out.splitlines()
        if l.startswith("v ")
    }
    assert pts == CIRCLE_LINE["vertices"]
    assert "directions: 400" in out


# -- compute: failure modes ---------------------------------------------------------


def test_compute_errors_exit_2(tmp_path, capsys):
    bad = _write(tmp_path, "bad.txt", "not a support family\n")
    assert _run(["compute", bad], capsys)[0] == 2
    assert _run(["compute", str(tmp_path / "missing.txt")], capsys)[0] == 2
    good = _write(tmp_path, "good.txt", SYLVESTER_TEXT)
    code, out, err = _run(
        ["compute", good, "--mode", "approx", "--threshold", "1.5"], capsys
    )
    assert code == 2 and "threshold" in err
    code, out, err = _run(
        ["compute", good, "--mode", "approx", "--threshold", "zebra"], capsys
    )
    assert code == 2
    code, out, err = _run(
        ["compute", good, "--mode", "random", "--directions", "2"], capsys
    )
    assert code == 2


def test_compute_ambiguous_unprojection_exit_2(tmp_path, capsys):
    # Valid implicit instance whose non-symbolic coordinates are not pinned
    # by the block invariant: unprojection must fail cleanly, not traceback.
    text = (
        "2\n0 0; 1 1\n0 0; 2 0; 0 2\n0 0; 1 0; 0 1\nprojection: implicit\n"
    )
    path = _write(tmp_path, "ambiguous.txt", text)
    code, out, err = _run(["compute", path, "--unproject"], capsys)
    assert code == 2
    assert "unproject" in err
    assert out == ""
    # Without --unproject the same instance computes fine.
    code, out, err = _run(["compute", path], capsys)
    assert code == 0


def test_compute_not_essential_exit_3(tmp_path, capsys):
    path = _write(tmp_path, "degenerate.txt", NOT_ESSENTIAL_TEXT)
    code, out, err = _run(["compute", path], capsys)
    assert code == 3
    assert "essential" in err
    assert "0" in err and "1" in err  # the violating blocks


# -- generate ---------------------------------------------------------------------


def test_generate_deterministic_and_parseable(tmp_path, capsys):
    code1, out1, _ = _run(
        ["generate", "2", "4", "--sizes", "3,3,3", "--seed", "11"], capsys
    )
    code2, out2, _ = _run(
        ["generate", "2", "4", "--sizes", "3,3,3", "--seed", "11"], capsys
    )
    assert code1 == code2 == 0
    assert out1 == out2
    from resnewt.cayley import check_essential, parse_text

    fam = parse_text(out1)
    assert fam.n == 2
    assert [len(s) for s in fam.supports] == [3, 3, 3]
    check_essential(fam)  # generated instances are always essential


def test_generate_json_format(capsys):
    code, out, _ = _run(
        ["generate", "1", "3", "--sizes", "2,2", "--format", "json"], capsys
    )
    assert code == 0
    from resnewt.cayley import parse_json

    fam = parse_json(out)
    assert fam.n == 1


def test_generate_modes_and_validation(capsys):
    code, out, _ = _run(
        ["generate", "2", "3", "--sizes", "3,2,2", "--projection", "u-res"], capsys
    )
    assert code == 0
    from resnewt.cayley import parse_text

    fam = parse_text(out)
    assert fam.mode == "u-resultant"
    assert set(fam.supports[0]) == {(0, 0), (1, 0), (0, 1)}

    code, out, _ = _run(
        ["generate", "2", "3", "--sizes", "2,2", "--seed", "1"], capsys
    )
    assert code == 2  # wrong number of sizes
    code, out, _ = _run(
        ["generate", "2", "3", "--sizes", "0,2,2", "--seed", "1"], capsys
    )
    assert code == 2  # empty support requested


def test_generate_pipes_into_compute(tmp_path, capsys):
    code, out, _ = _run(
        ["generate", "2", "4", "--sizes", "3,3,3", "--seed", "5", "--projection", "implicit"],
        capsys,
    )
    assert code == 0
    path = _write(tmp_path, "generated.txt", out)
    code, out, err = _run(["compute", path], capsys)
    assert code == 0
    assert any(l.startswith("v ") for l in out.splitlines())


# -- backend equivalence -------------------------------------------------------


def test_pure_backend_byte_identical(tmp_path):
    path = _write(tmp_path, "surface.txt", SURFACE_TEXT)
    base_cmd = [
        sys.executable,
        "-m",
        "resnewt.cli",
        "compute",
        path,
        "--format",
        "json",
        "--f-vector",
        "--unproject",
    ]
    compiled = subprocess.run(
        base_cmd, capture_output=True, text=True, env=dict(os.environ)
    )
    pure_env = dict(os.environ)
    pure_env["RESNEWT_PURE"] = "1"
    pure = subprocess.run(base_cmd, capture_output=True, text=True, env=pure_env)
    assert compiled.returncode == pure.returncode == 0
    assert compiled.stdout == pure.stdout


def test_console_entry_point_installed():
    result = subprocess.run(
        ["resnewt", "compute", "-", "--format", "json"],
        input=SYLVESTER_TEXT,
        capture_output=True,
        text=True,
    )
    assert result.returncode == 0
    doc = json.loads(result.stdout)
    assert {tuple(v) for v in doc["vertices"]} == SYLVESTER["vertices"]
