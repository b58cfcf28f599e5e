##
## CLI surface: every subcommand's JSON report, typed exit codes, and
## byte-stable output
##

import json

import pytest

from sl2factor.cli import main
from sl2factor.exact_algebra import poly_to_json
from sl2factor.word_core import middle_Q


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_expand(capsys):
    code, rep = run(capsys, "expand", "--n", "4")
    assert code == 0
    assert rep["command"] == "expand"
    assert rep["nvars"] == 2
    assert rep["vars"] == ["z2", "z3"]
    assert rep["unimodular"] is True
    assert rep["Q"][0] == poly_to_json(middle_Q(4)[0])
    assert "timing_ms" in rep


def test_expand_too_short(capsys):
    code, rep = run(capsys, "expand", "--n", "2")
    assert code == 2
    assert rep["error"]["code"] == "precondition"


def test_jacobian_singular_point(capsys):
    code, rep = run(capsys, "jacobian", "--n", "4", "--point", "5,0,0,7")
    assert code == 0
    assert rep["rank"] == 2
    assert rep["singular"] is True
    assert rep["exact"] is True
    assert rep["columns"][0] == ["1", "0", "0"]


def test_jacobian_float_needs_approx(capsys):
    code, rep = run(capsys, "jacobian", "--n", "4", "--point", "0.5,1,1,1")
    assert code == 2
    code, rep = run(capsys, "jacobian", "--n", "4", "--point", "0.5,1,1,1",
                    "--approx")
    assert code == 0
    assert rep["rank"] == 3
    assert rep["exact"] is False


def test_lemma_check(capsys):
    code, rep = run(capsys, "lemma-check", "--n", "4", "--samples", "50")
    assert code == 0
    assert rep["verified"] is True
    assert rep["violations"] == []


def test_fiber_solve_generic(tmp_path, capsys):
    path = tmp_path / "target.json"
    path.write_text(json.dumps(
        {"target": {"a": "2", "b": "3", "c": "1", "d": "2"}}))
    code, rep = run(capsys, "fiber-solve", "--n", "4", "--input", str(path))
    assert code == 0
    assert rep["branch"] == "generic"
    assert rep["verified"] is True
    assert rep["eq4_residual"] == "0"
    assert len(rep["point"]) == 4
    assert all(isinstance(s, str) for s in rep["point"])


def test_fiber_solve_nongeneric_odd(tmp_path, capsys):
    path = tmp_path / "target.json"
    path.write_text(json.dumps({"a": "2", "b": "0", "c": "3", "d": "1/2"}))
    code, rep = run(capsys, "fiber-solve", "--n", "5", "--input", str(path),
                    "--z1", "7")
    assert code == 0
    assert rep["branch"] == "nongeneric"
    assert rep["z1_free"] == "7"
    assert rep["point"][0] == "7"


def test_factor_const(tmp_path, capsys):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"a": "1", "b": "0", "c": "0", "d": "1"}))
    code, rep = run(capsys, "factor-const", "--input", str(path))
    assert code == 0
    assert rep["factor_count"] == 0
    assert rep["three_factor"] == {"ULU": True, "LUL": True}


def test_pad(tmp_path, capsys):
    path = tmp_path / "word.json"
    path.write_text(json.dumps(
        {"word": [{"side": "U", "entry": "3"}, {"side": "L", "entry": "2"}]}))
    code, rep = run(capsys, "pad", "--input", str(path))
    assert code == 0
    assert rep["product_match"] is True
    assert rep["length"] == 4
    assert [f["entry"] for f in rep["padded"]] == ["4", "0", "-1", "2"]


def test_cohn_family(capsys):
    code, rep = run(capsys, "cohn", "--z", "1", "--w", "2", "--factors", "4",
                    "--h3", "1")
    assert code == 0
    assert rep["mode"] == "family4"
    assert rep["factor_count"] == 4
    assert rep["exact"] is True
    assert rep["relation_residuals"] == ["0", "0", "0", "0"]
    assert [f["entry"] for f in rep["word"]] == ["0", "-2", "1", "2"]


def test_cohn_family_needs_h3(capsys):
    code, rep = run(capsys, "cohn", "--z", "1", "--w", "2", "--factors", "4")
    assert code == 2


def test_cohn_holo5(capsys):
    code, rep = run(capsys, "cohn", "--z", "1/2", "--w", "1/4")
    assert code == 0
    assert rep["mode"] == "holo5"
    assert rep["factor_count"] == 5
    assert rep["verified"] is True
    assert rep["residual"] < 1e-10


def test_winding_builtin_section(capsys):
    code, rep = run(capsys, "winding", "--radius", "4")
    assert code == 0
    assert rep["winding"] == 2
    assert rep["source"] == "w^2/|w|^(3/2)"


def test_winding_input_loop(tmp_path, capsys):
    path = tmp_path / "loop.json"
    vals = [[1, 0], [0, 1], [-1, 0], [0, -1]]
    path.write_text(json.dumps({"values": vals}))
    code, rep = run(capsys, "winding", "--input", str(path))
    assert code == 3  # pi/2 steps are not adequate
    assert rep["error"]["code"] == "verification"
    path.write_text(json.dumps({"values": [[1, 0], [0, 0], [-1, 0]]}))
    code, rep = run(capsys, "winding", "--input", str(path))
    assert code == 2  # zero sample: invalid loop, not an adequacy issue


def test_certificate(capsys):
    code, rep = run(capsys, "certificate")
    assert code == 0
    assert rep["verdict"] is True
    assert rep["achieved"] == [0, -1, 1, 0]
    assert rep["required_degree"] == 2
    ev = rep["evidence"]
    assert ev["continuation_degrees"] == [2, -2]
    assert ev["shrink_degrees"] == [0, 0, 0, 0]
    assert ev["unit_degree_e_zw"] == 0
    assert ev["continuous_section_degree"] == 2


def test_certificate_weaker_requirement(capsys):
    code, rep = run(capsys, "certificate", "--required", "1")
    assert code == 0
    assert rep["verdict"] is False


def test_bound(capsys):
    code, rep = run(capsys, "bound", "--n", "2", "--k", "2=4")
    assert code == 0
    assert rep["bound"] == 8
    code, rep = run(capsys, "bound", "--n", "3", "--k", "2=4")
    assert code == 2
    code, rep = run(capsys, "bound", "--n", "2", "--k", "oops")
    assert code == 2


def test_io_errors(tmp_path, capsys):
    code, rep = run(capsys, "factor-const", "--input",
                    str(tmp_path / "missing.json"))
    assert code == 4
    assert rep["error"]["code"] == "io"
    bad = tmp_path / "bad.json"
    bad.write_text("not json at all")
    code, rep = run(capsys, "factor-const", "--input", str(bad))
    assert code == 4


def test_missing_input_flag(capsys):
    code, rep = run(capsys, "factor-const")
    assert code == 2


def test_output_deterministic(capsys):
    _, rep1 = run(capsys, "certificate", "--d", "1/4")
    _, rep2 = run(capsys, "certificate", "--d", "1/4")
    rep1.pop("timing_ms")
    rep2.pop("timing_ms")
    assert json.dumps(rep1, sort_keys=True) == json.dumps(rep2, sort_keys=True)


def test_verify_suite_quick(capsys):
    code, rep = run(capsys, "verify-suite", "--scale", "quick")
    assert code == 0
    assert rep["all_pass"] is True
    assert len(rep["checks"]) == 10
