import json
from pathlib import Path

import pytest

from logk3.cli import EXIT_INCONSISTENT, EXIT_INPUT, EXIT_OK, EXIT_STEP, main
from logk3.documents import DocumentError, parse_pair, parse_script

DATA = Path(__file__).parent / "data"
GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture(autouse=True)
def no_color(monkeypatch):
    monkeypatch.setenv("LOGK3_COLOR", "0")


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def golden(name):
    return (GOLDEN / name).read_text(encoding="utf-8")


# -- golden output ---------------------------------------------------------------


@pytest.mark.parametrize(
    "argv, name",
    [
        (["apply", DATA / "instance.json", "--script", DATA / "script_110_503.json", "--trace"], "trace_110_503.txt"),
        (["apply", DATA / "zero_instance.json", "--script", DATA / "script_506_once.json", "--trace"], "trace_506.txt"),
        (["apply", DATA / "chain4.json", "--script", DATA / "script_506_twice.json", "--trace"], "trace_506_chain4.txt"),
        (["classify", DATA / "c4.json"], "classify_c4.txt"),
        (["enumerate", "--max-n", 2, "--min-lambda", 0, "--max-lambda", 1], "enumerate_n2_0_1.csv"),
        (["iitaka", "--type", "b-i", "--counterexample"], "iitaka_b-i.txt"),
    ],
)
def test_golden(capsys, argv, name):
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_OK
    assert out == golden(name)


def test_golden_traces_match_formulas():
    from oracles import fmt, seq_110, seq_502, seq_503, seq_506

    lam = (1, -2, -3, -2, -4)
    want = [fmt(t) for t in seq_110(lam) + seq_502(lam) + seq_503(lam, 3)]
    assert golden("trace_110_503.txt").splitlines() == want
    assert golden("trace_506.txt").splitlines() == [fmt(t) for t in seq_506((0, -2, -3, -2, -4))]
    assert golden("trace_506_chain4.txt").splitlines() == [fmt(t) for t in seq_506((0, -3, -4, -5))]


# -- classify --------------------------------------------------------------------


def test_classify_text(capsys):
    code, out, _ = run(capsys, "classify", DATA / "instance.json")
    assert code == EXIT_OK
    assert out.splitlines()[0] == "C2 / countably many A¹ curves"


def test_classify_inconsistent_exit(capsys):
    code, out, _ = run(capsys, "classify", DATA / "hodge.json")
    assert code == EXIT_INCONSISTENT
    assert out.startswith("Inconsistent: Hodge index")


def test_classify_json_and_dot(capsys, tmp_path):
    dot = tmp_path / "g.dot"
    code, out, _ = run(capsys, "classify", DATA / "zero_instance.json", "--json", "--dot", dot)
    assert code == EXIT_OK
    report = json.loads(out)
    assert report["class"] == "C2" and report["verdict"] == "CountablyInfinite"
    assert report["trace"][0]["step"] == {"op": "pivot", "component": 1, "direction": "pred"}
    assert report["trace"][0]["after"] == "(0, -1, -3, -2, -5)"
    text = dot.read_text()
    assert text.startswith("graph ") and text.count(" -- ") == 5
    assert 'D1 [label="D1 (0)"];' in text


def test_classify_json_c4_has_witness(capsys):
    _, out, _ = run(capsys, "classify", DATA / "c4.json", "--json")
    report = json.loads(out)
    assert report["b2_witness"] == "(-1, -1, -1, -1)" and report["b2_fails"] is True


def test_dot_for_nodal_and_two_cycle(capsys, tmp_path):
    dot = tmp_path / "n.dot"
    run(capsys, "classify", DATA / "nodal_cubic.json", "--dot", dot)
    assert "D1 -- D1;" in dot.read_text()
    run(capsys, "classify", DATA / "c4.json", "--dot", dot)
    assert dot.read_text().count("D1 -- D2;") == 2


def test_lattice_mode_document(capsys):
    code, out, _ = run(capsys, "classify", DATA / "nodal_cubic.json")
    assert code == EXIT_OK and out.startswith("C1 / countably many")


# -- apply -----------------------------------------------------------------------


def test_apply_round_trip(capsys, tmp_path):
    out_file = tmp_path / "out.json"
    code, _, _ = run(capsys, "apply", DATA / "three_lines.json", "--script", DATA / "script_attach_two.json", "--out", out_file)
    assert code == EXIT_OK
    doc = json.loads(out_file.read_text())
    assert doc["boundary"] == {"kind": "circular", "lambdas": [0, 0, 1]}
    assert doc["mode"] == "lattice" and len(doc["gram"]) == 3
    # the emitted document parses back to the same pair
    name, S = parse_pair(doc)
    assert name == "P2 three lines" and S.shape.lambdas == (0, 0, 1)
    code, out, _ = run(capsys, "apply", out_file)
    assert code == EXIT_OK and json.loads(out) == doc


def test_apply_trace_with_out(capsys, tmp_path):
    out_file = tmp_path / "o.json"
    code, out, _ = run(
        capsys, "apply", DATA / "zero_instance.json", "--script", DATA / "script_506_once.json", "--trace", "--out", out_file
    )
    assert code == EXIT_OK and out == golden("trace_506.txt")
    assert json.loads(out_file.read_text())["boundary"]["lambdas"] == [0, -1, -3, -2, -5]


def test_apply_step_failure_exit(capsys, tmp_path):
    script = tmp_path / "bad.json"
    script.write_text(json.dumps({"steps": [{"op": "pivot", "component": 2}]}))
    code, out, err = run(capsys, "apply", DATA / "instance.json", "--script", script)
    assert code == EXIT_STEP and out == ""
    assert "step 1:" in err and "0-component" in err


def test_attach_on_type_document_fails(capsys):
    code, _, err = run(capsys, "apply", DATA / "instance.json", "--script", DATA / "script_attach_two.json")
    assert code == EXIT_STEP and "full-lattice" in err


# -- input errors ----------------------------------------------------------------


@pytest.mark.parametrize(
    "doc, message",
    [
        ({"boundary": {"kind": "circular"}}, "field 'boundary.lambdas': missing"),
        ({"boundary": {"kind": "circular", "lambdas": [1, "x"]}}, "boundary.lambdas[1]"),
        ({"boundary": {"kind": "cusp"}}, "field 'boundary.kind'"),
        ({"boundary": {"kind": "circular", "lambdas": [1]}}, "boundary.lambdas"),
        ({"mode": "weird", "boundary": {"kind": "nodal", "self_int": 9}}, "field 'mode'"),
        ({"mode": "lattice", "boundary": {"kind": "nodal", "self_int": 9}}, "field 'gram': missing"),
        (
            {"mode": "lattice", "boundary": {"kind": "nodal", "self_int": 8}, "gram": [[1]], "canonical": [-3], "boundary_classes": [[3]]},
            "does not match",
        ),
    ],
)
def test_bad_pair_documents(capsys, tmp_path, doc, message):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "classify", path)
    assert code == EXIT_INPUT
    assert message in err


def test_malformed_json_reports_position(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"boundary": \n  {"kind": }')
    code, _, err = run(capsys, "classify", path)
    assert code == EXIT_INPUT and "line 2, column" in err


def test_missing_file(capsys):
    code, _, err = run(capsys, "classify", "/nonexistent/pair.json")
    assert code == EXIT_INPUT and "cannot read" in err


@pytest.mark.parametrize(
    "steps, message",
    [
        ([{"op": "pivot", "component": 0}], "1-based"),
        ([{"op": "twist", "component": 1}], "steps[0].op"),
        ([{"op": "blowup", "edge": [1]}], "two 1-based"),
        ([{"op": "pivot", "component": 1, "direction": "up"}], "succ or pred"),
    ],
)
def test_bad_scripts(steps, message):
    with pytest.raises(DocumentError, match=message.replace("[", r"\[").replace("]", r"\]")):
        parse_script({"steps": steps})


# -- other commands --------------------------------------------------------------


def test_singularity(capsys):
    assert run(capsys, "singularity", "--chain", "-3,-2")[1] == "a/b = 5/2 (a=5, b=2)\n"
    assert run(capsys, "singularity", "--chain", "-2,-2")[1] == "a/b = 3/2 (a=3, b=2)\n"
    code, _, err = run(capsys, "singularity", "--chain", "-2,-1")
    assert code == EXIT_INPUT and "<= -2" in err


def test_lemma33(capsys):
    assert run(capsys, "lemma33", "--modulus", 12, "--gens", 0, "--a", 4, "--target", 0)[1] == "p = 3\n"
    assert run(capsys, "lemma33", "--modulus", 12, "--a", 4)[1] == "p = 3\n"
    assert run(capsys, "lemma33", "--modulus", 100, "--gens", 20, "--a", 10)[1] == "p = 10\n"
    assert run(capsys, "lemma33", "--modulus", 12, "--a", 4, "--target", 1)[1] == "none\n"


def test_iitaka_commands(capsys):
    code, out, _ = run(capsys, "iitaka", "--type", "b-xii")
    assert code == EXIT_OK and "class: C3" in out and "type allowed for C3: yes" in out
    code, out, _ = run(capsys, "iitaka", "--type", "b-iv", "--counterexample")
    assert "B2 evaluated on two-node blowup: (-1, -1, 1, -1)" in out
    assert out.rstrip().endswith("B2: FAILS — at most finitely many A¹ curves")
    code, _, err = run(capsys, "iitaka", "--type", "b-iii")
    assert code == EXIT_INPUT and "needs beta" in err
    code, _, err = run(capsys, "iitaka", "--type", "a-iii'")
    assert code == EXIT_INPUT and "disconnected" in err


def test_enumerate_to_file(capsys, tmp_path):
    path = tmp_path / "atlas.csv"
    code, out, _ = run(capsys, "enumerate", "--max-n", 3, "--min-lambda", -1, "--max-lambda", 1, "--out", path)
    assert code == EXIT_OK and out == ""
    lines = path.read_text().splitlines()
    assert lines[0] == "type,class,verdict,normal_type,trace_len"
    assert len(lines) > 5


def test_color_only_on_tty(capsys, monkeypatch):
    from logk3 import cli

    class Tty:
        def isatty(self):
            return True

    monkeypatch.setenv("LOGK3_COLOR", "1")
    assert cli._color("C4", "1", Tty()) == "\033[1mC4\033[0m"
    monkeypatch.setenv("LOGK3_COLOR", "0")
    assert cli._color("C4", "1", Tty()) == "C4"
    assert "\033" not in run(capsys, "classify", DATA / "c4.json")[1]


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "logk3", "singularity", "--chain", "-2"], capture_output=True, text=True
    )
    assert proc.returncode == 0 and proc.stdout == "a/b = 2/1 (a=2, b=1)\n"
