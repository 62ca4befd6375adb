import io
import json

import pytest

from conftest import CORPUS
from progtheory.cli import main

EXIT_CODES = {"counting.tp": 0, "infeasible_loop.tp": 1, "bank.tp": 0, "counterexamples.tp": 0}


def cli(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(EXIT_CODES))
def test_corpus_exit_codes(name):
    code, out, err = cli("run", str(CORPUS / name))
    assert code == EXIT_CODES[name], out + err
    assert not err


def test_infeasible_loop_reports_the_stuck_states():
    code, out, _ = cli("run", str(CORPUS / "infeasible_loop.tp"))
    assert code == 1
    assert "check loop_feasible l: fail" in out
    assert "    pre_init: {s0,s1}\n    pre_loop: {}" in out
    assert out.endswith("3 directives, 1 failed\n")


def test_syntax_error_and_unreadable_file_exit_2(tmp_path):
    bad = tmp_path / "bad.tp"
    bad.write_text("universe S = {a}\nprogram p = ;\n")
    code, out, err = cli("run", str(bad))
    assert code == 2 and out == ""
    assert f"{bad}:2:13: error: expected one of" in err
    code, _, err = cli("run", str(tmp_path / "missing.tp"))
    assert code == 2 and "cannot read file" in err


def test_elaboration_error_exits_2_with_note(tmp_path):
    bad = tmp_path / "atom.tp"
    bad.write_text("universe S = {a}\ncheck feasible <{(a,z)},{a}>\n")
    code, _, err = cli("run", str(bad))
    assert code == 2
    assert err == (f"{bad}:2:17: error: atom 'z' is not in universe 'S'\n"
                   "  note: universe 'S' = {a}\n")


def test_jsonl_fields():
    code, out, _ = cli("run", "--format", "jsonl", str(CORPUS / "counting.tp"))
    assert code == 0
    records = [json.loads(line) for line in out.splitlines()]
    assert len(records) == 12
    assert all({"file", "id", "position", "verdict", "witnesses"} <= set(r) for r in records)
    printed = [r for r in records if r["id"] == "print post l"]
    assert printed[0]["value"] == "{(s0,s2)}"


def test_eval_examples():
    assert cli("eval", str(CORPUS / "counting.tp"), "--expr", "step^2", "--print", "post")[:2] == (
        0, "{(s0,s2)}\n")
    assert cli("eval", "--expr", "skip", "--print", "classify")[:2] == (0, "deterministic,total\n")
    assert cli("eval", "--expr", "havoc \\ {s2}", "--print", "pre")[:2] == (0, "{s0,s1,s2}\n")
    assert cli("eval", "--expr", "havoc \\ {s2}")[:2] == (
        0, "<{(s0,s2),(s1,s2),(s2,s2)},{s0,s1,s2}>\n")


def test_eval_errors():
    code, _, err = cli("eval", "--expr", "skip ;")
    assert code == 2 and err.startswith("<expr>:1:7: error:")
    code, _, err = cli("eval", "--expr", "{s0}", "--print", "post")
    assert code == 2 and "cannot print post of a condition" in err
    code, _, err = cli("eval", "--expr", "nope")
    assert code == 2 and "unknown name 'nope'" in err


def test_enumerate():
    code, out, _ = cli("enumerate", "--size", "1")
    assert code == 0 and out.splitlines() == ["<{},{}>", "<{},{0}>", "<{(0,0)},{}>",
                                              "<{(0,0)},{0}>"]
    code, out, _ = cli("enumerate", "--size", "2")
    assert code == 0 and len(out.splitlines()) == 64 == len(set(out.splitlines()))
    code, out, err = cli("enumerate", "--size", "6")
    assert code == 2 and out == ""
    assert err == "error: enumeration is limited to 3 states, got 6\n"


def test_laws_single_and_unknown():
    code, out, _ = cli("laws", "--law", "P13")
    assert code == 0
    lines = out.splitlines()
    assert lines[0].split()[:3] == ["P13", "pass", "cases=64"]
    assert lines[-1] == "1 laws checked, 0 unexpected"
    assert "millis" not in out
    code, _, err = cli("laws", "--law", "P99")
    assert code == 2 and "unknown law 'P99'" in err
    code, _, err = cli("laws", "--law", "P11", "--size", "3")
    assert code == 2 and "use random mode" in err


def test_laws_jsonl_is_reproducible():
    args = ("laws", "--law", "P37", "--law", "P6", "--mode", "random", "--size", "4",
            "--samples", "200", "--seed", "3", "--format", "jsonl")
    first, second = cli(*args), cli(*args)
    assert first == second and first[0] == 0
    records = [json.loads(line) for line in first[1].splitlines()]
    assert [r["id"] for r in records] == ["P37", "P6"]
    assert {"id", "verdict", "cases", "failures", "witnesses"} <= set(records[0])
    assert records[0]["verdict"] == "fails-as-expected"


def test_laws_timing_flag():
    code, out, _ = cli("laws", "--law", "P7", "--timing")
    assert code == 0 and "millis=" in out


def test_format_outputs_canonical_source(tmp_path):
    code, out, _ = cli("format", str(CORPUS / "counting.tp"))
    assert code == 0
    assert out.splitlines()[0] == "universe S = {s0,s1,s2}"
    again = tmp_path / "again.tp"
    again.write_text(out)
    assert cli("format", str(again))[1] == out
    code, out, _ = cli("format", "--model", str(CORPUS / "counting.tp"))
    assert "program l = <{(s0,s2)},{s0}>" in out.splitlines()
