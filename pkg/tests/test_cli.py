from __future__ import annotations

import subprocess
import sys
from pathlib import Path

import pytest
from conftest import DATA

from reiterlp.cli import RunConfig, main

GOLDEN = Path(__file__).resolve().parent / "golden"


def run(argv, capsys):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


@pytest.mark.parametrize(
    "argv, golden",
    [
        (["solve", DATA / "db.lp"], "solve_db.txt"),
        (["solve", "--program", DATA / "disjunction.lp"], "solve_disjunction.txt"),
        (["solve", "--program", "--herbrand", DATA / "four.lp"], "solve_four_herbrand.txt"),
        (["oracle", DATA / "supplier.lp"], "oracle_supplier.txt"),
        (["translate", DATA / "empty.lp"], "translate_empty.txt"),
        (["emit-asp", "--program", "--style", "legacy", DATA / "disjunction.lp"], DATA / "disjunction.legacy.lp"),
    ],
)
def test_golden(argv, golden, capsys):
    code, out, _ = run(argv, capsys)
    assert code == 0
    assert out == (GOLDEN / golden).read_text()


def test_solve_db_matches_reference_answers(capsys):
    _, out, err = run(["solve", DATA / "db.lp"], capsys)
    assert err == "3 answer set(s)\n"
    lines = out.splitlines()
    answers = [lines[i + 1].split() for i, line in enumerate(lines) if line.startswith("Answer:")]
    assert len(answers) == 3
    assert {"eq(omega,acme)", "eq(acme,omega)", "supplies(acme,p3)", "supplies(omega,p1)"} <= set(answers[0])


def test_rule_file_with_una_list(capsys):
    argv = ["solve", "--program", DATA / "db_rules.lp", "-una", "acme", "foo", "p1", "p2", "p3"]
    code, out, _ = run(argv, capsys)
    assert code == 0
    _, theory_out, _ = run(["solve", DATA / "db.lp"], capsys)
    assert out == theory_out


def test_empty_theory(capsys):
    code, out, _ = run(["solve", DATA / "empty.lp"], capsys)
    assert code == 0
    assert out.splitlines()[:2] == ["Answer: 1", "eq(a,a)"]


@pytest.mark.parametrize("name", ["db.lp", "supplier.lp"])
def test_check_theories(name, capsys):
    code, out, _ = run(["check", DATA / name], capsys)
    assert code == 0
    assert out == f"{DATA / name}: ok, 3 diagrams\n"


@pytest.mark.parametrize("name, count", [("disjunction.lp", 3), ("four.lp", 23)])
def test_check_programs(name, count, capsys):
    code, out, _ = run(["check", "--program", DATA / name], capsys)
    assert code == 0
    assert out.endswith(f"ok, {count} diagrams\n")


def test_check_random(capsys):
    code, out, _ = run(["check", "--random", "10", "--seed", "0"], capsys)
    assert code == 0
    assert len(out.splitlines()) == 10
    assert all(": ok, " in line for line in out.splitlines())


def test_no_una_on_theory(capsys):
    # with every pair but those inside {omega, acme, foo} distinct, omega may meet acme or foo
    code, out, _ = run(["check", DATA / "db.lp", "-no-una", "omega", "acme", "foo"], capsys)
    assert code == 0
    assert "ok, 5 diagrams" in out


def test_models_limit(capsys):
    _, out, _ = run(["solve", DATA / "db.lp", "--models", "1"], capsys)
    assert out.count("Answer:") == 1 and out.count("Diagram:") == 1


def test_output_file(tmp_path, capsys):
    target = tmp_path / "out.txt"
    code, out, _ = run(["translate", DATA / "empty.lp", "-o", target], capsys)
    assert code == 0 and out == ""
    assert target.read_text() == (GOLDEN / "translate_empty.txt").read_text()


def test_parse_error_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.lp"
    bad.write_text("part(p1")
    code, _, err = run(["solve", bad], capsys)
    assert code == 1
    assert err == f"reiterlp: {bad}:1:8: expected ')', found end of input\n"


def test_missing_file(capsys):
    code, _, err = run(["solve", "no-such-file.lp"], capsys)
    assert code == 1 and "no-such-file.lp" in err


def test_guardrail_exit_code(capsys):
    code, _, err = run(["oracle", "--program", DATA / "db_rules.lp"], capsys)
    assert code == 3
    assert "force" in err


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["check", "--random", "3"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["solve", str(DATA / "db.lp"), "-una", "a", "-no-una", "b"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit):
        main(["solve", "--mod", "1", str(DATA / "db.lp")])


def test_check_mismatch_exit_code(monkeypatch, capsys):
    import reiterlp.cli as cli

    monkeypatch.setattr(cli, "oracle_diagrams", lambda source, cfg: [])
    code, out, _ = run(["check", DATA / "supplier.lp"], capsys)
    assert code == 2
    assert "MISMATCH" in out and "solver only:" in out


def test_run_config_invariants():
    with pytest.raises(ValueError):
        RunConfig("solve", "x.lp", una_mode="una")
    with pytest.raises(ValueError):
        RunConfig("solve", "x.lp", models=-1)
    with pytest.raises(ValueError):
        RunConfig("explode", "x.lp")


def test_module_entry_point_is_byte_stable():
    argv = [sys.executable, "-m", "reiterlp", "solve", str(DATA / "db.lp")]
    first = subprocess.run(argv, capture_output=True, check=True).stdout
    second = subprocess.run(argv, capture_output=True, check=True).stdout
    assert first == second == (GOLDEN / "solve_db.txt").read_bytes()
