from __future__ import annotations

import re
from pathlib import Path

import pytest

from reiterlp.fo import Diagram
from reiterlp.theory import EQ, Atom, parse_theory
from reiterlp.translate import parse_program

DATA = Path(__file__).resolve().parent.parent / "data"

_ATOM = re.compile(r"(\w+)(?:\(([^)]*)\))?")


def atoms(text: str) -> frozenset[Atom]:
    """``"p(a) eq(a,b) r"`` -> the set of those atoms."""
    out = set()
    for name, args in _ATOM.findall(text):
        out.add(Atom(name, tuple(args.split(",")) if args else ()))
    return frozenset(out)


def diagram(text: str) -> Diagram:
    found = atoms(text)
    return Diagram(
        frozenset(a for a in found if a.predicate != EQ),
        frozenset(a.args for a in found if a.predicate == EQ),
    )


def reflexive(*constants: str) -> str:
    return " ".join(f"eq({c},{c})" for c in constants)


@pytest.fixture
def data_dir() -> Path:
    return DATA


@pytest.fixture
def supplier():
    return parse_theory((DATA / "supplier.lp").read_text())


@pytest.fixture
def supplier_omega():
    return parse_theory((DATA / "db.lp").read_text())


@pytest.fixture
def disjunction():
    return parse_program((DATA / "disjunction.lp").read_text())


# acceptance lines collected by tests/test_acceptance.py
ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}")
