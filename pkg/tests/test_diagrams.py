from __future__ import annotations

import pytest
from conftest import atoms, diagram, reflexive

from reiterlp.diagrams import (
    answer_set_to_diagram,
    diagram_to_answer_set,
    diagrams_equal_up_to_iso,
    quotient,
    roundtrip_ok,
)
from reiterlp.fo import DiagramError, diagram_of, enumerate_dca_models
from reiterlp.generate import random_theory
from reiterlp.solver import enumerate_stable_models
from reiterlp.theory import Signature
from reiterlp.translate import compile_theory

AB = Signature(("a", "b"), (("p", 1),))
OMEGA_COMMON = (
    "part(p1) part(p2) part(p3) supplier(acme) supplier(foo) supplier(omega) "
    "supplies(acme,p1) supplies(foo,p2) supplies(omega,p3) subpart(p1,p2) "
    + reflexive("p1", "p2", "p3", "acme", "foo", "omega")
)
J2 = diagram(OMEGA_COMMON + " supplies(acme,p3) supplies(omega,p1) eq(omega,acme) eq(acme,omega)")
J3 = diagram(OMEGA_COMMON + " supplies(foo,p3) supplies(omega,p2) eq(omega,foo) eq(foo,omega)")


def test_answer_three_is_j2(supplier_omega):
    answer = atoms(OMEGA_COMMON + " supplies(acme,p3) supplies(omega,p1) eq(omega,acme) eq(acme,omega)")
    assert answer_set_to_diagram(answer, supplier_omega.signature) == J2


def test_single_equality():
    d = answer_set_to_diagram(atoms("eq(a,a)"), Signature(("a",)))
    assert d.atoms == frozenset() and d.equalities == {("a", "a")}


def test_broken_closure_is_rejected():
    with pytest.raises(DiagramError):
        answer_set_to_diagram(atoms("p(a) eq(a,a) eq(b,b) eq(a,b)"), AB)


def test_answer_set_round_trip():
    m = atoms("p(a) eq(a,a) eq(b,b)")
    assert diagram_to_answer_set(answer_set_to_diagram(m, AB)) == m


def test_quotient_collapsed():
    q = quotient(diagram("p(a) p(b) eq(a,a) eq(b,b) eq(a,b) eq(b,a)"), AB)
    assert q.universe == ("a",)
    assert q.const_map == {"a": "a", "b": "a"}
    assert q.extensions["p"] == {("a",)}


def test_quotient_discrete():
    q = quotient(diagram("p(a) eq(a,a) eq(b,b)"), AB)
    assert q.universe == ("a", "b")
    assert q.extensions["p"] == {("a",)}


def test_quotient_no_atoms():
    sig = Signature(("a", "b", "c"), (("p", 1),))
    q = quotient(diagram(reflexive("a", "b", "c")), sig)
    assert q.universe == ("a", "b", "c")
    assert q.extensions == {"p": frozenset()}


def test_quotient_names_blocks_by_first_constant():
    sig = Signature(("a", "b", "c"), (("p", 1),))
    d = diagram(reflexive("a", "b", "c") + " eq(b,c) eq(c,b) p(b) p(c)")
    q = quotient(d, sig)
    assert q.universe == ("a", "b")
    assert q.const_map["c"] == "b"
    assert diagram_of(q, sig) == d


def test_universe_size_counts_classes(supplier_omega):
    sizes = sorted(len(quotient(d, supplier_omega.signature).universe) for d in enumerate_dca_models(supplier_omega))
    assert sizes == [5, 5, 6]


def test_equal_up_to_iso(supplier_omega):
    sig = supplier_omega.signature
    assert diagrams_equal_up_to_iso(J2, J2, sig)
    assert not diagrams_equal_up_to_iso(J2, J3, sig)
    k1 = diagram("p(a) eq(a,a) eq(b,b)")
    k3 = diagram("p(a) p(b) eq(a,a) eq(b,b) eq(a,b) eq(b,a)")
    assert not diagrams_equal_up_to_iso(k3, k1, AB)
    with pytest.raises(DiagramError):
        diagrams_equal_up_to_iso(k1, diagram("p(a) eq(a,a)"), AB)


def test_round_trip_over_random_theories():
    for seed in range(40):
        theory = random_theory(seed, max_nulls=2)
        sig = theory.signature
        for d in enumerate_dca_models(theory, force=True):
            assert roundtrip_ok(d, sig)
            q = quotient(d, sig)
            assert set(q.const_map.values()) == set(q.universe)


def test_solver_answers_are_closed():
    for seed in range(40):
        program = compile_theory(random_theory(seed, max_nulls=2))
        for m in enumerate_stable_models(program, force=True):
            answer_set_to_diagram(m, program.signature)
