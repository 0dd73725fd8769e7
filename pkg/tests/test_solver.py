from __future__ import annotations

from itertools import product

import pytest
from conftest import DATA, atoms

from reiterlp.fo import GuardrailError, evaluate, herbrand_interpretation, minimal_dca_models
from reiterlp.generate import random_program, random_theory
from reiterlp.solver import (
    StabilityChecker,
    enumerate_stable_models,
    is_stable,
    program_formula,
    reduct_is_stable,
    rule_to_formula,
)
from reiterlp.theory import Atom, Signature, parse_theory
from reiterlp.translate import (
    GroundProgram,
    GroundRule,
    Literal,
    RuleKind,
    compile_program,
    compile_theory,
    delta_to_pi,
    eq_rewrite,
    parse_program,
)


def rule(text: str) -> GroundRule:
    return parse_program(text).rules[0]


@pytest.mark.parametrize(
    "source, formula",
    [
        ("1{p(a), p(b)}.", "(p(a) ∨ ¬p(a)) ∧ (p(b) ∨ ¬p(b)) ∧ (p(a) ∨ p(b))"),
        ("q(c).", "q(c)"),
        (":- eq(a,b).", "¬eq(a,b)"),
        ("p(a) | p(b) :- q(a), not r.", "(q(a) ∧ ¬r) → (p(a) ∨ p(b))"),
        ("{p(a)} :- q(a).", "q(a) → (p(a) ∨ ¬p(a))"),
        (":- a = b.", "a≠b"),
    ],
)
def test_rule_to_formula(source, formula):
    assert str(rule_to_formula(rule(source))) == formula


def test_known_answers_for_disjunction(disjunction):
    program = eq_rewrite(disjunction)
    assert is_stable(atoms("eq(a,a) eq(b,b) p(a)"), program)
    assert not is_stable(atoms("eq(a,a) eq(b,b) p(a) p(b)"), program)
    assert is_stable(atoms("eq(a,a) eq(b,b) eq(a,b) eq(b,a) p(a) p(b)"), program)


def test_fact_must_hold():
    program = parse_program("q.")
    assert not is_stable(set(), program)
    assert is_stable({Atom("q")}, program)


def test_unsupported_atom_is_not_stable():
    program = parse_program("p(a) | p(b). q(a) :- p(b).")
    assert not is_stable(atoms("p(a) q(a)"), program)


def test_supplier_models(supplier):
    common = "part(p1) part(p2) part(p3) supplier(acme) supplier(foo) supplies(acme,p1) supplies(foo,p2) subpart(p1,p2)"
    got = enumerate_stable_models(delta_to_pi(supplier))
    # canonical order compares sorted atom keys, so the model with both extra atoms comes first
    assert got == [
        atoms(common + " supplies(foo,p1) supplies(foo,p3)"),
        atoms(common + " supplies(foo,p1)"),
        atoms(common + " supplies(foo,p3)"),
    ]


def test_supplier_compiled_has_reflexive_eq(supplier):
    got = enumerate_stable_models(compile_theory(supplier))
    assert len(got) == 3
    eqs = {frozenset(a for a in m if a.predicate == "eq") for m in got}
    assert eqs == {frozenset(Atom("eq", (c, c)) for c in supplier.signature.constants)}


def test_empty_program_single_empty_model():
    program = GroundProgram(Signature(("a",), (("p", 1),)), ())
    assert enumerate_stable_models(program) == [frozenset()]


def test_limit_and_order(disjunction):
    program = compile_program(disjunction)
    every = enumerate_stable_models(program)
    assert len(every) == 3
    assert enumerate_stable_models(program, limit=2) == every[:2]
    assert enumerate_stable_models(program) == every
    with pytest.raises(ValueError):
        enumerate_stable_models(program, limit=-1)


def test_guardrail():
    program = compile_theory(random_theory(5, max_nulls=2))
    with pytest.raises(GuardrailError):
        enumerate_stable_models(program)
    assert len(enumerate_stable_models(program, force=True)) == 110


def test_constraints_and_negation():
    program = parse_program("p | q. r :- p, not q. :- r, q.")
    assert [sorted(map(str, m)) for m in enumerate_stable_models(program)] == [["p", "r"], ["q"]]


def test_choice_with_body():
    program = parse_program("s. {t} :- s.")
    assert [sorted(map(str, m)) for m in enumerate_stable_models(program)] == [["s"], ["s", "t"]]


def test_positive_loop_is_unfounded():
    program = parse_program("p :- q. q :- p.")
    assert enumerate_stable_models(program) == [frozenset()]


def test_models_satisfy_every_rule():
    for seed in range(30):
        program = compile_theory(random_theory(seed, max_nulls=1))
        for m in enumerate_stable_models(program, force=True):
            interp = herbrand_interpretation(program.signature, m)
            assert all(evaluate(rule_to_formula(r), interp) for r in program.rules)


def test_choice_free_models_are_minimal_models():
    for seed in range(60):
        program = random_program(seed, max_atoms=8)
        base = program.signature.herbrand_base()
        formula = program_formula(program)
        classical = [
            frozenset(a for a, keep in zip(base, bits) if keep)
            for bits in product((False, True), repeat=len(base))
        ]
        classical = [m for m in classical if evaluate(formula, herbrand_interpretation(program.signature, m))]
        stable = set(enumerate_stable_models(program))
        # stable models are classical models; without negation they are exactly the minimal ones
        assert all(m in classical for m in stable), seed
        if all(l.positive for r in program.rules for l in r.body):
            minimal = {m for m in classical if not any(o < m for o in classical)}
            assert stable == minimal, seed


def test_reduct_check_rejects_choice(disjunction):
    with pytest.raises(ValueError):
        reduct_is_stable(set(), compile_program(disjunction))


def test_reduct_check_guardrail():
    program = parse_program("p(a;b;c).")
    with pytest.raises(GuardrailError):
        reduct_is_stable(atoms("p(a) p(b) p(c)"), program, max_atoms=2)


def test_checker_clauses_reused():
    program = parse_program((DATA / "four.lp").read_text())
    checker = StabilityChecker(program)
    stable = [m for m in enumerate_stable_models(program)]
    assert all(checker.is_stable(m) for m in stable)
    assert [sorted(map(str, m)) for m in stable] == [["p(a)", "p(b)"], ["p(c)", "p(d)"]]


def test_four_program_compiled_count():
    program = parse_program((DATA / "four.lp").read_text())
    sig = program.signature
    assert len(enumerate_stable_models(compile_program(program))) == 23
    assert len(minimal_dca_models(program_formula(program), sig)) == 23


def test_una_program_route():
    program = parse_program((DATA / "db_rules.lp").read_text())
    compiled = compile_program(program, "una", ["acme", "foo", "p1", "p2", "p3"])
    models = enumerate_stable_models(compiled)
    assert len(models) == 3
    assert any(Atom("eq", ("omega", "acme")) in m for m in models)
    assert compiled.count("una") == 10


def test_equality_literal_in_body():
    program = parse_program("p(a). q :- p(a), a != b. r :- a = b.")
    assert [sorted(map(str, m)) for m in enumerate_stable_models(program)] == [["p(a)", "q"]]


def test_determinism():
    program = compile_theory(parse_theory((DATA / "db.lp").read_text()))
    assert enumerate_stable_models(program) == enumerate_stable_models(program)


def test_rule_kind_for_cardinality_formula():
    r = GroundRule(RuleKind.CARDINALITY, (Atom("p"),))
    assert str(rule_to_formula(r)) == "(p ∨ ¬p) ∧ p"
    c = GroundRule(RuleKind.CONSTRAINT, (), (Literal(Atom("p"), False),))
    assert str(rule_to_formula(c)) == "¬¬p"
