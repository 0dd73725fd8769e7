from __future__ import annotations

from reiterlp.generate import random_program, random_theory
from reiterlp.translate import RuleKind


def test_same_seed_same_theory():
    assert random_theory(7, max_nulls=2) == random_theory(7, max_nulls=2)
    assert random_program(7) == random_program(7)


def test_theory_bounds():
    for seed in range(300):
        t = random_theory(seed, max_nulls=2)
        sig = t.signature
        assert 1 <= len(sig.database_constants) <= 4
        assert len(sig.nulls) <= 2
        assert 1 <= len(sig.predicates) <= 3
        assert all(0 <= n <= 2 for _, n in sig.predicates)
        assert len(t.delta) <= 5
        assert all(1 <= len(c.atoms) <= 3 for c in t.delta)
        assert all(any(sig.is_null(c) for c in pair) for pair in t.sigma)


def test_no_nulls_by_default():
    assert all(not random_theory(s).signature.nulls for s in range(100))


def test_atom_cap():
    for seed in range(200):
        assert len(random_theory(seed, max_atoms=12).signature.herbrand_base()) <= 12


def test_programs_are_choice_free():
    for seed in range(200):
        p = random_program(seed)
        assert len(p.signature.herbrand_base()) <= 12
        assert all(r.kind not in (RuleKind.CHOICE, RuleKind.CARDINALITY) for r in p.rules)
