"""Seeded random theories and ground programs for property tests and ``check --random``."""
from __future__ import annotations

import random
from itertools import product

from .theory import Atom, Clause, Signature, TheorySpec
from .translate import GroundProgram, GroundRule, Literal, RuleKind

DATABASE_NAMES = ("a", "b", "c", "d")
NULL_NAMES = ("n1", "n2")
PREDICATE_NAMES = ("p", "q", "r")


def random_theory(
    seed: int,
    max_constants: int = 4,
    max_nulls: int = 0,
    max_predicates: int = 3,
    max_arity: int = 2,
    max_clauses: int = 5,
    max_width: int = 3,
    max_atoms: int | None = None,
) -> TheorySpec:
    """A theory drawn from ``random.Random(seed)``.

    ``max_atoms`` bounds the size of the Herbrand base; predicates are
    dropped or lowered in arity until it fits.  Sigma is a random subset of
    the pairs that involve a null.
    """
    rng = random.Random(seed)
    n_db = rng.randint(1, max_constants)
    n_null = rng.randint(0, max_nulls)
    consts = DATABASE_NAMES[:n_db] + NULL_NAMES[:n_null]
    preds = [(name, rng.randint(0, max_arity)) for name in PREDICATE_NAMES[: rng.randint(1, max_predicates)]]
    if max_atoms is not None:
        while sum(len(consts) ** n for _, n in preds) > max_atoms:
            i = max(range(len(preds)), key=lambda k: preds[k][1])
            name, n = preds[i]
            if n == 0:
                preds.pop()
            else:
                preds[i] = (name, n - 1)
    sig = Signature(consts, tuple(preds), frozenset(NULL_NAMES[:n_null]))
    base = [Atom(p, args) for p, n in preds for args in product(consts, repeat=n)]
    delta = []
    for _ in range(rng.randint(0, max_clauses)):
        width = rng.randint(1, min(max_width, len(base)))
        delta.append(Clause(tuple(rng.sample(base, width))))
    optional = [
        frozenset((x, y))
        for i, x in enumerate(consts)
        for y in consts[i + 1 :]
        if x in sig.nulls or y in sig.nulls
    ]
    sigma = frozenset(pair for pair in optional if rng.random() < 0.5)
    return TheorySpec(sig, tuple(delta), sigma)


def random_program(seed: int, max_atoms: int = 12, max_rules: int = 8) -> GroundProgram:
    """A ground program without choice or cardinality rules.

    Heads are disjunctions of one or two atoms (none for a constraint) and
    bodies mix up to three positive and negative literals.
    """
    rng = random.Random(seed)
    consts = DATABASE_NAMES[: rng.randint(1, 4)]
    preds: list[tuple[str, int]] = []
    size = 0
    for name in PREDICATE_NAMES:
        n = rng.randint(0, 1)
        if size + len(consts) ** n > max_atoms:
            break
        preds.append((name, n))
        size += len(consts) ** n
    sig = Signature(consts, tuple(preds))
    base = sig.herbrand_base()
    rules = []
    for _ in range(rng.randint(1, max_rules)):
        body = tuple(
            Literal(atom, rng.random() < 0.6)
            for atom in rng.sample(base, rng.randint(0, min(3, len(base))))
        )
        roll = rng.random()
        if roll < 0.15 and body:
            rules.append(GroundRule(RuleKind.CONSTRAINT, (), body))
        elif roll < 0.3:
            rules.append(GroundRule(RuleKind.FACT, (rng.choice(base),)))
        else:
            head = tuple(rng.sample(base, rng.randint(1, min(2, len(base)))))
            rules.append(GroundRule(RuleKind.DISJUNCTIVE, head, body))
    return GroundProgram(sig, tuple(rules))
