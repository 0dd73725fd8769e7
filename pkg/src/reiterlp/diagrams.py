"""Answer sets, diagrams and the DCA-interpretations they describe.

An answer set of a compiled program writes equality as ``eq``; renaming it
back gives a diagram.  A diagram that is closed under the equivalence and
substitution conditions determines its interpretation up to isomorphism, so
``quotient`` builds the canonical one: blocks of equal constants, each named
by its first constant in declaration order.
"""
from __future__ import annotations

from typing import Iterable

from .fo import DcaInterpretation, Diagram, DiagramError, diagram_of
from .theory import EQ, Atom, Signature

__all__ = [
    "DiagramError",
    "answer_set_to_diagram",
    "base_signature",
    "diagram_to_answer_set",
    "diagrams_equal_up_to_iso",
    "quotient",
]


def base_signature(sig: Signature) -> Signature:
    """``sig`` without the ``eq`` predicate."""
    return Signature(sig.constants, tuple(p for p in sig.predicates if p[0] != EQ), sig.nulls)


def answer_set_to_diagram(model: Iterable[Atom], sig: Signature) -> Diagram:
    """Read ``eq(a,b)`` atoms as equalities; raise :class:`DiagramError` unless the result is closed."""
    sig = base_signature(sig)
    atoms, eqs = set(), set()
    for a in model:
        if a.predicate == EQ:
            eqs.add((a.args[0], a.args[1]))
        else:
            atoms.add(a)
    d = Diagram(frozenset(atoms), frozenset(eqs))
    d.validate(sig)
    return d


def diagram_to_answer_set(d: Diagram) -> frozenset[Atom]:
    return d.as_atoms()


def quotient(d: Diagram, sig: Signature) -> DcaInterpretation:
    d.validate(sig)
    idx = sig.const_index
    rep = {}
    for c in sig.constants:
        rep[c] = min((b for a, b in d.equalities if a == c), key=idx.__getitem__)
    universe = tuple(dict.fromkeys(rep[c] for c in sig.constants))
    ext: dict[str, set[tuple[str, ...]]] = {p: set() for p, _ in sig.predicates}
    for a in d.atoms:
        ext[a.predicate].add(tuple(rep[x] for x in a.args))
    return DcaInterpretation(universe, rep, {p: frozenset(s) for p, s in ext.items()})


def diagrams_equal_up_to_iso(d1: Diagram, d2: Diagram, sig: Signature) -> bool:
    """Isomorphism of the described interpretations, which for diagrams is plain equality."""
    d1.validate(sig)
    d2.validate(sig)
    return d1 == d2


def roundtrip_ok(d: Diagram, sig: Signature) -> bool:
    """``D(quotient(D)) == D``."""
    return diagram_of(quotient(d, sig), sig) == d
