"""Relational theories with null values: signatures, clauses and their source format.

A source file is a sequence of statements::

    part(p1;p2;p3).                 % facts, with pooling sugar
    supplies(foo,p1) | supplies(foo,p3).
    #null omega.                    % omega is a null value
    #una omega p1.                  % the optional axiom omega != p1 is in Sigma
    #object a b.                    % declare constants not used elsewhere
    #predicate p/1 q/0.             % declare predicates not used elsewhere

Constants and predicates are ordered by first appearance; that order is the
canonical order for everything downstream (atoms, pairs, models).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations, product
from typing import Iterable

from .syntax import RawAtom, SourceError, TokenStream, parse_pooled_atom

#: Reserved for the equality-encoding predicate introduced by the Eq-rewrite.
EQ = "eq"
#: Predicate name used for equality atoms (``a = b``) inside ground programs.
EQUALITY = "="


class TheoryError(ValueError):
    """A well-formed source that violates a theory invariant."""


@dataclass(frozen=True)
class Atom:
    predicate: str
    args: tuple[str, ...] = ()

    def __str__(self) -> str:
        if self.predicate == EQUALITY:
            return f"{self.args[0]}={self.args[1]}"
        if not self.args:
            return self.predicate
        return f"{self.predicate}({','.join(self.args)})"


@dataclass(frozen=True)
class Signature:
    """Object constants (database constants or nulls) and predicates with arities."""

    constants: tuple[str, ...]
    predicates: tuple[tuple[str, int], ...] = ()
    nulls: frozenset[str] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        if len(set(self.constants)) != len(self.constants):
            raise TheoryError("duplicate object constant in signature")
        names = [p for p, _ in self.predicates]
        if len(set(names)) != len(names):
            raise TheoryError("duplicate predicate in signature")
        if any(n < 0 for _, n in self.predicates):
            raise TheoryError("negative arity")
        if not self.nulls <= set(self.constants):
            raise TheoryError("null value missing from the constant list")
        if EQUALITY in names:
            raise TheoryError("'=' is not a predicate constant")

    @cached_property
    def const_index(self) -> dict[str, int]:
        return {c: i for i, c in enumerate(self.constants)}

    @cached_property
    def arities(self) -> dict[str, int]:
        return dict(self.predicates)

    @cached_property
    def pred_index(self) -> dict[str, int]:
        return {p: i for i, (p, _) in enumerate(self.predicates)}

    @property
    def database_constants(self) -> tuple[str, ...]:
        return tuple(c for c in self.constants if c not in self.nulls)

    def arity(self, predicate: str) -> int:
        try:
            return self.arities[predicate]
        except KeyError:
            raise TheoryError(f"unknown predicate {predicate!r}") from None

    def is_null(self, constant: str) -> bool:
        return constant in self.nulls

    def atom_key(self, atom: Atom) -> tuple[int, tuple[int, ...]]:
        """Sort key realising the canonical atom order."""
        idx = self.const_index
        return self.pred_index[atom.predicate], tuple(idx[a] for a in atom.args)

    def pair_key(self, pair: Iterable[str]) -> tuple[int, ...]:
        return tuple(sorted(self.const_index[c] for c in pair))

    def check_atom(self, atom: Atom) -> None:
        if atom.predicate == EQUALITY:
            if len(atom.args) != 2:
                raise TheoryError(f"equality must be binary: {atom}")
        elif len(atom.args) != self.arity(atom.predicate):
            raise TheoryError(f"arity mismatch in {atom}")
        for a in atom.args:
            if a not in self.const_index:
                raise TheoryError(f"unknown constant {a!r} in {atom}")

    def herbrand_base(self) -> list[Atom]:
        """All ground atoms over the signature, in canonical order."""
        return [
            Atom(p, args)
            for p, n in self.predicates
            for args in product(self.constants, repeat=n)
        ]

    def with_predicate(self, name: str, arity: int) -> Signature:
        if name in self.arities:
            raise TheoryError(f"predicate {name!r} already in signature")
        return Signature(self.constants, self.predicates + ((name, arity),), self.nulls)


@dataclass(frozen=True)
class Clause:
    """A positive ground clause ``A_1 | ... | A_r``."""

    atoms: tuple[Atom, ...]

    def __post_init__(self) -> None:
        if not self.atoms:
            raise TheoryError("a clause needs at least one atom")
        if any(a.predicate == EQUALITY for a in self.atoms):
            raise TheoryError("equality cannot occur in a positive ground clause")
        # duplicate disjuncts are dropped, first occurrence wins
        object.__setattr__(self, "atoms", tuple(dict.fromkeys(self.atoms)))

    def __str__(self) -> str:
        return " | ".join(str(a) for a in self.atoms)


@dataclass(frozen=True)
class TheorySpec:
    signature: Signature
    delta: tuple[Clause, ...] = ()
    sigma: frozenset[frozenset[str]] = field(default_factory=frozenset)

    def __post_init__(self) -> None:
        object.__setattr__(self, "delta", tuple(dict.fromkeys(self.delta)))
        sig = self.signature
        for clause in self.delta:
            for atom in clause.atoms:
                sig.check_atom(atom)
        for pair in self.sigma:
            if len(pair) != 2:
                raise TheoryError("a unique name axiom needs two distinct constants")
            for c in pair:
                if c not in sig.const_index:
                    raise TheoryError(f"unknown constant {c!r} in unique name axiom")
            if not any(sig.is_null(c) for c in pair):
                a, b = sorted(pair, key=sig.const_index.get)
                raise TheoryError(f"{a} != {b} is required, not optional: both are database constants")

    def w(self, predicate: str) -> list[tuple[str, ...]]:
        """Tuples ``a`` with ``P(a)`` in some clause, in order of appearance."""
        seen: dict[tuple[str, ...], None] = {}
        for clause in self.delta:
            for atom in clause.atoms:
                if atom.predicate == predicate:
                    seen.setdefault(atom.args)
        return list(seen)

    def una_pairs(self) -> list[tuple[str, str]]:
        """All unique name axioms of the theory: required ones plus Sigma, canonical order."""
        sig = self.signature
        pairs = set(map(frozenset, required_una_pairs(sig))) | set(self.sigma)
        return ordered_pairs(sig, pairs)


def ordered_pairs(sig: Signature, pairs: Iterable[frozenset[str]]) -> list[tuple[str, str]]:
    idx = sig.const_index
    out = [tuple(sorted(p, key=idx.__getitem__)) for p in pairs]
    return sorted(out, key=lambda p: (idx[p[0]], idx[p[1]]))  # type: ignore[return-value]


def required_una_pairs(sig: Signature) -> set[tuple[str, str]]:
    """Pairs of distinct database constants, each as an ordered (earlier, later) tuple."""
    return set(combinations(sig.database_constants, 2))


# ---------------------------------------------------------------------------
# parsing


def parse_theory(text: str) -> TheorySpec:
    """Parse a theory source into a :class:`TheorySpec`.

    Raises :class:`SourceError` for syntax errors and arity clashes, and
    :class:`TheoryError` for invalid ``#una`` pairs.
    """
    ts = TokenStream(text)
    constants: dict[str, None] = {}
    arities: dict[str, int] = {}
    nulls: set[str] = set()
    una: list[tuple[str, str, int, int]] = []
    clauses: list[Clause] = []

    def note_atom(raw: RawAtom) -> Atom:
        known = arities.setdefault(raw.predicate, len(raw.args))
        if known != len(raw.args):
            raise SourceError(
                f"predicate {raw.predicate!r} used with arity {len(raw.args)} and {known}",
                raw.line,
                raw.column,
            )
        for a in raw.args:
            constants.setdefault(a)
        return Atom(raw.predicate, raw.args)

    while not ts.at("eof"):
        tok = ts.peek()
        if tok.kind == "directive":
            ts.next()
            name = tok.text
            if name == "#null":
                while not ts.at("."):
                    c = ts.expect("ident", "a constant").text
                    constants.setdefault(c)
                    nulls.add(c)
            elif name == "#object":
                while not ts.at("."):
                    constants.setdefault(ts.expect("ident", "a constant").text)
            elif name == "#una":
                first = ts.peek()
                a = ts.expect("ident", "a constant").text
                b = ts.expect("ident", "a constant").text
                una.append((a, b, first.line, first.column))
            elif name == "#predicate":
                while not ts.at("."):
                    ptok = ts.expect("ident", "a predicate name")
                    ts.expect("/", "'/'")
                    n = int(ts.expect("int", "an arity").text)
                    if n < 0:
                        raise ts.error("negative arity", ptok)
                    if arities.setdefault(ptok.text, n) != n:
                        raise ts.error(f"predicate {ptok.text!r} declared with a second arity", ptok)
            else:
                raise ts.error(f"unknown directive {name}", tok)
            ts.expect(".", "'.'")
            continue

        first = parse_pooled_atom(ts)
        if ts.accept("."):
            clauses.extend(Clause((note_atom(r),)) for r in first)
            continue
        if len(first) != 1:
            raise ts.error("pooling (';') is only allowed in facts", tok)
        atoms = [note_atom(first[0])]
        while ts.accept("|"):
            start = ts.peek()
            more = parse_pooled_atom(ts)
            if len(more) != 1:
                raise ts.error("pooling (';') is only allowed in facts", start)
            atoms.append(note_atom(more[0]))
        ts.expect(".", "'.' or '|'")
        clauses.append(Clause(tuple(atoms)))

    if EQ in arities:
        raise TheoryError(f"predicate name {EQ!r} is reserved")
    for a, b, line, col in una:
        for c in (a, b):
            if c not in constants:
                raise SourceError(f"unknown constant {c!r} in #una", line, col)
        if a == b:
            raise SourceError(f"#una needs two distinct constants, got {a} twice", line, col)
        if a not in nulls and b not in nulls:
            raise SourceError(
                f"#una {a} {b}: both are database constants, so the axiom is required already",
                line,
                col,
            )

    sig = Signature(tuple(constants), tuple(arities.items()), frozenset(nulls))
    return TheorySpec(sig, tuple(clauses), frozenset(frozenset((a, b)) for a, b, _, _ in una))


def print_theory(theory: TheorySpec) -> str:
    """Canonical source text; ``parse_theory(print_theory(t)) == t``."""
    sig = theory.signature
    lines: list[str] = []
    if sig.constants:
        lines.append("#object " + " ".join(sig.constants) + ".")
    if sig.predicates:
        lines.append("#predicate " + " ".join(f"{p}/{n}" for p, n in sig.predicates) + ".")
    nulls = [c for c in sig.constants if c in sig.nulls]
    if nulls:
        lines.append("#null " + " ".join(nulls) + ".")
    for a, b in ordered_pairs(sig, theory.sigma):
        lines.append(f"#una {a} {b}.")
    lines.extend(f"{clause}." for clause in theory.delta)
    return "\n".join(lines) + ("\n" if lines else "")
