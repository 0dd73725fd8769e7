"""Compiling relational theories into ground logic programs.

The pipeline is ``delta_to_pi`` (one cardinality rule per clause), then
``eq_rewrite`` (equality becomes the ordinary predicate ``eq`` governed by
the equivalence and substitution axioms plus a choice rule), then the unique
name axioms as constraints ``:- eq(a,b).``  Everything is ground: variables
of the schematic axioms range over the object constants, which is also what
the domain closure axiom amounts to in a Herbrand setting.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Sequence

from .syntax import TokenStream, parse_pooled_atom, parse_term
from .theory import EQ, EQUALITY, Atom, Signature, TheoryError, TheorySpec, ordered_pairs


class RuleKind(enum.Enum):
    FACT = "fact"
    DISJUNCTIVE = "disjunctive"
    CONSTRAINT = "constraint"
    CHOICE = "choice"
    CARDINALITY = "cardinality"


class EqCollisionError(TheoryError):
    """The input already uses the reserved predicate ``eq``."""


@dataclass(frozen=True)
class Literal:
    atom: Atom
    positive: bool = True

    def __str__(self) -> str:
        return str(self.atom) if self.positive else f"not {self.atom}"


@dataclass(frozen=True)
class GroundRule:
    """One ground rule.

    ``origin`` records where the rule came from: ``source`` for rules of the
    input, ``una`` for unique name constraints, and ``eq-refl``, ``eq-sym``,
    ``eq-trans``, ``eq-subst:<pred>``, ``eq-choice`` for the Eq-rewrite schema.
    """

    kind: RuleKind
    head: tuple[Atom, ...] = ()
    body: tuple[Literal, ...] = ()
    origin: str = "source"

    def __post_init__(self) -> None:
        k, h, b = self.kind, self.head, self.body
        if k is RuleKind.FACT and (len(h) != 1 or b):
            raise ValueError("a fact has one head atom and no body")
        if k is RuleKind.CONSTRAINT and h:
            raise ValueError("a constraint has an empty head")
        if k in (RuleKind.DISJUNCTIVE, RuleKind.CHOICE, RuleKind.CARDINALITY) and not h:
            raise ValueError(f"a {k.value} rule needs a head")
        if k is RuleKind.CARDINALITY and b:
            raise ValueError("cardinality rules 1{...} have an empty body")

    def atoms(self) -> Iterable[Atom]:
        yield from self.head
        for lit in self.body:
            yield lit.atom

    def __str__(self) -> str:
        return format_rule(self, "modern")


@dataclass(frozen=True)
class GroundProgram:
    signature: Signature
    rules: tuple[GroundRule, ...] = ()
    intensional: frozenset[str] = field(default=frozenset())

    def __post_init__(self) -> None:
        if not self.intensional:
            object.__setattr__(self, "intensional", frozenset(p for p, _ in self.signature.predicates))
        for rule in self.rules:
            for atom in rule.atoms():
                self.signature.check_atom(atom)
        if EQ in self.signature.arities and self.signature.arity(EQ) != 2:
            raise EqCollisionError(f"predicate {EQ!r} must be binary")

    def __len__(self) -> int:
        return len(self.rules)

    def count(self, origin: str) -> int:
        return sum(1 for r in self.rules if r.origin == origin)

    def __add__(self, rules: Iterable[GroundRule]) -> GroundProgram:
        return GroundProgram(self.signature, self.rules + tuple(rules), self.intensional)


# ---------------------------------------------------------------------------
# translations


def delta_to_pi(theory: TheorySpec) -> GroundProgram:
    """``1{A_1,...,A_r}`` for every clause; unit clauses become facts."""
    rules = []
    for clause in theory.delta:
        if len(clause.atoms) == 1:
            rules.append(GroundRule(RuleKind.FACT, clause.atoms))
        else:
            rules.append(GroundRule(RuleKind.CARDINALITY, clause.atoms))
    return GroundProgram(theory.signature, tuple(rules))


UNA_MODES = ("theory", "una", "no-una")


def una_constraints(
    source: TheorySpec | GroundProgram,
    mode: str = "theory",
    constants: Sequence[str] = (),
) -> list[GroundRule]:
    """Unique name axioms ``a != b`` as constraints ``:- eq(a,b).``

    ``theory`` keeps the theory's own axioms (required ones plus Sigma; none
    for a bare program), ``una`` takes every pair inside ``constants``, and
    ``no-una`` every pair with at least one member outside ``constants``.
    """
    sig = source.signature
    if mode not in UNA_MODES:
        raise ValueError(f"unknown unique name mode {mode!r}")
    for c in constants:
        if c not in sig.const_index:
            raise TheoryError(f"unknown constant {c!r} in unique name list")
    if mode == "theory":
        pairs = source.una_pairs() if isinstance(source, TheorySpec) else []
    else:
        listed = set(constants)
        inside = mode == "una"
        pairs = [
            (a, b)
            for a, b in combinations(sig.constants, 2)
            if (a in listed and b in listed) == inside
        ]
        pairs = ordered_pairs(sig, map(frozenset, pairs))
    return [GroundRule(RuleKind.CONSTRAINT, (), (Literal(Atom(EQ, p)),), "una") for p in pairs]


def _rename_equality(atom: Atom) -> Atom:
    return Atom(EQ, atom.args) if atom.predicate == EQUALITY else atom


def eq_rewrite(program: GroundProgram) -> GroundProgram:
    """Replace equality by ``eq`` and conjoin the ground equality schema.

    Added, in order: ``eq(c,c)`` facts, symmetry, transitivity, substitution
    for every predicate of the input signature, and ``{eq(c,d)}`` for every
    ordered pair.  Trivial instances are kept.
    """
    sig = program.signature
    if EQ in sig.arities or any(a.predicate == EQ for r in program.rules for a in r.atoms()):
        raise EqCollisionError(f"the input already uses the reserved predicate {EQ!r}")
    new_sig = sig.with_predicate(EQ, 2)
    consts = sig.constants

    def eq(a: str, b: str) -> Atom:
        return Atom(EQ, (a, b))

    rules: list[GroundRule] = [
        GroundRule(
            r.kind,
            tuple(_rename_equality(a) for a in r.head),
            tuple(Literal(_rename_equality(l.atom), l.positive) for l in r.body),
            r.origin,
        )
        for r in program.rules
    ]
    rules += [GroundRule(RuleKind.FACT, (eq(c, c),), (), "eq-refl") for c in consts]
    rules += [
        GroundRule(RuleKind.DISJUNCTIVE, (eq(x, y),), (Literal(eq(y, x)),), "eq-sym")
        for x in consts
        for y in consts
    ]
    rules += [
        GroundRule(RuleKind.DISJUNCTIVE, (eq(x, z),), (Literal(eq(x, y)), Literal(eq(y, z))), "eq-trans")
        for x in consts
        for y in consts
        for z in consts
    ]
    for pred, n in sig.predicates:
        for xs in product(consts, repeat=n):
            for ys in product(consts, repeat=n):
                body = (Literal(Atom(pred, xs)),) + tuple(Literal(eq(x, y)) for x, y in zip(xs, ys))
                rules.append(GroundRule(RuleKind.DISJUNCTIVE, (Atom(pred, ys),), body, f"eq-subst:{pred}"))
    rules += [GroundRule(RuleKind.CHOICE, (eq(x, y),), (), "eq-choice") for x in consts for y in consts]
    return GroundProgram(new_sig, tuple(rules), program.intensional | {EQ})


def compile_theory(theory: TheorySpec, una_mode: str = "theory", constants: Sequence[str] = ()) -> GroundProgram:
    """Ground program whose answer sets are the diagrams of the theory's models, ``=`` read as ``eq``."""
    return eq_rewrite(delta_to_pi(theory)) + una_constraints(theory, una_mode, constants)


def compile_program(program: GroundProgram, una_mode: str = "theory", constants: Sequence[str] = ()) -> GroundProgram:
    """Eq-rewrite of a ground program, plus unique name constraints from ``una_mode``."""
    return eq_rewrite(program) + una_constraints(program, una_mode, constants)


# ---------------------------------------------------------------------------
# text


def _atom_text(atom: Atom) -> str:
    return str(atom)


def _body_text(body: Sequence[Literal]) -> str:
    return ", ".join(map(str, body))


def format_rule(rule: GroundRule, style: str = "modern") -> str:
    legacy = style == "legacy"
    k = rule.kind
    if k is RuleKind.CONSTRAINT:
        return f":- {_body_text(rule.body)}."
    if k is RuleKind.CHOICE or k is RuleKind.CARDINALITY:
        sep = "," if legacy else "; "
        head = "{" + sep.join(map(_atom_text, rule.head)) + "}"
        if k is RuleKind.CARDINALITY:
            head = "1" + head
    else:
        head = ("|" if legacy else " | ").join(map(_atom_text, rule.head))
    return f"{head} :- {_body_text(rule.body)}." if rule.body else f"{head}."


def _schema_line(origin: str, sig: Signature) -> str:
    if origin == "eq-refl":
        return "eq(X,X)."
    if origin == "eq-sym":
        return "eq(X,Y) :- eq(Y,X)."
    if origin == "eq-trans":
        return "eq(X,Z) :- eq(X,Y), eq(Y,Z)."
    if origin == "eq-choice":
        return "{eq(X,Y)}."
    pred = origin.split(":", 1)[1]
    n = sig.arity(pred)
    if n == 0:
        return f"{pred} :- {pred}."
    xs, ys = (["X"], ["Y"]) if n == 1 else ([f"X{i}" for i in range(1, n + 1)], [f"Y{i}" for i in range(1, n + 1)])
    eqs = ", ".join(f"eq({x},{y})" for x, y in zip(xs, ys))
    return f"{pred}({','.join(ys)}) :- {pred}({','.join(xs)}), {eqs}."


UNIVERSE = "u"


def emit_asp_text(program: GroundProgram, style: str = "modern") -> str:
    """Text for an external grounder.

    ``modern`` prints every rule ground.  ``legacy`` prints each group of
    Eq-rewrite instances once as its schematic rule and closes with the
    universe predicate and ``#domain``/``#hide`` lines that make it safe.
    """
    if style not in ("modern", "legacy"):
        raise ValueError(f"unknown style {style!r}")
    lines: list[str] = []
    seen: set[str] = set()
    schematic = False
    for rule in program.rules:
        if style == "legacy" and rule.origin.startswith("eq-"):
            schematic = True
            if rule.origin not in seen:
                seen.add(rule.origin)
                lines.append(_schema_line(rule.origin, program.signature))
            continue
        lines.append(format_rule(rule, style))
    if schematic:
        if UNIVERSE in program.signature.arities:
            raise EqCollisionError(f"legacy output needs the predicate name {UNIVERSE!r}")
        lines.append(f"{UNIVERSE}({';'.join(program.signature.constants)}).")
        lines.append(f"#domain {UNIVERSE}(X). #domain {UNIVERSE}(Y).")
        lines.append(f"#hide {UNIVERSE}/1.")
    return "".join(line + "\n" for line in lines)


def parse_program(text: str) -> GroundProgram:
    """Parse a ground program: facts (with pooling), ``a | b :- body.``,
    ``:- body.``, ``{a; b} :- body.`` and ``1{a, b}.``  Bodies may use
    ``not`` and equality written ``a = b``, ``a == b`` or ``a != b``.
    """
    ts = TokenStream(text)
    constants: dict[str, None] = {}
    arities: dict[str, int] = {}
    rules: list[GroundRule] = []

    def note(raw_pred: str, args: tuple[str, ...], tok) -> Atom:
        known = arities.setdefault(raw_pred, len(args))
        if known != len(args):
            raise ts.error(f"predicate {raw_pred!r} used with arity {len(args)} and {known}", tok)
        for a in args:
            constants.setdefault(a)
        return Atom(raw_pred, args)

    def one_atom() -> Atom:
        tok = ts.peek()
        raws = parse_pooled_atom(ts)
        if len(raws) != 1:
            raise ts.error("pooling (';') is only allowed in facts", tok)
        return note(raws[0].predicate, raws[0].args, tok)

    def literal() -> Literal:
        positive = True
        if ts.peek().kind == "ident" and ts.peek().text == "not" and ts.peek(1).kind in ("ident", "int"):
            ts.next()
            positive = False
        tok = ts.peek()
        if ts.peek(1).kind in ("=", "==", "!="):
            left = parse_term(ts)
            op = ts.next().kind
            right = parse_term(ts)
            for c in (left, right):
                constants.setdefault(c)
            return Literal(Atom(EQUALITY, (left, right)), positive != (op == "!="))
        if tok.kind != "ident":
            raise ts.error("expected a literal", tok)
        return Literal(one_atom(), positive)

    def body() -> tuple[Literal, ...]:
        lits = [literal()]
        while ts.accept(","):
            lits.append(literal())
        return tuple(lits)

    def atom_list() -> tuple[Atom, ...]:
        atoms = [one_atom()]
        while ts.at(";", ","):
            ts.next()
            atoms.append(one_atom())
        ts.expect("}", "'}'")
        return tuple(atoms)

    while not ts.at("eof"):
        tok = ts.peek()
        if tok.kind == "directive":
            raise ts.error(f"directive {tok.text} is not supported in program input", tok)
        if ts.accept(":-"):
            rules.append(GroundRule(RuleKind.CONSTRAINT, (), body()))
            ts.expect(".", "'.'")
            continue
        if tok.kind == "int" and ts.peek(1).kind == "{":
            ts.next()
            ts.next()
            if tok.text != "1":
                raise ts.error("only the lower bound 1 is supported in 'N{...}'", tok)
            head = atom_list()
            if ts.at(":-"):
                raise ts.error("cardinality rules take no body")
            rules.append(GroundRule(RuleKind.CARDINALITY, head))
            ts.expect(".", "'.'")
            continue
        if ts.accept("{"):
            head = atom_list()
            b = body() if ts.accept(":-") else ()
            rules.append(GroundRule(RuleKind.CHOICE, head, b))
            ts.expect(".", "'.'")
            continue
        if tok.kind != "ident":
            raise ts.error(f"unexpected {tok.text!r}", tok)
        raws = parse_pooled_atom(ts)
        if ts.accept("."):
            rules.extend(GroundRule(RuleKind.FACT, (note(r.predicate, r.args, tok),)) for r in raws)
            continue
        if len(raws) != 1:
            raise ts.error("pooling (';') is only allowed in facts", tok)
        head_atoms = [note(raws[0].predicate, raws[0].args, tok)]
        while ts.accept("|"):
            head_atoms.append(one_atom())
        b = body() if ts.accept(":-") else ()
        ts.expect(".", "'.'")
        rules.append(GroundRule(RuleKind.DISJUNCTIVE, tuple(head_atoms), b))

    sig = Signature(tuple(constants), tuple(arities.items()))
    return GroundProgram(sig, tuple(rules))


def print_program(program: GroundProgram) -> str:
    return "".join(format_rule(r) + "\n" for r in program.rules)
