"""First-order semantics over finite DCA-interpretations.

This module is the independent oracle of the package: it knows nothing about
logic programs.  Theories are turned into first-order sentences and checked
by plain Tarskian evaluation over every candidate interpretation that the
domain closure axiom allows.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator, Mapping, Sequence, Union

from .theory import EQ, Atom, Clause, Signature, TheorySpec

# ---------------------------------------------------------------------------
# formulas


@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class PredVar:
    name: str
    arity: int

    def __str__(self) -> str:
        return self.name


Term = Union[str, Var]


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Pred(Formula):
    """Atom whose predicate is a predicate constant."""

    name: str
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        return _app(self.name, self.args)


@dataclass(frozen=True)
class PVarAtom(Formula):
    """Atom whose predicate is a predicate variable."""

    var: PredVar
    args: tuple[Term, ...] = ()

    def __str__(self) -> str:
        return _app(self.var.name, self.args)


@dataclass(frozen=True)
class Equal(Formula):
    left: Term
    right: Term

    def __str__(self) -> str:
        return f"{self.left}={self.right}"


@dataclass(frozen=True)
class Top(Formula):
    def __str__(self) -> str:
        return "⊤"


@dataclass(frozen=True)
class Bottom(Formula):
    def __str__(self) -> str:
        return "⊥"


TOP = Top()
BOTTOM = Bottom()


@dataclass(frozen=True)
class Not(Formula):
    sub: Formula

    def __str__(self) -> str:
        if isinstance(self.sub, Equal):
            return f"{self.sub.left}≠{self.sub.right}"
        return f"¬{_wrap(self.sub)}"


@dataclass(frozen=True)
class And(Formula):
    parts: tuple[Formula, ...]

    def __str__(self) -> str:
        return " ∧ ".join(_wrap(p) for p in self.parts) if self.parts else "⊤"


@dataclass(frozen=True)
class Or(Formula):
    parts: tuple[Formula, ...]

    def __str__(self) -> str:
        return " ∨ ".join(_wrap(p) for p in self.parts) if self.parts else "⊥"


@dataclass(frozen=True)
class Implies(Formula):
    ante: Formula
    cons: Formula

    def __str__(self) -> str:
        return f"{_wrap(self.ante)} → {_wrap(self.cons)}"


@dataclass(frozen=True)
class Forall(Formula):
    var: Var
    body: Formula

    def __str__(self) -> str:
        return f"∀{self.var}{_wrap(self.body, quant=True)}"


@dataclass(frozen=True)
class Exists(Formula):
    var: Var
    body: Formula

    def __str__(self) -> str:
        return f"∃{self.var}{_wrap(self.body, quant=True)}"


@dataclass(frozen=True)
class ExistsPred(Formula):
    """Second-order existential quantifier over a predicate variable."""

    var: PredVar
    body: Formula

    def __str__(self) -> str:
        return f"∃{self.var}{_wrap(self.body, quant=True)}"


def _app(name: str, args: Sequence[Term]) -> str:
    return f"{name}({','.join(map(str, args))})" if args else name


def _wrap(f: Formula, quant: bool = False) -> str:
    if isinstance(f, (Pred, PVarAtom, Equal, Top, Bottom, Not)):
        return f"({f})" if quant else str(f)
    if quant and isinstance(f, (Forall, Exists, ExistsPred)):
        return str(f)
    return f"({f})"


def conj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return TOP
    return parts[0] if len(parts) == 1 else And(parts)


def disj(parts: Iterable[Formula]) -> Formula:
    parts = tuple(parts)
    if not parts:
        return BOTTOM
    return parts[0] if len(parts) == 1 else Or(parts)


def forall(variables: Sequence[Var], body: Formula) -> Formula:
    for v in reversed(variables):
        body = Forall(v, body)
    return body


def atom_formula(atom: Atom) -> Formula:
    return Pred(atom.predicate, atom.args)


def predicates_of(f: Formula) -> set[str]:
    """Predicate constants occurring in ``f``."""
    match f:
        case Pred(name=name):
            return {name}
        case Not(sub=sub):
            return predicates_of(sub)
        case And(parts=parts) | Or(parts=parts):
            return set().union(*map(predicates_of, parts)) if parts else set()
        case Implies(ante=a, cons=c):
            return predicates_of(a) | predicates_of(c)
        case Forall(body=b) | Exists(body=b) | ExistsPred(body=b):
            return predicates_of(b)
    return set()


# ---------------------------------------------------------------------------
# stable models of sentences


def star(f: Formula, pvars: dict[str, PredVar]) -> Formula:
    """``F*(v)``: intensional atoms go to their predicate variable,
    ``(F→G)* = (F*→G*) ∧ (F→G)`` and ``¬F`` is read as ``F→⊥``."""
    match f:
        case Pred(name=name, args=args):
            return PVarAtom(pvars[name], args) if name in pvars else f
        case Equal() | Top() | Bottom():
            return f
        case And(parts=parts):
            return And(tuple(star(p, pvars) for p in parts))
        case Or(parts=parts):
            return Or(tuple(star(p, pvars) for p in parts))
        case Implies(ante=a, cons=c):
            return And((Implies(star(a, pvars), star(c, pvars)), f))
        case Not(sub=g):
            return And((Implies(star(g, pvars), BOTTOM), Implies(g, BOTTOM)))
        case Forall(var=v, body=b):
            return Forall(v, star(b, pvars))
        case Exists(var=v, body=b):
            return Exists(v, star(b, pvars))
    raise TypeError(f"star is defined on first-order sentences, got {f!r}")


def sm_formula(f: Formula, arities: dict[str, int]) -> Formula:
    """``SM_p[F] = F ∧ ¬∃v((v<p) ∧ F*(v))`` with ``p`` the given predicates.

    Exponential to evaluate; meant for checking tiny programs by brute force.
    """
    pvars = {p: PredVar(f"v_{p}", n) for p, n in arities.items()}

    def below(src: dict, dst: dict) -> Formula:
        parts = []
        for p, n in arities.items():
            xs = [Var(f"x{i}") for i in range(1, n + 1)]
            parts.append(forall(xs, Implies(src[p](xs), dst[p](xs))))
        return conj(parts)

    as_var = {p: (lambda xs, p=p: PVarAtom(pvars[p], tuple(xs))) for p in arities}
    as_pred = {p: (lambda xs, p=p: Pred(p, tuple(xs))) for p in arities}
    lt = And((below(as_var, as_pred), Not(below(as_pred, as_var))))
    inner: Formula = And((lt, star(f, pvars)))
    for v in reversed(list(pvars.values())):
        inner = ExistsPred(v, inner)
    return And((f, Not(inner)))


# ---------------------------------------------------------------------------
# interpretations and diagrams


class UnboundVariableError(KeyError):
    pass


class GuardrailError(RuntimeError):
    """An instance is too large for exhaustive enumeration."""


class DiagramError(ValueError):
    """A set of atoms and equalities is not the diagram of any DCA-interpretation."""


@dataclass(frozen=True)
class DcaInterpretation:
    """Interpretation whose every element is named by an object constant."""

    universe: tuple[str, ...]
    const_map: Mapping[str, str]
    extensions: Mapping[str, frozenset[tuple[str, ...]]] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if set(self.const_map.values()) != set(self.universe):
            raise ValueError("constant map must be onto the universe (domain closure)")

    def holds(self, predicate: str, elements: tuple[str, ...]) -> bool:
        return elements in self.extensions.get(predicate, frozenset())


def herbrand_interpretation(sig: Signature, atoms: Iterable[Atom]) -> DcaInterpretation:
    ext: dict[str, set[tuple[str, ...]]] = {p: set() for p, _ in sig.predicates}
    for a in atoms:
        ext.setdefault(a.predicate, set()).add(a.args)
    return DcaInterpretation(
        sig.constants,
        {c: c for c in sig.constants},
        {p: frozenset(s) for p, s in ext.items()},
    )


@dataclass(frozen=True)
class Diagram:
    """Ground atoms plus ground equalities (ordered pairs) true in an interpretation."""

    atoms: frozenset[Atom]
    equalities: frozenset[tuple[str, str]]

    def eq_atoms(self) -> frozenset[Atom]:
        return frozenset(Atom(EQ, pair) for pair in self.equalities)

    def as_atoms(self) -> frozenset[Atom]:
        """The diagram with ``=`` written as the ``eq`` predicate."""
        return self.atoms | self.eq_atoms()

    def closure_violations(self, sig: Signature) -> list[str]:
        problems: list[str] = []
        eqs = self.equalities
        for a, b in eqs:
            if a not in sig.const_index or b not in sig.const_index:
                problems.append(f"equality {a}={b} mentions an unknown constant")
        for c in sig.constants:
            if (c, c) not in eqs:
                problems.append(f"missing reflexive equality {c}={c}")
        for a, b in eqs:
            if (b, a) not in eqs:
                problems.append(f"{a}={b} without {b}={a}")
        for a, b in eqs:
            for c, d in eqs:
                if b == c and (a, d) not in eqs:
                    problems.append(f"{a}={b} and {b}={d} without {a}={d}")
        if problems:
            return problems
        same = _classes_of(sig, eqs)
        for atom in self.atoms:
            for args in product(*(same[a] for a in atom.args)):
                if Atom(atom.predicate, args) not in self.atoms:
                    problems.append(f"{atom} is in the diagram but {Atom(atom.predicate, args)} is not")
        return problems

    def validate(self, sig: Signature) -> None:
        problems = self.closure_violations(sig)
        if problems:
            raise DiagramError("; ".join(problems[:5]))


def _classes_of(sig: Signature, eqs: Iterable[tuple[str, str]]) -> dict[str, list[str]]:
    same: dict[str, list[str]] = {c: [] for c in sig.constants}
    for a, b in eqs:
        same[a].append(b)
    idx = sig.const_index
    return {c: sorted(m, key=idx.__getitem__) for c, m in same.items()}


def diagram_of(interp: DcaInterpretation, sig: Signature) -> Diagram:
    """The set of ground atoms and equalities true in ``interp``."""
    members: dict[str, list[str]] = {e: [] for e in interp.universe}
    for c in sig.constants:
        members[interp.const_map[c]].append(c)
    atoms = set()
    for pred, tuples in interp.extensions.items():
        for elems in tuples:
            for args in product(*(members[e] for e in elems)):
                atoms.add(Atom(pred, args))
    eqs = {(a, b) for a in sig.constants for b in sig.constants if interp.const_map[a] == interp.const_map[b]}
    return Diagram(frozenset(atoms), frozenset(eqs))


def diagram_sort_key(d: Diagram, sig: Signature) -> tuple:
    """Canonical order: lexicographic on the sorted eq-form atom lists."""
    return tuple(sorted(eq_form_key(sig, a) for a in d.as_atoms()))


def eq_form_key(sig: Signature, atom: Atom) -> tuple[int, tuple[int, ...]]:
    """Atom order with ``eq`` placed after every predicate of ``sig``."""
    idx = sig.const_index
    if atom.predicate == EQ and EQ not in sig.pred_index:
        return len(sig.predicates), tuple(idx[a] for a in atom.args)
    return sig.atom_key(atom)


def format_diagram(d: Diagram, sig: Signature) -> str:
    """One atom per line, equalities as ``eq(a,b)``, canonical order."""
    atoms = sorted(d.as_atoms(), key=lambda a: eq_form_key(sig, a))
    return "".join(f"{a}\n" for a in atoms)


# ---------------------------------------------------------------------------
# evaluation


def evaluate(
    f: Formula,
    interp: DcaInterpretation,
    env: Mapping[Var, str] | None = None,
    penv: Mapping[PredVar, frozenset[tuple[str, ...]]] | None = None,
) -> bool:
    """Tarskian satisfaction; equality is identity of the denoted elements."""
    return _eval(f, interp, dict(env or {}), dict(penv or {}))


def _term(t: Term, interp: DcaInterpretation, env: dict) -> str:
    if isinstance(t, Var):
        try:
            return env[t]
        except KeyError:
            raise UnboundVariableError(t.name) from None
    try:
        return interp.const_map[t]
    except KeyError:
        raise UnboundVariableError(f"constant {t!r} not interpreted") from None


def _eval(f: Formula, interp: DcaInterpretation, env: dict, penv: dict) -> bool:
    match f:
        case Pred(name=name, args=args):
            return tuple(_term(t, interp, env) for t in args) in interp.extensions.get(name, ())
        case Equal(left=l, right=r):
            return _term(l, interp, env) == _term(r, interp, env)
        case Not(sub=sub):
            return not _eval(sub, interp, env, penv)
        case And(parts=parts):
            return all(_eval(p, interp, env, penv) for p in parts)
        case Or(parts=parts):
            return any(_eval(p, interp, env, penv) for p in parts)
        case Implies(ante=a, cons=c):
            return not _eval(a, interp, env, penv) or _eval(c, interp, env, penv)
        case Forall(var=v, body=body):
            saved = env.get(v)
            try:
                for e in interp.universe:
                    env[v] = e
                    if not _eval(body, interp, env, penv):
                        return False
                return True
            finally:
                _restore(env, v, saved)
        case Exists(var=v, body=body):
            saved = env.get(v)
            try:
                for e in interp.universe:
                    env[v] = e
                    if _eval(body, interp, env, penv):
                        return True
                return False
            finally:
                _restore(env, v, saved)
        case PVarAtom(var=v, args=args):
            try:
                ext = penv[v]
            except KeyError:
                raise UnboundVariableError(v.name) from None
            return tuple(_term(t, interp, env) for t in args) in ext
        case ExistsPred(var=v, body=body):
            saved = penv.get(v)
            tuples = list(product(interp.universe, repeat=v.arity))
            try:
                for mask in range(1 << len(tuples)):
                    penv[v] = frozenset(t for i, t in enumerate(tuples) if mask >> i & 1)
                    if _eval(body, interp, env, penv):
                        return True
                return False
            finally:
                _restore(penv, v, saved)
        case Top():
            return True
        case Bottom():
            return False
    raise TypeError(f"not a formula: {f!r}")


def _restore(env: dict, key, saved) -> None:
    if saved is None:
        env.pop(key, None)
    else:
        env[key] = saved


# ---------------------------------------------------------------------------
# the axioms of a relational theory


def _variables(n: int) -> list[Var]:
    if n == 1:
        return [Var("x")]
    if n == 2:
        return [Var("x"), Var("y")]
    return [Var(f"x{i}") for i in range(1, n + 1)]


def dca_axiom(sig: Signature) -> Formula:
    """``∀x (x=a_1 ∨ ... ∨ x=a_k)`` over every object constant."""
    if not sig.constants:
        raise ValueError("the domain closure axiom is undefined without object constants")
    x = Var("x")
    return Forall(x, disj(Equal(x, c) for c in sig.constants))


def una_axiom(a: str, b: str) -> Formula:
    return Not(Equal(a, b))


def clause_formula(clause: Clause) -> Formula:
    return disj(atom_formula(a) for a in clause.atoms)


def completion_axiom(predicate: str, arity: int, delta: Iterable[Clause]) -> Formula:
    """``∀x (P(x) → ⋁_{a∈W_P} x=a)``; tuple equality is the conjunction of its components."""
    w: dict[tuple[str, ...], None] = {}
    for clause in delta:
        for atom in clause.atoms:
            if atom.predicate == predicate:
                if len(atom.args) != arity:
                    raise ValueError(f"{atom} does not have arity {arity}")
                w.setdefault(atom.args)
    xs = _variables(arity)
    cases = [conj(Equal(x, a) for x, a in zip(xs, args)) for args in w]
    return forall(xs, Implies(Pred(predicate, tuple(xs)), disj(cases)))


@dataclass(frozen=True)
class TheoryAxioms:
    dca: Formula
    una: tuple[Formula, ...]
    clauses: tuple[Formula, ...]
    completion: tuple[Formula, ...]

    def all(self) -> tuple[Formula, ...]:
        return (self.dca, *self.una, *self.clauses, *self.completion)


def theory_axiom_groups(theory: TheorySpec) -> TheoryAxioms:
    sig = theory.signature
    return TheoryAxioms(
        dca=dca_axiom(sig),
        una=tuple(una_axiom(a, b) for a, b in theory.una_pairs()),
        clauses=tuple(clause_formula(c) for c in theory.delta),
        completion=tuple(completion_axiom(p, n, theory.delta) for p, n in sig.predicates),
    )


def theory_axioms(theory: TheorySpec) -> tuple[Formula, ...]:
    """DCA, the unique name axioms kept by the theory, the clauses, and the completion axioms."""
    return theory_axiom_groups(theory).all()


# ---------------------------------------------------------------------------
# enumeration

MAX_CONSTANTS = 10
MAX_ATOMS = 24
#: the stability condition quantifies over every sub-extension, so its limit is lower
MAX_SM_ATOMS = 10


def restricted_growth_strings(n: int) -> Iterator[tuple[int, ...]]:
    """All set partitions of ``range(n)`` as restricted growth strings, lexicographically."""
    if n == 0:
        yield ()
        return
    rgs = [0] * n

    def rec(i: int, top: int) -> Iterator[tuple[int, ...]]:
        if i == n:
            yield tuple(rgs)
            return
        for block in range(top + 2):
            rgs[i] = block
            yield from rec(i + 1, max(top, block))

    rgs[0] = 0
    yield from rec(1, 0)


def partitions(sig: Signature, barred: Iterable[tuple[str, str]] = ()) -> Iterator[dict[str, str]]:
    """Partitions of the constants with no barred pair in one block.

    Each partition is returned as a map from constant to its block
    representative, the block's first constant in declaration order.
    """
    consts = sig.constants
    idx = sig.const_index
    bars: list[set[int]] = [set() for _ in consts]
    for a, b in barred:
        i, j = idx[a], idx[b]
        bars[max(i, j)].add(min(i, j))
    n = len(consts)
    rgs = [0] * n
    reps: list[int] = []

    def rec(i: int) -> Iterator[dict[str, str]]:
        if i == n:
            yield {c: consts[reps[rgs[k]]] for k, c in enumerate(consts)}
            return
        for block in range(len(reps) + 1):
            if block < len(reps) and any(rgs[j] == block for j in bars[i]):
                continue
            rgs[i] = block
            fresh = block == len(reps)
            if fresh:
                reps.append(i)
            yield from rec(i + 1)
            if fresh:
                reps.pop()

    if n:
        yield from rec(0)


def _check_constants(sig: Signature, force: bool) -> None:
    if len(sig.constants) > MAX_CONSTANTS and not force:
        raise GuardrailError(
            f"{len(sig.constants)} object constants exceed the oracle limit of {MAX_CONSTANTS}; use force"
        )


def _extensions(candidates: Sequence[tuple[str, tuple[str, ...]]], preds: Iterable[str]) -> Iterator[dict]:
    for mask in range(1 << len(candidates)):
        ext: dict[str, set] = {p: set() for p in preds}
        for i, (p, t) in enumerate(candidates):
            if mask >> i & 1:
                ext[p].add(t)
        yield {p: frozenset(s) for p, s in ext.items()}


def enumerate_dca_models(theory: TheorySpec, force: bool = False) -> list[Diagram]:
    """Diagrams of all models of the theory, canonically sorted.

    Every partition of the constants that keeps the theory's unique name
    axioms is tried, and within it every choice of predicate extensions over
    the blocks.  A block tuple outside the image of ``W_P`` would falsify the
    completion axiom of ``P`` outright, so extensions range over subsets of
    that image; each candidate is still checked against every axiom.
    """
    sig = theory.signature
    _check_constants(sig, force)
    groups = theory_axiom_groups(theory)
    fixed = (groups.dca, *groups.una)
    varying = (*groups.clauses, *groups.completion)
    preds = [p for p, _ in sig.predicates]
    w = {p: theory.w(p) for p in preds}

    models: list[Diagram] = []
    for rep in partitions(sig, theory.una_pairs()):
        universe = tuple(dict.fromkeys(rep[c] for c in sig.constants))
        candidates = list(
            dict.fromkeys((p, tuple(rep[a] for a in args)) for p in preds for args in w[p])
        )
        if len(candidates) > MAX_ATOMS and not force:
            raise GuardrailError(
                f"{len(candidates)} candidate atoms exceed the oracle limit of {MAX_ATOMS}; use force"
            )
        base = DcaInterpretation(universe, rep, {})
        if not all(evaluate(f, base) for f in fixed):
            continue
        for ext in _extensions(candidates, preds):
            interp = DcaInterpretation(universe, rep, ext)
            if all(evaluate(f, interp) for f in varying):
                models.append(diagram_of(interp, sig))
    return sorted(models, key=lambda d: diagram_sort_key(d, sig))


def herbrand_models(formula: Formula, sig: Signature, force: bool = False) -> list[frozenset[Atom]]:
    """Herbrand models of ``formula``, by brute force over all subsets of the Herbrand base."""
    base = sig.herbrand_base()
    if len(base) > MAX_ATOMS and not force:
        raise GuardrailError(f"Herbrand base of {len(base)} atoms exceeds {MAX_ATOMS}; use force")
    found = []
    for mask in range(1 << len(base)):
        atoms = frozenset(a for i, a in enumerate(base) if mask >> i & 1)
        if evaluate(formula, herbrand_interpretation(sig, atoms)):
            found.append(atoms)
    return sorted(found, key=lambda m: sorted(sig.atom_key(a) for a in m))


def minimal_dca_models(formula: Formula, sig: Signature, force: bool = False) -> list[Diagram]:
    """Diagrams of the DCA-models of ``formula`` that are minimal within their partition.

    Minimality compares predicate extensions only, between models that share
    the same universe and constant map.
    """
    _check_constants(sig, force)
    preds = [p for p, _ in sig.predicates]
    size = sum(len(sig.constants) ** n for _, n in sig.predicates)
    if size > MAX_ATOMS and not force:
        raise GuardrailError(f"{size} ground atoms exceed the oracle limit of {MAX_ATOMS}; use force")
    found: list[Diagram] = []
    for rep in partitions(sig):
        universe = tuple(dict.fromkeys(rep[c] for c in sig.constants))
        candidates = [(p, t) for p, n in sig.predicates for t in product(universe, repeat=n)]
        models = []
        for ext in _extensions(candidates, preds):
            interp = DcaInterpretation(universe, rep, ext)
            if evaluate(formula, interp):
                models.append(interp)
        for m in models:
            if not any(_strictly_below(o, m, preds) for o in models):
                found.append(diagram_of(m, sig))
    return sorted(found, key=lambda d: diagram_sort_key(d, sig))


def stable_dca_models(formula: Formula, sig: Signature, force: bool = False) -> list[Diagram]:
    """Diagrams of the DCA-interpretations that satisfy ``SM_p[formula]``, ``p`` all predicates.

    The second-order stability condition is evaluated as written, so the
    cost is exponential twice over; a last-resort oracle for tiny inputs.
    """
    _check_constants(sig, force)
    size = sum(len(sig.constants) ** n for _, n in sig.predicates)
    if size > MAX_SM_ATOMS and not force:
        raise GuardrailError(f"{size} ground atoms exceed the stability-oracle limit of {MAX_SM_ATOMS}; use force")
    preds = [p for p, _ in sig.predicates]
    sm = sm_formula(formula, dict(sig.predicates))
    found: list[Diagram] = []
    for rep in partitions(sig):
        universe = tuple(dict.fromkeys(rep[c] for c in sig.constants))
        candidates = [(p, t) for p, n in sig.predicates for t in product(universe, repeat=n)]
        for ext in _extensions(candidates, preds):
            interp = DcaInterpretation(universe, rep, ext)
            if evaluate(sm, interp):
                found.append(diagram_of(interp, sig))
    return sorted(found, key=lambda d: diagram_sort_key(d, sig))


def _strictly_below(a: DcaInterpretation, b: DcaInterpretation, preds: Sequence[str]) -> bool:
    sub = all(a.extensions[p] <= b.extensions[p] for p in preds)
    return sub and any(a.extensions[p] != b.extensions[p] for p in preds)
