"""Herbrand stable models of ground programs.

Rules are read as first-order sentences and stability is the second-order
condition ``F ∧ ¬∃v((v<p) ∧ F*(v))`` with every predicate intensional.  For a
candidate ``M`` the condition is decided by looking for a valuation ``u``
strictly below ``M`` that satisfies ``F*(u)``; the unstarred parts of ``F*``
are evaluated at ``M``.
"""
from __future__ import annotations

from itertools import product
from typing import Iterable, Sequence

from . import kernel
from .fo import (
    And,
    Bottom,
    Equal,
    Formula,
    GuardrailError,
    Implies,
    Not,
    Or,
    Pred,
    PredVar,
    PVarAtom,
    Top,
    conj,
    disj,
    star,
)
from .theory import EQUALITY, Atom, Signature
from .translate import GroundProgram, GroundRule, Literal, RuleKind

MAX_FREE_ATOMS = 24


# ---------------------------------------------------------------------------
# rules as formulas


def _atom(a: Atom) -> Formula:
    return Equal(*a.args) if a.predicate == EQUALITY else Pred(a.predicate, a.args)


def _lit_formula(lit: Literal) -> Formula:
    return _atom(lit.atom) if lit.positive else Not(_atom(lit.atom))


def rule_to_formula(rule: GroundRule) -> Formula:
    """The sentence a rule stands for.

    A choice ``{A}`` reads as ``A ∨ ¬A``; ``1{A_1,...,A_r}`` as the
    conjunction of every ``A_i ∨ ¬A_i`` with ``A_1 ∨ ... ∨ A_r``.
    """
    body = conj(_lit_formula(l) for l in rule.body)
    k = rule.kind
    if k is RuleKind.FACT:
        return _atom(rule.head[0])
    if k is RuleKind.CONSTRAINT:
        return Not(body)
    if k is RuleKind.CARDINALITY:
        picks = tuple(Or((_atom(a), Not(_atom(a)))) for a in rule.head)
        return And(picks + (disj(_atom(a) for a in rule.head),))
    if k is RuleKind.CHOICE:
        head = conj(Or((_atom(a), Not(_atom(a)))) for a in rule.head)
    else:
        head = disj(_atom(a) for a in rule.head)
    return Implies(body, head) if rule.body else head


def program_formula(program: GroundProgram) -> Formula:
    return conj(rule_to_formula(r) for r in program.rules)


def predicate_variables(program: GroundProgram) -> dict[str, PredVar]:
    sig = program.signature
    return {p: PredVar(f"v_{p}", sig.arity(p)) for p, _ in sig.predicates if p in program.intensional}


# ---------------------------------------------------------------------------
# clausal form of ground (second-order-free) formulas

_TRUE: list[list[int]] = []
_FALSE: list[list[int]] = [[]]


def _clean(clause: Iterable[int]) -> list[int] | None:
    seen = dict.fromkeys(clause)
    if any(-l in seen for l in seen):
        return None
    return list(seen)


def _or(cnfs: list[list[list[int]]]) -> list[list[int]]:
    if any(c == _TRUE for c in cnfs):
        return []
    out: list[list[int]] = [[]]
    for cnf in cnfs:
        nxt = []
        for left in out:
            for right in cnf:
                merged = _clean(left + right)
                if merged is not None:
                    nxt.append(merged)
        out = nxt
        if not out:
            return []
    return out


def to_cnf(f: Formula, atom_var, pvar_var, positive: bool = True) -> list[list[int]]:
    """Clauses of a ground formula; ``atom_var``/``pvar_var`` number the atoms."""
    match f:
        case Pred(name=name, args=args):
            v = atom_var(Atom(name, args))
            return [[v if positive else -v]]
        case PVarAtom(var=pv, args=args):
            v = pvar_var(Atom(pv.name, args))
            return [[v if positive else -v]]
        case Equal(left=l, right=r):
            return _TRUE if (l == r) == positive else _FALSE
        case Top():
            return _TRUE if positive else _FALSE
        case Bottom():
            return _FALSE if positive else _TRUE
        case Not(sub=g):
            return to_cnf(g, atom_var, pvar_var, not positive)
        case And(parts=parts) if positive:
            return [c for p in parts for c in to_cnf(p, atom_var, pvar_var, True)]
        case Or(parts=parts) if not positive:
            return [c for p in parts for c in to_cnf(p, atom_var, pvar_var, False)]
        case And(parts=parts) | Or(parts=parts):
            return _or([to_cnf(p, atom_var, pvar_var, positive) for p in parts])
        case Implies(ante=a, cons=c):
            if positive:
                return _or([to_cnf(a, atom_var, pvar_var, False), to_cnf(c, atom_var, pvar_var, True)])
            return to_cnf(a, atom_var, pvar_var, True) + to_cnf(c, atom_var, pvar_var, False)
    raise TypeError(f"cannot put {type(f).__name__} in clausal form")


# ---------------------------------------------------------------------------
# stability


def _atom_order(program: GroundProgram) -> list[Atom]:
    sig = program.signature
    atoms = {a for r in program.rules for a in r.atoms() if a.predicate != EQUALITY}
    return sorted(atoms, key=sig.atom_key)


class StabilityChecker:
    """Decides stability of candidates for one program.

    ``F`` and ``F*`` are put in clausal form once.  Atom ``i`` of the
    program is variable ``i`` (its truth in ``M``) and ``n+i`` (its value
    under the predicate variables ``u``).
    """

    def __init__(self, program: GroundProgram):
        self.program = program
        self.atoms = _atom_order(program)
        self.index = {a: i + 1 for i, a in enumerate(self.atoms)}
        n = len(self.atoms)
        self.n = n
        pvars = predicate_variables(program)
        by_var = {v.name: p for p, v in pvars.items()}
        f = program_formula(program)

        def m_var(a: Atom) -> int:
            return self.index[a]

        def u_var(a: Atom) -> int:
            return n + self.index[Atom(by_var[a.predicate], a.args)]

        self.clauses = to_cnf(f, m_var, u_var)
        self.star_clauses = to_cnf(star(f, pvars), m_var, u_var)

    def is_model_ids(self, true_ids: set[int]) -> bool:
        return all(any((l in true_ids) if l > 0 else (-l not in true_ids) for l in c) for c in self.clauses)

    def is_stable_ids(self, true_ids: Sequence[int], check_model: bool = True) -> bool:
        tset = set(true_ids)
        if check_model and not self.is_model_ids(tset):
            return False
        if not tset:
            return True
        n = self.n
        compact = {v: i + 1 for i, v in enumerate(sorted(tset))}
        reduced: list[list[int]] = []
        for clause in self.star_clauses:
            out: list[int] = []
            for lit in clause:
                v = abs(lit)
                if v <= n:  # truth in M
                    if (lit > 0) == (v in tset):
                        break
                else:  # value under u, which is at most M
                    x = compact.get(v - n)
                    if x is None:
                        if lit < 0:
                            break
                    else:
                        out.append(x if lit > 0 else -x)
            else:
                if not out:
                    return True  # no valuation below M satisfies F*
                reduced.append(out)
        reduced.append([-x for x in compact.values()])
        return kernel.solve(len(compact), reduced) is None

    def is_stable(self, model: Iterable[Atom]) -> bool:
        model = set(model)
        sig = self.program.signature
        for a in model:
            sig.check_atom(a)
            if a.predicate == EQUALITY:
                raise ValueError("equality atoms are not part of a Herbrand interpretation")
        ids = [self.index[a] for a in model if a in self.index]
        if len(ids) != len(model):
            # an atom no rule mentions can always be dropped from u
            return False
        return self.is_stable_ids(ids)


def is_stable(model: Iterable[Atom], program: GroundProgram) -> bool:
    """Whether the Herbrand interpretation ``model`` is a stable model of ``program``."""
    return StabilityChecker(program).is_stable(model)


def _holds(atom: Atom, model: frozenset[Atom] | set[Atom]) -> bool:
    if atom.predicate == EQUALITY:
        return atom.args[0] == atom.args[1]
    return atom in model


def reduct_is_stable(model: Iterable[Atom], program: GroundProgram, max_atoms: int = 20) -> bool:
    """Gelfond-Lifschitz check for programs without choice or cardinality rules.

    ``M`` is stable iff it satisfies the program and is a minimal model of
    the reduct; minimality is checked against every proper subset.
    """
    if any(r.kind in (RuleKind.CHOICE, RuleKind.CARDINALITY) for r in program.rules):
        raise ValueError("the reduct check covers facts, disjunctive rules and constraints only")
    m = frozenset(model)
    if len(m) > max_atoms:
        raise GuardrailError(f"{len(m)} true atoms exceed the subset-search limit of {max_atoms}")

    def satisfies(x: frozenset[Atom], rules: Iterable[tuple[tuple[Atom, ...], list[Atom]]]) -> bool:
        for head, pos in rules:
            if all(_holds(a, x) for a in pos) and not any(_holds(a, x) for a in head):
                return False
        return True

    full = [(r.head, [l.atom for l in r.body if l.positive], [l.atom for l in r.body if not l.positive])
            for r in program.rules]
    if not all(
        not (all(_holds(a, m) for a in pos) and not any(_holds(a, m) for a in neg))
        or any(_holds(a, m) for a in head)
        for head, pos, neg in full
    ):
        return False
    reduct = [(head, pos) for head, pos, neg in full if not any(_holds(a, m) for a in neg)]
    members = sorted(m, key=str)
    for bits in product((False, True), repeat=len(members)):
        if all(bits):
            continue
        x = frozenset(a for a, keep in zip(members, bits) if keep)
        if satisfies(x, reduct):
            return False
    return True


# ---------------------------------------------------------------------------
# enumeration


def model_sort_key(model: Iterable[Atom], sig: Signature) -> tuple:
    return tuple(sorted(sig.atom_key(a) for a in model))


def _kernel_rules(program: GroundProgram, index: dict[Atom, int]) -> list[tuple[list[int], list[int], list[int]]]:
    out = []
    for r in program.rules:
        if r.kind is RuleKind.CONSTRAINT:
            continue
        pos: list[int] = []
        neg: list[int] = []
        dead = False
        for lit in r.body:
            a = lit.atom
            if a.predicate == EQUALITY:
                if (a.args[0] == a.args[1]) != lit.positive:
                    dead = True
                    break
                continue
            (pos if lit.positive else neg).append(index[a])
        if not dead:
            out.append(([index[a] for a in r.head], pos, neg))
    return out


def enumerate_stable_models(
    program: GroundProgram,
    limit: int = 0,
    force: bool = False,
    max_free: int = MAX_FREE_ATOMS,
) -> list[frozenset[Atom]]:
    """All stable models in canonical order (the first ``limit`` if positive).

    The guardrail counts atoms still undecided after propagation at the root
    of the search; above ``max_free`` the call is refused unless ``force``.
    """
    if limit < 0:
        raise ValueError("limit must be >= 0")
    checker = StabilityChecker(program)
    atoms = checker.atoms
    rules = _kernel_rules(program, checker.index)
    free = kernel.root_free(checker.n, checker.clauses, rules)
    if free > max_free and not force:
        raise GuardrailError(f"{free} undecided atoms exceed the search limit of {max_free}; use force")
    found: list[frozenset[Atom]] = []

    def accept(ids: list[int]) -> bool:
        if checker.is_stable_ids(ids, check_model=False):
            found.append(frozenset(atoms[i - 1] for i in ids))
        return True

    if free >= 0:
        kernel.search(checker.n, checker.clauses, rules, accept)
    sig = program.signature
    found.sort(key=lambda m: model_sort_key(m, sig))
    return found[:limit] if limit else found
