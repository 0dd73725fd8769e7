"""Pure-Python search kernel; the reference the compiled kernel must match.

Variables are ``1..nvars``; a literal is ``+v`` or ``-v``.  ``rules`` are
``(heads, pos, neg)`` triples of variable lists.  They only feed the upper
bound: an atom that no rule can still derive is set false.  The classical
reading of the program is carried by ``clauses`` alone.
"""
from __future__ import annotations

from typing import Callable, Sequence

Clause = Sequence[int]
Rule = tuple[Sequence[int], Sequence[int], Sequence[int]]

IMPLEMENTATION = "python"


class _Engine:
    def __init__(self, nvars: int, clauses: Sequence[Clause], rules: Sequence[Rule] | None):
        self.n = nvars
        self.val = [0] * (nvars + 1)
        self.clauses = [list(c) for c in clauses]
        self.occ: list[list[int]] = [[] for _ in range(2 * nvars + 2)]
        for ci, c in enumerate(self.clauses):
            for lit in c:
                self.occ[self._slot(lit)].append(ci)
        self.trail: list[int] = []
        self.queue: list[int] = []
        self.rules = rules
        if rules is not None:
            self.body_occ: list[list[int]] = [[] for _ in range(nvars + 1)]
            for ri, (_, pos, _) in enumerate(rules):
                for v in pos:
                    self.body_occ[v].append(ri)

    @staticmethod
    def _slot(lit: int) -> int:
        return 2 * lit if lit > 0 else -2 * lit + 1

    def value(self, lit: int) -> int:
        v = self.val[abs(lit)]
        return v if lit > 0 else -v

    def assign(self, lit: int) -> bool:
        cur = self.value(lit)
        if cur:
            return cur > 0
        v = abs(lit)
        self.val[v] = 1 if lit > 0 else -1
        self.trail.append(v)
        self.queue.append(lit)
        return True

    def undo(self, mark: int) -> None:
        while len(self.trail) > mark:
            self.val[self.trail.pop()] = 0
        self.queue.clear()

    def _check(self, ci: int) -> bool:
        unit = 0
        free = 0
        for lit in self.clauses[ci]:
            x = self.value(lit)
            if x > 0:
                return True
            if x == 0:
                free += 1
                unit = lit
        if free == 0:
            return False
        if free == 1:
            return self.assign(unit)
        return True

    def start(self) -> bool:
        for ci in range(len(self.clauses)):
            if not self._check(ci):
                return False
        return self.propagate()

    def unit_propagate(self) -> bool:
        q = self.queue
        while q:
            lit = q.pop()
            for ci in self.occ[self._slot(-lit)]:
                if not self._check(ci):
                    q.clear()
                    return False
        return True

    def upper_bound(self) -> list[bool]:
        val = self.val
        poss = [False] * (self.n + 1)
        rules = self.rules
        missing = [len(pos) for _, pos, _ in rules]
        stack: list[int] = []

        def fire(ri: int) -> None:
            for h in rules[ri][0]:
                if val[h] != -1 and not poss[h]:
                    poss[h] = True
                    stack.append(h)

        for ri, (_, pos, neg) in enumerate(rules):
            if any(val[v] == 1 for v in neg):
                missing[ri] = -1
            elif missing[ri] == 0:
                fire(ri)
        while stack:
            a = stack.pop()
            for ri in self.body_occ[a]:
                if missing[ri] > 0:
                    missing[ri] -= 1
                    if missing[ri] == 0:
                        fire(ri)
        return poss

    def propagate(self) -> bool:
        while True:
            if not self.unit_propagate():
                return False
            if self.rules is None:
                return True
            poss = self.upper_bound()
            changed = False
            for v in range(1, self.n + 1):
                if not poss[v]:
                    if self.val[v] == 1:
                        return False
                    if self.val[v] == 0:
                        self.assign(-v)
                        changed = True
            if not changed:
                return True

    def first_free(self) -> int:
        for v in range(1, self.n + 1):
            if self.val[v] == 0:
                return v
        return 0

    def free_count(self) -> int:
        return sum(1 for v in range(1, self.n + 1) if self.val[v] == 0)


def root_free(nvars: int, clauses: Sequence[Clause], rules: Sequence[Rule]) -> int:
    """Atoms left open by propagation at the root, or -1 if the root conflicts."""
    eng = _Engine(nvars, clauses, rules)
    if not eng.start():
        return -1
    return eng.free_count()


def search(
    nvars: int,
    clauses: Sequence[Clause],
    rules: Sequence[Rule],
    on_candidate: Callable[[list[int]], bool],
) -> int:
    """Enumerate total assignments that satisfy ``clauses`` and lie within the upper bound.

    Branches on the lowest open variable, false before true.  Each candidate
    is passed to ``on_candidate`` as the sorted list of true variables; a
    false return stops the search.  Returns the number of candidates.
    """
    eng = _Engine(nvars, clauses, rules)
    count = 0
    if not eng.start():
        return 0

    def rec() -> bool:
        nonlocal count
        v = eng.first_free()
        if v == 0:
            count += 1
            return bool(on_candidate([u for u in range(1, nvars + 1) if eng.val[u] == 1]))
        mark = len(eng.trail)
        for lit in (-v, v):
            if eng.assign(lit) and eng.propagate():
                if not rec():
                    return False
            eng.undo(mark)
        return True

    rec()
    return count


def solve(nvars: int, clauses: Sequence[Clause]) -> list[int] | None:
    """One satisfying assignment (sorted true variables) or ``None``."""
    eng = _Engine(nvars, clauses, None)
    if not eng.start():
        return None

    def rec() -> bool:
        v = eng.first_free()
        if v == 0:
            return True
        mark = len(eng.trail)
        for lit in (-v, v):
            if eng.assign(lit) and eng.propagate() and rec():
                return True
            eng.undo(mark)
        return False

    if not rec():
        return None
    return [u for u in range(1, nvars + 1) if eng.val[u] == 1]
