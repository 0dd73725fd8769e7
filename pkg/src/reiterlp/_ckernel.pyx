# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernel; same contract as ``_pykernel``.

Clauses, literal occurrences and rules are packed into flat CSR arrays so the
propagation loops run without touching Python objects.
"""
from libc.stdlib cimport calloc, free, malloc

IMPLEMENTATION = "cython"


cdef int* _pack(list rows, int* total) except NULL:
    """Offsets (len(rows)+1) followed by the concatenated rows."""
    cdef Py_ssize_t n = len(rows), i, k = 0, size = 0
    for row in rows:
        size += len(row)
    cdef int* buf = <int*>malloc((n + 1 + size + 1) * sizeof(int))
    if buf == NULL:
        raise MemoryError()
    cdef int* data = buf + n + 1
    for i in range(n):
        buf[i] = k
        for x in rows[i]:
            data[k] = x
            k += 1
    buf[n] = k
    total[0] = <int>size
    return buf


cdef class _Engine:
    cdef int n, nclauses, nrules, trail_len, queue_len
    cdef int* val
    cdef int* clauses      # CSR: offsets then literals
    cdef int* occ          # CSR by literal slot: clause ids
    cdef int* trail
    cdef int* queue
    cdef bint has_rules
    cdef int* heads
    cdef int* pos
    cdef int* neg
    cdef int* body_occ
    cdef int* missing
    cdef char* poss
    cdef int* stack

    def __cinit__(self, int nvars, clauses, rules):
        cdef int total, ci, v, i
        self.n = nvars
        self.val = <int*>calloc(nvars + 1, sizeof(int))
        self.trail = <int*>malloc((nvars + 1) * sizeof(int))
        self.queue = <int*>malloc((nvars + 1) * sizeof(int))
        self.poss = <char*>calloc(nvars + 1, 1)
        self.stack = <int*>malloc((nvars + 1) * sizeof(int))
        if not (self.val and self.trail and self.queue and self.poss and self.stack):
            raise MemoryError()
        rows = [list(c) for c in clauses]
        self.nclauses = len(rows)
        self.clauses = _pack(rows, &total)
        by_slot = [[] for _ in range(2 * nvars + 2)]
        for ci in range(self.nclauses):
            for lit in rows[ci]:
                by_slot[2 * lit if lit > 0 else -2 * lit + 1].append(ci)
        self.occ = _pack(by_slot, &total)
        self.has_rules = rules is not None
        if self.has_rules:
            rules = list(rules)
            self.nrules = len(rules)
            self.heads = _pack([list(r[0]) for r in rules], &total)
            self.pos = _pack([list(r[1]) for r in rules], &total)
            self.neg = _pack([list(r[2]) for r in rules], &total)
            occ_rows = [[] for _ in range(nvars + 1)]
            for i in range(self.nrules):
                for v in rules[i][1]:
                    occ_rows[v].append(i)
            self.body_occ = _pack(occ_rows, &total)
            self.missing = <int*>malloc((self.nrules + 1) * sizeof(int))
            if self.missing == NULL:
                raise MemoryError()

    def __dealloc__(self):
        free(self.val)
        free(self.trail)
        free(self.queue)
        free(self.poss)
        free(self.stack)
        free(self.clauses)
        free(self.occ)
        if self.has_rules:
            free(self.heads)
            free(self.pos)
            free(self.neg)
            free(self.body_occ)
            free(self.missing)

    cdef inline int value(self, int lit) nogil:
        cdef int v = self.val[lit if lit > 0 else -lit]
        return v if lit > 0 else -v

    cdef bint assign(self, int lit) nogil:
        cdef int cur = self.value(lit)
        if cur:
            return cur > 0
        cdef int v = lit if lit > 0 else -lit
        self.val[v] = 1 if lit > 0 else -1
        self.trail[self.trail_len] = v
        self.trail_len += 1
        self.queue[self.queue_len] = lit
        self.queue_len += 1
        return True

    cdef void undo(self, int mark) nogil:
        while self.trail_len > mark:
            self.trail_len -= 1
            self.val[self.trail[self.trail_len]] = 0
        self.queue_len = 0

    cdef bint check(self, int ci) nogil:
        cdef int* data = self.clauses + self.nclauses + 1
        cdef int k, lit, x, unit = 0, nfree = 0
        for k in range(self.clauses[ci], self.clauses[ci + 1]):
            lit = data[k]
            x = self.value(lit)
            if x > 0:
                return True
            if x == 0:
                nfree += 1
                unit = lit
        if nfree == 0:
            return False
        if nfree == 1:
            return self.assign(unit)
        return True

    cdef bint unit_propagate(self) nogil:
        cdef int nslots = 2 * self.n + 2
        cdef int* data = self.occ + nslots + 1
        cdef int lit, slot, k
        while self.queue_len:
            self.queue_len -= 1
            lit = -self.queue[self.queue_len]
            slot = 2 * lit if lit > 0 else -2 * lit + 1
            for k in range(self.occ[slot], self.occ[slot + 1]):
                if not self.check(data[k]):
                    self.queue_len = 0
                    return False
        return True

    cdef inline void fire(self, int ri, int* top) nogil:
        cdef int* hdata = self.heads + self.nrules + 1
        cdef int k, h
        for k in range(self.heads[ri], self.heads[ri + 1]):
            h = hdata[k]
            if self.val[h] != -1 and not self.poss[h]:
                self.poss[h] = 1
                self.stack[top[0]] = h
                top[0] += 1

    cdef void upper_bound(self) nogil:
        cdef int nr = self.nrules
        cdef int* pdata = self.pos + nr + 1
        cdef int* ndata = self.neg + nr + 1
        cdef int* odata = self.body_occ + self.n + 2
        cdef int ri, k, a, top = 0
        cdef bint dead
        for k in range(self.n + 1):
            self.poss[k] = 0
        for ri in range(nr):
            self.missing[ri] = self.pos[ri + 1] - self.pos[ri]
        for ri in range(nr):
            dead = False
            for k in range(self.neg[ri], self.neg[ri + 1]):
                if self.val[ndata[k]] == 1:
                    dead = True
                    break
            if dead:
                self.missing[ri] = -1
            elif self.missing[ri] == 0:
                self.fire(ri, &top)
        while top:
            top -= 1
            a = self.stack[top]
            for k in range(self.body_occ[a], self.body_occ[a + 1]):
                ri = odata[k]
                if self.missing[ri] > 0:
                    self.missing[ri] -= 1
                    if self.missing[ri] == 0:
                        self.fire(ri, &top)

    cdef bint propagate(self) nogil:
        cdef int v
        cdef bint changed
        while True:
            if not self.unit_propagate():
                return False
            if not self.has_rules:
                return True
            self.upper_bound()
            changed = False
            for v in range(1, self.n + 1):
                if not self.poss[v]:
                    if self.val[v] == 1:
                        return False
                    if self.val[v] == 0:
                        self.assign(-v)
                        changed = True
            if not changed:
                return True

    cdef bint start(self) nogil:
        cdef int ci
        for ci in range(self.nclauses):
            if not self.check(ci):
                return False
        return self.propagate()

    cdef int first_free(self) nogil:
        cdef int v
        for v in range(1, self.n + 1):
            if self.val[v] == 0:
                return v
        return 0

    cdef int free_count(self) nogil:
        cdef int v, c = 0
        for v in range(1, self.n + 1):
            if self.val[v] == 0:
                c += 1
        return c

    cdef list true_vars(self):
        cdef int v
        return [v for v in range(1, self.n + 1) if self.val[v] == 1]


def root_free(int nvars, clauses, rules):
    """Atoms left open by propagation at the root, or -1 if the root conflicts."""
    cdef _Engine eng = _Engine(nvars, clauses, rules)
    if not eng.start():
        return -1
    return eng.free_count()


cdef int _search(_Engine eng, object on_candidate, long* count) except -1:
    """1 to keep going, 0 to stop."""
    cdef int v = eng.first_free()
    cdef int mark, lit, i
    if v == 0:
        count[0] += 1
        return 1 if on_candidate(eng.true_vars()) else 0
    mark = eng.trail_len
    for i in range(2):
        lit = -v if i == 0 else v
        if eng.assign(lit) and eng.propagate():
            if not _search(eng, on_candidate, count):
                return 0
        eng.undo(mark)
    return 1


def search(int nvars, clauses, rules, on_candidate):
    """Enumerate total assignments that satisfy ``clauses`` and lie within the upper bound."""
    cdef _Engine eng = _Engine(nvars, clauses, rules)
    cdef long count = 0
    if not eng.start():
        return 0
    _search(eng, on_candidate, &count)
    return count


cdef bint _solve(_Engine eng) nogil:
    cdef int v = eng.first_free()
    cdef int mark, lit, i
    if v == 0:
        return True
    mark = eng.trail_len
    for i in range(2):
        lit = -v if i == 0 else v
        if eng.assign(lit) and eng.propagate() and _solve(eng):
            return True
        eng.undo(mark)
    return False


def solve(int nvars, clauses):
    """One satisfying assignment (sorted true variables) or ``None``."""
    cdef _Engine eng = _Engine(nvars, clauses, None)
    if not eng.start() or not _solve(eng):
        return None
    return eng.true_vars()
