from __future__ import annotations

import pytest

from reiterlp import _pykernel, kernel
from reiterlp.generate import random_program, random_theory
from reiterlp.solver import StabilityChecker, _kernel_rules
from reiterlp.translate import compile_theory

IMPLS = kernel.available()


@pytest.fixture(params=sorted(IMPLS))
def impl(request):
    return IMPLS[request.param]


def _instance(program):
    checker = StabilityChecker(program)
    return checker.n, checker.clauses, _kernel_rules(program, checker.index)


def _candidates(mod, n, clauses, rules):
    seen = []
    count = mod.search(n, clauses, rules, lambda ids: seen.append(ids) or True)
    assert count == len(seen)
    return seen


def test_selection():
    assert kernel.IMPLEMENTATION in IMPLS
    assert "python" in IMPLS


def test_solve_small(impl):
    assert impl.solve(2, [[1, 2], [-1]]) == [2]
    assert impl.solve(1, [[1], [-1]]) is None
    assert impl.solve(0, []) == []
    assert impl.solve(3, [[]]) is None


def test_search_enumerates_in_order(impl):
    # three atoms, "at least one", upper bound lets every atom be derived
    rules = [([1], [], []), ([2], [], []), ([3], [], [])]
    got = _candidates(impl, 3, [[1, 2, 3]], rules)
    assert got == [[3], [2], [2, 3], [1], [1, 3], [1, 2], [1, 2, 3]]


def test_upper_bound_falsifies_underivable(impl):
    # 2 only derivable from 1, and 1 has no rule at all
    rules = [([2], [1], [])]
    assert impl.root_free(2, [], rules) == 0
    assert _candidates(impl, 2, [], rules) == [[]]


def test_negative_body_blocks_rule(impl):
    # 1 is a fact; 2 :- not 1
    rules = [([1], [], []), ([2], [], [1])]
    assert _candidates(impl, 2, [[1]], rules) == [[1]]


def test_root_conflict(impl):
    assert impl.root_free(1, [[1], [-1]], [([1], [], [])]) == -1
    assert impl.search(1, [[1], [-1]], [([1], [], [])], lambda ids: True) == 0


def test_stop_early(impl):
    rules = [([1], [], []), ([2], [], [])]
    seen = []
    impl.search(2, [], rules, lambda ids: seen.append(ids) and False)
    assert len(seen) == 1


@pytest.mark.skipif(len(IMPLS) < 2, reason="compiled kernel not built")
def test_parity_on_compiled_theories():
    compiled = IMPLS["cython"]
    for seed in range(25):
        inst = _instance(compile_theory(random_theory(seed, max_nulls=1)))
        assert compiled.root_free(*inst) == _pykernel.root_free(*inst)
        assert _candidates(compiled, *inst) == _candidates(_pykernel, *inst), seed


@pytest.mark.skipif(len(IMPLS) < 2, reason="compiled kernel not built")
def test_parity_on_random_programs():
    compiled = IMPLS["cython"]
    for seed in range(60):
        n, clauses, rules = _instance(random_program(seed))
        assert _candidates(compiled, n, clauses, rules) == _candidates(_pykernel, n, clauses, rules)
        assert compiled.solve(n, clauses) == _pykernel.solve(n, clauses)


def test_environment_forces_pure_python():
    import os
    import subprocess
    import sys

    env = dict(os.environ, REITERLP_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import reiterlp.kernel as k; print(k.IMPLEMENTATION)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
