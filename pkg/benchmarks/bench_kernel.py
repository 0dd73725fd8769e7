"""Time the candidate search of the compiled kernel against the pure-Python one.

Run with ``python benchmarks/bench_kernel.py [--repeat N]``.  Each instance is
searched to completion with a callback that accepts every candidate, so only
the kernel is measured (stability checks are left out).
"""
from __future__ import annotations

import argparse
import time

from reiterlp import kernel
from reiterlp.generate import random_program, random_theory
from reiterlp.solver import StabilityChecker, _kernel_rules
from reiterlp.translate import compile_program, compile_theory


def instances(large: bool):
    for seed in (3, 5, 68) + ((11, 92) if large else ()):
        program = compile_theory(random_theory(seed, max_nulls=2))
        yield f"theory seed {seed}", program
    for seed in (1, 7):
        yield f"program seed {seed}", compile_program(random_program(seed, max_atoms=12))


def prepare(program):
    checker = StabilityChecker(program)
    return checker.n, checker.clauses, _kernel_rules(program, checker.index)


def best_time(mod, inst, repeat: int) -> tuple[float, int]:
    best, count = float("inf"), 0
    for _ in range(repeat):
        start = time.perf_counter()
        count = mod.search(*inst, lambda ids: True)
        best = min(best, time.perf_counter() - start)
    return best, count


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=1)
    ap.add_argument("--large", action="store_true", help="add instances that take minutes in pure Python")
    args = ap.parse_args()
    impls = kernel.available()
    if "cython" not in impls:
        print("compiled kernel not built; only the Python timings are shown")
    names = list(impls)
    print(f"{'instance':<18} {'vars':>5} {'clauses':>8} {'cands':>7} " + " ".join(f"{n + ' s':>10}" for n in names) + "  speedup")
    for label, program in instances(args.large):
        inst = prepare(program)
        times = {}
        counts = set()
        for name in names:
            t, c = best_time(impls[name], inst, args.repeat)
            times[name] = t
            counts.add(c)
        assert len(counts) == 1, f"kernels disagree on {label}"
        speed = f"{times['python'] / times['cython']:.1f}x" if "cython" in times else "-"
        cols = " ".join(f"{times[n]:>10.4f}" for n in names)
        print(f"{label:<18} {inst[0]:>5} {len(inst[1]):>8} {counts.pop():>7} {cols}  {speed:>7}", flush=True)


if __name__ == "__main__":
    main()
