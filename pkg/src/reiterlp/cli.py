"""Command-line front end.

    reiterlp translate FILE [-una C ... | -no-una C ...] [--herbrand]
    reiterlp solve FILE [--models N] [--force] [--herbrand]
    reiterlp oracle FILE [--force]
    reiterlp check FILE | --random N --seed S
    reiterlp emit-asp FILE [--style legacy|modern]

FILE holds a relational theory unless ``--program`` says it holds ground
rules.  Models go to stdout, diagnostics to stderr.  Exit status: 0 on
success, 1 on a parse or validation error, 2 when ``check`` finds a
mismatch, 3 when a guardrail refuses the input.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, TextIO

from .diagrams import answer_set_to_diagram, base_signature
from .fo import (
    Diagram,
    Equal,
    GuardrailError,
    Not,
    conj,
    diagram_sort_key,
    enumerate_dca_models,
    eq_form_key,
    format_diagram,
    stable_dca_models,
)
from .generate import random_theory
from .solver import enumerate_stable_models, program_formula
from .syntax import SourceError
from .theory import Atom, Signature, TheoryError, TheorySpec, parse_theory
from .translate import (
    GroundProgram,
    compile_program,
    compile_theory,
    delta_to_pi,
    emit_asp_text,
    parse_program,
    print_program,
    una_constraints,
)

EXIT_OK, EXIT_INPUT, EXIT_MISMATCH, EXIT_GUARDRAIL = 0, 1, 2, 3
COMMANDS = ("translate", "solve", "oracle", "check", "emit-asp")


@dataclass
class RunConfig:
    command: str
    path: str | None = None
    program: bool = False
    una_mode: str = "theory"
    constants: tuple[str, ...] = ()
    style: str = "modern"
    models: int = 0
    force: bool = False
    herbrand: bool = False
    random: int = 0
    seed: int | None = None
    output: str | None = None

    def __post_init__(self) -> None:
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if self.una_mode != "theory" and not self.constants:
            raise ValueError(f"-{self.una_mode} needs at least one constant")
        if self.models < 0:
            raise ValueError("--models must be >= 0")
        if self.random:
            if self.command != "check":
                raise ValueError("--random only applies to check")
            if self.seed is None:
                raise ValueError("--random needs --seed")
        elif self.path is None:
            raise ValueError("an input file is required")


# ---------------------------------------------------------------------------
# pipeline pieces


def _read(cfg: RunConfig) -> TheorySpec | GroundProgram:
    with open(cfg.path, encoding="utf-8") as fh:
        text = fh.read()
    return parse_program(text) if cfg.program else parse_theory(text)


def _una_pairs(source: TheorySpec | GroundProgram, cfg: RunConfig) -> list[tuple[str, str]]:
    rules = una_constraints(source, cfg.una_mode, cfg.constants)
    return [r.body[0].atom.args for r in rules]


def _with_pairs(theory: TheorySpec, pairs: Iterable[tuple[str, str]]) -> TheorySpec:
    """The same clauses with exactly ``pairs`` as unique name axioms.

    Declaring every constant a null makes no axiom required, so Sigma
    carries the whole set.
    """
    sig = theory.signature
    free = Signature(sig.constants, sig.predicates, frozenset(sig.constants))
    return TheorySpec(free, theory.delta, frozenset(frozenset(p) for p in pairs))


def compiled(source: TheorySpec | GroundProgram, cfg: RunConfig) -> GroundProgram:
    if cfg.herbrand:
        return delta_to_pi(source) if isinstance(source, TheorySpec) else source
    if isinstance(source, TheorySpec):
        return compile_theory(source, cfg.una_mode, cfg.constants)
    return compile_program(source, cfg.una_mode, cfg.constants)


def solver_models(source, cfg: RunConfig) -> tuple[GroundProgram, list[frozenset[Atom]]]:
    program = compiled(source, cfg)
    return program, enumerate_stable_models(program, limit=cfg.models, force=cfg.force)


def solver_diagrams(source, cfg: RunConfig) -> list[Diagram]:
    program, models = solver_models(source, cfg)
    sig = base_signature(program.signature)
    return sorted((answer_set_to_diagram(m, sig) for m in models), key=lambda d: diagram_sort_key(d, sig))


def oracle_diagrams(source, cfg: RunConfig) -> list[Diagram]:
    if isinstance(source, TheorySpec):
        theory = source if cfg.una_mode == "theory" else _with_pairs(source, _una_pairs(source, cfg))
        return enumerate_dca_models(theory, force=cfg.force)
    una = [Not(Equal(a, b)) for a, b in _una_pairs(source, cfg)]
    formula = conj([program_formula(source), *una])
    return stable_dca_models(formula, source.signature, force=cfg.force)


# ---------------------------------------------------------------------------
# printing


def write_answers(out: TextIO, models: Sequence[frozenset[Atom]], sig: Signature) -> None:
    for k, m in enumerate(models, 1):
        atoms = sorted(m, key=lambda a: eq_form_key(sig, a))
        out.write(f"Answer: {k}\n{' '.join(map(str, atoms))}\n")


def write_diagrams(out: TextIO, diagrams: Sequence[Diagram], sig: Signature) -> None:
    for k, d in enumerate(diagrams, 1):
        out.write(f"Diagram: {k}\n{format_diagram(d, sig)}")


# ---------------------------------------------------------------------------
# commands


def _check_one(source, cfg: RunConfig, out: TextIO, label: str) -> bool:
    sig = base_signature(source.signature)
    solved = solver_diagrams(source, cfg)
    expected = oracle_diagrams(source, cfg)
    if solved == expected:
        out.write(f"{label}: ok, {len(solved)} diagrams\n")
        return True
    out.write(f"{label}: MISMATCH, solver {len(solved)} diagrams, oracle {len(expected)}\n")
    for title, left, right in (("solver only", solved, expected), ("oracle only", expected, solved)):
        extra = [d for d in left if d not in right]
        if extra:
            out.write(f"{title}:\n")
            write_diagrams(out, extra, sig)
    return False


def run(cfg: RunConfig, out: TextIO) -> int:
    if cfg.random:
        # generated theories are bounded by construction, so guardrails are waived
        cfg = replace(cfg, force=True)
        ok = True
        for i in range(cfg.random):
            seed = cfg.seed + i
            theory = random_theory(seed, max_nulls=2)
            ok &= _check_one(theory, cfg, out, f"seed {seed}")
        return EXIT_OK if ok else EXIT_MISMATCH

    source = _read(cfg)
    if cfg.command == "translate":
        out.write(print_program(compiled(source, cfg)))
    elif cfg.command == "emit-asp":
        out.write(emit_asp_text(compiled(source, cfg), cfg.style))
    elif cfg.command == "solve":
        program, models = solver_models(source, cfg)
        write_answers(out, models, program.signature)
        if not cfg.herbrand:
            sig = base_signature(program.signature)
            write_diagrams(out, [answer_set_to_diagram(m, sig) for m in models], sig)
        print(f"{len(models)} answer set(s)", file=sys.stderr)
    elif cfg.command == "oracle":
        sig = source.signature
        write_diagrams(out, oracle_diagrams(source, cfg), sig)
    else:
        if cfg.herbrand:
            raise ValueError("check compares diagrams; --herbrand does not apply")
        return EXIT_OK if _check_one(source, cfg, out, cfg.path) else EXIT_MISMATCH
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


class _Parser(argparse.ArgumentParser):
    """Usage errors exit 1 so that 2 stays reserved for check mismatches."""

    def error(self, message: str):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False, allow_abbrev=False)
    common.add_argument("--program", action="store_true", help="input is a ground program, not a theory")
    una = common.add_mutually_exclusive_group()
    una.add_argument("-una", nargs="+", metavar="C", help="add a != b for distinct listed constants")
    una.add_argument(
        "-no-una", nargs="+", metavar="C", dest="no_una",
        help="add a != b for pairs with at least one constant not listed",
    )
    common.add_argument("--force", action="store_true", help="run past the size guardrails")
    common.add_argument("-o", "--output", help="write to this file instead of stdout")

    parser = _Parser(prog="reiterlp", description=__doc__.split("\n\n")[0], allow_abbrev=False)
    sub = parser.add_subparsers(dest="command", required=True)
    for name, text in (
        ("translate", "print the compiled ground program"),
        ("solve", "enumerate stable models and their diagrams"),
        ("oracle", "enumerate model diagrams by brute force"),
        ("check", "compare solver and oracle diagrams"),
        ("emit-asp", "print text for an external grounder"),
    ):
        p = sub.add_parser(name, parents=[common], help=text, allow_abbrev=False)
        p.add_argument("input", nargs="?" if name == "check" else None)
        if name in ("translate", "solve", "emit-asp"):
            p.add_argument("--herbrand", action="store_true", help="skip the equality rewrite")
        if name == "solve":
            p.add_argument("--models", type=int, default=0, metavar="N", help="stop after N models (0 = all)")
        if name in ("translate", "emit-asp"):
            p.add_argument("--style", choices=("modern", "legacy"), default="modern")
        if name == "check":
            p.add_argument("--random", type=int, default=0, metavar="N", help="check N random theories")
            p.add_argument("--seed", type=int, help="seed of the first random theory")
    return parser


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    mode, consts = "theory", ()
    if ns.una:
        mode, consts = "una", tuple(ns.una)
    elif ns.no_una:
        mode, consts = "no-una", tuple(ns.no_una)
    return RunConfig(
        command=ns.command,
        path=ns.input,
        program=ns.program,
        una_mode=mode,
        constants=consts,
        style=getattr(ns, "style", "modern"),
        models=getattr(ns, "models", 0),
        force=ns.force,
        herbrand=getattr(ns, "herbrand", False),
        random=getattr(ns, "random", 0),
        seed=getattr(ns, "seed", None),
        output=ns.output,
    )


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        cfg = config_from_args(ns)
    except ValueError as exc:
        parser.error(str(exc))
    out: TextIO = sys.stdout
    try:
        if cfg.output:
            out = open(cfg.output, "w", encoding="utf-8")
        return run(cfg, out)
    except GuardrailError as exc:
        print(f"reiterlp: {exc}", file=sys.stderr)
        return EXIT_GUARDRAIL
    except SourceError as exc:
        print(f"reiterlp: {cfg.path}:{exc}", file=sys.stderr)
        return EXIT_INPUT
    except (TheoryError, ValueError, OSError) as exc:
        print(f"reiterlp: {exc}", file=sys.stderr)
        return EXIT_INPUT
    finally:
        if out is not sys.stdout:
            out.close()


if __name__ == "__main__":
    sys.exit(main())
