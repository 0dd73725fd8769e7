"""Tokenizer and shared atom grammar for theory and program sources.

Both source languages are statement-oriented: every statement ends with a
period, ``%`` starts a comment that runs to the end of the line.  Atoms use
lparse-style pooling: ``p(a;b)`` is two atoms, ``p(a,b;;c,d)`` is two tuples.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Iterator


class SourceError(ValueError):
    """Malformed input; carries a 1-based source position."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"{line}:{column}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<newline>\n)
  | (?P<comment>%[^\n]*)
  | (?P<directive>\#[A-Za-z_][A-Za-z0-9_-]*)
  | (?P<ident>[a-z][A-Za-z0-9_']*)
  | (?P<var>[A-Z_][A-Za-z0-9_']*)
  | (?P<int>-?[0-9]+)
  | (?P<punct>:-|;;|==|!=|[().,;|{}=/])
    """,
    re.VERBOSE,
)


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    line, line_start, pos = 1, 0, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise SourceError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        assert kind is not None
        if kind == "newline":
            line += 1
            line_start = m.end()
        elif kind not in ("ws", "comment"):
            value = m.group()
            tokens.append(Token(value if kind == "punct" else kind, value, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


class TokenStream:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.pos = 0

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def next(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "eof":
            self.pos += 1
        return tok

    def at(self, *kinds: str) -> bool:
        return self.peek().kind in kinds

    def accept(self, kind: str) -> Token | None:
        if self.peek().kind == kind:
            return self.next()
        return None

    def expect(self, kind: str, what: str | None = None) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            shown = repr(tok.text) if tok.kind != "eof" else "end of input"
            raise SourceError(f"expected {what or repr(kind)}, found {shown}", tok.line, tok.column)
        return self.next()

    def error(self, message: str, tok: Token | None = None) -> SourceError:
        tok = tok or self.peek()
        return SourceError(message, tok.line, tok.column)


@dataclass(frozen=True)
class RawAtom:
    """An atom as written, before any signature checks."""

    predicate: str
    args: tuple[str, ...]
    line: int
    column: int


def parse_term(ts: TokenStream) -> str:
    tok = ts.peek()
    if tok.kind in ("ident", "int"):
        return ts.next().text
    if tok.kind == "var":
        raise ts.error(f"variables are not allowed in ground input: {tok.text!r}")
    raise ts.error("expected a constant")


def parse_pooled_atom(ts: TokenStream) -> list[RawAtom]:
    """Parse ``pred``, ``pred(args)`` or a pooled ``pred(a;b)`` / ``pred(a,b;;c,d)``."""
    head = ts.expect("ident", "a predicate name")
    if not ts.accept("("):
        return [RawAtom(head.text, (), head.line, head.column)]
    tuples: list[tuple[str, ...]] = []
    while True:
        positions: list[list[str]] = []
        while True:
            pool = [parse_term(ts)]
            while ts.accept(";"):
                pool.append(parse_term(ts))
            positions.append(pool)
            if not ts.accept(","):
                break
        tuples.extend(itertools.product(*positions))
        if not ts.accept(";;"):
            break
    ts.expect(")", "')'")
    return [RawAtom(head.text, args, head.line, head.column) for args in tuples]


def parse_single_atom(ts: TokenStream) -> RawAtom:
    start = ts.peek()
    atoms = parse_pooled_atom(ts)
    if len(atoms) != 1:
        raise ts.error("pooling (';') is only allowed in facts", start)
    return atoms[0]


def iter_statements(ts: TokenStream) -> Iterator[Token]:
    """Yield the first token of each statement until end of input."""
    while not ts.at("eof"):
        yield ts.peek()
