"""Specification of the sums this package evaluates and reduces.

A sum is written as a product of inner partial-sum factors divided by a
power of the outer index, optionally with an alternating sign:

    sum over n >= 1 of  (prod_i f_i(n))  *  s(n) / n**q

where each factor is one of

    h(k): sum_{j<=n} 1/j**k          (k = 1 is the harmonic number)
    l(k): sum_{j<=n} (-1)**(j-1)/j**k

raised to a positive integer exponent, and s(n) is 1 or (-1)**(n-1).

Text form, e.g. "h(1)^2*l(2)/n^3 alt":

    sumspec := factors "/" "n" ["^" INT] [" alt"]
    factors := "1" | factor {"*" factor}
    factor  := ("h" | "l") "(" INT ")" ["^" INT]

Whitespace is ignored around operators; the trailing "alt" must be set off
by whitespace. Parsing is strict and errors carry the character offset.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .kernel import Rational, SumSpecSyntaxError

__all__ = [
    "Factor",
    "SumSpec",
    "parse_sumspec",
    "format_sumspec",
    "partial_sum",
]


@dataclass(frozen=True, order=True)
class Factor:
    """One inner factor: kind "h" or "l", order k >= 1, exponent >= 1."""

    kind: str
    order: int
    exponent: int = 1

    def __post_init__(self):
        if self.kind not in ("h", "l"):
            raise ValueError(f"unknown factor kind {self.kind!r}")
        if self.order < 1:
            raise ValueError("factor order must be >= 1")
        if self.exponent < 1:
            raise ValueError("factor exponent must be >= 1")

    @property
    def weight(self) -> int:
        return self.order * self.exponent


@dataclass(frozen=True)
class SumSpec:
    """A full sum specification in canonical form.

    Factors are stored sorted (kind, then order) with equal factors merged,
    so structurally equal sums compare equal and the text form is unique.
    """

    factors: tuple[Factor, ...]
    power: int
    alternating: bool = False

    def __post_init__(self):
        if self.power < 0:
            raise ValueError("outer power must be >= 0")
        merged: dict[tuple[str, int], int] = {}
        for f in self.factors:
            key = (f.kind, f.order)
            merged[key] = merged.get(key, 0) + f.exponent
        canon = tuple(
            Factor(kind, order, exp)
            for (kind, order), exp in sorted(merged.items())
        )
        object.__setattr__(self, "factors", canon)

    @property
    def weight(self) -> int:
        return sum(f.weight for f in self.factors) + self.power

    @property
    def degree(self) -> int:
        return sum(f.exponent for f in self.factors)

    def converges(self) -> bool:
        """True when the infinite series converges.

        The factors grow at most polylogarithmically, so the series
        converges absolutely for q >= 2 and conditionally for q = 1 when
        the alternating sign is present. Everything else diverges.
        """
        if self.power >= 2:
            return True
        return self.power == 1 and self.alternating

    def __str__(self) -> str:
        return format_sumspec(self)


def format_sumspec(spec: SumSpec) -> str:
    """Canonical text form; `parse_sumspec` inverts it exactly."""
    if spec.factors:
        head = "*".join(
            f"{f.kind}({f.order})" + (f"^{f.exponent}" if f.exponent > 1 else "")
            for f in spec.factors
        )
    else:
        head = "1"
    tail = "/n" if spec.power == 1 else f"/n^{spec.power}"
    return head + tail + (" alt" if spec.alternating else "")


_TOKEN_RE = re.compile(r"[a-z]+|[0-9]+|[*/^()]")


def _tokenize(text: str) -> list[tuple[str, int, bool]]:
    """Split into (lexeme, offset, had_space_before) triples."""
    tokens = []
    pos = 0
    spaced = False
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            spaced = True
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise SumSpecSyntaxError(f"unexpected character {ch!r}", pos)
        tokens.append((m.group(), pos, spaced))
        spaced = False
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.idx = 0

    def peek(self) -> tuple[str, int, bool] | None:
        return self.tokens[self.idx] if self.idx < len(self.tokens) else None

    def take(self) -> tuple[str, int, bool]:
        tok = self.peek()
        if tok is None:
            raise SumSpecSyntaxError("unexpected end of input", len(self.text))
        self.idx += 1
        return tok

    def expect(self, lexeme: str, what: str) -> tuple[str, int, bool]:
        tok = self.take()
        if tok[0] != lexeme:
            raise SumSpecSyntaxError(f"expected {what}, got {tok[0]!r}", tok[1])
        return tok

    def integer(self, what: str) -> int:
        tok = self.take()
        if not tok[0].isdigit():
            raise SumSpecSyntaxError(f"expected {what}, got {tok[0]!r}", tok[1])
        return int(tok[0])

    def factor(self) -> Factor:
        lex, off, _ = self.take()
        if lex not in ("h", "l"):
            raise SumSpecSyntaxError(f"expected factor 'h' or 'l', got {lex!r}", off)
        self.expect("(", "'('")
        tok = self.peek()
        order = self.integer("factor order")
        if order < 1:
            raise SumSpecSyntaxError("factor order must be >= 1", tok[1])
        self.expect(")", "')'")
        exponent = 1
        nxt = self.peek()
        if nxt is not None and nxt[0] == "^":
            self.take()
            tok = self.peek()
            exponent = self.integer("factor exponent")
            if exponent < 1:
                raise SumSpecSyntaxError("factor exponent must be >= 1", tok[1])
        return Factor(lex, order, exponent)

    def parse(self) -> SumSpec:
        factors: list[Factor] = []
        first = self.peek()
        if first is None:
            raise SumSpecSyntaxError("empty sum specification", 0)
        if first[0] == "1":
            self.take()
        else:
            factors.append(self.factor())
            while (tok := self.peek()) is not None and tok[0] == "*":
                self.take()
                factors.append(self.factor())
        self.expect("/", "'/'")
        self.expect("n", "outer index 'n'")
        power = 1
        nxt = self.peek()
        if nxt is not None and nxt[0] == "^":
            self.take()
            power = self.integer("outer power")
        alternating = False
        nxt = self.peek()
        if nxt is not None and nxt[0] == "alt":
            if not nxt[2]:
                raise SumSpecSyntaxError("'alt' must be preceded by whitespace", nxt[1])
            self.take()
            alternating = True
        trailing = self.peek()
        if trailing is not None:
            raise SumSpecSyntaxError(f"trailing input {trailing[0]!r}", trailing[1])
        return SumSpec(tuple(factors), power, alternating)


def parse_sumspec(text: str) -> SumSpec:
    """Parse the text form of a sum specification."""
    return _Parser(text).parse()


def partial_sum(kind: str, order: int, n: int, x: Rational | None = None) -> Fraction:
    """Exact n-th partial sum of an inner factor.

    kind "h": sum_{j<=n} 1/j**order, kind "l": sum_{j<=n} (-1)**(j-1)/j**order.
    With x given, the h-kind generalizes to sum_{j<=n} x**j/j**order (the
    l-kind is then x = -1 up to sign and is rejected to avoid ambiguity).
    """
    if n < 0:
        raise ValueError("partial sum needs n >= 0")
    if order < 1:
        raise ValueError("partial sum needs order >= 1")
    if x is not None:
        if kind != "h":
            raise ValueError("weighted partial sums are defined for kind 'h'")
        q = Fraction(x)
        return sum((q ** j / j ** order for j in range(1, n + 1)), Fraction(0))
    if kind == "h":
        return sum((Fraction(1, j ** order) for j in range(1, n + 1)), Fraction(0))
    if kind == "l":
        return sum(
            (Fraction(-1 if j % 2 == 0 else 1, j ** order) for j in range(1, n + 1)),
            Fraction(0),
        )
    raise ValueError(f"unknown factor kind {kind!r}")
