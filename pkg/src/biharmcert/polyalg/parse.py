"""Text form of polynomials.

Grammar (whitespace-insensitive)::

    expr     := ['-'] term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := base ('^' natural)?
    base     := rational | variable | '(' expr ')'
    rational := integer ('/' positive-integer)?
    variable := [a-zA-Z][a-zA-Z0-9_]*

The optional leading minus lets printed polynomials with a negative leading
coefficient parse back.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..exactnum import QuadExt, format_rational
from .poly import MultiPoly, UnknownVariable, VarTable

__all__ = ["PolynomialSyntaxError", "parse_polynomial", "format_polynomial", "tokenize"]


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset


_TOKEN_RE = re.compile(
    r"(?P<ws>\s+)|(?P<int>\d+)|(?P<name>[a-zA-Z][a-zA-Z0-9_]*)|(?P<op>[-+*/^()])"
)


def tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group(), pos))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, table: VarTable):
        self.tokens = tokenize(text)
        self.i = 0
        self.table = table

    @property
    def tok(self):
        return self.tokens[self.i]

    def accept(self, value: str) -> bool:
        if self.tok[0] == "op" and self.tok[1] == value:
            self.i += 1
            return True
        return False

    def expect(self, value: str):
        if not self.accept(value):
            raise PolynomialSyntaxError(f"expected {value!r}, found {self.tok[1] or 'end'!r}", self.tok[2])

    def parse(self) -> MultiPoly:
        p = self.expr()
        if self.tok[0] != "end":
            raise PolynomialSyntaxError(f"unexpected {self.tok[1]!r}", self.tok[2])
        return p

    def expr(self) -> MultiPoly:
        negate = self.accept("-")
        p = self.term()
        if negate:
            p = -p
        while True:
            if self.accept("+"):
                p = p + self.term()
            elif self.accept("-"):
                p = p - self.term()
            else:
                return p

    def term(self) -> MultiPoly:
        p = self.factor()
        while self.accept("*"):
            p = p * self.factor()
        return p

    def factor(self) -> MultiPoly:
        p = self.base()
        if self.accept("^"):
            kind, value, offset = self.tok
            if kind != "int":
                raise PolynomialSyntaxError("exponent must be a natural number", offset)
            self.i += 1
            p = p ** int(value)
        return p

    def base(self) -> MultiPoly:
        kind, value, offset = self.tok
        if kind == "int":
            self.i += 1
            num = int(value)
            if self.accept("/"):
                kind2, value2, offset2 = self.tok
                if kind2 != "int" or int(value2) == 0:
                    raise PolynomialSyntaxError("denominator must be a positive integer", offset2)
                self.i += 1
                return MultiPoly.const(self.table, Fraction(num, int(value2)))
            return MultiPoly.const(self.table, num)
        if kind == "name":
            self.i += 1
            if value not in self.table:
                raise UnknownVariable(value)
            return MultiPoly.var(self.table, value)
        if self.accept("("):
            p = self.expr()
            self.expect(")")
            return p
        raise PolynomialSyntaxError(f"unexpected {value or 'end'!r}", offset)


def parse_polynomial(text: str, table: VarTable) -> MultiPoly:
    """Parse ``text`` into a canonical polynomial over ``table``."""
    return _Parser(text, table).parse()


def _format_monomial(mono, names) -> str:
    parts = []
    for name, e in zip(names, mono):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _format_coeff(c) -> str:
    if isinstance(c, QuadExt):
        return f"({c})"
    return format_rational(c)


def format_polynomial(p: MultiPoly) -> str:
    """Deterministic text in descending graded-lex order; parses back to ``p``."""
    if p.is_zero():
        return "0"
    out = []
    for k, (mono, c) in enumerate(p.sorted_terms()):
        mono_s = _format_monomial(mono, p.table.names)
        if isinstance(c, QuadExt) and not c.is_rational:
            sign, mag = "+", c
        else:
            c = c.to_rational() if isinstance(c, QuadExt) else c
            sign, mag = ("-", -c) if c < 0 else ("+", c)
        if not mono_s:
            body = _format_coeff(mag)
        elif mag == 1:
            body = mono_s
        else:
            body = f"{_format_coeff(mag)}*{mono_s}"
        if k == 0:
            out.append(body if sign == "+" else f"-{body}")
        else:
            out.append(f" {sign} {body}")
    return "".join(out)
