"""Parsing and canonical rendering of polynomial expressions.

Grammar (whitespace insensitive)::

    expr   := term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := '-' factor | power
    power  := atom ('^' NAT)?
    atom   := IDENT | INT ('/' INT)? | '(' expr ')'

Identifiers must name table variables.  Rational literals are written
``a`` or ``a/b``; there is no general division.  Exponents are literal
non-negative integers.  Rendering produces the canonical form parsed by this
grammar: terms sorted descending under degrevlex over the full table,
coefficients as reduced fractions, ``*`` between factors and ``^`` for powers.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .poly import Polynomial, VariableTable


class ParseError(ValueError):
    """Syntax or lookup error, carrying the character position."""

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


_TOKEN_RE = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op>[-+*^/()]))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            bad_at = len(text) - len(stripped)
            raise ParseError(f"unexpected character {text[bad_at]!r}", bad_at)
        if m.lastgroup == "num":
            tokens.append(("num", m.group("num"), m.start("num")))
        elif m.lastgroup == "ident":
            tokens.append(("ident", m.group("ident"), m.start("ident")))
        else:
            tokens.append(("op", m.group("op"), m.start("op")))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str, table: VariableTable):
        self.text = text
        self.table = table
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of expression", len(self.text))
        self.i += 1
        return tok

    def expect_op(self, op: str):
        tok = self.peek()
        if tok is None or tok[0] != "op" or tok[1] != op:
            pos = tok[2] if tok else len(self.text)
            raise ParseError(f"expected {op!r}", pos)
        self.i += 1

    def parse(self) -> Polynomial:
        p = self.expr()
        tok = self.peek()
        if tok is not None:
            raise ParseError(f"unexpected {tok[1]!r}", tok[2])
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] not in "+-":
                return p
            self.i += 1
            q = self.term()
            p = p + q if tok[1] == "+" else p - q

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            tok = self.peek()
            if tok is None or tok[0] != "op" or tok[1] != "*":
                return p
            self.i += 1
            p = p * self.factor()

    def factor(self) -> Polynomial:
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "-":
            self.i += 1
            return -self.factor()
        return self.power()

    def power(self) -> Polynomial:
        base = self.atom()
        tok = self.peek()
        if tok is not None and tok[0] == "op" and tok[1] == "^":
            self.i += 1
            etok = self.peek()
            if etok is None or etok[0] != "num":
                pos = etok[2] if etok else len(self.text)
                raise ParseError("exponent must be a non-negative integer literal", pos)
            self.i += 1
            return base ** int(etok[1])
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, text, pos = tok
        if kind == "ident":
            try:
                return Polynomial.variable(self.table, text)
            except KeyError:
                raise ParseError(f"unknown variable {text!r}", pos) from None
        if kind == "num":
            numerator = int(text)
            nxt = self.peek()
            if nxt is not None and nxt[0] == "op" and nxt[1] == "/":
                self.i += 1
                dtok = self.peek()
                if dtok is None or dtok[0] != "num":
                    dpos = dtok[2] if dtok else len(self.text)
                    raise ParseError("expected integer denominator", dpos)
                self.i += 1
                if int(dtok[1]) == 0:
                    raise ParseError("zero denominator", dtok[2])
                return Polynomial.constant(self.table, Fraction(numerator, int(dtok[1])))
            return Polynomial.constant(self.table, numerator)
        if kind == "op" and text == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        raise ParseError(f"unexpected {text!r}", pos)


def parse_poly(text: str, table: VariableTable) -> Polynomial:
    """Parse an expression into a polynomial over the given table."""
    return _Parser(text, table).parse()


def _monomial_text(table: VariableTable, exps) -> str:
    parts = []
    for name, e in zip(table.names, exps):
        if e == 1:
            parts.append(name)
        elif e > 1:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def render(p: Polynomial) -> str:
    """Canonical text form; parse_poly(render(p), p.table) == p."""
    if not p.terms:
        return "0"
    pieces = []
    for i, (exps, coeff) in enumerate(p.terms):
        mono = _monomial_text(p.table, exps)
        mag = abs(coeff)
        if not mono:
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        if i == 0:
            pieces.append(f"-{body}" if coeff < 0 else body)
        else:
            pieces.append(f" - {body}" if coeff < 0 else f" + {body}")
    return "".join(pieces)
