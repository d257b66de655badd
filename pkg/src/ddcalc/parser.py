"""Recursive-descent parser for single-variable expressions.

Grammar (whitespace is insignificant)::

    expr    := term (('+' | '-') term)*
    term    := unary (('*' | '/') unary | unary)*     # bare juxtaposition only after a number
    unary   := ('-' | '+') unary | power
    power   := primary ('^' unary)?                   # right-associative, exponent must be rational
    primary := NUMBER | FUNC '(' expr ')' | IDENT | '(' expr ')'

Numbers are integers or decimals and become exact Fractions; ``p/q`` is an
ordinary division of two numbers, so ``3/2 x`` reads as (3/2)*x.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from ddcalc.errors import MultipleVariablesError, ParseError
from ddcalc.expr import (
    FUNCTIONS,
    Apply,
    Const,
    Expr,
    Power,
    Product,
    Scaled,
    Sum,
    Var,
    normalize,
)

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:\.\d*)?|\.\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*/^()]))"
)


class Token(NamedTuple):
    kind: str  # num, ident, op, end
    text: str
    pos: int  # byte offset


class ParsedExpr(NamedTuple):
    expr: Expr
    var: str


def _byte_offset(text: str, i: int) -> int:
    return len(text[:i].encode("utf-8"))


def tokenize(text: str) -> list[Token]:
    tokens = []
    i = 0
    n = len(text)
    while True:
        while i < n and text[i].isspace():
            i += 1
        if i >= n:
            tokens.append(Token("end", "", _byte_offset(text, n)))
            return tokens
        m = _TOKEN.match(text, i)
        if m is None or m.end() == i:
            raise ParseError(_byte_offset(text, i), "number, identifier or operator", repr(text[i]))
        kind = m.lastgroup
        tokens.append(Token(kind, m.group(kind), _byte_offset(text, m.start(kind))))
        i = m.end()


def _number(text: str) -> Fraction:
    whole, _, frac = text.partition(".")
    return Fraction(int(whole or "0") * 10 ** len(frac) + int(frac or "0"), 10 ** len(frac))


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0
        self.var = None
        self.var_pos = None

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _found(self, t: Token) -> str:
        return "end of input" if t.kind == "end" else repr(t.text)

    def advance(self) -> Token:
        t = self.tokens[self.i]
        self.i += 1
        return t

    def expect(self, text: str) -> Token:
        t = self.tok
        if t.text != text or t.kind != "op":
            raise ParseError(t.pos, repr(text), self._found(t))
        return self.advance()

    def parse(self) -> Expr:
        t = self.tok
        if t.kind == "end":
            raise ParseError(t.pos, "expression", "end of input")
        e = self.expr()
        if self.tok.kind != "end":
            raise ParseError(self.tok.pos, "operator or end of input", self._found(self.tok))
        return e

    def expr(self) -> Expr:
        terms = [self.term()]
        while self.tok.kind == "op" and self.tok.text in "+-":
            op = self.advance().text
            t = self.term()
            terms.append(t if op == "+" else Scaled(-1, t))
        return terms[0] if len(terms) == 1 else Sum(tuple(terms))

    def term(self) -> Expr:
        factors = [self.unary()]
        while True:
            t = self.tok
            if t.kind == "op" and t.text in "*/":
                self.advance()
                f = self.unary()
                factors.append(f if t.text == "*" else Power(f, -1))
            elif self._implicit(t):
                factors.append(self.unary())
            else:
                break
        return factors[0] if len(factors) == 1 else Product(tuple(factors))

    def _implicit(self, t: Token) -> bool:
        prev = self.tokens[self.i - 1]
        return prev.kind == "num" and (t.kind == "ident" or (t.kind == "op" and t.text == "("))

    def unary(self) -> Expr:
        t = self.tok
        if t.kind == "op" and t.text in "+-":
            self.advance()
            inner = self.unary()
            return inner if t.text == "+" else Scaled(-1, inner)
        return self.power()

    def power(self) -> Expr:
        base = self.primary()
        if self.tok.kind == "op" and self.tok.text == "^":
            self.advance()
            start = self.tok
            exponent = normalize(self.unary())
            if not isinstance(exponent, Const):
                raise ParseError(start.pos, "rational exponent", repr(str(exponent)))
            return Power(base, exponent.value)
        return base

    def primary(self) -> Expr:
        t = self.tok
        if t.kind == "num":
            self.advance()
            return Const(_number(t.text))
        if t.kind == "ident":
            self.advance()
            if t.text in FUNCTIONS:
                self.expect("(")
                arg = self.expr()
                self.expect(")")
                return Apply(t.text, arg)
            self._see_var(t)
            return Var()
        if t.kind == "op" and t.text == "(":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        raise ParseError(t.pos, "number, variable, function or '('", self._found(t))

    def _see_var(self, t: Token):
        if self.var is None:
            self.var, self.var_pos = t.text, t.pos
        elif t.text != self.var:
            raise MultipleVariablesError((self.var, t.text), t.pos)


def parse_raw(text: str) -> tuple[Expr, str | None]:
    """Parse without normalizing; returns (tree, variable name or None)."""
    p = _Parser(text)
    e = p.parse()
    return e, p.var


def parse_expr(text: str, default_var: str = "x") -> ParsedExpr:
    """Parse ``text`` into a normalized expression and its variable name.

    An input with no identifier reports ``default_var``.
    """
    e, var = parse_raw(text)
    return ParsedExpr(normalize(e), var if var is not None else default_var)
