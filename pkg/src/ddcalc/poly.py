"""Dense polynomials with exact rational coefficients, and the double-root slope."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ddcalc.errors import NotPolynomialError
from ddcalc.expr import Const, Expr, Power, Scaled, Sum, Var, linear_terms, normalize


def _trim(coeffs) -> tuple:
    coeffs = [Fraction(c) for c in coeffs]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class Polynomial:
    """``coeffs[i]`` is the coefficient of x**i; the zero polynomial is ``()``."""

    coeffs: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _trim(self.coeffs))

    @classmethod
    def constant(cls, c) -> "Polynomial":
        return cls((c,))

    @classmethod
    def monomial(cls, degree: int, c=1) -> "Polynomial":
        return cls((0,) * degree + (c,))

    @property
    def degree(self):
        return len(self.coeffs) - 1 if self.coeffs else -math.inf

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = Fraction(0) if not isinstance(x, float) else 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        other = _lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return Polynomial(tuple(x + y for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-_lift(other))

    def __rsub__(self, other):
        return _lift(other) - self

    def __mul__(self, other):
        other = _lift(other)
        if self.is_zero() or other.is_zero():
            return Polynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return Polynomial(tuple(out))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = Polynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __repr__(self):
        return f"Polynomial({[str(c) for c in self.coeffs]})"

    def to_expr(self) -> Expr:
        parts = [Const(self.coeffs[0])] if self.coeffs else []
        for i, c in enumerate(self.coeffs[1:], start=1):
            parts.append(Scaled(c, Var() if i == 1 else Power(Var(), i)))
        return normalize(Sum(tuple(parts)))


def _lift(v) -> Polynomial:
    return v if isinstance(v, Polynomial) else Polynomial.constant(v)


X = Polynomial((0, 1))


def poly_from_expr(e: Expr) -> Polynomial:
    const, terms = linear_terms(normalize(e))
    coeffs = {0: const}
    for c, atom in terms:
        if isinstance(atom, Var):
            k = 1
        elif (
            isinstance(atom, Power)
            and isinstance(atom.base, Var)
            and atom.exponent.denominator == 1
            and atom.exponent > 0
        ):
            k = int(atom.exponent)
        else:
            raise NotPolynomialError(atom)
        coeffs[k] = coeffs.get(k, 0) + c
    return Polynomial(tuple(coeffs.get(i, 0) for i in range(max(coeffs) + 1)))


def divide_by_linear(p: Polynomial, x0) -> tuple[Polynomial, Fraction]:
    """Synthetic division: p = (x - x0) * quotient + remainder."""
    x0 = Fraction(x0)
    if len(p.coeffs) <= 1:
        return Polynomial(), (p.coeffs[0] if p.coeffs else Fraction(0))
    acc = Fraction(0)
    quotient = []
    for c in reversed(p.coeffs):
        acc = acc * x0 + c
        quotient.append(acc)
    remainder = quotient.pop()
    return Polynomial(tuple(reversed(quotient))), remainder


def slope_by_double_root(p: Polynomial, x0) -> Fraction:
    """Slope m making x0 a double root of p(x) - p(x0) - m (x - x0).

    p(x) - p(x0) = (x - x0) q(x); the line's contribution removes one factor,
    and x0 is a repeated root exactly when q(x0) - m = 0.
    """
    x0 = Fraction(x0)
    q, r = divide_by_linear(p - p(x0), x0)
    assert r == 0
    return q(x0)
