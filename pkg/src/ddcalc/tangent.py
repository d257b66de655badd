"""Tangent lines two ways, both limit-free.

* point-slope: substitute y - y0 = m (x - x0) into the curve and force x0 to
  be a double root of the eliminant;
* Descartes: find the circle centred on the x-axis at (a, 0) that meets the
  curve with a double contact at P; the tangent is perpendicular to the
  radius through P.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from ddcalc.errors import DomainError, NotPolynomialError, VerticalRadialDegenerate
from ddcalc.expr import (
    HALF,
    Expr,
    Power,
    Scalar,
    exact_power,
    linear_terms,
    normalize,
)
from ddcalc.poly import X as PX
from ddcalc.poly import Polynomial, divide_by_linear, poly_from_expr, slope_by_double_root


@dataclass(frozen=True)
class PolyCurve:
    """y = p(x)"""

    p: Polynomial

    def height(self, x0) -> Scalar:
        return self.p(Fraction(x0))

    def squared(self) -> Polynomial:
        return self.p * self.p

    def to_expr(self) -> Expr:
        return self.p.to_expr()


@dataclass(frozen=True)
class SqrtCurve:
    """y = sqrt(p(x)), the positive branch."""

    p: Polynomial

    def height(self, x0) -> Scalar:
        v = self.p(Fraction(x0))
        if v <= 0:
            raise DomainError(self.to_expr(), x0, "sqrt curve needs p(x0) > 0")
        exact = exact_power(v, HALF)
        return exact if exact is not None else math.sqrt(v)

    def squared(self) -> Polynomial:
        return self.p

    def to_expr(self) -> Expr:
        return normalize(Power(self.p.to_expr(), HALF))


Curve = Union[PolyCurve, SqrtCurve]


@dataclass(frozen=True)
class TangentLine:
    """y - y0 = m (x - x0)"""

    x0: Fraction
    y0: Scalar
    m: Scalar

    def __call__(self, x):
        return self.y0 + self.m * (x - self.x0)


@dataclass(frozen=True)
class DescartesResult:
    x0: Fraction
    y0: Scalar
    center_a: Fraction
    radial_slope: Optional[Scalar]  # None when the radius is vertical (a == x0)
    tangent_slope: Scalar

    def line(self) -> TangentLine:
        return TangentLine(self.x0, self.y0, self.tangent_slope)


def curve_from_expr(e: Expr) -> Curve:
    """Recognize y = p(x) or y = k sqrt(p(x)) with k > 0."""
    e = normalize(e)
    try:
        return PolyCurve(poly_from_expr(e))
    except NotPolynomialError:
        pass
    const, terms = linear_terms(e)
    if const == 0 and len(terms) == 1:
        k, atom = terms[0]
        if k > 0 and isinstance(atom, Power) and atom.exponent == HALF:
            inner = poly_from_expr(atom.base)
            if k != 1:
                inner = inner * (k * k)
            return SqrtCurve(inner)
    if isinstance(e, Power) and e.exponent == HALF:
        return SqrtCurve(poly_from_expr(e.base))
    raise NotPolynomialError(e)


def tangent_point_slope(c: Curve, x0) -> TangentLine:
    x0 = Fraction(x0)
    y0 = c.height(x0)
    s = slope_by_double_root(c.p, x0)
    if isinstance(c, PolyCurve):
        return TangentLine(x0, y0, s)
    # y^2 = p gives 2 y m = p'(x0): still a double-root slope, of p.
    return TangentLine(x0, y0, s / (2 * y0))


def descartes_eliminant(c: Curve, x0, a) -> Polynomial:
    """D(x; a) = (x - a)^2 + y(x)^2 - (x0 - a)^2 - y0^2, a polynomial in x."""
    x0, a = Fraction(x0), Fraction(a)
    s = c.squared()
    return (PX - a) * (PX - a) + s - ((x0 - a) ** 2 + s(x0))


def tangent_descartes(c: Curve, x0) -> DescartesResult:
    x0 = Fraction(x0)
    s = c.squared()
    if s(x0) == 0:
        raise VerticalRadialDegenerate(x0)
    y0 = c.height(x0)
    # D = B(x) - 2a (x - x0) with B = x^2 - x0^2 + s(x) - s(x0); B = (x - x0) q_B
    b = PX * PX - x0 * x0 + s - s(x0)
    q_b, r = divide_by_linear(b, x0)
    assert r == 0
    a = q_b(x0) / 2
    radial = None if a == x0 else y0 / (x0 - a)
    return DescartesResult(x0, y0, a, radial, (a - x0) / y0)

