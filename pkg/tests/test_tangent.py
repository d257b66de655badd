import math
import random
from fractions import Fraction as F

import pytest
from hypothesis import assume, given, settings

from ddcalc.errors import DomainError, NotPolynomialError, VerticalRadialDegenerate
from ddcalc.expr import X, sin, sqrt
from ddcalc.oracle import central_difference
from ddcalc.poly import Polynomial, divide_by_linear
from ddcalc.poly import X as PX
from ddcalc.tangent import (
    PolyCurve,
    SqrtCurve,
    curve_from_expr,
    descartes_eliminant,
    tangent_descartes,
    tangent_point_slope,
)

from strategies import polynomials, small_rationals

import generators as gen


def double_root(p: Polynomial, x0) -> bool:
    q, r = divide_by_linear(p, x0)
    return r == 0 and divide_by_linear(q, x0)[1] == 0


class TestCurveRecognition:
    def test_polynomial(self):
        assert curve_from_expr(X**2 + 1) == PolyCurve(Polynomial((1, 0, 1)))

    def test_sqrt(self):
        assert curve_from_expr(sqrt(1 - X**2)) == SqrtCurve(Polynomial((1, 0, -1)))

    def test_scaled_sqrt_folds_the_factor_in(self):
        assert curve_from_expr(3 * sqrt(X)) == SqrtCurve(Polynomial((0, 9)))

    @pytest.mark.parametrize("e", [sin(X), -sqrt(X), X**-1, X ** F(3, 2)])
    def test_rejected(self, e):
        with pytest.raises(NotPolynomialError):
            curve_from_expr(e)


class TestHandEliminations:
    """Circle-centre values worked out by hand from D(x; a) = 0 having a double root."""

    def test_line(self):
        # D = (x - 1)(2x + 2 - 2a), double root at 1 iff a = 2
        d = tangent_descartes(PolyCurve(PX), 1)
        assert (d.center_a, d.tangent_slope, d.radial_slope) == (2, 1, -1)

    def test_parabola(self):
        # D = (x - 1)(x^3 + x^2 + 2x + 2 - 2a), double root at 1 iff a = 3
        d = tangent_descartes(PolyCurve(PX * PX), 1)
        assert (d.center_a, d.tangent_slope, d.radial_slope) == (3, 2, F(-1, 2))

    def test_root_curve(self):
        # D = (x - 1)(x + 2 - 2a), double root at 1 iff a = 3/2
        d = tangent_descartes(SqrtCurve(PX), 1)
        assert d.center_a == F(3, 2)
        assert d.tangent_slope == F(1, 2)
        assert d.radial_slope == -2

    def test_line_object(self):
        line = tangent_descartes(SqrtCurve(PX), 1).line()
        assert line(F(3)) == 2


class TestPointSlope:
    def test_parabola(self):
        t = tangent_point_slope(PolyCurve(PX * PX), 3)
        assert (t.x0, t.y0, t.m) == (3, 9, 6)

    def test_root_curve_exact(self):
        t = tangent_point_slope(SqrtCurve(PX), F(9, 4))
        assert (t.y0, t.m) == (F(3, 2), F(1, 3))

    def test_root_curve_irrational_height(self):
        t = tangent_point_slope(SqrtCurve(PX), 2)
        assert t.m == pytest.approx(1 / (2 * math.sqrt(2)))

    def test_root_curve_outside_domain(self):
        with pytest.raises(DomainError):
            tangent_point_slope(SqrtCurve(PX), -1)


class TestDegenerate:
    def test_zero_height_sqrt(self):
        with pytest.raises(VerticalRadialDegenerate):
            tangent_descartes(SqrtCurve(PX), 0)

    def test_zero_height_poly(self):
        with pytest.raises(VerticalRadialDegenerate):
            tangent_descartes(PolyCurve(PX * PX - 1), 1)

    def test_horizontal_tangent_has_vertical_radius(self):
        d = tangent_descartes(PolyCurve(PX * PX + 1), 0)
        assert d.center_a == 0
        assert d.radial_slope is None
        assert d.tangent_slope == 0


@settings(max_examples=200)
@given(polynomials(max_degree=6, bound=20), small_rationals)
def test_descartes_matches_point_slope(p, x0):
    assume(p(x0) != 0)
    c = PolyCurve(p)
    d = tangent_descartes(c, x0)
    assert d.tangent_slope == tangent_point_slope(c, x0).m
    if d.radial_slope is not None:
        assert d.tangent_slope * d.radial_slope == -1
    assert double_root(descartes_eliminant(c, x0, d.center_a), x0)


@settings(max_examples=200)
@given(polynomials(max_degree=4, bound=20), small_rationals)
def test_sqrt_curve_methods_agree(p, x0):
    assume(p(x0) > 0)
    c = SqrtCurve(p)
    d = tangent_descartes(c, x0)
    assert d.tangent_slope == pytest.approx(tangent_point_slope(c, x0).m, rel=1e-12, abs=1e-15)
    assert double_root(descartes_eliminant(c, x0, d.center_a), x0)


def test_slopes_match_finite_difference():
    rng = random.Random(20240601)
    done = 0
    while done < 20:
        p = gen.polynomial(rng, max_degree=5, bound=5)
        x0 = gen.rational(rng, -2, 2, 4)
        curve = PolyCurve(p) if done % 2 else SqrtCurve(p)
        if curve.squared()(x0) == 0 or (isinstance(curve, SqrtCurve) and p(x0) <= 0):
            continue
        oracle = central_difference(curve.to_expr(), x0)
        for m in (tangent_point_slope(curve, x0).m, tangent_descartes(curve, x0).tangent_slope):
            assert abs(float(m) - oracle) <= 1e-7 * max(1.0, abs(float(m)))
        done += 1
