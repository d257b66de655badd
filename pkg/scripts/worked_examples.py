"""Print the standard worked examples: slopes, DA pairs, areas, tangents."""

import math
from fractions import Fraction as F

from ddcalc import (
    DAPair,
    PolyCurve,
    SqrtCurve,
    derivative,
    evaluate,
    integrate,
    integrate_symbolic_upper,
    mean_value,
    parse_expr,
    slope_by_double_root,
    tangent_descartes,
    tangent_point_slope,
    to_canonical_string,
)
from ddcalc.cli import format_scalar, grade
from ddcalc.poly import X as PX


def show(label, value):
    if isinstance(value, (F, float)):
        value = format_scalar(value)
    print(f"{label:<44} {value}")


def main():
    show("grade of a 90 ft rise over 1000 ft", grade(90, 1000))

    sq = parse_expr("x^2").expr
    show("d/dx x^2", to_canonical_string(derivative(sq)))
    show("  at x = 3", evaluate(derivative(sq), 3))
    show("double-root slope of x^3 at 2/3", slope_by_double_root(PX**3, F(2, 3)))

    for d in ("0", "1", "2x", "3x^2", "x^(-1)", "cos(x)"):
        p = DAPair.from_derivative(parse_expr(d).expr)
        show(f"DA pair for {d}", f"({to_canonical_string(p.derivative)}, {to_canonical_string(p.antiderivative)})")

    for text, a, b in [("1", 0, 2), ("60", 14, 16), ("x", 0, 1), ("x^2", 0, 1), ("x^4+2x", 0, 1)]:
        r = integrate(parse_expr(text).expr, a, b)
        show(f"integral of {text} over [{a}, {b}]", r.value)

    fall = integrate_symbolic_upper(parse_expr("32t").expr, 0)
    show("distance after t s at 32 ft/s^2", to_canonical_string(fall, "t"))

    disc = integrate(parse_expr("sqrt(1-x^2)").expr, 0, 1)
    show("quarter unit disc (quadrature)", disc.value)
    show("  error against pi/4", f"{abs(disc.value - math.pi / 4):.2e}")

    root = tangent_descartes(SqrtCurve(PX), 1)
    show("sqrt(x) at 1: circle centre a", root.center_a)
    show("  tangent slope, radial slope", f"{format_scalar(root.tangent_slope)}, {format_scalar(root.radial_slope)}")
    par = PolyCurve(PX * PX)
    show("x^2 at 1: circle centre a", tangent_descartes(par, 1).center_a)
    show("  point-slope m", tangent_point_slope(par, 1).m)

    mv = mean_value(parse_expr("2x").expr, 0, 1)
    show("mean of 2x on [0, 1], witness", f"W = {format_scalar(mv.W)}, c = {format_scalar(mv.witness_c)}")


if __name__ == "__main__":
    main()
