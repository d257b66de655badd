"""Integrals as height increments of an antiderivative, and the mean value.

I[g, a, b] = G(b) - G(a) for any antiderivative G of g.  When the DA table has
no pair for g the library falls back to Simpson quadrature and records that
in the result.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from ddcalc.da import antiderivative
from ddcalc.errors import (
    DAClassError,
    DegenerateInterval,
    DomainError,
    NonIntegrableSingularity,
    UnsupportedAntiderivative,
    WitnessNotBracketed,
)
from ddcalc.expr import (
    Apply,
    Const,
    Expr,
    Power,
    PowerOfVar,
    Product,
    Scalar,
    Scaled,
    Sum,
    compile_float,
    evaluate,
    has_var,
    normalize,
    substitute,
    to_da_class,
)
from ddcalc.oracle import QuadratureConfig, quadrature

SCAN_SAMPLES = 4096
WITNESS_CELLS = 1024


class Method(str, enum.Enum):
    SYMBOLIC_HEIGHT_INCREMENT = "height-increment"
    NUMERIC_QUADRATURE = "quadrature"


@dataclass(frozen=True)
class IntegralResult:
    value: Scalar
    method: Method
    antiderivative_used: Optional[Expr] = None


@dataclass(frozen=True)
class MeanValueResult:
    W: Scalar
    witness_c: Scalar
    residual: float
    integral: IntegralResult


def _first_pole(lo: float, hi: float):
    k = math.ceil((lo - math.pi / 2) / math.pi)
    x = math.pi / 2 + k * math.pi
    return x if x <= hi else None


def _analytic_scan(form, lo: Fraction, hi: Fraction):
    for _, atom in form.terms:
        if isinstance(atom, PowerOfVar):
            n = atom.exponent
            if n < 0 and lo <= 0 <= hi:
                raise NonIntegrableSingularity(Fraction(0), f"x^({n}) blows up")
            if n.denominator != 1 and lo < 0:
                raise NonIntegrableSingularity(lo, f"x^({n}) needs x >= 0")
        elif atom.name == "ln" and lo <= 0:
            raise NonIntegrableSingularity(lo, "ln needs x > 0")
        elif atom.name in ("tan", "sec2"):
            pole = _first_pole(float(lo), float(hi))
            if pole is not None:
                raise NonIntegrableSingularity(pole, "odd multiple of pi/2")


def _denominators(e: Expr):
    """Subterms whose zeros make ``e`` undefined."""
    if isinstance(e, Power):
        if e.exponent < 0:
            yield e.base
        yield from _denominators(e.base)
    elif isinstance(e, Apply):
        if e.fn in ("tan", "sec"):
            yield Apply("cos", e.arg)
        yield from _denominators(e.arg)
    elif isinstance(e, (Sum, Product)):
        for t in e.terms if isinstance(e, Sum) else e.factors:
            yield from _denominators(t)
    elif isinstance(e, Scaled):
        yield from _denominators(e.atom)


def _sign_change(d: Expr, xs):
    f = compile_float(d)
    prev = None
    for x in xs:
        try:
            v = f(x)
        except DomainError:
            prev = None
            continue
        if prev is not None and (v < 0) != (prev[1] < 0) and v != 0:
            lo, f_lo = prev
            return _bisect(f, lo, x, f_lo)
        prev = (x, v)
    return None


def domain_scan(g: Expr, a, b, samples: int = SCAN_SAMPLES):
    """Raise NonIntegrableSingularity if g is undefined anywhere on [a, b].

    DA-class integrands are checked analytically, since each table atom's
    undefined set is known in closed form.  Anything else is sampled on a
    uniform grid plus both endpoints, and every denominator is checked for a
    sign change between neighbouring samples.  A denominator that touches
    zero without crossing it, between samples, can still slip through.
    """
    lo, hi = sorted((Fraction(a), Fraction(b)))
    try:
        form = to_da_class(g)
    except DAClassError:
        form = None
    if form is not None:
        _analytic_scan(form, lo, hi)
        return
    for end in (lo, hi):
        try:
            evaluate(g, end)
        except DomainError:
            raise NonIntegrableSingularity(end) from None
    f = compile_float(g)
    flo, step = float(lo), float(hi - lo) / samples
    xs = [flo + k * step for k in range(samples)] + [float(hi)]
    for x in xs[1:-1]:
        try:
            f(x)
        except DomainError:
            raise NonIntegrableSingularity(x) from None
    for d in _denominators(g):
        at = _sign_change(d, xs)
        if at is not None:
            raise NonIntegrableSingularity(at, f"{d} changes sign")


def integrate(
    g: Expr,
    a,
    b,
    *,
    fallback: bool = True,
    force_numeric: bool = False,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> IntegralResult:
    g = normalize(g)
    a, b = Fraction(a), Fraction(b)
    domain_scan(g, a, b)
    if not force_numeric:
        try:
            G = antiderivative(g)
            return IntegralResult(
                evaluate(G, b) - evaluate(G, a), Method.SYMBOLIC_HEIGHT_INCREMENT, G
            )
        except (UnsupportedAntiderivative, DAClassError, DomainError):
            # DomainError: the integrand is fine but the table antiderivative
            # is not (1/x on negative x has only ln x).
            if not fallback:
                raise
    lo, hi = sorted((a, b))
    v = quadrature(g, lo, hi, cfg)
    return IntegralResult(v if a <= b else -v, Method.NUMERIC_QUADRATURE)


def integrate_symbolic_upper(g: Expr, a) -> Expr:
    """I[g, a, x] = G(x) - G(a) as an expression in the variable."""
    a = Fraction(a)
    G = antiderivative(g)
    Ga = evaluate(G, a)
    if isinstance(Ga, Fraction):
        return normalize(Sum((G, Const(-Ga))))
    return normalize(Sum((G, Scaled(-1, substitute(G, Const(a))))))


def _bisect(f, lo, hi, h_lo):
    # down to adjacent floats: steep f' needs more than a fixed width
    while True:
        mid = 0.5 * (lo + hi)
        if not lo < mid < hi:
            break
        h_mid = f(mid)
        if h_mid == 0:
            return mid
        if (h_mid < 0) == (h_lo < 0):
            lo, h_lo = mid, h_mid
        else:
            hi = mid
    return lo if abs(h_lo) <= abs(f(hi)) else hi


def mean_value(
    f_prime: Expr,
    a,
    b,
    *,
    fallback: bool = True,
    force_numeric: bool = False,
    cfg: QuadratureConfig = QuadratureConfig(),
) -> MeanValueResult:
    """W = I[f', a, b] / (b - a) and a point c in [a, b] with f'(c) = W."""
    a, b = Fraction(a), Fraction(b)
    if a >= b:
        raise DegenerateInterval(f"mean value needs a < b, got [{a}, {b}]")
    g = normalize(f_prime)
    res = integrate(g, a, b, fallback=fallback, force_numeric=force_numeric, cfg=cfg)
    W = res.value / (b - a)
    if not has_var(g):
        c = (a + b) / 2
        return MeanValueResult(W, c, float(abs(evaluate(g, c) - W)), res)

    f = compile_float(g)
    Wf = float(W)

    def h(x):
        return f(x) - Wf

    flo, step = float(a), float(b - a) / WITNESS_CELLS
    xs = [flo + k * step for k in range(WITNESS_CELLS)] + [float(b)]
    hs = [h(x) for x in xs]
    for k in range(WITNESS_CELLS + 1):
        if hs[k] == 0:
            point = a + (b - a) * Fraction(k, WITNESS_CELLS)
            if evaluate(g, point) == W:
                return MeanValueResult(W, point, 0.0, res)
            return MeanValueResult(W, xs[k], abs(hs[k]), res)
        if k < WITNESS_CELLS and (hs[k] < 0) != (hs[k + 1] < 0) and hs[k + 1] != 0:
            c = _bisect(h, xs[k], xs[k + 1], hs[k])
            # float(a) and float(b) may round outside the rational interval
            while c < a:
                c = math.nextafter(c, math.inf)
            while c > b:
                c = math.nextafter(c, -math.inf)
            return MeanValueResult(W, c, abs(h(c)), res)
    raise WitnessNotBracketed(f"f' - W keeps one sign on [{a}, {b}]")
