"""Limit-based numerical cross-checks.

These are deliberately independent of the symbolic machinery: they only
evaluate the expression at float points.  Tests use them to check the
symbolic slopes and integrals; ``integrate`` uses ``quadrature`` as its
fallback for integrands outside the DA table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Union

from ddcalc.errors import ToleranceNotReached
from ddcalc.expr import Expr, compile_float

Integrand = Union[Expr, Callable[[float], float]]


@dataclass(frozen=True)
class QuadratureConfig:
    max_panels: int = 2**20
    abs_tol: float = 1e-8

    def __post_init__(self):
        if self.max_panels < 1 or self.max_panels & (self.max_panels - 1):
            raise ValueError(f"max_panels must be a power of two, got {self.max_panels}")
        if not self.abs_tol > 0:
            raise ValueError(f"abs_tol must be positive, got {self.abs_tol}")


def _as_callable(f: Integrand) -> Callable[[float], float]:
    return compile_float(f) if isinstance(f, Expr) else f


def default_step(x) -> float:
    return 1e-6 * max(1.0, abs(float(x)))


def central_difference(e: Integrand, x, h: float | None = None) -> float:
    """(f(x + h) - f(x - h)) / 2h"""
    f = _as_callable(e)
    x = float(x)
    if h is None:
        h = default_step(x)
    if not h > 0:
        raise ValueError("step must be positive")
    return (f(x + h) - f(x - h)) / (2 * h)


def simpson(e: Integrand, a, b, panels: int) -> float:
    """Composite Simpson rule; one panel spans two subintervals."""
    f = _as_callable(e)
    a, b = float(a), float(b)
    n = 2 * panels
    h = (b - a) / n
    odd = math.fsum(f(a + (2 * k - 1) * h) for k in range(1, panels + 1))
    even = math.fsum(f(a + 2 * k * h) for k in range(1, panels))
    return h / 3 * math.fsum((f(a), f(b), 4 * odd, 2 * even))


def quadrature(e: Integrand, a, b, cfg: QuadratureConfig = QuadratureConfig()) -> float:
    """Composite Simpson with panel doubling until successive estimates agree.

    Sums go through ``math.fsum`` (correctly rounded), so the result does not
    depend on summation order.
    """
    f = _as_callable(e)
    a, b = float(a), float(b)
    if a == b:
        return 0.0
    ends = f(a) + f(b)
    panels = 1
    width = b - a
    # samples at odd multiples of h = width / (2 * panels) and at interior even ones
    odd = f(a + width / 2)
    even = 0.0
    prev = width / 6 * (ends + 4 * odd)
    delta = math.inf
    while panels < cfg.max_panels:
        panels *= 2
        even = math.fsum((even, odd))
        h = width / (2 * panels)
        odd = math.fsum(f(a + (2 * k - 1) * h) for k in range(1, panels + 1))
        est = h / 3 * math.fsum((ends, 4 * odd, 2 * even))
        delta = abs(est - prev)
        if delta <= cfg.abs_tol:
            return est
        prev = est
    raise ToleranceNotReached(prev, delta)


def riemann_left_sum(e: Integrand, a, b, n: int) -> float:
    """Left-endpoint rectangle sum with ``n`` equal strips (illustration only)."""
    f = _as_callable(e)
    a, b = float(a), float(b)
    h = (b - a) / n
    return h * math.fsum(f(a + k * h) for k in range(n))
