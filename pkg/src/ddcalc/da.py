"""Derivatives and antiderivatives by DA-pair table lookup plus linearity.

A DA pair is (derivative, antiderivative).  The table holds one pair per
atom; sums and rational multiples are handled term by term.  There are no
chain, product or quotient rules.
"""

from __future__ import annotations

from dataclasses import dataclass

from ddcalc.errors import UnsupportedAntiderivative
from ddcalc.expr import (
    X,
    Apply,
    Const,
    DAClassForm,
    Expr,
    Power,
    PowerOfVar,
    Product,
    Scaled,
    Sum,
    has_var,
    linear_terms,
    normalize,
    to_da_class,
)


@dataclass(frozen=True)
class DAPair:
    derivative: Expr
    antiderivative: Expr

    @classmethod
    def of(cls, antiderivative: Expr) -> "DAPair":
        return cls(derivative(antiderivative), normalize(antiderivative))

    @classmethod
    def from_derivative(cls, e: Expr) -> "DAPair":
        return cls(normalize(e), antiderivative(e))


_SEC2 = Power(Apply("sec", X), 2)


def _d_atom(atom) -> Expr:
    if isinstance(atom, PowerOfVar):
        n = atom.exponent
        return Scaled(n, Power(X, n - 1))
    name = atom.name
    if name == "sin":
        return Apply("cos", X)
    if name == "cos":
        return Scaled(-1, Apply("sin", X))
    if name == "tan":
        return _SEC2
    if name == "exp":
        return Apply("exp", X)
    if name == "ln":
        return Power(X, -1)
    # sec^2 x has no entry as an antiderivative; its slope is 2 tan x sec^2 x.
    return Scaled(2, Product((Apply("tan", X), _SEC2)))


def _antid_atom(atom) -> Expr:
    if isinstance(atom, PowerOfVar):
        n = atom.exponent
        if n == -1:
            return Apply("ln", X)
        return Scaled(1 / (n + 1), Power(X, n + 1))
    name = atom.name
    if name == "sin":
        return Scaled(-1, Apply("cos", X))
    if name == "cos":
        return Apply("sin", X)
    if name == "sec2":
        return Apply("tan", X)
    if name == "exp":
        return Apply("exp", X)
    raise UnsupportedAntiderivative(atom.to_expr())


def _drop_var_free(e: Expr) -> Expr:
    """Terms like sin(1) are constants to the table even though they are atoms."""
    const, terms = linear_terms(e)
    kept = [Scaled(c, a) for c, a in terms if has_var(a)]
    return normalize(Sum(tuple(kept) + (Const(const),)))


def derivative(e: Expr) -> Expr:
    """Termwise derivative of a DA-class expression.

    >>> from ddcalc.parser import parse_expr
    >>> str(derivative(parse_expr("x^2").expr))
    '2 x'
    """
    form: DAClassForm = to_da_class(_drop_var_free(normalize(e)))
    return normalize(Sum(tuple(Scaled(c, _d_atom(a)) for c, a in form.terms)))


def antiderivative(e: Expr) -> Expr:
    """Termwise antiderivative with the constant of integration fixed at 0.

    Raises UnsupportedAntiderivative for tan x and ln x, whose antiderivatives
    are not pairs in the table.
    """
    form = to_da_class(normalize(e))
    parts = [Scaled(c, _antid_atom(a)) for c, a in form.terms]
    if form.constant:
        parts.append(Scaled(form.constant, X))
    return normalize(Sum(tuple(parts)))


def antidifferentiable(e: Expr) -> bool:
    form = to_da_class(normalize(e))
    return all(
        isinstance(a, PowerOfVar) or a.name not in ("tan", "ln") for _, a in form.terms
    )

