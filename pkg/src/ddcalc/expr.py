"""Expression trees over a single free variable.

Nodes are immutable dataclasses.  ``normalize`` maps any tree to a unique
normal form: a rational constant plus a rational-linear combination of
*monomials*, where a monomial is a product of powers of primal factors
(the variable, a function application, or an opaque sub-expression).

The variable's name is never stored in the tree; callers carry it alongside
(see :func:`ddcalc.parser.parse_expr`) and pass it to the printer.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Union

from ddcalc.errors import DAClassError, DomainError

Scalar = Union[Fraction, float]

FUNCTIONS = ("sin", "cos", "tan", "sec", "exp", "ln", "sqrt")

HALF = Fraction(1, 2)

# (x + c)^n with integer 0 < n <= this is multiplied out.
_EXPAND_LIMIT = 32


def _as_fraction(v) -> Fraction:
    if isinstance(v, Fraction):
        return v
    if isinstance(v, float):
        raise TypeError("floats are not exact; pass a Fraction or a decimal string")
    return Fraction(v)


class Expr:
    """Shared operator sugar.  The operators build raw trees; call ``normalize``."""

    __slots__ = ()

    def __add__(self, other):
        return Sum((self, wrap(other)))

    def __radd__(self, other):
        return Sum((wrap(other), self))

    def __sub__(self, other):
        return Sum((self, Scaled(-1, wrap(other))))

    def __rsub__(self, other):
        return Sum((wrap(other), Scaled(-1, self)))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scaled(other, self)
        return Product((self, wrap(other)))

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scaled(other, self)
        return Product((wrap(other), self))

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return Scaled(1 / Fraction(other), self)
        return Product((self, Power(wrap(other), -1)))

    def __rtruediv__(self, other):
        return Product((wrap(other), Power(self, -1)))

    def __pow__(self, n):
        return Power(self, n)

    def __neg__(self):
        return Scaled(-1, self)

    def __str__(self):
        return to_canonical_string(self)


@dataclass(frozen=True)
class Const(Expr):
    value: Fraction

    def __post_init__(self):
        object.__setattr__(self, "value", _as_fraction(self.value))


@dataclass(frozen=True)
class Var(Expr):
    pass


@dataclass(frozen=True)
class Sum(Expr):
    terms: tuple


@dataclass(frozen=True)
class Scaled(Expr):
    coeff: Fraction
    atom: Expr

    def __post_init__(self):
        object.__setattr__(self, "coeff", _as_fraction(self.coeff))


@dataclass(frozen=True)
class Power(Expr):
    base: Expr
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", _as_fraction(self.exponent))


@dataclass(frozen=True)
class Apply(Expr):
    fn: str
    arg: Expr

    def __post_init__(self):
        if self.fn not in FUNCTIONS:
            raise ValueError(f"unknown function {self.fn!r}")


@dataclass(frozen=True)
class Product(Expr):
    factors: tuple


def wrap(v) -> Expr:
    if isinstance(v, Expr):
        return v
    return Const(v)


X = Var()


def sin(e):
    return Apply("sin", wrap(e))


def cos(e):
    return Apply("cos", wrap(e))


def tan(e):
    return Apply("tan", wrap(e))


def sec(e):
    return Apply("sec", wrap(e))


def exp(e):
    return Apply("exp", wrap(e))


def ln(e):
    return Apply("ln", wrap(e))


def sqrt(e):
    return Apply("sqrt", wrap(e))


def has_var(e: Expr) -> bool:
    if isinstance(e, Var):
        return True
    if isinstance(e, Const):
        return False
    if isinstance(e, Sum):
        return any(has_var(t) for t in e.terms)
    if isinstance(e, Product):
        return any(has_var(f) for f in e.factors)
    if isinstance(e, Scaled):
        return has_var(e.atom)
    if isinstance(e, Power):
        return has_var(e.base)
    return has_var(e.arg)


def substitute(e: Expr, value: Expr) -> Expr:
    """Replace the variable by ``value`` (no normalization)."""
    if isinstance(e, Var):
        return value
    if isinstance(e, Const):
        return e
    if isinstance(e, Sum):
        return Sum(tuple(substitute(t, value) for t in e.terms))
    if isinstance(e, Product):
        return Product(tuple(substitute(f, value) for f in e.factors))
    if isinstance(e, Scaled):
        return Scaled(e.coeff, substitute(e.atom, value))
    if isinstance(e, Power):
        return Power(substitute(e.base, value), e.exponent)
    return Apply(e.fn, substitute(e.arg, value))


# --------------------------------------------------------------------------
# exact helpers


def _iroot(v: int, q: int):
    """Exact integer q-th root of v >= 0, or None."""
    if v < 2:
        return v
    x = 1 << ((v.bit_length() + q - 1) // q)
    while True:
        y = ((q - 1) * x + v // x ** (q - 1)) // q
        if y >= x:
            break
        x = y
    return x if x**q == v else None


def _const_pow(c: Fraction, n: Fraction):
    """c**n as an exact Fraction, or None when not rational or not defined."""
    if n.denominator == 1:
        if c == 0 and n < 0:
            return None
        return c ** int(n)
    if c < 0 or (c == 0 and n < 0):
        return None
    if c == 0:
        return Fraction(0)
    rn = _iroot(c.numerator, n.denominator)
    rd = _iroot(c.denominator, n.denominator)
    if rn is None or rd is None:
        return None
    return Fraction(rn, rd) ** n.numerator


def exact_power(c, n):
    """c**n as an exact Fraction, or None."""
    return _const_pow(Fraction(c), Fraction(n))


_EXACT_AT_ZERO = {"sin": 0, "tan": 0, "cos": 1, "sec": 1, "exp": 1}


def _exact_fn(fn: str, v: Fraction):
    if fn == "ln":
        return Fraction(0) if v == 1 else None
    if v == 0 and fn in _EXACT_AT_ZERO:
        return Fraction(_EXACT_AT_ZERO[fn])
    return None


# --------------------------------------------------------------------------
# ordering (shared by the normal form and the printer)

_FN_ORDER = {"sin": 0, "cos": 1, "tan": 2, "sec2": 3, "exp": 4, "ln": 5}


def _is_sec2(atom) -> bool:
    return (
        isinstance(atom, Power)
        and atom.exponent == 2
        and isinstance(atom.base, Apply)
        and atom.base.fn == "sec"
        and isinstance(atom.base.arg, Var)
    )


def _sort_key(atom):
    if isinstance(atom, Var):
        return (0, Fraction(-1), "")
    if isinstance(atom, Power) and isinstance(atom.base, Var):
        return (0, -atom.exponent, "")
    if isinstance(atom, Apply) and isinstance(atom.arg, Var) and atom.fn in _FN_ORDER:
        return (1, Fraction(_FN_ORDER[atom.fn]), "")
    if _is_sec2(atom):
        return (1, Fraction(_FN_ORDER["sec2"]), "")
    return (2, Fraction(0), _render(atom, "x") + "\0" + repr(atom))


# --------------------------------------------------------------------------
# normal form
#
# _Lin holds   const + sum(coeff * monomial);   a monomial is a sorted tuple
# of (primal, exponent) pairs.  Every monomial stored is canonical: no
# factor can be simplified further on its own.


class _Lin:
    __slots__ = ("const", "terms")

    def __init__(self, const=Fraction(0), terms=None):
        self.const = Fraction(const)
        self.terms = terms if terms is not None else {}


def _one():
    return _Lin(1)


def _factor_expr(p, e):
    return p if e == 1 else Power(p, e)


def _sort_mono(factors):
    return tuple(sorted(factors, key=lambda pe: _sort_key(_factor_expr(*pe))))


def _single(p, e, coeff=Fraction(1)) -> _Lin:
    return _Lin(0, {((p, e),): Fraction(coeff)})


def _iadd_term(terms, mono, c):
    v = terms.get(mono, 0) + c
    if v:
        terms[mono] = v
    else:
        terms.pop(mono, None)


def _add(a: _Lin, b: _Lin, k=Fraction(1)) -> _Lin:
    """a + k*b"""
    terms = dict(a.terms)
    for m, c in b.terms.items():
        _iadd_term(terms, m, k * c)
    return _Lin(a.const + k * b.const, terms)


def _scale(a: _Lin, k) -> _Lin:
    if k == 0:
        return _Lin()
    return _Lin(a.const * k, {m: c * k for m, c in a.terms.items()})


def _mono_mul(m1, m2) -> _Lin:
    merged = dict(m1)
    touched = []
    for p, e in m2:
        if p in merged:
            merged[p] += e
            touched.append(p)
        else:
            merged[p] = e
    canonical = [(p, e) for p, e in merged.items() if p not in touched]
    out = _Lin(0, {_sort_mono(canonical): Fraction(1)}) if canonical else _one()
    for p in touched:
        out = _mul(out, _factor_lin(p, merged[p]))
    return out


def _mul(a: _Lin, b: _Lin) -> _Lin:
    out = _Lin(a.const * b.const)
    for m, c in a.terms.items():
        _iadd_term(out.terms, m, c * b.const)
    for m, c in b.terms.items():
        _iadd_term(out.terms, m, c * a.const)
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            out = _add(out, _mono_mul(m1, m2), c1 * c2)
    return out


def _merge_safe(inner: Fraction, outer: Fraction) -> bool:
    """Whether (b^inner)^outer == b^(inner*outer) wherever the left side is defined."""
    if outer.denominator == 1:
        return True
    if inner.denominator == 1 and inner % 2 == 0:
        prod = inner * outer
        return prod.denominator == 1 and prod % 2 == 0
    return True


def _factor_lin(p, e) -> _Lin:
    """Normal form of the single factor p^e."""
    if e == 0:
        return _one()
    if isinstance(p, Const):
        v = _const_pow(p.value, e)
        return _Lin(v) if v is not None else _single(p, e)
    if isinstance(p, (Var, Apply)):
        return _single(p, e)
    if isinstance(p, Power):
        if _merge_safe(p.exponent, e):
            return _factor_lin(p.base, p.exponent * e)
        return _single(p, e)
    lin = _lin(p)
    return lin if e == 1 else _pow_lin(lin, e)


def _pow_lin(lin: _Lin, n: Fraction) -> _Lin:
    if n == 0:
        return _one()
    if n == 1:
        return lin
    if not lin.terms:
        return _factor_lin(Const(lin.const), n)
    if lin.const == 0 and len(lin.terms) == 1:
        ((mono, k),) = lin.terms.items()
        if n.denominator == 1:
            out = _Lin(k**n)
            for p, e in mono:
                out = _mul(out, _factor_lin(p, e * n))
            return out
        if k > 0:
            out = _factor_lin(Const(k), n)
            if len(mono) == 1:
                ((p, e),) = mono
                if _merge_safe(e, n):
                    f = _factor_lin(p, e * n)
                else:
                    f = _single(_factor_expr(p, e), n)
            else:
                f = _single(_mono_expr(mono), n)
            return _mul(out, f)
        return _single(_rebuild(lin), n)
    if n.denominator == 1 and 0 < n <= _EXPAND_LIMIT:
        out = _one()
        for _ in range(int(n)):
            out = _mul(out, lin)
        return out
    return _single(_rebuild(lin), n)


def _apply_lin(fn, arg) -> _Lin:
    if fn == "sqrt":
        return _pow_lin(_lin(arg), HALF)
    a = normalize(arg)
    if isinstance(a, Const):
        v = _exact_fn(fn, a.value)
        if v is not None:
            return _Lin(v)
    return _single(Apply(fn, a), Fraction(1))


def _lin(e) -> _Lin:
    if isinstance(e, Const):
        return _Lin(e.value)
    if isinstance(e, Var):
        return _single(e, Fraction(1))
    if isinstance(e, Sum):
        out = _Lin()
        for t in e.terms:
            out = _add(out, _lin(t))
        return out
    if isinstance(e, Scaled):
        return _scale(_lin(e.atom), e.coeff)
    if isinstance(e, Product):
        out = _one()
        for f in e.factors:
            out = _mul(out, _lin(f))
        return out
    if isinstance(e, Power):
        return _pow_lin(_lin(e.base), e.exponent)
    if isinstance(e, Apply):
        return _apply_lin(e.fn, e.arg)
    raise TypeError(f"not an expression: {e!r}")


def _mono_expr(mono) -> Expr:
    factors = [_factor_expr(p, e) for p, e in mono]
    if len(factors) == 1:
        return factors[0]
    return Product(tuple(sorted(factors, key=_sort_key)))


def _rebuild(lin: _Lin) -> Expr:
    items = sorted(
        ((_mono_expr(m), c) for m, c in lin.terms.items()), key=lambda t: _sort_key(t[0])
    )
    if not items:
        return Const(lin.const)
    if len(items) == 1 and lin.const == 0:
        atom, c = items[0]
        return atom if c == 1 else Scaled(c, atom)
    terms = tuple(Scaled(c, a) for a, c in items)
    if lin.const:
        terms += (Const(lin.const),)
    return Sum(terms)


def normalize(e: Expr) -> Expr:
    """Return the unique normal form of ``e``.

    Like atoms are merged, powers of powers are collapsed where that is
    value-preserving, positive integer powers of sums are multiplied out,
    ``sqrt`` becomes a power 1/2, and functions of constants fold when the
    value is rational (``sin(0)``, ``ln(1)``, ...).
    """
    return _rebuild(_lin(e))


def linear_terms(e: Expr):
    """Split a normalized expression into (constant, [(coeff, atom), ...])."""
    if isinstance(e, Const):
        return e.value, []
    if isinstance(e, Sum):
        const = Fraction(0)
        out = []
        for t in e.terms:
            if isinstance(t, Const):
                const += t.value
            else:
                out.append((t.coeff, t.atom))
        return const, out
    if isinstance(e, Scaled):
        return Fraction(0), [(e.coeff, e.atom)]
    return Fraction(0), [(Fraction(1), e)]


# --------------------------------------------------------------------------
# DA-class decomposition


@dataclass(frozen=True)
class PowerOfVar:
    exponent: Fraction

    def __post_init__(self):
        object.__setattr__(self, "exponent", _as_fraction(self.exponent))
        if self.exponent == 0:
            raise ValueError("x^0 is a constant, not an atom")

    def to_expr(self) -> Expr:
        return X if self.exponent == 1 else Power(X, self.exponent)


@dataclass(frozen=True)
class FnOfVar:
    name: str  # sin, cos, tan, sec2, exp, ln

    def __post_init__(self):
        if self.name not in _FN_ORDER:
            raise ValueError(f"unknown table atom {self.name!r}")

    def to_expr(self) -> Expr:
        if self.name == "sec2":
            return Power(Apply("sec", X), 2)
        return Apply(self.name, X)


DAAtom = Union[PowerOfVar, FnOfVar]


@dataclass(frozen=True)
class DAClassForm:
    constant: Fraction
    terms: tuple  # ((coeff, DAAtom), ...)

    def to_expr(self) -> Expr:
        return from_da_class(self)


def _da_atom(atom) -> DAAtom:
    if isinstance(atom, Var):
        return PowerOfVar(1)
    if isinstance(atom, Power) and isinstance(atom.base, Var):
        return PowerOfVar(atom.exponent)
    if isinstance(atom, Apply) and isinstance(atom.arg, Var) and atom.fn in _FN_ORDER:
        return FnOfVar(atom.fn)
    if _is_sec2(atom):
        return FnOfVar("sec2")
    raise DAClassError(atom)


def to_da_class(e: Expr) -> DAClassForm:
    const, terms = linear_terms(normalize(e))
    return DAClassForm(const, tuple((c, _da_atom(a)) for c, a in terms))


def from_da_class(form: DAClassForm) -> Expr:
    parts = [Scaled(c, atom.to_expr()) for c, atom in form.terms]
    parts.append(Const(form.constant))
    return normalize(Sum(tuple(parts)))


# --------------------------------------------------------------------------
# evaluation


def _near_pole(v: float) -> bool:
    k = round((v - math.pi / 2) / math.pi)
    return abs(v - (math.pi / 2 + k * math.pi)) < 1e-12 * max(1.0, abs(v))


def _pow_value(b, n: Fraction, node, x):
    if b == 0 and n < 0:
        raise DomainError(node, x, "zero to a negative power")
    if n.denominator == 1:
        return b ** int(n)
    if b < 0:
        raise DomainError(node, x, "negative base with non-integer exponent")
    if isinstance(b, Fraction):
        v = _const_pow(b, n)
        if v is not None:
            return v
        b = float(b)
    return b ** float(n)


def _apply_value(fn, v, node, x):
    if fn == "ln" and v <= 0:
        raise DomainError(node, x, "logarithm of a non-positive number")
    if fn == "sqrt":
        return _pow_value(v, HALF, node, x)
    if isinstance(v, Fraction):
        exact = _exact_fn(fn, v)
        if exact is not None:
            return exact
        v = float(v)
    if fn in ("tan", "sec") and _near_pole(v):
        raise DomainError(node, x, "odd multiple of pi/2")
    if fn == "sin":
        return math.sin(v)
    if fn == "cos":
        return math.cos(v)
    if fn == "tan":
        return math.tan(v)
    if fn == "sec":
        return 1.0 / math.cos(v)
    if fn == "exp":
        return math.exp(v)
    return math.log(v)


def evaluate(e: Expr, x) -> Scalar:
    """Value of ``e`` at ``x``.

    Exact (a Fraction) when ``x`` is rational and every node stays rational,
    e.g. polynomials, or x^(3/2) at a perfect square.  Otherwise a float.
    """
    if isinstance(x, int):
        x = Fraction(x)
    return _eval(e, x)


def _eval(e, x):
    if isinstance(e, Const):
        return e.value
    if isinstance(e, Var):
        return x
    if isinstance(e, Sum):
        total = Fraction(0)
        for t in e.terms:
            total = total + _eval(t, x)
        return total
    if isinstance(e, Scaled):
        return e.coeff * _eval(e.atom, x)
    if isinstance(e, Product):
        total = Fraction(1)
        for f in e.factors:
            total = total * _eval(f, x)
        return total
    if isinstance(e, Power):
        return _pow_value(_eval(e.base, x), e.exponent, e, x)
    return _apply_value(e.fn, _eval(e.arg, x), e, x)


def compile_float(e: Expr) -> Callable[[float], float]:
    """Float-only closure equivalent to ``lambda x: float(evaluate(e, x))``.

    Used by the sampling-heavy numeric code; raises DomainError the same way.
    """
    if isinstance(e, Const):
        c = float(e.value)
        return lambda x: c
    if isinstance(e, Var):
        return lambda x: x
    if isinstance(e, Sum):
        fs = [compile_float(t) for t in e.terms]
        return lambda x: sum(f(x) for f in fs)
    if isinstance(e, Scaled):
        k = float(e.coeff)
        f = compile_float(e.atom)
        return lambda x: k * f(x)
    if isinstance(e, Product):
        fs = [compile_float(t) for t in e.factors]

        def prod(x):
            out = 1.0
            for f in fs:
                out *= f(x)
            return out

        return prod
    if isinstance(e, Power):
        f = compile_float(e.base)
        n = e.exponent
        if n.denominator == 1:
            ni = int(n)

            def ipow(x):
                b = f(x)
                if b == 0 and ni < 0:
                    raise DomainError(e, x, "zero to a negative power")
                return b**ni

            return ipow
        nf = float(n)

        def rpow(x):
            b = f(x)
            if b < 0 or (b == 0 and nf < 0):
                raise DomainError(e, x, "negative base with non-integer exponent")
            return b**nf

        return rpow
    f = compile_float(e.arg)
    fn = e.fn
    return lambda x: float(_apply_value(fn, f(x), e, x))


# --------------------------------------------------------------------------
# printing


def _fmt_rational(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _fmt_exponent(n: Fraction) -> str:
    if n.denominator == 1 and n >= 0:
        return str(n.numerator)
    return f"({_fmt_rational(n)})"


def _fmt_base(b, var) -> str:
    if isinstance(b, Var):
        return var
    if isinstance(b, Apply):
        return _fmt_atom(b, var)
    if isinstance(b, Const) and b.value.denominator == 1 and b.value >= 0:
        return str(b.value.numerator)
    return f"({_render(b, var)})"


def _fmt_atom(a, var) -> str:
    if isinstance(a, Var):
        return var
    if isinstance(a, Power):
        return f"{_fmt_base(a.base, var)}^{_fmt_exponent(a.exponent)}"
    if isinstance(a, Apply):
        return f"{a.fn}({_render(a.arg, var)})"
    if isinstance(a, Product):
        return " * ".join(_fmt_atom(f, var) for f in a.factors)
    return f"({_render(a, var)})"


def _fmt_term(c: Fraction, atom, var) -> str:
    s = _fmt_atom(atom, var)
    if c == 1:
        return s
    if c == -1:
        return "-" + s
    sep = " * " if s[0].isdigit() else " "
    return _fmt_rational(c) + sep + s


def to_canonical_string(e: Expr, var: str = "x") -> str:
    """Deterministic ASCII rendering; a fixed point of parse-then-print.

    >>> to_canonical_string(normalize(Scaled(Fraction(1, 5), X**5) + X**2))
    '1/5 x^5 + x^2'
    """
    return _render(normalize(e), var)


def _render(e: Expr, var: str) -> str:
    if isinstance(e, Const):
        return _fmt_rational(e.value)
    if isinstance(e, Sum):
        out = ""
        for i, t in enumerate(e.terms):
            if isinstance(t, Const):
                c, atom = t.value, None
            elif isinstance(t, Scaled):
                c, atom = t.coeff, t.atom
            else:
                c, atom = Fraction(1), t
            if i == 0:
                out = _fmt_term(c, atom, var) if atom is not None else _fmt_rational(c)
                continue
            sign = " - " if c < 0 else " + "
            body = _fmt_term(abs(c), atom, var) if atom is not None else _fmt_rational(abs(c))
            out += sign + body
        return out
    if isinstance(e, Scaled):
        return _fmt_term(e.coeff, e.atom, var)
    return _fmt_atom(e, var)
