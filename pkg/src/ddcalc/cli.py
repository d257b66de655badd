"""``ddcalc`` command-line front end.

    ddcalc derivative <expr>
    ddcalc antiderivative <expr>
    ddcalc integrate <expr> from <a> to <b | variable>
    ddcalc tangent <expr> at <x0> [--method point-slope|descartes]
    ddcalc meanvalue <expr> from <a> to <b>
    ddcalc grade <H> <L>

Exit codes: 0 success, 2 parse/usage error, 3 domain/math error.
"""

from __future__ import annotations

import argparse
import csv
import re
import sys
from fractions import Fraction

from ddcalc.da import antiderivative, derivative
from ddcalc.errors import DomainError, InputError, MathError, NotPolynomialError, ParseError
from ddcalc.expr import Expr, Scalar, compile_float, evaluate, to_canonical_string
from ddcalc.integral import Method, integrate, integrate_symbolic_upper, mean_value
from ddcalc.oracle import simpson
from ddcalc.parser import parse_expr
from ddcalc.tangent import TangentLine, curve_from_expr, tangent_descartes, tangent_point_slope

PLOT_POINTS = 257

_RATIONAL = re.compile(r"^[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:/\d+)?$")
_IDENT = re.compile(r"^[A-Za-z_][A-Za-z_0-9]*$")


class UsageError(InputError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def format_scalar(v: Scalar) -> str:
    if isinstance(v, Fraction):
        return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
    return format(v, ".17g")


def _shifted(name: str, v: Scalar) -> str:
    if v < 0:
        return f"{name} + {format_scalar(-v)}"
    return f"{name} - {format_scalar(v)}"


def format_line(t: TangentLine, var: str) -> str:
    return f"{_shifted('y', t.y0)} = {format_scalar(t.m)} ({_shifted(var, t.x0)})"


def _rational(text: str, index: int) -> Fraction:
    if not _RATIONAL.match(text):
        raise UsageError(f"argument {index}: expected a rational number, found {text!r}")
    if "/" in text and Fraction(text.split("/")[1]) == 0:
        raise UsageError(f"argument {index}: zero denominator in {text!r}")
    return Fraction(text)


def _split(words, keywords, pos):
    """Split ``<expr...> kw1 v1 kw2 v2`` into the expression text and values.

    ``pos[i]`` is the argv position of ``words[i]``, used in usage errors.
    """
    need = 2 * len(keywords)
    if len(words) < need + 1:
        raise UsageError(
            f"argument {pos[-1] + 1}: expected <expr> "
            + " ".join(f"{k} <value>" for k in keywords)
        )
    n_expr = len(words) - need
    values = []
    for i, kw in enumerate(keywords):
        got = words[n_expr + 2 * i]
        if got != kw:
            raise UsageError(f"argument {pos[n_expr + 2 * i]}: expected {kw!r}, found {got!r}")
        values.append((words[n_expr + 2 * i + 1], pos[n_expr + 2 * i + 1]))
    return " ".join(words[:n_expr]), values


def _parse(text: str):
    try:
        return parse_expr(text)
    except ParseError as exc:
        raise ParseError(exc.position, exc.expected, exc.found) from None


def _samples(lo: Fraction, hi: Fraction):
    return [lo + (hi - lo) * Fraction(k, PLOT_POINTS - 1) for k in range(PLOT_POINTS)]


def _safe(f, x):
    try:
        return float(f(x))
    except (DomainError, OverflowError, ZeroDivisionError, ValueError):
        return float("nan")


def write_plot(path: str, rows):
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "input", "result"])
        for x, a, b in rows:
            w.writerow([format(float(x), ".17g"), format(a, ".17g"), format(b, ".17g")])


def _curve_rows(e_in: Expr, e_out, xs):
    f_in = lambda x: evaluate(e_in, x)  # noqa: E731
    f_out = e_out if callable(e_out) and not isinstance(e_out, Expr) else (lambda x: evaluate(e_out, x))
    return [(x, _safe(f_in, x), _safe(f_out, x)) for x in xs]


# --------------------------------------------------------------------------
# subcommands; each returns (output lines, plot rows or None)


def _cmd_derivative(args, pos):
    p = _parse(" ".join(args.words))
    d = derivative(p.expr)
    rows = _curve_rows(p.expr, d, _samples(Fraction(-2), Fraction(2))) if args.plot else None
    return [f"result = {to_canonical_string(d, p.var)}", "method = da-pair"], rows


def _cmd_antiderivative(args, pos):
    p = _parse(" ".join(args.words))
    a = antiderivative(p.expr)
    rows = _curve_rows(p.expr, a, _samples(Fraction(-2), Fraction(2))) if args.plot else None
    return [f"result = {to_canonical_string(a, p.var)}", "method = da-pair"], rows


def _cumulative(g: Expr, xs):
    f = compile_float(g)
    acc = 0.0
    out = [0.0]
    for lo, hi in zip(xs, xs[1:]):
        acc += simpson(f, lo, hi, 64)
        out.append(acc)
    return out


def _cmd_integrate(args, pos):
    text, ((a_txt, a_pos), (b_txt, b_pos)) = _split(args.words, ("from", "to"), pos)
    p = _parse(text)
    a = _rational(a_txt, a_pos)
    if _IDENT.match(b_txt):
        if args.numeric:
            raise UsageError(f"argument {b_pos}: --numeric needs a numeric upper bound")
        upper = integrate_symbolic_upper(p.expr, a)
        rows = None
        if args.plot:
            rows = _curve_rows(p.expr, upper, _samples(a, a + 2))
        return [
            f"result = {to_canonical_string(upper, b_txt)}",
            f"method = {Method.SYMBOLIC_HEIGHT_INCREMENT.value}",
        ], rows
    b = _rational(b_txt, b_pos)
    res = integrate(p.expr, a, b, force_numeric=args.numeric)
    rows = None
    if args.plot:
        xs = _samples(min(a, b), max(a, b))
        if res.method is Method.SYMBOLIC_HEIGHT_INCREMENT:
            G = res.antiderivative_used
            Ga = evaluate(G, a)
            acc = [float(evaluate(G, x) - Ga) for x in xs]
        else:
            acc = _cumulative(p.expr, xs)
            if a > b:
                acc = [v - acc[-1] for v in acc]
        rows = [(x, _safe(lambda t: evaluate(p.expr, t), x), v) for x, v in zip(xs, acc)]
    return [f"result = {format_scalar(res.value)}", f"method = {res.method.value}"], rows


def _cmd_tangent(args, pos):
    text, ((x_txt, x_pos),) = _split(args.words, ("at",), pos)
    p = _parse(text)
    x0 = _rational(x_txt, x_pos)
    extra = []
    try:
        curve = curve_from_expr(p.expr)
    except NotPolynomialError:
        if args.method == "descartes":
            raise
        curve = None
    if args.method == "descartes":
        d = tangent_descartes(curve, x0)
        line = d.line()
        extra.append(f"center a = {format_scalar(d.center_a)}")
        method = "descartes"
    elif curve is not None:
        line = tangent_point_slope(curve, x0)
        method = "point-slope"
    else:
        line = TangentLine(x0, evaluate(p.expr, x0), evaluate(derivative(p.expr), x0))
        method = "da-pair"
    rows = _curve_rows(p.expr, line, _samples(x0 - 2, x0 + 2)) if args.plot else None
    return [f"result = {format_line(line, p.var)}", *extra, f"method = {method}"], rows


def _cmd_meanvalue(args, pos):
    text, ((a_txt, a_pos), (b_txt, b_pos)) = _split(args.words, ("from", "to"), pos)
    p = _parse(text)
    a, b = _rational(a_txt, a_pos), _rational(b_txt, b_pos)
    mv = mean_value(p.expr, a, b, force_numeric=args.numeric)
    rows = None
    if args.plot:
        rows = [(x, _safe(lambda t: evaluate(p.expr, t), x), float(mv.W)) for x in _samples(a, b)]
    return [
        f"result = {format_scalar(mv.W)}",
        f"witness c = {format_scalar(mv.witness_c)}",
        f"residual = {format(mv.residual, '.17g')}",
        f"method = {mv.integral.method.value}",
    ], rows


def grade(rise, run) -> Fraction:
    """Slope H/L of a straight incline."""
    rise, run = Fraction(rise), Fraction(run)
    if run == 0:
        raise DomainError("H/L", run, "zero horizontal run")
    return rise / run


def _cmd_grade(args, pos):
    if len(args.words) != 2:
        at = pos[2] if len(pos) > 2 else pos[-1] + 1
        raise UsageError(f"argument {at}: expected <H> <L>")
    if args.plot:
        raise UsageError("--plot is not available for grade")
    h = _rational(args.words[0], pos[0])
    length = _rational(args.words[1], pos[1])
    return [f"result = {format_scalar(grade(h, length))}"], None


_COMMANDS = {
    "derivative": _cmd_derivative,
    "antiderivative": _cmd_antiderivative,
    "integrate": _cmd_integrate,
    "tangent": _cmd_tangent,
    "meanvalue": _cmd_meanvalue,
    "grade": _cmd_grade,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="ddcalc", description="Limit-free calculus in exact arithmetic.")

    def flags(p, default):
        p.add_argument("--numeric", action="store_true", default=default,
                       help="force Simpson quadrature for integrals")
        p.add_argument("--plot", metavar="PATH", default=None if default is False else default,
                       help="write CSV samples x,input,result")
        p.add_argument("--method", choices=("point-slope", "descartes"),
                       default="point-slope" if default is False else default,
                       help="tangent construction")

    flags(parser, False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in _COMMANDS:
        sp = sub.add_parser(name)
        sp.add_argument("words", nargs="+")
        flags(sp, argparse.SUPPRESS)
    return parser


_FLAG_ARITY = {"--numeric": 0, "--plot": 1, "--method": 1, "-h": 0, "--help": 0}


def _separate(argv):
    """Pull the known flags out of argv so expression words may start with '-'.

    Returns (argv for argparse, argv positions of the subcommand's words).
    Positions are 1-based and count the subcommand itself as 1.
    """
    flags, command, words, pos = [], [], [], []
    i = 0
    while i < len(argv):
        tok = argv[i]
        name = tok.split("=", 1)[0]
        if tok in _FLAG_ARITY:
            n = _FLAG_ARITY[tok]
            flags.extend(argv[i : i + 1 + n])
            i += 1 + n
            continue
        if name in _FLAG_ARITY and name.startswith("--"):
            flags.append(tok)
        elif not command and tok.startswith("-"):
            flags.append(tok)
        elif not command:
            command.append(tok)
        else:
            words.append(tok)
            pos.append(i + 1)
        i += 1
    tail = [*command, "--", *words] if command and words else command
    return flags + tail, pos


def run(argv) -> tuple[int, str]:
    try:
        parsed, pos = _separate(list(argv))
        args = build_parser().parse_args(parsed)
        lines, rows = _COMMANDS[args.command](args, pos)
    except InputError as exc:
        return 2, f"error: {type(exc).__name__}: {exc}\n"
    except MathError as exc:
        return 3, f"error: {type(exc).__name__}: {exc}\n"
    if rows is not None:
        write_plot(args.plot, rows)
    return 0, "".join(line + "\n" for line in lines)


def main(argv=None) -> int:
    code, out = run(sys.argv[1:] if argv is None else argv)
    (sys.stdout if code == 0 else sys.stderr).write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
