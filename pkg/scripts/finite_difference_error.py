"""Central-difference error against the table derivative as h shrinks.

Truncation error falls as h^2 until rounding (about eps / h) takes over.
"""

import argparse
from fractions import Fraction

from ddcalc import derivative, evaluate, parse_expr
from ddcalc.oracle import central_difference


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("expr", nargs="?", default="sin(x) + x^(3/2)")
    ap.add_argument("--at", default="1")
    args = ap.parse_args()
    e = parse_expr(args.expr).expr
    x = Fraction(args.at)
    exact = float(evaluate(derivative(e), x))
    print(f"f = {args.expr}, f'({args.at}) = {exact!r}")
    print(f"{'h':>9}  {'error':>10}  {'ratio':>6}")
    prev = None
    for k in range(1, 13):
        h = 2.0**-k * 1e-1
        err = abs(central_difference(e, x, h) - exact)
        ratio = f"{prev / err:6.2f}" if prev and err else ""
        print(f"{h:9.2e}  {err:10.3e}  {ratio}")
        prev = err


if __name__ == "__main__":
    main()
