"""Simpson error against panel count, smooth vs endpoint-singular integrands."""

import argparse
import math
from fractions import Fraction

from ddcalc.expr import X, exp, sqrt
from ddcalc.oracle import QuadratureConfig, quadrature, simpson

CASES = {
    "exp(x) on [0, 1]": (exp(X), 0, 1, math.e - 1),
    "sqrt(1-x^2) on [0, 1]": (sqrt(1 - X**2), 0, 1, math.pi / 4),
    "x^(3/2) on [0, 2]": (X ** Fraction(3, 2), 0, 2, 0.4 * 2**2.5),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-log2", type=int, default=14, help="largest panel count is 2**N")
    args = ap.parse_args()
    for name, (g, a, b, exact) in CASES.items():
        print(name)
        print(f"  {'panels':>7}  {'error':>10}  {'ratio':>6}")
        prev = None
        for k in range(args.max_log2 + 1):
            err = abs(simpson(g, a, b, 2**k) - exact)
            ratio = f"{prev / err:6.2f}" if prev and err else "      "
            print(f"  {2**k:>7}  {err:10.3e}  {ratio}")
            prev = err
        v = quadrature(g, a, b, QuadratureConfig())
        print(f"  adaptive doubling: {v!r} (error {abs(v - exact):.2e})")


if __name__ == "__main__":
    main()
