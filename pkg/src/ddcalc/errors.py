"""Exception hierarchy.

Two families matter to the CLI: ``InputError`` (bad syntax or usage, exit 2)
and ``MathError`` (domain or method failures, exit 3).
"""


class DDCalcError(Exception):
    pass


class InputError(DDCalcError):
    pass


class ParseError(InputError):
    def __init__(self, position, expected, found):
        self.position = position
        self.expected = expected
        self.found = found
        super().__init__(f"at position {position}: expected {expected}, found {found}")


class MultipleVariablesError(InputError):
    def __init__(self, names, position):
        self.names = tuple(names)
        self.position = position
        super().__init__(
            f"at position {position}: more than one variable ({', '.join(self.names)})"
        )


class MathError(DDCalcError):
    pass


class DomainError(MathError):
    """Evaluation of ``subterm`` at ``at`` falls outside its domain."""

    def __init__(self, subterm, at, reason=""):
        self.subterm = subterm
        self.at = at
        self.reason = reason
        msg = f"{subterm} undefined at {at}"
        if reason:
            msg += f" ({reason})"
        super().__init__(msg)


class DAClassError(MathError):
    def __init__(self, subterm, reason="not a rational-linear combination of table atoms"):
        self.subterm = subterm
        super().__init__(f"{subterm}: {reason}")


class UnsupportedAntiderivative(MathError):
    def __init__(self, atom):
        self.atom = atom
        super().__init__(f"no antiderivative of {atom} in the DA table")


class NotPolynomialError(MathError):
    def __init__(self, atom):
        self.atom = atom
        super().__init__(f"{atom} is not a polynomial term")


class VerticalRadialDegenerate(MathError):
    def __init__(self, x0):
        self.x0 = x0
        super().__init__(f"tangent point at x = {x0} lies on the axis (y0 = 0)")


class NonIntegrableSingularity(MathError):
    def __init__(self, at, detail=""):
        self.at = at
        super().__init__(f"integrand undefined at {at}" + (f": {detail}" if detail else ""))


class DegenerateInterval(MathError):
    pass


class WitnessNotBracketed(MathError):
    pass


class ToleranceNotReached(MathError):
    def __init__(self, best, delta):
        self.best = best
        self.delta = delta
        super().__init__(f"best estimate {best!r}, last delta {delta!r}")
