"""Limit-free calculus: double-root tangents, DA pairs, height-increment integrals."""

from ddcalc.da import DAPair, antiderivative, derivative
from ddcalc.errors import (
    DAClassError,
    DDCalcError,
    DegenerateInterval,
    DomainError,
    MultipleVariablesError,
    NonIntegrableSingularity,
    NotPolynomialError,
    ParseError,
    ToleranceNotReached,
    UnsupportedAntiderivative,
    VerticalRadialDegenerate,
    WitnessNotBracketed,
)
from ddcalc.expr import (
    DAClassForm,
    FnOfVar,
    PowerOfVar,
    evaluate,
    from_da_class,
    normalize,
    to_canonical_string,
    to_da_class,
)
from ddcalc.integral import (
    IntegralResult,
    MeanValueResult,
    Method,
    integrate,
    integrate_symbolic_upper,
    mean_value,
)
from ddcalc.oracle import QuadratureConfig, central_difference, quadrature
from ddcalc.parser import parse_expr
from ddcalc.poly import Polynomial, divide_by_linear, poly_from_expr, slope_by_double_root
from ddcalc.tangent import (
    DescartesResult,
    PolyCurve,
    SqrtCurve,
    TangentLine,
    tangent_descartes,
    tangent_point_slope,
)

__version__ = "0.1.0"
