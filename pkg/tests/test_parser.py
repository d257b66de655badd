from fractions import Fraction as F

import pytest
from hypothesis import given, settings

from ddcalc.errors import MultipleVariablesError, ParseError
from ddcalc.expr import X, cos, evaluate, exp, from_da_class, ln, normalize, sec, sin, sqrt, to_canonical_string
from ddcalc.parser import parse_expr, parse_raw, tokenize

from strategies import da_forms, identifiers


def expr(text):
    return parse_expr(text).expr


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x^(3/2)+4x^3", X ** F(3, 2) + 4 * X**3),
        ("x^4+2x", X**4 + 2 * X),
        ("3/2 x", F(3, 2) * X),
        ("2(x+1)", 2 * X + 2),
        ("-x^2", -(X**2)),
        ("2^3^2", 2**9 + 0 * X),
        ("x^-1", X**-1),
        ("sqrt(x)", sqrt(X)),
        ("sec(x)^2 + tan(x)", sec(X) ** 2 + normalize(expr("tan(x)"))),
        ("sin(x)*cos(x)", sin(X) * cos(X)),
        ("exp(x)/x", exp(X) * X**-1),
        ("ln(x) - 0.25", ln(X) - F(1, 4)),
        ("1/(x+1)", 1 / (X + 1)),
        ("  x   +   1 ", X + 1),
    ],
)
def test_parses_to_expected(text, expected):
    assert expr(text) == normalize(expected)


def test_power_binds_tighter_than_unary_minus():
    assert evaluate(expr("-x^2"), 3) == -9


def test_power_is_right_associative():
    assert evaluate(expr("2^3^2"), 0) == 512


def test_exponent_can_be_constant_expression():
    assert expr("x^(1/2+1)") == normalize(X ** F(3, 2))


def test_variable_name_is_reported():
    p = parse_expr("32 t")
    assert p.var == "t"
    assert p.expr == normalize(32 * X)


def test_constant_input_uses_default_variable():
    assert parse_expr("7").var == "x"
    assert parse_expr("7", default_var="u").var == "u"


def test_raw_tree_is_not_normalized():
    tree, var = parse_raw("x + x")
    assert var == "x"
    assert tree != normalize(tree)


def test_tokenizer_offsets():
    toks = tokenize("x + 12")
    assert [(t.kind, t.text, t.pos) for t in toks[:3]] == [("ident", "x", 0), ("op", "+", 2), ("num", "12", 4)]


class TestErrors:
    def test_two_variables(self):
        with pytest.raises(MultipleVariablesError) as info:
            parse_expr("x+y")
        assert info.value.names == ("x", "y")
        assert info.value.position == 2

    @pytest.mark.parametrize(
        "text, position",
        [("x+", 2), ("(x", 2), ("x)", 1), ("2 $ x", 2), ("", 0), ("sin x", 4)],
    )
    def test_parse_error_position(self, text, position):
        with pytest.raises(ParseError) as info:
            parse_expr(text)
        assert info.value.position == position

    def test_variable_exponent_rejected(self):
        with pytest.raises(ParseError):
            parse_expr("x^x")

    def test_function_name_is_not_a_variable(self):
        with pytest.raises(ParseError):
            parse_expr("sin + 1")


@settings(max_examples=200)
@given(da_forms(), identifiers)
def test_round_trip_fixed_point(form, var):
    e = from_da_class(form)
    text = to_canonical_string(e, var)
    parsed = parse_expr(text, default_var=var)
    assert parsed.expr == e
    assert to_canonical_string(parsed.expr, parsed.var) == text


def test_power_binds_before_implicit_product():
    assert parse_raw("4x^3")[0] == parse_raw("4*(x^3)")[0]
    assert expr("4x^3") != expr("(4x)^3")
