import csv
import shlex
import subprocess
import sys
from fractions import Fraction as F
from pathlib import Path

import pytest
from hypothesis import given, settings

from ddcalc.cli import PLOT_POINTS, format_line, format_scalar, grade, run
from ddcalc.errors import DomainError
from ddcalc.expr import from_da_class, to_canonical_string
from ddcalc.tangent import TangentLine

from strategies import ANTIDIFF_ATOMS, da_forms

GOLDEN = Path(__file__).parent / "golden"


def golden_cases():
    for line in (GOLDEN / "commands.txt").read_text().splitlines():
        if line and not line.startswith("#"):
            name, argv = line.split("\t")
            yield pytest.param(name, shlex.split(argv), id=name)


def ok(argv):
    code, out = run(shlex.split(argv) if isinstance(argv, str) else argv)
    assert code == 0, out
    return out


@pytest.mark.parametrize("name, argv", list(golden_cases()))
def test_golden_in_process(name, argv):
    assert run(argv) == (0, (GOLDEN / name).read_text())


@pytest.mark.parametrize("name, argv", list(golden_cases()))
def test_golden_subprocess(name, argv):
    proc = subprocess.run([sys.executable, "-m", "ddcalc", *argv], capture_output=True)
    assert proc.returncode == 0
    assert proc.stdout == (GOLDEN / name).read_bytes()
    assert proc.stderr == b""


class TestCommands:
    def test_antiderivative(self):
        assert ok("antiderivative x^4+2x") == "result = 1/5 x^5 + x^2\nmethod = da-pair\n"

    def test_derivative_keeps_variable_name(self):
        assert ok("derivative 16 t^2") == "result = 32 t\nmethod = da-pair\n"

    def test_expression_split_over_words(self):
        assert ok(["integrate", "x^4", "+", "2", "x", "from", "0", "to", "1"]).startswith("result = 6/5\n")

    def test_symbolic_upper(self):
        assert ok("integrate 32t from 0 to t") == "result = 16 t^2\nmethod = height-increment\n"

    def test_numeric_fallback_prints_float(self):
        assert ok(["integrate", "sqrt(1-x^2)", "from", "0", "to", "1"]) == (
            "result = 0.78539816097795723\nmethod = quadrature\n"
        )

    def test_forced_numeric(self):
        assert ok("integrate x^2 from 0 to 1 --numeric").endswith("method = quadrature\n")

    def test_global_flag_before_command(self):
        assert ok("--numeric integrate x^2 from 0 to 1").endswith("method = quadrature\n")

    def test_decimal_and_fraction_bounds(self):
        assert ok("integrate 2x from 0.5 to 3/2").startswith("result = 2\n")

    def test_tangent_point_slope(self):
        assert ok("tangent x^2 at 3") == "result = y - 9 = 6 (x - 3)\nmethod = point-slope\n"

    def test_tangent_negative_values(self):
        assert ok("tangent x^2 at -1") == "result = y - 1 = -2 (x + 1)\nmethod = point-slope\n"

    def test_tangent_outside_polynomials(self):
        assert ok("tangent sin(x) at 0") == "result = y - 0 = 1 (x - 0)\nmethod = da-pair\n"

    def test_meanvalue(self):
        assert ok("meanvalue 2x from 0 to 1") == (
            "result = 1\nwitness c = 1/2\nresidual = 0\nmethod = height-increment\n"
        )

    def test_grade_function(self):
        assert grade(90, 1000) == F(9, 100)
        with pytest.raises(DomainError):
            grade(1, 0)

    def test_leading_minus_is_an_expression(self):
        assert ok("integrate -1/2 from -1 to 1") == "result = -1\nmethod = height-increment\n"
        assert ok("derivative -x^2 --plot=/dev/null").startswith("result = -2 x\n")

    def test_deterministic(self):
        argv = ["meanvalue", "sin(x)", "from", "0", "to", "1"]
        assert run(argv) == run(argv)


class TestErrors:
    @pytest.mark.parametrize(
        "argv, code, fragment",
        [
            ("derivative x+y", 2, "MultipleVariablesError: at position 2"),
            ("derivative x+", 2, "ParseError: at position 2"),
            ("integrate x from 0", 2, "argument 5"),
            ("--numeric integrate x from 0", 2, "argument 6"),
            ("integrate x at 0 to 1", 2, "argument 3: expected 'from', found 'at'"),
            ("integrate x from zero/2 to 1", 2, "argument 4"),
            ("integrate x from 0 to 1/0", 2, "zero denominator"),
            ("integrate x from 0 to t --numeric", 2, "needs a numeric upper bound"),
            ("grade 1", 2, "expected <H> <L>"),
            ("grade 1 2 --plot out.csv", 2, "--plot"),
            ("tangent x at 0 --method secant", 2, "invalid choice"),
            ("frobnicate x", 2, "invalid choice"),
            ("", 2, "required"),
            ("integrate 1/x from -1 to 1", 3, "NonIntegrableSingularity"),
            ("meanvalue x from 1 to 1", 3, "DegenerateInterval"),
            ("antiderivative tan(x)", 3, "UnsupportedAntiderivative"),
            ("tangent sqrt(x) at 0 --method descartes", 3, "VerticalRadialDegenerate"),
            ("tangent sin(x) at 1 --method descartes", 3, "NotPolynomialError"),
            ("derivative sin(2x)", 3, "DAClassError"),
            ("grade 1 0", 3, "DomainError"),
        ],
    )
    def test_exit_codes(self, argv, code, fragment):
        got, out = run(shlex.split(argv))
        assert got == code
        assert out.startswith("error: ")
        assert fragment in out

    def test_errors_go_to_stderr(self):
        proc = subprocess.run([sys.executable, "-m", "ddcalc", "derivative", "x+y"], capture_output=True, text=True)
        assert proc.returncode == 2
        assert proc.stdout == ""
        assert "MultipleVariablesError" in proc.stderr


def read_plot(path):
    raw = Path(path).read_bytes()
    assert b"\r" not in raw
    rows = list(csv.reader(raw.decode().splitlines()))
    assert rows[0] == ["x", "input", "result"]
    assert len(rows) == PLOT_POINTS + 1
    return [[float(v) for v in r] for r in rows[1:]]


class TestPlot:
    def test_integrate_range_and_values(self, tmp_path):
        out = tmp_path / "p.csv"
        ok(["integrate", "x^2", "from", "0", "to", "3", "--plot", str(out)])
        rows = read_plot(out)
        assert rows[0][0] == 0 and rows[-1][0] == 3
        assert rows[-1][1] == 9
        assert rows[-1][2] == 9  # cumulative area up to 3
        assert rows[128][2] == pytest.approx(1.5**3 / 3)

    def test_numeric_cumulative(self, tmp_path):
        out = tmp_path / "p.csv"
        ok(["integrate", "sqrt(1-x^2)", "from", "0", "to", "1", "--plot", str(out)])
        rows = read_plot(out)
        assert rows[0][2] == 0
        assert rows[-1][2] == pytest.approx(0.785398163, abs=1e-6)

    def test_tangent_window(self, tmp_path):
        out = tmp_path / "p.csv"
        ok(["tangent", "x^2", "at", "1", "--plot", str(out)])
        rows = read_plot(out)
        assert (rows[0][0], rows[-1][0]) == (-1, 3)
        assert rows[128] == [1, 1, 1]

    def test_undefined_points_are_nan(self, tmp_path):
        out = tmp_path / "p.csv"
        ok(["derivative", "ln(x)", "--plot", str(out)])
        text = out.read_text()
        assert "nan" in text
        rows = read_plot(out)
        assert (rows[0][0], rows[-1][0]) == (-2, 2)

    def test_seventeen_digits(self, tmp_path):
        out = tmp_path / "p.csv"
        ok(["antiderivative", "x", "--plot", str(out)])
        second = out.read_text().splitlines()[2].split(",")
        assert second[0] == format(-2 + 4 / 256, ".17g")

    def test_meanvalue_plot_is_flat(self, tmp_path):
        out = tmp_path / "p.csv"
        ok(["meanvalue", "2x", "from", "0", "to", "1", "--plot", str(out)])
        assert {r[2] for r in read_plot(out)} == {1.0}

    def test_symbolic_upper_plot(self, tmp_path):
        out = tmp_path / "p.csv"
        ok(["integrate", "x", "from", "1", "to", "x", "--plot", str(out)])
        rows = read_plot(out)
        assert (rows[0][0], rows[-1][0]) == (1, 3)
        assert rows[-1][2] == 4


class TestFormatting:
    def test_scalars(self):
        assert format_scalar(F(3)) == "3"
        assert format_scalar(F(-3, 4)) == "-3/4"
        assert format_scalar(0.1) == "0.10000000000000001"

    def test_line(self):
        assert format_line(TangentLine(F(-2), F(-1, 2), F(3)), "t") == "y + 1/2 = 3 (t + 2)"


@settings(max_examples=200)
@given(da_forms(atoms=ANTIDIFF_ATOMS))
def test_upper_bound_output_differentiates_back(form):
    g = from_da_class(form)
    text = to_canonical_string(g)
    code, out = run(["integrate", text, "from", "1", "to", "x"])
    assert code == 0, out
    upper = out.splitlines()[0].removeprefix("result = ")
    code, out = run(["derivative", upper])
    assert code == 0, out
    assert out.splitlines()[0] == f"result = {text}"
