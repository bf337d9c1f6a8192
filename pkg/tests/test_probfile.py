"""Problem files: expression grammar, whole-file parsing, round trips."""

import pytest

from nashindex.probfile import (
    ParseError, ProblemSpec, parse_expr, parse_problem, print_problem,
)
from nashindex.ring import QQ, RingContext

UMBRELLA = """\
# comment line
ring: x, y, z
hypersurface: y^2 - x*z^2
function: y^2 - (x - z)^2   # trailing comment
sing: y, z
linear: x + 2*z
"""


@pytest.fixture
def ctx():
    return RingContext(("x", "y", "z"))


class TestExpr:
    def test_precedence(self, ctx):
        assert parse_expr("x + y*z^2", ctx) == \
            parse_expr("x + (y*(z^2))", ctx)
        assert parse_expr("-x^2", ctx) == parse_expr("-(x^2)", ctx)
        assert parse_expr("2*x - 3*x", ctx) == parse_expr("-x", ctx)

    def test_rational_constants(self, ctx):
        p = parse_expr("x/2 + x/2", ctx)
        assert p == parse_expr("x", ctx)
        assert parse_expr("7/2", ctx).constant_term() == QQ(7, 2)

    def test_power_binds_tighter_than_neg(self, ctx):
        p = parse_expr("-x^2 + x^2", ctx)
        assert p.is_zero()

    def test_division_by_polynomial_rejected(self, ctx):
        with pytest.raises(ParseError):
            parse_expr("x / y", ctx)
        with pytest.raises(ParseError):
            parse_expr("x / 0", ctx)

    def test_unknown_variable(self, ctx):
        with pytest.raises(ParseError):
            parse_expr("x + w", ctx)

    def test_error_location(self, ctx):
        try:
            parse_expr("x + * y", ctx, line=4, col0=10)
        except ParseError as e:
            assert e.line == 4
            assert e.col >= 10
        else:
            raise AssertionError("expected a ParseError")


class TestProblem:
    def test_umbrella_fields(self):
        spec = parse_problem(UMBRELLA)
        assert spec.x_names == ("x", "y", "z")
        assert spec.f is not None and spec.form is None
        assert len(spec.sing) == 2
        assert spec.bound is None

    def test_roundtrip_identical(self):
        spec = parse_problem(UMBRELLA)
        text = print_problem(spec)
        again = parse_problem(text)
        assert print_problem(again) == text
        assert again.h == spec.h
        assert again.f == spec.f
        assert again.sing == spec.sing
        assert again.linear == spec.linear

    def test_form_and_function_exclusive(self):
        base = "ring: x, y\nhypersurface: y\n"
        with pytest.raises(ParseError):
            parse_problem(base)
        with pytest.raises(ParseError):
            parse_problem(base + "function: x\nform: x, y\n")

    def test_missing_ring(self):
        with pytest.raises(ParseError):
            parse_problem("hypersurface: x\nfunction: x\n")

    def test_unknown_key(self):
        with pytest.raises(ParseError) as ei:
            parse_problem(UMBRELLA + "colour: red\n")
        assert "colour" in str(ei.value)

    def test_duplicate_key(self):
        with pytest.raises(ParseError):
            parse_problem(UMBRELLA + "ring: a, b\n")

    def test_bound_must_be_positive(self):
        with pytest.raises(ParseError):
            parse_problem(UMBRELLA + "bound: 0\n")
        spec = parse_problem(UMBRELLA + "bound: 4\n")
        assert spec.bound == 4

    def test_work_limit_parses(self):
        spec = parse_problem(UMBRELLA + "work-limit: 5000\n")
        assert spec.work_limit == 5000

    def test_to_problem(self):
        prob = parse_problem(UMBRELLA).to_problem()
        assert prob.n == 3
        assert prob.dim_x == 2
