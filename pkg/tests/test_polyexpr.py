"""Tests for the initial-function expression parser."""

import pytest

from tightscatter.coeffring import p, param
from tightscatter.polyexpr import (
    PolyExprError,
    assignment_from_poly,
    format_poly,
    initial_data_from_exprs,
    parse_poly,
)


class TestParsePoly:
    def test_integer_coefficients(self):
        parsed = parse_poly("1 + 2*x")
        assert parsed.variable == "x"
        assert parsed.coeffs == (1, 2)

    def test_binomial_power(self):
        s = param(1)
        assert parse_poly("(1+s*x)^2").coeffs == (1, 2 * s, s * s)

    def test_symbolic_coefficients(self):
        parsed = parse_poly("1 + p[2,1]*y + p[2,2]*y^2", "y")
        assert parsed.coeffs == (1, p(2, 1), p(2, 2))
        assert parsed.degree == 2

    def test_constant_one(self):
        parsed = parse_poly("1", "x")
        assert parsed.coeffs == (1,)
        assert parsed.variable == "x"

    def test_constant_term_must_be_one(self):
        with pytest.raises(PolyExprError, match="Constant term must be 1"):
            parse_poly("2 + x")

    def test_mixed_variables_raise(self):
        with pytest.raises(PolyExprError, match="Mixed formal variables"):
            parse_poly("1 + x*y")

    def test_wrong_variable_raises(self):
        with pytest.raises(PolyExprError, match="Expected a polynomial in x"):
            parse_poly("1 + y", "x")

    def test_bad_coefficient_variable(self):
        with pytest.raises(PolyExprError, match=r"Bad coefficient variable p\[3,1\]"):
            parse_poly("1 + p[3,1]*x")

    def test_syntax_error_has_column(self):
        with pytest.raises(PolyExprError) as excinfo:
            parse_poly("1 + * x")
        assert excinfo.value.column is not None

    def test_is_a_value_error(self):
        with pytest.raises(ValueError):
            parse_poly("1 +")

    def test_invalid_variable_argument(self):
        with pytest.raises(ValueError, match="Invalid formal variable 'z'"):
            parse_poly("1", "z")


class TestFormatPoly:
    def test_format(self):
        assert format_poly((1, p(1, 1), 3), "x") == "1 + p[1,1]*x + 3*x^2"

    def test_skips_zero_terms(self):
        assert format_poly((1, 0, 1), "y") == "1 + y^2"

    def test_reads_back(self):
        coeffs = parse_poly("1 + 3*x + p[1,2]*x^2").coeffs
        assert parse_poly(format_poly(coeffs, "x")).coeffs == coeffs

    def test_negative_exponent_has_no_form(self):
        with pytest.raises(ValueError, match="no expression form"):
            format_poly((1, p(1, 1) ** -1))


class TestInitialData:
    def test_from_exprs(self):
        data = initial_data_from_exprs("1 + x^3", "1 + y^2")
        assert data.side_coeffs(1) == (1, 0, 0, 1)
        assert data.side_coeffs(2) == (1, 0, 1)

    def test_assignment(self):
        parsed = parse_poly("1 + 2*x")
        assignment = assignment_from_poly(parsed, 1)
        assert list(assignment.values()) == [2]
