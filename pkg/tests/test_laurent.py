"""Tests for Laurent polynomials in x1, x2."""

import pytest

from tightscatter.coeffring import p
from tightscatter.laurent import LaurentPolynomial, laurent_to_dict

X1 = LaurentPolynomial.monomial(1, 0)
X2 = LaurentPolynomial.monomial(0, 1)
ONE = LaurentPolynomial.one()


class TestArithmetic:
    def test_product_of_monomials(self):
        assert X1 * X2 == LaurentPolynomial.monomial(1, 1)

    def test_cancellation(self):
        assert (X1 - X1).is_zero()

    def test_scalar_product(self):
        z = (X1 + X2) * p(1, 1)
        assert z.coefficient(1, 0) == p(1, 1)

    def test_shift(self):
        assert X1.shift(-2, 3) == LaurentPolynomial.monomial(-1, 3)

    def test_univariate(self):
        z = LaurentPolynomial.univariate([1, p(2, 1)], 2)
        assert z == ONE + X2 * p(2, 1)


class TestExactDivide:
    def test_square_by_factor(self):
        f = X1 + X2
        assert (f * f).exact_divide(f) == f

    def test_divide_by_monomial(self):
        f = ONE + X2 * p(2, 1)
        assert f.exact_divide(X1) == f.shift(-1, 0)

    def test_symbolic_coefficients(self):
        f = ONE + X1 * p(1, 1)
        g = X2 * p(2, 1) + ONE
        assert (f * g).exact_divide(g) == f

    def test_division_by_zero_raises(self):
        with pytest.raises(ZeroDivisionError):
            X1.exact_divide(LaurentPolynomial())

    def test_inexact_coefficient_raises(self):
        with pytest.raises(RuntimeError, match="not exact"):
            (X1 + X2).exact_divide((X1 + X2) * 2)


class TestPointed:
    def test_pointed_at_minimum(self):
        z = LaurentPolynomial.monomial(-1, -1) + LaurentPolynomial.monomial(0, -1)
        assert z.pointed_at() == (-1, -1)

    def test_not_pointed(self):
        z = LaurentPolynomial.monomial(-1, 0) + LaurentPolynomial.monomial(0, -1)
        assert z.pointed_at() is None

    def test_to_dict(self):
        z = LaurentPolynomial.monomial(-1, 0) + LaurentPolynomial.monomial(-1, 1, p(2, 1))
        data = laurent_to_dict(z)
        assert data["pointed_at"] == ["-1", "0"]
        assert [t["exponent"] for t in data["terms"]] == [["-1", "0"], ["-1", "1"]]
