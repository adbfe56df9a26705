from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import polys
from polydom.matpoly import MatrixPoly
from polydom.parser import ParseError, ParseInput, parse_any, parse_matrix_poly, parse_poly
from polydom.poly import GaussianRational, ScalarPoly


def var(d, j):
    return ScalarPoly.variable(d, j)


class TestExamples:
    def test_counterexample_matrix(self):
        P = parse_matrix_poly("[x1^2+x2^2, x1; x2, 0]")
        x1, x2 = var(2, 1), var(2, 2)
        assert P == MatrixPoly([[x1 ** 2 + x2 ** 2, x1], [x2, ScalarPoly.zero(2)]])
        assert P.shape == (2, 2) and P.dim == 2

    def test_divergence_row(self):
        P = parse_matrix_poly("[x1, x2]")
        assert P == MatrixPoly([[var(2, 1), var(2, 2)]])

    def test_dangling_comma(self):
        with pytest.raises(ParseError) as info:
            parse_matrix_poly("[x1,; x2]")
        err = info.value
        assert (err.line, err.column) == (1, 5)
        assert "line 1, column 5" in str(err)

    def test_error_position_on_later_line(self):
        with pytest.raises(ParseError) as info:
            parse_matrix_poly("[x1, x2;\n  x1 ** 2, 0]")
        assert (info.value.line, info.value.column) == (2, 7)


class TestGrammar:
    def test_rationals_and_imaginary_unit(self):
        p = parse_poly("3/2 + i*x1")
        expected = ScalarPoly.constant(1, Fraction(3, 2)) + var(1, 1) * ScalarPoly.constant(1, GaussianRational(0, 1))
        assert p == expected

    def test_power_binds_tighter_than_minus(self):
        assert parse_poly("-x1^2") == -(var(1, 1) ** 2)
        assert parse_poly("(-x1)^2") == var(1, 1) ** 2

    def test_parentheses_and_products(self):
        x1, x2 = var(2, 1), var(2, 2)
        assert parse_poly("(x1 + 1)*(x2 - 1)") == (x1 + ScalarPoly.one(2)) * (x2 - ScalarPoly.one(2))
        assert parse_poly("i^2") == ScalarPoly.constant(1, -1)

    def test_no_implicit_multiplication(self):
        with pytest.raises(ParseError):
            parse_poly("2x1")
        with pytest.raises(ParseError):
            parse_poly("x1 x2")

    def test_dimension_inference_and_override(self):
        assert parse_matrix_poly("[1]").dim == 1
        assert parse_matrix_poly("[x3]").dim == 3
        assert parse_matrix_poly("[x1]", 4).dim == 4
        assert parse_matrix_poly(ParseInput("[x1, 0; 0, 1]", 2)).dim == 2

    def test_bare_poly_as_matrix(self):
        assert parse_any("x1 + x2") == MatrixPoly([[var(2, 1) + var(2, 2)]])
        assert parse_any("[x1; x2]").shape == (2, 1)


class TestErrors:
    def test_ragged_rows(self):
        with pytest.raises(ParseError) as info:
            parse_matrix_poly("[x1, x2; x1]")
        assert "ragged" in info.value.message

    def test_variable_beyond_declared_dim(self):
        with pytest.raises(ParseError) as info:
            parse_matrix_poly("[x1, x3]", 2)
        assert info.value.column == 6

    @pytest.mark.parametrize("text", ["[x1", "[x1]]", "[]", "[x0]", "[x1^-1]", "[1/0]", "[x1 + ]", "[$]"])
    def test_rejected(self, text):
        with pytest.raises(ParseError):
            parse_matrix_poly(text)

    def test_is_value_error(self):
        with pytest.raises(ValueError):
            parse_poly("+")


@settings(max_examples=80, deadline=None)
@given(polys(max_deg=4))
def test_print_then_parse_is_identity(p):
    assert parse_poly(str(p), p.dim) == p


@st.composite
def matrices(draw):
    d = draw(st.integers(1, 3))
    rows, cols = draw(st.integers(1, 3)), draw(st.integers(1, 3))
    return MatrixPoly([[draw(polys(d=d, max_deg=3)) for _ in range(cols)] for _ in range(rows)])


@settings(max_examples=40, deadline=None)
@given(matrices())
def test_matrix_print_then_parse_is_identity(P):
    assert parse_matrix_poly(str(P), P.dim) == P
