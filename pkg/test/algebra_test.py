"""This file contains tests of exact scalars, polynomials and rational functions."""

from fractions import Fraction

import numpy as np
import pytest

from diagforge.algebra import (
    FieldElem,
    MPoly,
    NumberField,
    RationalFunction,
    field_arith,
    format_rational,
    norm_form,
    parse_rational,
)
from diagforge.algebra.field import determinant
from diagforge.config import DEFAULT_SEED
from diagforge.errors import FieldMismatchError

GOLDEN = NumberField((-1, -1, 1), "e")
CUBE_ROOT_2 = NumberField((-2, 0, 0, 1), "theta")


@pytest.mark.parametrize(
    "text, value",
    [("3/6", Fraction(1, 2)), ("-7", Fraction(-7)), (" +4 / 8 ", Fraction(1, 2)), ("0", Fraction(0))],
)
def test_parse_rational(text, value):
    """Integers and p/q strings parse to reduced fractions."""
    assert parse_rational(text) == value


@pytest.mark.parametrize("text", ["1/0", "1.5", "", "a/2", "2/-3"])
def test_parse_rational_rejects_malformed_input(text):
    """Anything but an integer or p/q with positive q is an error."""
    with pytest.raises(ValueError):
        parse_rational(text)


def test_format_rational():
    """Integral values print without a denominator."""
    assert format_rational(Fraction(6, 3)) == "2"
    assert format_rational(Fraction(-3, 4)) == "-3/4"


def test_rational_arithmetic():
    """Rationals are elements of the degree one field."""
    half = FieldElem("1/2")
    assert half + 1 == Fraction(3, 2)
    assert half * 4 == 2
    assert 1 / half == 2
    assert (half**-2) == 4
    assert field_arith(half, FieldElem(3), "sub") == Fraction(-5, 2)
    with pytest.raises(ValueError):
        field_arith(half, half, "pow")


def test_division_by_zero():
    """Zero has no inverse."""
    with pytest.raises(ZeroDivisionError):
        FieldElem(0).inverse()
    with pytest.raises(ZeroDivisionError):
        FieldElem(1) / FieldElem(0)


def test_golden_ratio_field():
    """In Q(e) with e^2 = e + 1 the inverse of e is e - 1, its norm is -1 and its trace 1."""
    e = GOLDEN.gen()
    assert e * e == e + 1
    assert e.inverse() == e - 1
    assert e.norm() == -1
    assert e.trace() == 1
    assert not e.is_rational()


def test_cube_root_of_two():
    """theta^3 = 2; norms agree with a^3 + 2b^3 + 4c^3 - 6abc."""
    theta = CUBE_ROOT_2.gen()
    assert theta**3 == 2
    assert theta.inverse() == theta * theta / 2
    assert theta.norm() == 2
    assert (1 + theta).norm() == 3
    assert CUBE_ROOT_2.element([1, 1, 1]).norm() == 1 + 2 + 4 - 6


def test_fields_do_not_mix():
    """Elements of different extensions cannot be combined, rationals embed anywhere."""
    with pytest.raises(FieldMismatchError):
        GOLDEN.gen() + CUBE_ROOT_2.gen()
    assert GOLDEN.gen() + FieldElem(1) == GOLDEN.element([1, 1])
    assert GOLDEN.gen() != CUBE_ROOT_2.gen()


def test_non_monic_minimal_polynomial():
    """Only monic minimal polynomials of degree one to three define fields."""
    with pytest.raises(ValueError):
        NumberField((1, 0, 2))
    with pytest.raises(ValueError):
        NumberField((1, 0, 0, 0, 1))


def test_square_roots():
    """sqrt is exact on rational squares and None otherwise."""
    assert FieldElem("9/4").sqrt() == Fraction(3, 2)
    assert FieldElem(2).sqrt() is None
    assert FieldElem(-4).sqrt() is None


def test_field_axioms_on_random_elements():
    """Associativity, distributivity and inverses in Q(cbrt 2) on 200 random triples."""
    rng = np.random.default_rng(DEFAULT_SEED)

    def element():
        return CUBE_ROOT_2.element([Fraction(int(rng.integers(-9, 10)), int(rng.integers(1, 6))) for _ in range(3)])

    for _ in range(200):
        a, b, c = element(), element(), element()
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == 0
        if not a.is_zero():
            assert a * a.inverse() == 1


def test_polynomial_ring_operations():
    """Arithmetic in Q[x, y] and lifting across variable lists."""
    x, y = MPoly.variables_of("x", "y")
    assert (x + y) ** 2 == x**2 + 2 * x * y + y**2
    z = MPoly.variable("z")
    assert (x + z).variables == ("x", "y", "z")
    assert (x * y).total_degree() == 2
    assert (x**3 * y).degree("x") == 3
    assert MPoly.zero().total_degree() == -1


def test_exact_division():
    """divide_exact returns the quotient or None."""
    x, y = MPoly.variables_of("x", "y")
    assert (x**2 - y**2).divide_exact(x - y) == x + y
    assert (x**2 + 1).divide_exact(x - y) is None
    with pytest.raises(ZeroDivisionError):
        x.divmod(MPoly.zero(("x",)))


def test_reduction_modulo_minimal_polynomial():
    """Powers of an adjoined generator reduce below the degree of its minimal polynomial."""
    e = MPoly.variable("e")
    minpoly = e**2 - e - 1
    assert (e**2).reduce_modulo(minpoly, "e") == e + 1
    assert (e**3).reduce_modulo(minpoly, "e") == 2 * e + 1
    with pytest.raises(ValueError):
        e.reduce_modulo(2 * e**2 - 1, "e")


def test_derivative_and_coefficients():
    """Partial derivatives and coefficient lists in one variable."""
    x, y = MPoly.variables_of("x", "y")
    p = x**3 * y + 2 * x + y
    assert p.diff("x") == 3 * x**2 * y + 2
    assert p.coefficients_in("x") == [y, MPoly.constant(2, ("x", "y")), MPoly.zero(("x", "y")), y]


def test_evaluation_and_substitution():
    """Partial evaluation, full evaluation and composition."""
    x, y = MPoly.variables_of("x", "y")
    p = x**2 * y + y
    assert p.partial_evaluate({"x": 2}) == 5 * y
    assert p.evaluate({"x": FieldElem(2), "y": FieldElem("1/5")}) == 1
    assert (x**2).substitute({"x": y + 1}) == y**2 + 2 * y + 1
    with pytest.raises(ValueError):
        p.evaluate({"x": 1})


def test_prefix_rendering():
    """Polynomials print in the fixture expression syntax."""
    x, y = MPoly.variables_of("x", "y")
    assert (x**2 - 2 * x * y).to_expression() == "(+ (^ x 2) (* -2 x y))"
    assert MPoly.zero().to_expression() == "0"


def test_rational_function_canonical_form():
    """Common factors cancel and the denominator is normalized."""
    x, y = MPoly.variables_of("x", "y")
    f = RationalFunction(x, x * y)
    assert f.numerator == 1
    assert f.denominator == y
    assert RationalFunction(2 * x, 4 * y) == RationalFunction(x, 2 * y)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(x, MPoly.zero(("x",)))


def test_rational_function_arithmetic():
    """Sums, quotients and substitution of rational functions."""
    x, y = RationalFunction.variables_of("x", "y")
    assert 1 / x + 1 / y == (x + y) / (x * y)
    f = x / (x + 1)
    assert f.substitute({"x": y.inverse()}) == 1 / (y + 1)
    assert f.evaluate({"x": FieldElem(1)}) == Fraction(1, 2)
    with pytest.raises(ZeroDivisionError):
        f.evaluate({"x": FieldElem(-1)})


def test_norm_form_over_cube_root_of_two():
    """The norm of a + b theta + c theta^2 with theta^3 = 2."""
    a, b, c = MPoly.variables_of("a", "b", "c")
    expected = a**3 + 2 * b**3 + 4 * c**3 - 6 * a * b * c
    assert norm_form(a, b, c, (-2, 0, 0, 1)) == expected
    assert norm_form(a, b, c, CUBE_ROOT_2) == expected
    with pytest.raises(ValueError):
        norm_form(a, b, c, (-1, -1, 1))


def test_determinant():
    """Cofactor expansion over integers and polynomials."""
    assert determinant([[1, 2], [3, 4]]) == -2
    assert determinant([[2, 0, 0, 0], [0, 3, 0, 0], [0, 0, 1, 5], [0, 0, 0, 7]]) == 42
    x = MPoly.variable("x")
    assert determinant([[x, 1], [1, x]]) == x**2 - 1
    with pytest.raises(ValueError):
        determinant([[1, 2]])
