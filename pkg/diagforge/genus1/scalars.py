"""This file contains helpers shared by the curve models: scalar coercion, projective points and coefficient lists.

Curve code is written against a small scalar protocol (+, -, *, / and comparison with 0) so that the same formulas
run on FieldElem values and on RationalFunction values when a parameter is kept symbolic.
"""

import math
from fractions import Fraction
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from sympy import QQ, Dummy, Poly, Rational, Symbol
from sympy.polys.domains import Domain

from diagforge.algebra.field import FieldElem
from diagforge.algebra.mpoly import MPoly, merge_variables
from diagforge.algebra.rational_function import RationalFunction

Scalar = Any


def as_scalar(value: Any) -> Scalar:
    """Lifts ints, Fractions and "p/q" strings to FieldElem; other scalars pass unchanged."""
    if isinstance(value, (int, Fraction, str)):
        return FieldElem(value)
    return value


def is_rational(value: Any) -> bool:
    """Whether a scalar is a rational number (an int, a Fraction or a rational FieldElem)."""
    if isinstance(value, FieldElem):
        return value.is_rational()
    return isinstance(value, (int, Fraction))


def to_fraction(value: Any) -> Fraction:
    """A rational scalar as a Fraction."""
    if isinstance(value, FieldElem):
        return value.to_fraction()
    return Fraction(value)


def dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    """Sum of coordinate products."""
    total: Scalar = 0
    for x, y in zip(u, v):
        total = total + x * y
    return total


def cross(u: Sequence[Scalar], v: Sequence[Scalar]) -> Tuple[Scalar, Scalar, Scalar]:
    """Cross product of two three-vectors."""
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def is_zero_vector(point: Sequence[Scalar]) -> bool:
    """Whether every coordinate vanishes."""
    return all(x == 0 for x in point)


def projectively_equal(p: Sequence[Scalar], q: Sequence[Scalar]) -> bool:
    """Whether two nonzero vectors are proportional."""
    if len(p) != len(q):
        return False
    for i in range(len(p)):
        for j in range(i + 1, len(p)):
            if p[i] * q[j] != p[j] * q[i]:
                return False
    return not is_zero_vector(p) and not is_zero_vector(q)


def normalize_projective(point: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """Scales a rational projective point to coprime integers with first nonzero coordinate positive.

    Points with non-rational coordinates are returned unchanged.
    """
    if is_zero_vector(point):
        raise ValueError("the zero vector is not a projective point")
    if not all(is_rational(x) for x in point):
        return tuple(point)
    values = [to_fraction(x) for x in point]
    common = math.lcm(*(value.denominator for value in values))
    integers = [int(value * common) for value in values]
    divisor = math.gcd(*integers)
    sign = -1 if next(n for n in integers if n) < 0 else 1
    return tuple(FieldElem(sign * n // divisor) for n in integers)


def quadratic_value(matrix: Sequence[Sequence[Scalar]], point: Sequence[Scalar]) -> Scalar:
    """The quadratic form x^T M x."""
    total: Scalar = 0
    for i, x in enumerate(point):
        if x == 0:
            continue
        for j, y in enumerate(point):
            entry = matrix[i][j]
            if y != 0 and entry != 0:
                total = total + entry * x * y
    return total


def matrix_vector(matrix: Sequence[Sequence[Scalar]], point: Sequence[Scalar]) -> Tuple[Scalar, ...]:
    """The product M x."""
    return tuple(dot(row, point) for row in matrix)


# --- univariate polynomials, given as coefficient lists with the constant term first -------------------------------

_GENERATOR = Dummy("x")


def scalar_domain(values: Iterable[Scalar]) -> Domain:
    """The sympy domain holding all values: QQ, or QQ(parameters) when some of them are rational functions."""
    names = merge_variables(*(v.used_variables for v in values if isinstance(v, (RationalFunction, MPoly))))
    return QQ.frac_field(*(Symbol(name) for name in names)) if names else QQ


def to_domain(value: Scalar, domain: Domain) -> Any:
    """A scalar as an element of a domain built by `scalar_domain`."""
    if isinstance(value, MPoly):
        return domain.from_sympy(value.poly.as_expr())
    if isinstance(value, RationalFunction):
        return domain.from_sympy(value.numerator.poly.as_expr() / value.denominator.poly.as_expr())
    fraction = to_fraction(value)
    return domain.from_sympy(Rational(fraction.numerator, fraction.denominator))


def _from_ring(element, names: Tuple[str, ...]) -> MPoly:
    terms = {monomial: Fraction(int(c.numerator), int(c.denominator)) for monomial, c in element.items()}
    return MPoly.from_terms(names, terms)


def from_domain(element: Any, domain: Domain) -> Scalar:
    """The scalar of a domain element: a FieldElem over QQ, a RationalFunction over QQ(parameters)."""
    if domain.is_QQ:
        return FieldElem(Fraction(int(element.numerator), int(element.denominator)))
    names = tuple(str(symbol) for symbol in domain.symbols)
    numerator, denominator = _from_ring(element.numer, names), _from_ring(element.denom, names)
    if numerator.is_constant() and denominator.is_constant():
        return FieldElem(numerator.constant_value() / denominator.constant_value())
    return RationalFunction(numerator, denominator)


def univariate(coefficients: Sequence[Scalar], domain: Optional[Domain] = None) -> Poly:
    """The polynomial with the given coefficients as a sympy Poly."""
    domain = domain if domain is not None else scalar_domain(coefficients)
    dense = [to_domain(c, domain) for c in reversed(coefficients)] or [domain.zero]
    return Poly.from_list(dense, _GENERATOR, domain=domain)


def coefficient_list(polynomial: Poly) -> List[Scalar]:
    """Coefficients of a Poly built by `univariate`, constant term first, without vanishing leading terms."""
    domain = polynomial.get_domain()
    return [from_domain(c, domain) for c in reversed(polynomial.rep.to_list())]


def poly_value(coefficients: Sequence[Scalar], t: Scalar) -> Scalar:
    """The polynomial at t."""
    domain = scalar_domain([*coefficients, t])
    value = univariate(coefficients, domain).eval(to_domain(t, domain))
    return from_domain(domain.from_sympy(value), domain)


def taylor_shift(coefficients: Sequence[Scalar], shift: Scalar) -> List[Scalar]:
    """Coefficients of p(u + shift) in u."""
    domain = scalar_domain([*coefficients, shift])
    return coefficient_list(univariate(coefficients, domain).shift(to_domain(shift, domain)))


def rational_roots(coefficients: Sequence[Scalar]) -> List[Fraction]:
    """Distinct rational roots of a polynomial with rational coefficients, in increasing order."""
    polynomial = univariate(coefficients, QQ)
    if polynomial.degree() < 1:
        return []
    return sorted(Fraction(int(root.p), int(root.q)) for root in polynomial.ground_roots())


def first_nonzero(point: Sequence[Scalar]) -> Optional[int]:
    """Index of the first nonzero coordinate."""
    for index, x in enumerate(point):
        if x != 0:
            return index
    return None


def scalar_from_polynomial(p: MPoly) -> Scalar:
    """A constant polynomial as a FieldElem, anything else as a RationalFunction."""
    if p.is_constant():
        return FieldElem(p.constant_value())
    return RationalFunction(p)
