"""This file contains exact scalars: rationals and elements of Q[theta]/(f) for a monic f of degree two or three.

Elements are immutable. A rational is stored as an element of the degree one field Q[theta]/(theta), so that
every scalar carries a coordinate vector and the field it lives in.
"""

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Union

from sympy import QQ, lex
from sympy.polys.rings import PolyRing

from diagforge.errors import FieldMismatchError

Rational = Union[int, Fraction]

_RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)\s*(?:/\s*(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parses an integer or a fraction written as "p/q"."""
    match = _RATIONAL_PATTERN.match(text)
    if match is None:
        raise ValueError(f"expected an integer or p/q, got {text!r}")
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_rational(value: Fraction) -> str:
    """Formats a rational as a decimal string or "p/q"."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def determinant(matrix: Sequence[Sequence]):
    """Determinant of a small square matrix over any commutative ring (cofactor expansion along the first row)."""
    size = len(matrix)
    if size == 0 or any(len(row) != size for row in matrix):
        raise ValueError(f"determinant needs a non-empty square matrix, got {size} rows")
    if size == 1:
        return matrix[0][0]
    if size == 2:
        return matrix[0][0] * matrix[1][1] - matrix[0][1] * matrix[1][0]
    if size == 3:
        (a, b, c), (d, e, f), (g, h, i) = matrix
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    total = 0
    for column, entry in enumerate(matrix[0]):
        if entry == 0:
            continue
        minor = [row[:column] + row[column + 1 :] for row in (list(r) for r in matrix[1:])]
        term = entry * determinant(minor)
        total = total + term if column % 2 == 0 else total - term
    return total


@dataclass(frozen=True)
class NumberField:
    """The field Q[theta]/(f) for a monic f of degree one to three."""

    # coefficients of f from the constant term upwards, the last one is 1
    minpoly: tuple
    # name used when printing elements
    generator: str = "theta"

    def __post_init__(self):
        """Normalizes the coefficients to Fractions and validates f."""
        coefficients = tuple(Fraction(c) for c in self.minpoly)
        object.__setattr__(self, "minpoly", coefficients)
        if not 2 <= len(coefficients) <= 4:
            raise ValueError(f"minimal polynomial must have degree 1 to 3, got {len(coefficients) - 1}")
        if coefficients[-1] != 1:
            raise ValueError(f"minimal polynomial must be monic, leading coefficient is {coefficients[-1]}")

    @property
    def degree(self) -> int:
        """Degree of the field over Q."""
        return len(self.minpoly) - 1

    @property
    def is_rational(self) -> bool:
        """Whether this is Q itself."""
        return self.degree == 1

    def element(self, coords: Sequence[Rational]) -> "FieldElem":
        """Builds the element sum(coords[i] * theta**i)."""
        return FieldElem.from_coords(coords, self)

    def gen(self) -> "FieldElem":
        """The class of theta."""
        if self.is_rational:
            raise ValueError("Q has no generator")
        return self.element([0, 1])

    def reduce(self, coefficients: Sequence[Fraction]) -> tuple:
        """Reduces a polynomial in theta modulo f, returning exactly `degree` coordinates."""
        work = [Fraction(c) for c in coefficients]
        d = self.degree
        for k in range(len(work) - 1, d - 1, -1):
            lead = work[k]
            if lead:
                for i in range(d):
                    work[k - d + i] -= lead * self.minpoly[i]
                work[k] = Fraction(0)
        work.extend([Fraction(0)] * (d - len(work)))
        return tuple(work[:d])

    def __str__(self) -> str:
        """Q or Q[theta]/(f)."""
        if self.is_rational:
            return "Q"
        terms = []
        for power in range(self.degree, -1, -1):
            coefficient = self.minpoly[power]
            if coefficient:
                terms.append(_monomial_str(coefficient, self.generator, power))
        return f"Q[{self.generator}]/({' + '.join(terms).replace('+ -', '- ')})"


RATIONALS = NumberField((0, 1), "q")


def _monomial_str(coefficient: Fraction, generator: str, power: int) -> str:
    if power == 0:
        return format_rational(coefficient)
    symbol = generator if power == 1 else f"{generator}^{power}"
    if coefficient == 1:
        return symbol
    if coefficient == -1:
        return f"-{symbol}"
    return f"{format_rational(coefficient)}*{symbol}"


@lru_cache(maxsize=None)
def _generator_ring() -> PolyRing:
    return PolyRing("theta", QQ, lex)


def _to_ring(coefficients: Sequence[Fraction]):
    ring = _generator_ring()
    return ring.from_dict({(i,): QQ(c.numerator, c.denominator) for i, c in enumerate(coefficients) if c})


class FieldElem:
    """An exact element of a NumberField, rationals being elements of RATIONALS."""

    __slots__ = ("coords", "field")

    def __init__(self, value: Union[Rational, str, "FieldElem"] = 0, field: NumberField = RATIONALS):
        """Embeds an integer, a Fraction or a "p/q" string into `field`."""
        if isinstance(value, FieldElem):
            if value.field == field:
                self.coords, self.field = value.coords, value.field
                return
            if not value.field.is_rational:
                raise FieldMismatchError(f"cannot move {value} from {value.field} to {field}")
            value = value.coords[0]
        if isinstance(value, str):
            value = parse_rational(value)
        if not isinstance(value, (int, Fraction)):
            raise TypeError(f"cannot build a field element from {value!r}")
        self.coords = (Fraction(value),) + (Fraction(0),) * (field.degree - 1)
        self.field = field

    @classmethod
    def from_coords(cls, coords: Sequence[Rational], field: NumberField) -> "FieldElem":
        """Builds an element from its coordinates on 1, theta, theta^2, reducing modulo f if needed."""
        element = cls.__new__(cls)
        element.coords = field.reduce([Fraction(c) for c in coords])
        element.field = field
        return element

    # --- coercion -----------------------------------------------------------------------------------------------

    def _coerce(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            if other.field == self.field:
                return other
            if other.field.is_rational:
                return FieldElem(other.coords[0], self.field)
            if self.field.is_rational:
                return other
            raise FieldMismatchError(f"elements of {self.field} and {other.field} cannot be combined")
        if isinstance(other, (int, Fraction)):
            return FieldElem(other, self.field)
        return NotImplemented

    def _common(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented, NotImplemented
        if other.field != self.field:
            # self is rational, other lives in an extension
            return FieldElem(self.coords[0], other.field), other
        return self, other

    # --- arithmetic ---------------------------------------------------------------------------------------------

    def __add__(self, other):
        """Exact sum."""
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElem.from_coords([x + y for x, y in zip(a.coords, b.coords)], a.field)

    __radd__ = __add__

    def __neg__(self):
        """Additive inverse."""
        return FieldElem.from_coords([-x for x in self.coords], self.field)

    def __sub__(self, other):
        """Exact difference."""
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return FieldElem.from_coords([x - y for x, y in zip(a.coords, b.coords)], a.field)

    def __rsub__(self, other):
        """Exact difference with the operands swapped."""
        return (-self).__add__(other)

    def __mul__(self, other):
        """Exact product, reduced modulo the minimal polynomial."""
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        if a.field.is_rational:
            return FieldElem.from_coords([a.coords[0] * b.coords[0]], a.field)
        product = [Fraction(0)] * (2 * a.field.degree - 1)
        for i, x in enumerate(a.coords):
            if x:
                for j, y in enumerate(b.coords):
                    product[i + j] += x * y
        return FieldElem.from_coords(product, a.field)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        """Multiplicative inverse, via the extended Euclidean algorithm modulo f."""
        if self.is_zero():
            raise ZeroDivisionError(f"{self} has no inverse")
        if self.field.is_rational:
            return FieldElem.from_coords([1 / self.coords[0]], self.field)
        s, _, h = _to_ring(self.coords).gcdex(_to_ring(self.field.minpoly))
        if h != 1:
            raise ZeroDivisionError(f"{self} is a zero divisor modulo the minimal polynomial of {self.field}")
        coords = [Fraction(0)] * self.field.degree
        for (power,), coefficient in s.items():
            coords[power] = Fraction(int(coefficient.numerator), int(coefficient.denominator))
        return FieldElem.from_coords(coords, self.field)

    def __truediv__(self, other):
        """Exact quotient; division by zero raises ZeroDivisionError."""
        a, b = self._common(other)
        if a is NotImplemented:
            return NotImplemented
        return a * b.inverse()

    def __rtruediv__(self, other):
        """Exact quotient with the operands swapped."""
        return self.inverse() * other

    def __pow__(self, exponent: int):
        """Integer power, negative exponents invert first."""
        if not isinstance(exponent, int):
            return NotImplemented
        base = self if exponent >= 0 else self.inverse()
        result = FieldElem(1, self.field)
        exponent = abs(exponent)
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    # --- predicates and conversions -----------------------------------------------------------------------------

    def is_zero(self) -> bool:
        """Whether every coordinate vanishes."""
        return not any(self.coords)

    def __bool__(self) -> bool:
        """Nonzero elements are truthy."""
        return not self.is_zero()

    def is_rational(self) -> bool:
        """Whether the element lies in Q."""
        return not any(self.coords[1:])

    def to_fraction(self) -> Fraction:
        """The element as a Fraction; raises ValueError outside Q."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.coords[0]

    def multiplication_matrix(self) -> list:
        """Matrix of multiplication by this element on the basis 1, theta, theta^2."""
        columns = []
        power = FieldElem(1, self.field)
        generator = None if self.field.is_rational else self.field.gen()
        for _ in range(self.field.degree):
            columns.append((self * power).coords)
            if generator is not None:
                power = power * generator
        return [[columns[j][i] for j in range(len(columns))] for i in range(len(columns))]

    def norm(self) -> Fraction:
        """Field norm down to Q."""
        return Fraction(determinant(self.multiplication_matrix()))

    def trace(self) -> Fraction:
        """Field trace down to Q."""
        matrix = self.multiplication_matrix()
        return sum((matrix[i][i] for i in range(len(matrix))), Fraction(0))

    def sqrt(self):
        """Exact rational square root (the nonnegative one) or None if there is none in Q."""
        value = self.to_fraction()
        if value < 0:
            return None
        numerator, denominator = math.isqrt(value.numerator), math.isqrt(value.denominator)
        if numerator * numerator != value.numerator or denominator * denominator != value.denominator:
            return None
        return FieldElem(Fraction(numerator, denominator), self.field)

    def __eq__(self, other) -> bool:
        """Equality after embedding rationals."""
        try:
            a, b = self._common(other)
        except FieldMismatchError:
            return False
        if a is NotImplemented:
            return NotImplemented
        return a.coords == b.coords

    def __hash__(self) -> int:
        """Rational elements hash like the equal Fraction."""
        if self.is_rational():
            return hash(self.coords[0])
        return hash((self.coords, self.field.minpoly))

    def __repr__(self) -> str:
        """Debug representation."""
        if self.field.is_rational:
            return f"FieldElem({format_rational(self.coords[0])!r})"
        return f"FieldElem.from_coords({[format_rational(c) for c in self.coords]}, {self.field})"

    def __str__(self) -> str:
        """Human readable form, e.g. 1/2 or 1 + theta^2."""
        if self.is_rational():
            return format_rational(self.coords[0])
        terms = [
            _monomial_str(c, self.field.generator, power) for power, c in reversed(list(enumerate(self.coords))) if c
        ]
        return " + ".join(terms).replace("+ -", "- ")


def field_arith(a: FieldElem, b: FieldElem, op: str) -> FieldElem:
    """Applies one of add, sub, mul, div to two elements of the same field."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown field operation {op!r}: expected add, sub, mul or div")
