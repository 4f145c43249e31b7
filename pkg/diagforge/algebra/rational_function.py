"""This file contains rational functions over Q as canonical numerator/denominator pairs of MPoly."""

from fractions import Fraction
from typing import Any, Dict, Mapping, Sequence, Union

from sympy import QQ

from diagforge.algebra.field import FieldElem
from diagforge.algebra.mpoly import MPoly, merge_variables, polynomial_ring

Substitutable = Union["RationalFunction", MPoly, int, Fraction, FieldElem]


def _canonical_pair(numerator: MPoly, denominator: MPoly):
    numerator, denominator = MPoly.unify(numerator, denominator)
    if denominator.is_zero():
        raise ZeroDivisionError(f"rational function {numerator} / 0")
    ring = numerator.poly.ring
    if numerator.is_zero():
        return MPoly(ring.zero), MPoly(ring.one)
    if numerator.is_constant() and denominator.is_constant():
        value = numerator.constant_value() / denominator.constant_value()
        return MPoly.constant(value, numerator.variables), MPoly(ring.one)
    p, q = numerator.poly.cancel(denominator.poly)
    lead = q.LC
    if lead != QQ.one:
        scale = QQ.one / lead
        p, q = p.mul_ground(scale), q.mul_ground(scale)
    return MPoly(p), MPoly(q)


class RationalFunction:
    """An immutable quotient of polynomials, gcd-free with denominator leading coefficient 1 (grlex)."""

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Union[MPoly, int, Fraction, FieldElem], denominator=None):
        """Builds numerator/denominator in canonical form; a zero denominator raises ZeroDivisionError."""
        if not isinstance(numerator, MPoly):
            numerator = MPoly.constant(numerator)
        if denominator is None:
            denominator = MPoly.constant(1, numerator.variables)
        elif not isinstance(denominator, MPoly):
            denominator = MPoly.constant(denominator, numerator.variables)
        self.numerator, self.denominator = _canonical_pair(numerator, denominator)

    @classmethod
    def variable(cls, name: str, variables: Sequence[str] = ()) -> "RationalFunction":
        """The rational function `name`."""
        return cls(MPoly.variable(name, merge_variables([name], variables)))

    @classmethod
    def variables_of(cls, *names: str) -> tuple:
        """Generators of Q(names), in order."""
        return tuple(cls(MPoly.variable(name, names)) for name in names)

    @classmethod
    def constant(cls, value, variables: Sequence[str] = ()) -> "RationalFunction":
        """A constant rational function."""
        return cls(MPoly.constant(value, variables))

    # --- structure ----------------------------------------------------------------------------------------------

    @property
    def variables(self):
        """Declared variable names."""
        return self.numerator.variables

    @property
    def used_variables(self):
        """Variables occurring in numerator or denominator."""
        return merge_variables(self.numerator.used_variables, self.denominator.used_variables)

    def is_zero(self) -> bool:
        """Whether this is the zero function."""
        return self.numerator.is_zero()

    def __bool__(self) -> bool:
        """Nonzero functions are truthy."""
        return not self.is_zero()

    def is_polynomial(self) -> bool:
        """Whether the denominator is constant."""
        return self.denominator.is_constant()

    def is_constant(self) -> bool:
        """Whether no variable occurs."""
        return self.numerator.is_constant() and self.denominator.is_constant()

    def constant_value(self) -> Fraction:
        """The value of a constant function."""
        return self.numerator.constant_value() / self.denominator.constant_value()

    def as_polynomial(self) -> MPoly:
        """The function as a polynomial; raises ValueError when the denominator is not constant."""
        if not self.is_polynomial():
            raise ValueError(f"{self} is not a polynomial")
        return self.numerator.scale(1 / self.denominator.constant_value())

    # --- arithmetic ---------------------------------------------------------------------------------------------

    @staticmethod
    def _coerce(other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, MPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Fraction)) or (isinstance(other, FieldElem) and other.is_rational()):
            return RationalFunction(MPoly.constant(other))
        return None

    def __add__(self, other):
        """Sum."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if self.denominator == other.denominator:
            return RationalFunction(self.numerator + other.numerator, self.denominator)
        return RationalFunction(
            self.numerator * other.denominator + other.numerator * self.denominator,
            self.denominator * other.denominator,
        )

    __radd__ = __add__

    def __neg__(self):
        """Negation, already canonical."""
        result = RationalFunction.__new__(RationalFunction)
        result.numerator, result.denominator = -self.numerator, self.denominator
        return result

    def __sub__(self, other):
        """Difference."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        """Difference with the operands swapped."""
        return (-self).__add__(other)

    def __mul__(self, other):
        """Product."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return RationalFunction(self.numerator * other.numerator, self.denominator * other.denominator)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        """Reciprocal; the zero function raises ZeroDivisionError."""
        if self.is_zero():
            raise ZeroDivisionError("the zero rational function has no inverse")
        return RationalFunction(self.denominator, self.numerator)

    def __truediv__(self, other):
        """Quotient."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        """Quotient with the operands swapped."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, exponent: int):
        """Integer power."""
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.inverse() ** (-exponent)
        return RationalFunction(self.numerator**exponent, self.denominator**exponent)

    def __eq__(self, other) -> bool:
        """Equality by cross multiplication."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.numerator * other.denominator == other.numerator * self.denominator

    def __hash__(self) -> int:
        """Hash of the canonical form over the sorted used variables."""
        variables = tuple(sorted(self.used_variables))
        canonical = RationalFunction(self.numerator.lift(variables), self.denominator.lift(variables))
        return hash((canonical.numerator, canonical.denominator))

    # --- evaluation and substitution ----------------------------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, Any]) -> Any:
        """Value at an assignment; a vanishing denominator raises ZeroDivisionError."""
        denominator = self.denominator.evaluate(assignment)
        if denominator == 0:
            raise ZeroDivisionError(f"denominator of {self} vanishes at {dict(assignment)}")
        return self.numerator.evaluate(assignment) / denominator

    def substitute(self, mapping: Mapping[str, Substitutable]) -> "RationalFunction":
        """Replaces variables by rational functions."""
        return poly_substitute(self.numerator, mapping) / poly_substitute(self.denominator, mapping)

    def __str__(self) -> str:
        """Infix rendering."""
        if self.is_polynomial() and self.denominator.constant_value() == 1:
            return str(self.numerator)
        return f"({self.numerator})/({self.denominator})"

    def __repr__(self) -> str:
        """Debug representation."""
        return f"RationalFunction({self})"


def poly_substitute(p: MPoly, mapping: Mapping[str, Substitutable]) -> RationalFunction:
    """Substitutes rational functions for variables of `p`, clearing all denominators at once."""
    unknown = [name for name in mapping if name not in p.variables]
    if unknown:
        raise ValueError(f"variables {unknown} do not belong to {p}")
    images: Dict[str, RationalFunction] = {}
    for name, image in mapping.items():
        image = RationalFunction._coerce(image)
        if image is None:
            raise TypeError(f"cannot substitute {mapping[name]!r} for {name}")
        if name in p.used_variables:
            images[name] = image
    kept = [name for name in p.variables if name not in images]
    variables = merge_variables(kept, *(image.variables for image in images.values()))
    ring = polynomial_ring(variables)
    names = p.variables
    degrees = {name: p.degree(name) for name in images}
    numerator_powers, denominator_powers = {}, {}
    for name, image in images.items():
        numerator = image.numerator.lift(variables).poly
        denominator = image.denominator.lift(variables).poly
        numerator_powers[name] = [ring.one]
        denominator_powers[name] = [ring.one]
        for _ in range(degrees[name]):
            numerator_powers[name].append(numerator_powers[name][-1] * numerator)
            denominator_powers[name].append(denominator_powers[name][-1] * denominator)
    kept_positions = [(names.index(name), variables.index(name)) for name in kept]
    result = ring.zero
    for monomial, coefficient in p.poly.items():
        exponents = [0] * len(variables)
        for source, target in kept_positions:
            exponents[target] = monomial[source]
        term = ring.from_dict({tuple(exponents): coefficient})
        for name in images:
            exponent = monomial[names.index(name)]
            term = term * numerator_powers[name][exponent] * denominator_powers[name][degrees[name] - exponent]
        result += term
    common = ring.one
    for name in images:
        common = common * denominator_powers[name][degrees[name]]
    return RationalFunction(MPoly(result), MPoly(common))
