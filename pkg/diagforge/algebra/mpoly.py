"""This file contains sparse multivariate polynomials over Q with named variables.

The term map lives in a sympy PolyElement over QQ with graded lexicographic order. Rings are cached per ordered
variable list; binary operations on polynomials with different variable lists first lift both operands into the
ring over the ordered union of the lists.
"""

from fractions import Fraction
from functools import lru_cache
from typing import Any, Dict, Iterable, Mapping, Optional, Sequence, Tuple, Union

from sympy import QQ, Symbol, grlex
from sympy.polys.rings import PolyElement, PolyRing

from diagforge.algebra.field import FieldElem, format_rational

Scalar = Union[int, Fraction, FieldElem]
Monomial = Tuple[int, ...]


_RING_NAMES: Dict[PolyRing, Tuple[str, ...]] = {}


@lru_cache(maxsize=None)
def polynomial_ring(variables: Tuple[str, ...]) -> PolyRing:
    """The cached ring Q[variables] with grlex order."""
    if len(set(variables)) != len(variables):
        raise ValueError(f"duplicate variable names in {variables}")
    if variables:
        ring = PolyRing(tuple(Symbol(name) for name in variables), QQ, grlex)
    else:
        ring = PolyRing("", QQ, grlex)
    _RING_NAMES[ring] = variables
    return ring


def merge_variables(*lists: Iterable[str]) -> Tuple[str, ...]:
    """Ordered union of variable lists, first occurrence wins."""
    merged = []
    for names in lists:
        for name in names:
            if name not in merged:
                merged.append(name)
    return tuple(merged)


def to_fraction(value: Scalar) -> Fraction:
    """Converts an int, Fraction or rational FieldElem into a Fraction."""
    if isinstance(value, FieldElem):
        return value.to_fraction()
    if isinstance(value, (int, Fraction)):
        return Fraction(value)
    raise TypeError(f"expected a rational scalar, got {value!r}")


def _from_qq(coefficient) -> Fraction:
    return Fraction(int(coefficient.numerator), int(coefficient.denominator))


def _to_qq(value: Scalar):
    value = to_fraction(value)
    return QQ(value.numerator, value.denominator)


class MPoly:
    """An immutable polynomial over Q in an ordered list of named variables.

    Coefficients are rational only. A polynomial over a number field Q(theta) is written with theta as one more
    variable and brought to normal form with `reduce_modulo` by the minimal polynomial of theta.
    """

    __slots__ = ("_poly",)

    def __init__(self, poly: PolyElement):
        """Wraps a PolyElement of a ring built by `polynomial_ring`."""
        self._poly = poly

    # --- constructors -------------------------------------------------------------------------------------------

    @classmethod
    def constant(cls, value: Scalar, variables: Sequence[str] = ()) -> "MPoly":
        """The constant polynomial `value`."""
        ring = polynomial_ring(tuple(variables))
        return cls(ring.ground_new(_to_qq(value)))

    @classmethod
    def zero(cls, variables: Sequence[str] = ()) -> "MPoly":
        """The zero polynomial."""
        return cls.constant(0, variables)

    @classmethod
    def variable(cls, name: str, variables: Optional[Sequence[str]] = None) -> "MPoly":
        """The polynomial `name`, in the ring over `variables` (default: just `name`)."""
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise ValueError(f"variable {name} is not in {variables}")
        ring = polynomial_ring(variables)
        return cls(ring.gens[variables.index(name)])

    @classmethod
    def variables_of(cls, *names: str) -> Tuple["MPoly", ...]:
        """Generators of Q[names], in order."""
        return tuple(cls.variable(name, names) for name in names)

    @classmethod
    def from_terms(cls, variables: Sequence[str], terms: Mapping[Monomial, Scalar]) -> "MPoly":
        """Builds a polynomial from a map exponent vector -> coefficient, dropping zero coefficients."""
        variables = tuple(variables)
        ring = polynomial_ring(variables)
        data = {}
        for monomial, coefficient in terms.items():
            if len(monomial) != len(variables):
                raise ValueError(f"exponent vector {monomial} does not match variables {variables}")
            if coefficient:
                data[tuple(monomial)] = _to_qq(coefficient)
        return cls(ring.from_dict(data) if data else ring.zero)

    # --- structure ----------------------------------------------------------------------------------------------

    @property
    def variables(self) -> Tuple[str, ...]:
        """Declared variable names, in ring order."""
        ring = self._poly.ring
        names = _RING_NAMES.get(ring)
        return names if names is not None else tuple(str(symbol) for symbol in ring.symbols)

    @property
    def used_variables(self) -> Tuple[str, ...]:
        """Variables that occur with a positive exponent."""
        names = self.variables
        used = set()
        for monomial in self._poly.itermonoms():
            used.update(i for i, e in enumerate(monomial) if e)
        return tuple(names[i] for i in sorted(used))

    @property
    def poly(self) -> PolyElement:
        """The underlying sympy element."""
        return self._poly

    def terms(self) -> Dict[Monomial, FieldElem]:
        """The term map exponent vector -> coefficient, without zero coefficients."""
        return {monomial: FieldElem(_from_qq(c)) for monomial, c in self._poly.items()}

    def rational_terms(self) -> Dict[Monomial, Fraction]:
        """The term map with Fraction coefficients."""
        return {monomial: _from_qq(c) for monomial, c in self._poly.items()}

    def is_zero(self) -> bool:
        """Whether the term map is empty."""
        return not self._poly

    def __bool__(self) -> bool:
        """Nonzero polynomials are truthy."""
        return bool(self._poly)

    def is_constant(self) -> bool:
        """Whether no variable occurs."""
        return all(not any(m) for m in self._poly.itermonoms())

    def constant_value(self) -> Fraction:
        """The value of a constant polynomial."""
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return _from_qq(self._poly.get(self._poly.ring.zero_monom, QQ.zero))

    def degree(self, variable: str) -> int:
        """Degree in one variable; the zero polynomial has degree -1."""
        if not self._poly:
            return -1
        if variable not in self.variables:
            return 0
        return int(self._poly.degree(self.variables.index(variable)))

    def total_degree(self) -> int:
        """Maximal total degree of a term; -1 for zero."""
        if not self._poly:
            return -1
        return max(sum(m) for m in self._poly.itermonoms())

    def num_terms(self) -> int:
        """Number of stored terms."""
        return len(self._poly)

    # --- ring changes -------------------------------------------------------------------------------------------

    def lift(self, variables: Sequence[str]) -> "MPoly":
        """The same polynomial in Q[variables]; every used variable must be present."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        missing = [name for name in self.used_variables if name not in variables]
        if missing:
            raise ValueError(f"cannot lift {self} to {variables}: missing {missing}")
        target = polynomial_ring(variables)
        positions = [variables.index(name) if name in variables else None for name in self.variables]
        data = {}
        for monomial, coefficient in self._poly.items():
            exponents = [0] * len(variables)
            for position, exponent in zip(positions, monomial):
                if exponent:
                    exponents[position] = exponent
            data[tuple(exponents)] = coefficient
        return MPoly(target.from_dict(data) if data else target.zero)

    def drop_unused(self) -> "MPoly":
        """The same polynomial over its used variables only."""
        return self.lift(self.used_variables)

    @staticmethod
    def unify(*polys: "MPoly") -> Tuple["MPoly", ...]:
        """Lifts all polynomials into the ring over the union of their variables."""
        if all(p._poly.ring == polys[0]._poly.ring for p in polys):
            return polys
        variables = merge_variables(*(p.variables for p in polys))
        return tuple(p.lift(variables) for p in polys)

    def _coerce(self, other) -> Optional["MPoly"]:
        if isinstance(other, MPoly):
            return other
        if isinstance(other, (int, Fraction)) or (isinstance(other, FieldElem) and other.is_rational()):
            return MPoly.constant(other, self.variables)
        return None

    # --- arithmetic ---------------------------------------------------------------------------------------------

    def __add__(self, other):
        """Sum."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = MPoly.unify(self, other)
        return MPoly(a._poly + b._poly)

    __radd__ = __add__

    def __neg__(self):
        """Negation."""
        return MPoly(-self._poly)

    def __sub__(self, other):
        """Difference."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = MPoly.unify(self, other)
        return MPoly(a._poly - b._poly)

    def __rsub__(self, other):
        """Difference with the operands swapped."""
        return (-self).__add__(other)

    def __mul__(self, other):
        """Product."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = MPoly.unify(self, other)
        return MPoly(a._poly * b._poly)

    __rmul__ = __mul__

    def __pow__(self, exponent: int):
        """Nonnegative integer power."""
        if not isinstance(exponent, int) or exponent < 0:
            return NotImplemented
        return MPoly(self._poly**exponent)

    def scale(self, factor: Scalar) -> "MPoly":
        """Multiplies every coefficient by a rational."""
        return MPoly(self._poly.mul_ground(_to_qq(factor)))

    def __eq__(self, other) -> bool:
        """Equality of term maps after unifying variable lists."""
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = MPoly.unify(self, other)
        return a._poly == b._poly

    def __hash__(self) -> int:
        """Hash of the term map keyed by variable names, independent of declared but unused variables."""
        names = self.variables
        items = []
        for monomial, coefficient in self._poly.items():
            key = tuple((names[i], e) for i, e in enumerate(monomial) if e)
            items.append((key, _from_qq(coefficient)))
        return hash(frozenset(items))

    # --- calculus and division ----------------------------------------------------------------------------------

    def diff(self, variable: str) -> "MPoly":
        """Partial derivative."""
        if variable not in self.variables:
            return MPoly(self._poly.ring.zero)
        return MPoly(self._poly.diff(self.variables.index(variable)))

    def coefficients_in(self, variable: str) -> list:
        """Coefficients of variable**k for k = 0..degree, as polynomials in the same ring."""
        if variable not in self.variables:
            return [self]
        index = self.variables.index(variable)
        ring = self._poly.ring
        buckets: Dict[int, dict] = {}
        for monomial, coefficient in self._poly.items():
            reduced = monomial[:index] + (0,) + monomial[index + 1 :]
            buckets.setdefault(monomial[index], {})[reduced] = coefficient
        degree = max(buckets) if buckets else 0
        return [MPoly(ring.from_dict(buckets[k]) if k in buckets else ring.zero) for k in range(degree + 1)]

    def divmod(self, other: "MPoly") -> Tuple["MPoly", "MPoly"]:
        """Quotient and remainder of the grlex division algorithm."""
        a, b = MPoly.unify(self, other)
        if not b._poly:
            raise ZeroDivisionError("polynomial division by zero")
        quotient, remainder = a._poly.div(b._poly)
        return MPoly(quotient), MPoly(remainder)

    def divide_exact(self, other: "MPoly") -> Optional["MPoly"]:
        """The exact quotient self/other, or None when other does not divide self."""
        quotient, remainder = self.divmod(other)
        return quotient if remainder.is_zero() else None

    def reduce_modulo(self, minpoly: "MPoly", generator: str) -> "MPoly":
        """Remainder modulo a polynomial monic in `generator` whose other variables do not occur."""
        if set(minpoly.used_variables) - {generator}:
            raise ValueError(f"minimal polynomial {minpoly} may only involve {generator}")
        coefficients = minpoly.coefficients_in(generator)
        if len(coefficients) < 2 or coefficients[-1] != 1:
            raise ValueError(f"minimal polynomial {minpoly} must be monic of positive degree in {generator}")
        return self.divmod(minpoly)[1]

    def clear_denominators(self) -> Tuple[int, "MPoly"]:
        """(d, d*self) with d the least common denominator of the coefficients."""
        common, poly = self._poly.clear_denoms()
        return int(common), MPoly(poly)

    # --- evaluation and substitution ----------------------------------------------------------------------------

    def evaluate(self, assignment: Mapping[str, Any]) -> Any:
        """Evaluates at values supporting +, * and ** (FieldElem, Fraction, int or RationalFunction)."""
        names = self.variables
        used = self.used_variables
        missing = [name for name in used if name not in assignment]
        if missing:
            raise ValueError(f"no value given for variables {missing} of {self}")
        powers: Dict[str, list] = {}
        for name in used:
            value = assignment[name]
            table = [1, value]
            for _ in range(2, self.degree(name) + 1):
                table.append(table[-1] * value)
            powers[name] = table
        total: Any = 0
        for monomial, coefficient in self._poly.items():
            term: Any = _from_qq(coefficient)
            for i, exponent in enumerate(monomial):
                if exponent:
                    term = term * powers[names[i]][exponent]
            total = total + term
        return total

    def partial_evaluate(self, assignment: Mapping[str, Scalar]) -> "MPoly":
        """Substitutes rational values for some variables, keeping the variable list."""
        names = self.variables
        values = {names.index(k): to_fraction(v) for k, v in assignment.items() if k in names}
        ring = self._poly.ring
        data: Dict[Monomial, Any] = {}
        for monomial, coefficient in self._poly.items():
            value = _from_qq(coefficient)
            exponents = list(monomial)
            for index, replacement in values.items():
                if exponents[index]:
                    value *= replacement ** exponents[index]
                    exponents[index] = 0
            key = tuple(exponents)
            data[key] = data.get(key, 0) + value
        return MPoly.from_terms(names, {k: v for k, v in data.items() if v}) if data else MPoly(ring.zero)

    def substitute(self, mapping: Mapping[str, "MPoly"]) -> "MPoly":
        """Polynomial composition: replaces each mapped variable by a polynomial."""
        images = {name: image for name, image in mapping.items() if name in self.used_variables}
        kept = [name for name in self.variables if name not in images]
        variables = merge_variables(kept, *(image.variables for image in images.values()))
        ring = polynomial_ring(variables)
        lifted = {name: image.lift(variables)._poly for name, image in images.items()}
        powers: Dict[str, list] = {}
        for name, image in lifted.items():
            table = [ring.one, image]
            for _ in range(2, self.degree(name) + 1):
                table.append(table[-1] * image)
            powers[name] = table
        names = self.variables
        kept_positions = [(names.index(name), variables.index(name)) for name in kept]
        result = ring.zero
        for monomial, coefficient in self._poly.items():
            exponents = [0] * len(variables)
            for source, target in kept_positions:
                exponents[target] = monomial[source]
            term = ring.from_dict({tuple(exponents): coefficient})
            for i, exponent in enumerate(monomial):
                if exponent and names[i] in powers:
                    term = term * powers[names[i]][exponent]
            result += term
        return MPoly(result)

    # --- printing -----------------------------------------------------------------------------------------------

    def __str__(self) -> str:
        """Infix rendering, e.g. x**2 - 2*x*y."""
        return str(self._poly.as_expr()) if self._poly else "0"

    def __repr__(self) -> str:
        """Debug representation."""
        return f"MPoly({self}, variables={self.variables})"

    def to_expression(self) -> str:
        """Prefix rendering in the fixture file syntax."""
        names = self.variables
        terms = []
        for monomial, coefficient in sorted(self._poly.items(), reverse=True):
            value = _from_qq(coefficient)
            factors = [format_rational(value)] if value != 1 or not any(monomial) else []
            for i, exponent in enumerate(monomial):
                if exponent == 1:
                    factors.append(names[i])
                elif exponent > 1:
                    factors.append(f"(^ {names[i]} {exponent})")
            terms.append(factors[0] if len(factors) == 1 else f"(* {' '.join(factors)})")
        if not terms:
            return "0"
        return terms[0] if len(terms) == 1 else f"(+ {' '.join(terms)})"


def poly_eval(p: MPoly, assignment: Mapping[str, Scalar]) -> FieldElem:
    """Exact value of `p` at an assignment of field elements (or ints / Fractions)."""
    value = p.evaluate({name: v if isinstance(v, FieldElem) else FieldElem(v) for name, v in assignment.items()})
    return value if isinstance(value, FieldElem) else FieldElem(value)


def poly_divide_exact(a: MPoly, b: MPoly) -> Optional[MPoly]:
    """The polynomial q with a = b*q, or None when b does not divide a; b = 0 raises ZeroDivisionError."""
    return a.divide_exact(b)
