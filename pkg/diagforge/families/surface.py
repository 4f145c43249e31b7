"""This file contains diagonal surfaces a*x^e1 + b*y^e2 + c*z^e3 + d*w^e4 = 0 and their integral points.

Points are homogeneous for the weights w_i = L/e_i (L the lcm of the exponents): scaling by lambda multiplies
coordinate i by lambda^w_i. For quartic surfaces all weights are one and the canonical form is the usual
coprime representative with positive first nonzero coordinate.
"""

import math
from dataclasses import dataclass, field
from itertools import product
from typing import Iterator, List, Optional, Sequence, Tuple

from sympy import integer_nthroot

from diagforge.algebra.field import FieldElem
from diagforge.algebra.mpoly import MPoly
from diagforge.genus1.scalars import Scalar, as_scalar, is_rational, to_fraction

EXPONENT_SIGNATURES = (
    (4, 4, 4, 4),
    (6, 6, 6, 2),
    (6, 6, 6, 3),
    (6, 6, 6, 6),
    (6, 6, 3, 2),
    (6, 6, 3, 3),
)

SURFACE_VARIABLES = ("x", "y", "z", "w")


@dataclass(frozen=True)
class ProjPoint:
    """Four integer coordinates of a point on a diagonal surface."""

    coordinates: Tuple[int, int, int, int]

    def __post_init__(self):
        """Checks for four integers, not all zero."""
        coordinates = tuple(self.coordinates)
        if len(coordinates) != 4 or not all(isinstance(c, int) for c in coordinates):
            raise ValueError(f"a point needs four integer coordinates, got {self.coordinates!r}")
        if not any(coordinates):
            raise ValueError("the zero vector is not a projective point")
        object.__setattr__(self, "coordinates", coordinates)

    def __iter__(self) -> Iterator[int]:
        """Iterates over the coordinates."""
        return iter(self.coordinates)

    def __getitem__(self, index: int) -> int:
        """Coordinate access."""
        return self.coordinates[index]

    @property
    def zero_count(self) -> int:
        """Number of vanishing coordinates."""
        return sum(1 for c in self.coordinates if c == 0)

    @property
    def is_trivial(self) -> bool:
        """Points with two or more zero coordinates do not count as solutions."""
        return self.zero_count >= 2

    def __str__(self) -> str:
        """Tuple notation."""
        return "(" + ", ".join(str(c) for c in self.coordinates) + ")"


@dataclass(frozen=True)
class DiagonalSurface:
    """The surface sum coefficients[i] * X_i^exponents[i] = 0."""

    # a, b, c, d; FieldElem for concrete surfaces, RationalFunction when a parameter stays symbolic
    coefficients: Tuple[Scalar, Scalar, Scalar, Scalar]
    # one of EXPONENT_SIGNATURES
    exponents: Tuple[int, int, int, int] = (4, 4, 4, 4)
    # Picard rank remark, never computed
    note: str = field(default="", compare=False)

    def __post_init__(self):
        """Checks the signature and that no coefficient vanishes."""
        coefficients = tuple(as_scalar(c) for c in self.coefficients)
        exponents = tuple(self.exponents)
        if len(coefficients) != 4:
            raise ValueError(f"a diagonal surface needs four coefficients, got {len(coefficients)}")
        if exponents not in EXPONENT_SIGNATURES:
            raise ValueError(f"unsupported exponents {exponents}, expected one of {EXPONENT_SIGNATURES}")
        for name, c in zip("abcd", coefficients):
            if c == 0:
                raise ValueError(f"coefficient {name} of a diagonal surface must be nonzero")
        object.__setattr__(self, "coefficients", coefficients)
        object.__setattr__(self, "exponents", exponents)

    @property
    def weights(self) -> Tuple[int, int, int, int]:
        """Weights L/e_i of the coordinates."""
        common = math.lcm(*self.exponents)
        return tuple(common // e for e in self.exponents)

    @property
    def is_rational(self) -> bool:
        """Whether every coefficient is a rational number."""
        return all(is_rational(c) for c in self.coefficients)

    def polynomial(self, variables: Sequence[str] = SURFACE_VARIABLES) -> MPoly:
        """The defining polynomial, for rational coefficients."""
        if not self.is_rational:
            raise ValueError(f"{self} has symbolic coefficients")
        generators = MPoly.variables_of(*variables)
        total = MPoly.zero(tuple(variables))
        for c, x, e in zip(self.coefficients, generators, self.exponents):
            total = total + x**e * c
        return total

    def evaluate(self, point: Sequence) -> Scalar:
        """Exact value of the defining polynomial at a point."""
        total: Scalar = as_scalar(0)
        for c, x, e in zip(self.coefficients, point, self.exponents):
            total = total + c * as_scalar(x) ** e
        return total

    def contains(self, point: Sequence) -> bool:
        """Whether the point satisfies the equation exactly."""
        return self.evaluate(point) == 0

    def abcd_is_square(self) -> Optional[bool]:
        """For quartic surfaces whether abcd is a rational square; None for other signatures."""
        if self.exponents != (4, 4, 4, 4) or not self.is_rational:
            return None
        product_value = FieldElem(1)
        for c in self.coefficients:
            product_value = product_value * c
        return product_value.sqrt() is not None

    def __str__(self) -> str:
        """The equation."""
        terms = [f"({c})*{v}^{e}" for c, v, e in zip(self.coefficients, SURFACE_VARIABLES, self.exponents)]
        return " + ".join(terms) + " = 0"


def _coprime_base(values: Sequence[int]) -> List[int]:
    """Pairwise coprime integers > 1 such that each value is a product of their powers."""
    base: List[int] = []
    pending = [v for v in values if v > 1]
    while pending:
        n = pending.pop()
        for index, b in enumerate(base):
            g = math.gcd(n, b)
            if g > 1:
                base.pop(index)
                pending.extend(x for x in (g, b // g, n // g) if x > 1)
                break
        else:
            base.append(n)
    return sorted(base)


def _multiplicity(n: int, b: int) -> int:
    count = 0
    while n % b == 0:
        n //= b
        count += 1
    return count


def canonicalize(surface: DiagonalSurface, coords: Sequence) -> ProjPoint:
    """The weighted canonical integer representative of a rational point."""
    weights = surface.weights
    values = [to_fraction(as_scalar(c)) for c in coords]
    if len(values) != 4:
        raise ValueError(f"a point needs four coordinates, got {len(values)}")
    if not any(values):
        raise ValueError("the zero vector is not a projective point")
    scale = math.lcm(*(v.denominator for v in values))
    integers = [int(v * scale**w) for v, w in zip(values, weights)]
    nonzero = [(abs(n), w) for n, w in zip(integers, weights) if n]
    divisor = 1
    for b in _coprime_base([n for n, _ in nonzero]):
        exponent = min(_multiplicity(n, b) // w for n, w in nonzero)
        divisor *= b**exponent
    integers = [n // divisor**w for n, w in zip(integers, weights)]
    leading = next((n for n, w in zip(integers, weights) if n and w % 2), 0)
    if leading < 0:
        integers = [n * (-1) ** w for n, w in zip(integers, weights)]
    return ProjPoint(tuple(integers))


def sign_variants(surface: DiagonalSurface, point: ProjPoint) -> List[ProjPoint]:
    """Canonical forms of the point under sign changes of even-exponent coordinates, deduplicated and sorted."""
    flippable = [i for i, e in enumerate(surface.exponents) if e % 2 == 0]
    variants = set()
    for signs in product((1, -1), repeat=len(flippable)):
        coordinates = list(point.coordinates)
        for i, s in zip(flippable, signs):
            coordinates[i] *= s
        variants.add(canonicalize(surface, coordinates).coordinates)
    return [ProjPoint(c) for c in sorted(variants)]


def same_solution(surface: DiagonalSurface, p: Sequence, q: Sequence) -> bool:
    """Whether two points agree up to weighted scaling and sign changes of even-exponent coordinates."""
    target = canonicalize(surface, tuple(q))
    return target in sign_variants(surface, canonicalize(surface, tuple(p)))


def height(surface: DiagonalSurface, point: ProjPoint) -> int:
    """The smallest H with |x_i| <= H^w_i for every coordinate."""
    result = 0
    for c, w in zip(point.coordinates, surface.weights):
        root, exact = integer_nthroot(abs(c), w)
        result = max(result, int(root) + (0 if exact else 1))
    return result

