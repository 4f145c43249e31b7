"""This file contains short Weierstrass curves Y^2 = X^3 + A*X + B, their points and the chord-tangent group law.

Coefficients and coordinates are scalars in the sense of `scalars.py`, so a curve over Q(u) with a symbolic
parameter uses exactly the same code as a curve over Q.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Optional, Tuple

from sympy import integer_nthroot

from diagforge.algebra.rational_function import RationalFunction
from diagforge.errors import NotOnCurveError, SingularCurveError
from diagforge.genus1.maps import MapStage
from diagforge.genus1.scalars import Scalar, as_scalar, is_rational, to_fraction

logger = logging.getLogger(__name__)

# Mazur: a rational torsion point has order at most 12
MAX_TORSION_ORDER = 12


@dataclass(frozen=True)
class ECPoint:
    """A point of a Weierstrass curve; both coordinates are None for the point at infinity."""

    # affine X coordinate
    x: Optional[Scalar] = None
    # affine Y coordinate
    y: Optional[Scalar] = None

    @classmethod
    def infinity(cls) -> "ECPoint":
        """The neutral element."""
        return cls()

    @property
    def is_infinity(self) -> bool:
        """Whether this is the point at infinity."""
        return self.x is None

    def __neg__(self) -> "ECPoint":
        """The inverse on a short Weierstrass curve."""
        if self.is_infinity:
            return self
        return ECPoint(self.x, -self.y)

    def __str__(self) -> str:
        """(x, y) or O."""
        return "O" if self.is_infinity else f"({self.x}, {self.y})"


def _nth_root(value: Fraction, n: int) -> Optional[Fraction]:
    if value < 0:
        return None
    numerator, exact_numerator = integer_nthroot(value.numerator, n)
    denominator, exact_denominator = integer_nthroot(value.denominator, n)
    if not (exact_numerator and exact_denominator):
        return None
    return Fraction(int(numerator), int(denominator))


@dataclass(frozen=True)
class WeierstrassCurve:
    """The curve Y^2 = X^3 + A*X + B with nonzero discriminant."""

    # coefficient of X
    A: Scalar
    # constant coefficient
    B: Scalar

    def __post_init__(self):
        """Lifts plain numbers to field elements and rejects singular curves."""
        object.__setattr__(self, "A", as_scalar(self.A))
        object.__setattr__(self, "B", as_scalar(self.B))
        if self.discriminant == 0:
            raise SingularCurveError(f"{self} is singular (4A^3 + 27B^2 = 0)")

    @property
    def discriminant(self) -> Scalar:
        """-16 (4A^3 + 27B^2)."""
        return -16 * (4 * self.A**3 + 27 * self.B**2)

    def j_invariant(self) -> Scalar:
        """1728 * 4A^3 / (4A^3 + 27B^2)."""
        return 1728 * 4 * self.A**3 / (4 * self.A**3 + 27 * self.B**2)

    @property
    def base(self) -> ECPoint:
        """The origin of the group law."""
        return ECPoint.infinity()

    def point(self, x, y) -> ECPoint:
        """Builds an affine point, raising NotOnCurveError when it does not satisfy the equation."""
        point = ECPoint(as_scalar(x), as_scalar(y))
        if not self.contains(point):
            raise NotOnCurveError(f"{point} is not on {self}")
        return point

    def contains(self, point: ECPoint) -> bool:
        """Whether the point satisfies the curve equation."""
        if not isinstance(point, ECPoint):
            return False
        if point.is_infinity:
            return True
        return point.y**2 == point.x**3 + self.A * point.x + self.B

    def check(self, point: ECPoint) -> None:
        """Raises NotOnCurveError unless the point is on the curve."""
        if not self.contains(point):
            raise NotOnCurveError(f"{point} is not on {self}")

    def equal_points(self, p: ECPoint, q: ECPoint) -> bool:
        """Point equality."""
        return p == q

    def generic_point(self) -> ECPoint:
        """The point (X, Y) with coordinate functions as coordinates."""
        x, y = RationalFunction.variables_of("X", "Y")
        return ECPoint(x, y)

    def point_coordinates(self, point: ECPoint) -> Tuple[Scalar, Scalar]:
        """Affine coordinates (x, y); the point at infinity has none."""
        if point.is_infinity:
            raise ValueError("the point at infinity has no affine coordinates")
        return point.x, point.y

    # --- isomorphisms -------------------------------------------------------------------------------------------

    def scaled(self, mu: Scalar) -> "WeierstrassCurve":
        """The curve Y^2 = X^3 + mu^4 A X + mu^6 B, image of (x, y) -> (mu^2 x, mu^3 y)."""
        return WeierstrassCurve(mu**4 * self.A, mu**6 * self.B)

    @staticmethod
    def scale_point(point: ECPoint, mu: Scalar) -> ECPoint:
        """Image of a point under (x, y) -> (mu^2 x, mu^3 y)."""
        if point.is_infinity:
            return point
        return ECPoint(mu**2 * point.x, mu**3 * point.y)

    def is_isomorphic(self, other: "WeierstrassCurve") -> Optional[Any]:
        """A positive rational mu with other = self.scaled(mu), or None when there is none over Q."""
        A, B = to_fraction(self.A), to_fraction(self.B)
        A2, B2 = to_fraction(other.A), to_fraction(other.B)
        if (A == 0) != (A2 == 0) or (B == 0) != (B2 == 0):
            return None
        if A == 0:
            mu = _nth_root(B2 / B, 6)
        elif B == 0:
            mu = _nth_root(A2 / A, 4)
        else:
            mu = _nth_root((B2 / B) / (A2 / A), 2)
        if mu is None or mu**4 * A != A2 or mu**6 * B != B2:
            return None
        return as_scalar(mu)

    # --- long forms ---------------------------------------------------------------------------------------------

    @classmethod
    def from_long(cls, a1, a2, a3, a4, a6) -> Tuple["WeierstrassCurve", MapStage]:
        """Short model of y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6 and the change of coordinates to it."""
        a1, a2, a3, a4, a6 = (as_scalar(a) for a in (a1, a2, a3, a4, a6))
        b2 = a1**2 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3**2 + 4 * a6
        c4 = b2**2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        curve = cls(-27 * c4, -54 * c6)

        def forward(point: ECPoint) -> ECPoint:
            if point.is_infinity:
                return point
            return ECPoint(36 * point.x + 3 * b2, 108 * (2 * point.y + a1 * point.x + a3))

        def backward(point: ECPoint) -> ECPoint:
            if point.is_infinity:
                return point
            x = (point.x - 3 * b2) / 36
            return ECPoint(x, (point.y / 108 - a1 * x - a3) / 2)

        return curve, MapStage("long to short Weierstrass", forward, backward)

    def __str__(self) -> str:
        """The equation."""
        return f"Y^2 = X^3 + ({self.A})*X + ({self.B})"


# --- group law ----------------------------------------------------------------------------------------------------


def _add(curve: WeierstrassCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    if p.is_infinity:
        return q
    if q.is_infinity:
        return p
    if p.x == q.x:
        if p.y + q.y == 0:
            return ECPoint.infinity()
        slope = (3 * p.x**2 + curve.A) / (2 * p.y)
    else:
        slope = (q.y - p.y) / (q.x - p.x)
    x = slope**2 - p.x - q.x
    return ECPoint(x, slope * (p.x - x) - p.y)


def ec_add(curve: WeierstrassCurve, p: ECPoint, q: ECPoint) -> ECPoint:
    """P + Q by the chord-tangent rule."""
    curve.check(p)
    curve.check(q)
    return _add(curve, p, q)


def ec_neg(curve: WeierstrassCurve, p: ECPoint) -> ECPoint:
    """-P."""
    curve.check(p)
    return -p


def ec_mul(curve: WeierstrassCurve, n: int, p: ECPoint) -> ECPoint:
    """n * P by double-and-add; negative n multiplies -P."""
    curve.check(p)
    if n < 0:
        n, p = -n, -p
    result = ECPoint.infinity()
    addend = p
    while n:
        if n & 1:
            result = _add(curve, result, addend)
        addend = _add(curve, addend, addend)
        n >>= 1
    return result


def _is_integral(value: Scalar) -> bool:
    return to_fraction(value).denominator == 1


def lutz_nagell_integral(curve: WeierstrassCurve, p: ECPoint) -> bool:
    """Whether P is the point at infinity or has integral coordinates; the model must be integral."""
    if not (is_rational(curve.A) and is_rational(curve.B)) or not (_is_integral(curve.A) and _is_integral(curve.B)):
        raise ValueError(f"Lutz-Nagell needs an integral model, got {curve}")
    curve.check(p)
    return p.is_infinity or (_is_integral(p.x) and _is_integral(p.y))


def torsion_test(curve: WeierstrassCurve, p: ECPoint) -> Optional[int]:
    """The order of P if it is at most 12, else None (infinite order over Q)."""
    if not (is_rational(curve.A) and is_rational(curve.B)):
        raise ValueError(f"torsion_test needs a curve over Q, got {curve}")
    curve.check(p)
    integral = _is_integral(curve.A) and _is_integral(curve.B)
    multiple = p
    for order in range(1, MAX_TORSION_ORDER + 1):
        if multiple.is_infinity:
            logger.debug("%s has order %d on %s", p, order, curve)
            return order
        if integral and not (_is_integral(multiple.x) and _is_integral(multiple.y)):
            logger.debug("%d*%s is not integral on %s, so %s has infinite order", order, p, curve, p)
            return None
        multiple = _add(curve, multiple, p)
    return None
