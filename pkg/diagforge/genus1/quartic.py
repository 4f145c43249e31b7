"""This file contains quartic models c*w^2 = f(t) and their conversion to short Weierstrass form.

The base point (t0, w0) is moved to t = 0, then the classical map for v^2 = quartic with square constant term
(or with a root at the origin when w0 = 0) produces a long Weierstrass model, which is finally made short.
"""

import logging
from dataclasses import dataclass
from typing import Sequence, Tuple

from diagforge.algebra.mpoly import MPoly
from diagforge.algebra.rational_function import RationalFunction
from diagforge.errors import NotOnCurveError, SingularCurveError
from diagforge.genus1.maps import BirationalMap, MapStage
from diagforge.genus1.scalars import (
    Scalar,
    as_scalar,
    is_rational,
    poly_value,
    rational_roots,
    scalar_from_polynomial,
    taylor_shift,
    to_fraction,
)
from diagforge.genus1.weierstrass import ECPoint, WeierstrassCurve

logger = logging.getLogger(__name__)


def binary_quartic_discriminant(coefficients: Sequence[Scalar]) -> Scalar:
    """Discriminant of f4 t^4 + ... + f0 read as a binary quartic form (zero iff a repeated root, infinity included)."""
    e, d, c, b, a = coefficients
    invariant_i = 12 * a * e - 3 * b * d + c**2
    invariant_j = 72 * a * c * e + 9 * b * c * d - 27 * a * d**2 - 27 * e * b**2 - 2 * c**3
    return (4 * invariant_i**3 - invariant_j**2) / 27


@dataclass(frozen=True)
class QuarticModel:
    """The curve c*w^2 = f(t) with deg f in {3, 4} and a rational base point."""

    # f0, f1, f2, f3, f4
    coefficients: Tuple[Scalar, ...]
    # the constant c
    scale: Scalar
    # the point (t0, w0) used as origin
    base: Tuple[Scalar, Scalar]
    # names of the two coordinates
    variables: Tuple[str, str] = ("t", "w")

    def __post_init__(self):
        """Pads f to degree four and checks the base point and squarefreeness."""
        coefficients = [as_scalar(c) for c in self.coefficients]
        if len(coefficients) > 5:
            raise ValueError(f"a quartic model needs deg f <= 4, got {len(coefficients) - 1}")
        coefficients += [as_scalar(0)] * (5 - len(coefficients))
        object.__setattr__(self, "coefficients", tuple(coefficients))
        object.__setattr__(self, "scale", as_scalar(self.scale))
        object.__setattr__(self, "base", tuple(as_scalar(x) for x in self.base))
        if self.scale == 0:
            raise SingularCurveError(f"the scale of {self} vanishes")
        if binary_quartic_discriminant(self.coefficients) == 0:
            raise SingularCurveError(f"{self} is singular: f has a repeated root or degree below three")
        if not self.contains(self.base):
            raise NotOnCurveError(f"base point {self.base} is not on {self}")

    @classmethod
    def from_polynomial(cls, f: MPoly, variable: str, scale, base, variables=None) -> "QuarticModel":
        """Reads f as a polynomial in `variable`; other variables become symbolic coefficients."""
        coefficients = tuple(scalar_from_polynomial(c) for c in f.coefficients_in(variable))
        return cls(coefficients, scale, tuple(base), tuple(variables) if variables else (variable, "w"))

    def f(self, t: Scalar) -> Scalar:
        """The quartic at t."""
        return poly_value(self.coefficients, t)

    @property
    def discriminant(self) -> Scalar:
        """Discriminant of f as a binary quartic."""
        return binary_quartic_discriminant(self.coefficients)

    def contains(self, point) -> bool:
        """Whether the affine point (t, w) satisfies c*w^2 = f(t)."""
        if not isinstance(point, tuple) or len(point) != 2:
            return False
        t, w = point
        return self.scale * w**2 == self.f(t)

    def equal_points(self, p, q) -> bool:
        """Coordinatewise equality."""
        return p[0] == q[0] and p[1] == q[1]

    def generic_point(self) -> Tuple[RationalFunction, RationalFunction]:
        """The point (t, w) with coordinate functions as coordinates."""
        return RationalFunction.variables_of(*self.variables)

    def point_coordinates(self, point) -> tuple:
        """The affine coordinates."""
        return tuple(point)

    def __str__(self) -> str:
        """The equation."""
        t, w = self.variables
        terms = " + ".join(f"({c})*{t}^{i}" for i, c in enumerate(self.coefficients) if c != 0)
        return f"({self.scale})*{w}^2 = {terms}"


def _connell_stage(h: Sequence[Scalar], q: Scalar):
    """v^2 = a u^4 + b u^3 + c u^2 + d u + q^2 with q != 0, sending (0, q) to infinity."""
    _, d, c, b, a = h
    a1 = d / q
    a2 = c - d**2 / (4 * q**2)
    a3 = 2 * q * b
    a4 = -4 * q**2 * a
    a6 = a2 * a4
    image_of_opposite = ECPoint(-a2, a1 * a2 - a3)

    def forward(point):
        u, v = point
        if u == 0:
            return ECPoint.infinity() if v == q else image_of_opposite
        x = (2 * q * (v + q) + d * u) / u**2
        y = (4 * q**2 * (v + q) + 2 * q * (d * u + c * u**2) - d**2 * u**2 / (2 * q)) / u**3
        return ECPoint(x, y)

    def backward(point: ECPoint):
        if point.is_infinity:
            return (q * 0, q)
        if point == image_of_opposite:
            return (q * 0, -q)
        u = (2 * q * (point.x + c) - d**2 / (2 * q)) / point.y
        return (u, -q + u * (u * point.x - d) / (2 * q))

    cubic = [a6, a4, a2, 1]
    return (a1, a2, a3, a4, a6), MapStage("quartic to long Weierstrass", forward, backward), cubic


def _root_stage(h: Sequence[Scalar]):
    """v^2 = a u^4 + b u^3 + c u^2 + d u with d != 0, sending (0, 0) to infinity."""
    _, d, c, b, a = h

    def forward(point):
        u, v = point
        if u == 0:
            return ECPoint.infinity()
        return ECPoint(d / u, d * v / u**2)

    def backward(point: ECPoint):
        if point.is_infinity:
            return (d * 0, d * 0)
        return (d / point.x, point.y * d / point.x**2)

    return (0, c, 0, b * d, a * d**2), MapStage("quartic with rational root to Weierstrass", forward, backward)


def _long_points_with(cubic: Sequence[Scalar], x_values, stage: MapStage) -> list:
    """Points (x, 0) of the long model where the backward formula of `stage` divides by zero."""
    points = []
    for x in x_values:
        point = ECPoint(as_scalar(x), as_scalar(0))
        if poly_value(cubic, point.x) != 0:
            continue
        try:
            stage.backward(point)
        except ZeroDivisionError:
            points.append(point)
    return points


def quartic_to_weierstrass(model: QuarticModel) -> Tuple[WeierstrassCurve, BirationalMap]:
    """Short Weierstrass model of a quartic model and an exact birational map sending the base point to infinity."""
    t0, w0 = model.base
    scale = model.scale
    h = [scale * c for c in taylor_shift(model.coefficients, t0)]
    h += [as_scalar(0)] * (5 - len(h))
    q = scale * w0

    shift = MapStage(
        "move base point to t = 0",
        lambda point: (point[0] - t0, scale * point[1]),
        lambda point: (point[0] + t0, point[1] / scale),
    )
    long_exceptional = []
    if q != 0:
        long_coefficients, to_long, cubic = _connell_stage(h, q)
        if all(is_rational(c) for c in cubic):
            # the backward formula divides by y
            long_exceptional = _long_points_with(cubic, rational_roots(cubic), to_long)
    else:
        long_coefficients, to_long = _root_stage(h)
        a, d = h[4], h[1]
        if is_rational(a) and is_rational(d):
            root = as_scalar(to_fraction(a)).sqrt() if to_fraction(a) >= 0 else None
            if root is not None and root != 0:
                long_exceptional = [ECPoint(as_scalar(0), root * d), ECPoint(as_scalar(0), -root * d)]
    curve, to_short = WeierstrassCurve.from_long(*long_coefficients)
    target_exceptional = tuple(to_short.forward(point) for point in long_exceptional)
    mapping = BirationalMap(
        source=model,
        target=curve,
        stages=(shift, to_long, to_short),
        target_exceptional=target_exceptional,
    )
    logger.debug("quartic model %s is birational to %s", model, curve)
    return curve, mapping
