"""This file contains nonsingular plane cubics with a rational base point and their chord-tangent group law."""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence, Tuple

from sympy import QQ, Symbol, groebner

from diagforge.algebra.mpoly import MPoly
from diagforge.algebra.rational_function import RationalFunction
from diagforge.errors import NotOnCurveError, SingularCurveError
from diagforge.genus1.scalars import (
    Scalar,
    as_scalar,
    cross,
    dot,
    is_zero_vector,
    normalize_projective,
    projectively_equal,
)

logger = logging.getLogger(__name__)

ProjectivePoint = Tuple[Scalar, Scalar, Scalar]


def _has_singular_point(form: MPoly, variables: Sequence[str]) -> bool:
    """Whether the partial derivatives have a common projective zero, one affine chart at a time."""
    symbols = [Symbol(name) for name in variables]
    partials = [form.diff(name).poly.as_expr() for name in variables]
    for chart, symbol in enumerate(symbols):
        others = [s for index, s in enumerate(symbols) if index != chart]
        equations = [p.subs(symbol, 1) for p in partials]
        equations = [e for e in equations if e != 0]
        if not equations:
            return True
        basis = groebner(equations, *others, order="grevlex", domain=QQ)
        if list(basis.exprs) != [1]:
            return True
    return False


@dataclass(frozen=True)
class PlaneCubic:
    """The curve form(x, y, z) = 0 for a nonsingular ternary cubic form over Q, with a base point as origin."""

    # homogeneous cubic in the three coordinate variables
    form: MPoly
    # origin of the group law
    base: ProjectivePoint
    # coordinate names
    variables: Tuple[str, str, str] = ("x", "y", "z")

    def __post_init__(self):
        """Checks homogeneity, the base point and nonsingularity."""
        object.__setattr__(self, "base", normalize_projective(tuple(as_scalar(x) for x in self.base)))
        extra = [name for name in self.form.used_variables if name not in self.variables]
        if extra:
            raise ValueError(f"cubic form {self.form} uses variables {extra} outside {self.variables}")
        form = self.form.lift(self.variables)
        object.__setattr__(self, "form", form)
        if form.is_zero() or any(sum(m) != 3 for m in form.rational_terms()):
            raise ValueError(f"{form} is not a ternary cubic form")
        if not self.contains(self.base):
            raise NotOnCurveError(f"base point {self.base} is not on {form} = 0")
        if _has_singular_point(form, self.variables):
            raise SingularCurveError(f"the cubic {form} = 0 is singular")

    @cached_property
    def partials(self) -> Tuple[MPoly, MPoly, MPoly]:
        """The three partial derivatives."""
        return tuple(self.form.diff(name) for name in self.variables)

    def value(self, point: Sequence[Scalar]) -> Scalar:
        """The form at a point."""
        return self.form.evaluate(dict(zip(self.variables, point)))

    def gradient(self, point: Sequence[Scalar]) -> Tuple[Scalar, Scalar, Scalar]:
        """The gradient at a point."""
        assignment = dict(zip(self.variables, point))
        return tuple(partial.evaluate(assignment) for partial in self.partials)

    def contains(self, point) -> bool:
        """Whether a nonzero 3-vector lies on the curve."""
        if not isinstance(point, tuple) or len(point) != 3 or is_zero_vector(point):
            return False
        return self.value(point) == 0

    def check(self, point) -> None:
        """Raises NotOnCurveError unless the point is on the curve."""
        if not self.contains(point):
            raise NotOnCurveError(f"{point} is not on {self.form} = 0")

    def equal_points(self, p, q) -> bool:
        """Projective equality."""
        return projectively_equal(p, q)

    def generic_point(self) -> tuple:
        """The point with coordinate functions as coordinates."""
        return RationalFunction.variables_of(*self.variables)

    def point_coordinates(self, point) -> tuple:
        """Homogeneous coordinates."""
        return tuple(point)

    # --- chord and tangent --------------------------------------------------------------------------------------

    def tangential_point(self, p: ProjectivePoint) -> ProjectivePoint:
        """Third intersection of the tangent line at P with the curve."""
        gradient = self.gradient(p)
        for k in range(3):
            unit = tuple(as_scalar(1 if i == k else 0) for i in range(3))
            direction = cross(gradient, unit)
            if not is_zero_vector(direction) and not projectively_equal(direction, p):
                break
        else:
            raise SingularCurveError(f"no tangent direction at {p} on {self.form} = 0")
        along = self.value(direction)
        across = dot(self.gradient(direction), p)
        return normalize_projective(tuple(along * x - across * d for x, d in zip(p, direction)))

    def third_point(self, p: ProjectivePoint, q: ProjectivePoint) -> ProjectivePoint:
        """Third intersection of the line PQ (the tangent when P = Q) with the curve."""
        if projectively_equal(p, q):
            return self.tangential_point(p)
        s = dot(self.gradient(q), p)
        t = dot(self.gradient(p), q)
        return normalize_projective(tuple(s * x - t * y for x, y in zip(p, q)))

    def add(self, p: ProjectivePoint, q: ProjectivePoint) -> ProjectivePoint:
        """P + Q with the base point as origin."""
        return self.third_point(self.base, self.third_point(p, q))

    def negate(self, p: ProjectivePoint) -> ProjectivePoint:
        """-P with the base point as origin."""
        return self.third_point(p, self.third_point(self.base, self.base))

    def __str__(self) -> str:
        """The equation."""
        return f"{self.form} = 0 with origin {tuple(str(x) for x in self.base)}"


def cubic_to_group(curve: PlaneCubic, p, q) -> ProjectivePoint:
    """P + Q on the cubic, origin at its base point."""
    p = tuple(as_scalar(x) for x in p)
    q = tuple(as_scalar(x) for x in q)
    curve.check(p)
    curve.check(q)
    return curve.add(p, q)


def cubic_mul(curve: PlaneCubic, n: int, p) -> ProjectivePoint:
    """n * P by double-and-add on the chord-tangent group."""
    p = tuple(as_scalar(x) for x in p)
    curve.check(p)
    if n < 0:
        n, p = -n, curve.negate(p)
    result = curve.base
    addend = normalize_projective(p)
    while n:
        if n & 1:
            result = curve.add(result, addend)
        addend = curve.add(addend, addend)
        n >>= 1
    logger.debug("multiple computed on %s", curve)
    return result
