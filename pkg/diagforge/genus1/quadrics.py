"""This file contains intersections of two quadrics in projective 3-space and their Weierstrass models.

When one of the two forms is a cone, i.e. free of one coordinate, its base conic is parametrized through the
projected base point, which turns the other form into a quadratic equation for the missing coordinate whose
discriminant is a quartic model of the curve. Any other pair is projected from its base point onto a plane cubic,
and the lines through the image of the tangent line at the base point give the quartic model.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Sequence, Tuple

from sympy import Poly

from diagforge.algebra.field import determinant
from diagforge.algebra.mpoly import MPoly
from diagforge.algebra.rational_function import RationalFunction
from diagforge.errors import NotOnCurveError, SingularCurveError
from diagforge.genus1.conic import ConicParametrization, parametrize_conic
from diagforge.genus1.maps import BirationalMap, MapStage
from diagforge.genus1.quartic import QuarticModel, binary_quartic_discriminant, quartic_to_weierstrass
from diagforge.genus1.scalars import (
    Scalar,
    as_scalar,
    coefficient_list,
    cross,
    dot,
    first_nonzero,
    is_rational,
    is_zero_vector,
    poly_value,
    projectively_equal,
    quadratic_value,
    scalar_domain,
    scalar_from_polynomial,
    to_fraction,
    univariate,
)
from diagforge.genus1.weierstrass import WeierstrassCurve

logger = logging.getLogger(__name__)

Matrix = Tuple[Tuple[Scalar, ...], ...]


def quadratic_form_matrix(q: MPoly, variables: Sequence[str]) -> Matrix:
    """Symmetric matrix of a quadratic form in `variables`; other variables of q are treated as parameters."""
    variables = tuple(variables)
    names = q.variables
    missing = [name for name in variables if name not in names]
    q = q.lift(names + tuple(missing)) if missing else q
    names = q.variables
    positions = [names.index(name) for name in variables]
    parameters = tuple(name for name in names if name not in variables)
    parameter_positions = [names.index(name) for name in parameters]
    entries: Dict[Tuple[int, int], Dict[tuple, object]] = {}
    for monomial, coefficient in q.rational_terms().items():
        exponents = [monomial[p] for p in positions]
        if sum(exponents) != 2:
            raise ValueError(f"{q} is not a quadratic form in {variables}")
        occurring = [i for i, e in enumerate(exponents) for _ in range(e)]
        i, j = occurring
        weight = 1 if i == j else 2
        key = tuple(monomial[p] for p in parameter_positions)
        bucket = entries.setdefault((min(i, j), max(i, j)), {})
        bucket[key] = bucket.get(key, 0) + coefficient / weight
    size = len(variables)
    matrix = [[as_scalar(0)] * size for _ in range(size)]
    for (i, j), terms in entries.items():
        value = scalar_from_polynomial(MPoly.from_terms(parameters, terms))
        matrix[i][j] = value
        matrix[j][i] = value
    return tuple(tuple(row) for row in matrix)


@dataclass(frozen=True)
class QuadricIntersection:
    """The curve first(X) = second(X) = 0 in P^3 with a base point on both quadrics."""

    # symmetric matrix of the first form
    first: Matrix
    # symmetric matrix of the second form
    second: Matrix
    # projective base point
    base: Tuple[Scalar, Scalar, Scalar, Scalar]
    # coordinate names
    variables: Tuple[str, str, str, str] = ("X", "Y", "Z", "W")

    def __post_init__(self):
        """Checks shapes, the base point and that the pencil is nondegenerate."""
        first = tuple(tuple(as_scalar(x) for x in row) for row in self.first)
        second = tuple(tuple(as_scalar(x) for x in row) for row in self.second)
        for matrix in (first, second):
            if len(matrix) != 4 or any(len(row) != 4 for row in matrix):
                raise ValueError(f"quadrics in P^3 need 4x4 matrices, got {matrix}")
            if any(matrix[i][j] != matrix[j][i] for i in range(4) for j in range(i)):
                raise ValueError(f"quadric matrices must be symmetric, got {matrix}")
        object.__setattr__(self, "first", first)
        object.__setattr__(self, "second", second)
        object.__setattr__(self, "base", tuple(as_scalar(x) for x in self.base))
        if not self.contains(self.base):
            raise NotOnCurveError(f"base point {self.base} is not on both quadrics")
        _, discriminant = pencil_discriminant(self)
        if discriminant == 0:
            raise SingularCurveError(f"degenerate pencil: det(l*A + m*B) has a repeated root for {self}")

    @classmethod
    def from_polynomials(cls, q_a: MPoly, q_b: MPoly, variables: Sequence[str], base) -> "QuadricIntersection":
        """Builds the intersection from two quadratic forms in `variables`."""
        return cls(
            quadratic_form_matrix(q_a, variables),
            quadratic_form_matrix(q_b, variables),
            tuple(base),
            tuple(variables),
        )

    def contains(self, point) -> bool:
        """Whether a nonzero 4-vector lies on both quadrics."""
        if not isinstance(point, tuple) or len(point) != 4 or is_zero_vector(point):
            return False
        return quadratic_value(self.first, point) == 0 and quadratic_value(self.second, point) == 0

    def equal_points(self, p, q) -> bool:
        """Projective equality."""
        return projectively_equal(p, q)

    def generic_point(self) -> tuple:
        """The point with coordinate functions as coordinates."""
        return RationalFunction.variables_of(*self.variables)

    def point_coordinates(self, point) -> tuple:
        """Homogeneous coordinates."""
        return tuple(point)

    def __str__(self) -> str:
        """Short description."""
        return f"intersection of two quadrics in {self.variables} with base {tuple(str(x) for x in self.base)}"


def pencil_discriminant(intersection: QuadricIntersection) -> Tuple[List[Scalar], Scalar]:
    """Coefficients e0..e4 of det(l*first + second) and their discriminant as a binary quartic."""
    domain = scalar_domain([x for matrix in (intersection.first, intersection.second) for row in matrix for x in row])
    rows = zip(intersection.first, intersection.second)
    pencil = [[univariate([b, a], domain) for a, b in zip(row_a, row_b)] for row_a, row_b in rows]
    det = determinant(pencil)
    coefficients = coefficient_list(det) if isinstance(det, Poly) else []
    coefficients += [as_scalar(0)] * (5 - len(coefficients))
    return coefficients, binary_quartic_discriminant(coefficients)


def _find_cone(intersection: QuadricIntersection):
    for cone, other in ((intersection.first, intersection.second), (intersection.second, intersection.first)):
        for k in range(4):
            if all(entry == 0 for entry in cone[k]) and other[k][k] != 0:
                return cone, other, k
    return None


class _ConeReduction:
    """Coordinates (t, v) on the quartic model v^2 = beta(F(t))^2 - 4*alpha*gamma(F(t))."""

    variables = ("t", "v")
    description = "cone to quartic model"

    def __init__(self, conic: ConicParametrization, other: Matrix, vertex: int, affine_in_a: bool):
        """Stores the conic parametrization and the pieces of the non-cone form."""
        self.conic = conic
        self.vertex = vertex
        self.rest = [m for m in range(4) if m != vertex]
        self.alpha = other[vertex][vertex]
        self.beta_row = [2 * other[vertex][m] for m in self.rest]
        self.gamma = [[other[i][j] for j in self.rest] for i in self.rest]
        # t = a/b when True, t = b/a otherwise
        self.affine_in_a = affine_in_a

    def conic_lists(self) -> List[List[Scalar]]:
        """Each coordinate of F(t) as a coefficient list in t."""
        lists = []
        for c0, c1, c2 in self.conic.coefficients:
            lists.append([c2, c1, c0] if self.affine_in_a else [c0, c1, c2])
        return lists

    def quartic(self) -> List[Scalar]:
        """Coefficients of beta(F(t))^2 - 4*alpha*gamma(F(t))."""
        lists = self.conic_lists()
        domain = scalar_domain([self.alpha, *self.beta_row, *(x for row in self.gamma for x in row), *sum(lists, [])])
        coordinates = [univariate(coordinate, domain) for coordinate in lists]
        beta = univariate([], domain)
        for weight, coordinate in zip(self.beta_row, coordinates):
            beta += univariate([weight], domain) * coordinate
        gamma = univariate([], domain)
        for i in range(3):
            for j in range(3):
                if self.gamma[i][j] != 0:
                    gamma += univariate([self.gamma[i][j]], domain) * coordinates[i] * coordinates[j]
        quartic = coefficient_list(beta**2 - univariate([4 * self.alpha], domain) * gamma)
        return quartic + [as_scalar(0)] * (5 - len(quartic))

    def conic_at(self, t: Scalar) -> Tuple[Scalar, Scalar, Scalar]:
        """F(t)."""
        return tuple(poly_value(coordinate, t) for coordinate in self.conic_lists())

    def beta(self, point3: Sequence[Scalar]) -> Scalar:
        """The linear form beta."""
        total: Scalar = 0
        for weight, x in zip(self.beta_row, point3):
            total = total + weight * x
        return total

    def parameter(self, point3: Sequence[Scalar]) -> Scalar:
        """The chart coordinate t of a conic point."""
        a, b = self.conic.parameter_of(point3)
        return a / b if self.affine_in_a else b / a

    def forward(self, point):
        """Point of the intersection -> (t, v)."""
        point3 = [point[m] for m in self.rest]
        t = self.parameter(point3)
        image = self.conic_at(t)
        j = next(index for index, x in enumerate(image) if x != 0)
        rho = point3[j] / image[j]
        w = point[self.vertex] / rho
        return (t, 2 * self.alpha * w + self.beta(image))

    def backward(self, point):
        """(t, v) -> point of the intersection."""
        t, v = point
        image = self.conic_at(t)
        w = (v - self.beta(image)) / (2 * self.alpha)
        coordinates = list(image)
        coordinates.insert(self.vertex, w)
        return tuple(coordinates)

    def points_over_infinity(self) -> List[tuple]:
        """Rational points of the intersection whose chart coordinate t is infinite."""
        a, b = (1, 0) if self.affine_in_a else (0, 1)
        image = self.conic(a, b)
        beta = self.beta(image)
        gamma = quadratic_value(self.gamma, image)
        discriminant = beta**2 - 4 * self.alpha * gamma
        if not (is_rational(discriminant) and is_rational(self.alpha)) or to_fraction(discriminant) < 0:
            return []
        root = as_scalar(to_fraction(discriminant)).sqrt()
        if root is None:
            return []
        points = []
        for sign in ((1, -1) if root != 0 else (1,)):
            coordinates = list(image)
            coordinates.insert(self.vertex, (-beta + sign * root) / (2 * self.alpha))
            points.append(tuple(coordinates))
        return points


def _bilinear(matrix: Sequence[Sequence[Scalar]], u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    total: Scalar = 0
    for i, x in enumerate(u):
        if x == 0:
            continue
        for j, y in enumerate(v):
            if y != 0 and matrix[i][j] != 0:
                total = total + matrix[i][j] * x * y
    return total


def _coefficient(coefficients: Sequence[Scalar], degree: int) -> Scalar:
    return coefficients[degree] if degree < len(coefficients) else as_scalar(0)


class _TangentProjection:
    """Coordinates (s, v) on the quartic model v^2 = g2(s)^2 - 4*g1(s)*g3(s).

    In coordinates X = y + w*P the forms read S(y) + 2*w*L(y), so projecting from the base point P leaves the
    plane cubic S_A*L_B - S_B*L_A = 0 through n, the direction of the tangent line at P. The lines
    y = s*c0 + c1 + z*n through n meet the cubic where g1(s) z^2 + g2(s) z + g3(s) = 0, and v = 2*g1*z + g2.
    The line s = 0 is tangent to the cubic at n; its point v = -g2(0) is the base point.
    """

    variables = ("s", "v")
    description = "projection from the base point to quartic model"

    def __init__(self, intersection: QuadricIntersection):
        """Splits both forms along the base point and picks the pencil of lines through n."""
        self.base = intersection.base
        self.pivot = first_nonzero(self.base)
        self.rest = [m for m in range(4) if m != self.pivot]
        self.forms = []
        for matrix in (intersection.first, intersection.second):
            square = [[matrix[i][j] for j in self.rest] for i in self.rest]
            self.forms.append((square, tuple(dot(matrix[i], self.base) for i in self.rest)))
        (square_a, linear_a), (square_b, linear_b) = self.forms
        self.n = cross(linear_a, linear_b)
        if is_zero_vector(self.n):
            raise SingularCurveError(f"both quadrics of {intersection} have the same tangent plane at the base point")
        q_a, q_b = quadratic_value(square_a, self.n), quadratic_value(square_b, self.n)
        tangent = tuple(q_b * x - q_a * y for x, y in zip(linear_a, linear_b))
        if is_zero_vector(tangent):
            raise SingularCurveError(f"the projection of {intersection} from its base point is singular")
        p = first_nonzero(tangent)
        zero = as_scalar(0)
        self.c0 = tuple(as_scalar(1) if m == p else zero for m in range(3))
        candidates = []
        for i in range(3):
            if i != p:
                candidate = [zero] * 3
                candidate[i], candidate[p] = tangent[p], -tangent[i]
                candidates.append(tuple(candidate))
        self.c1 = next(c for c in candidates if not projectively_equal(c, self.n))
        self.g1, self.g2, self.g3 = self._line_coefficients(tangent[p])

    def _line_coefficients(self, slope: Scalar) -> Tuple[List[Scalar], List[Scalar], List[Scalar]]:
        """g1, g2 and g3 as coefficient lists in s."""
        c0, c1, n = self.c0, self.c1, self.n
        pieces = []
        for square, linear in self.forms:
            at_d = [dot(linear, c1), dot(linear, c0)]
            paired = [_bilinear(square, c1, n), _bilinear(square, c0, n)]
            squared = [quadratic_value(square, c1), 2 * _bilinear(square, c0, c1), quadratic_value(square, c0)]
            pieces.append((at_d, paired, squared))
        domain = scalar_domain([slope, *(x for piece in pieces for coefficients in piece for x in coefficients)])
        (l_a, b_a, q_a), (l_b, b_b, q_b) = [[univariate(c, domain) for c in piece] for piece in pieces]
        g1 = univariate([0, slope], domain)
        g2 = univariate([2], domain) * (l_a * b_b - l_b * b_a)
        g3 = l_a * q_b - l_b * q_a
        self.domain = domain
        return coefficient_list(g1), coefficient_list(g2), coefficient_list(g3)

    def quartic(self) -> List[Scalar]:
        """Coefficients of g2^2 - 4*g1*g3."""
        g1, g2, g3 = (univariate(g, self.domain) for g in (self.g1, self.g2, self.g3))
        quartic = coefficient_list(g2**2 - univariate([4], self.domain) * g1 * g3)
        return quartic + [as_scalar(0)] * (5 - len(quartic))

    def lift(self, y: Sequence[Scalar]) -> tuple:
        """The point of the intersection over a point y of the plane cubic other than n."""
        for square, linear in self.forms:
            along = dot(linear, y)
            if along != 0:
                w = -quadratic_value(square, y) / (2 * along)
                break
        else:
            raise ZeroDivisionError(f"{y} lies on the tangent line at the base point")
        coordinates = [y[index] + self.base[m] * w for index, m in enumerate(self.rest)]
        coordinates.insert(self.pivot, self.base[self.pivot] * w)
        return tuple(coordinates)

    def forward(self, point):
        """Point of the intersection -> (s, v)."""
        w = point[self.pivot] / self.base[self.pivot]
        y = tuple(point[m] - self.base[m] * w for m in self.rest)
        if is_zero_vector(y):
            return (as_scalar(0), -poly_value(self.g2, as_scalar(0)))
        frame = determinant((self.c0, self.c1, self.n))
        s0 = determinant((y, self.c1, self.n)) / frame
        s1 = determinant((self.c0, y, self.n)) / frame
        z = determinant((self.c0, self.c1, y)) / frame
        s = s0 / s1
        return (s, 2 * poly_value(self.g1, s) * (z / s1) + poly_value(self.g2, s))

    def backward(self, point):
        """(s, v) -> point of the intersection."""
        s, v = point
        if s == 0:
            g2, g3 = poly_value(self.g2, s), poly_value(self.g3, s)
            if g2 == 0 or v != g2:
                return self.base
            return self.lift(tuple(c + (-g3 / g2) * x for c, x in zip(self.c1, self.n)))
        z = (v - poly_value(self.g2, s)) / (2 * poly_value(self.g1, s))
        return self.lift(tuple(s * a + b + z * x for a, b, x in zip(self.c0, self.c1, self.n)))

    def points_over_infinity(self) -> List[tuple]:
        """Rational points of the intersection on the line s = infinity through n."""
        a, b, c = (_coefficient(g, degree) for g, degree in ((self.g1, 1), (self.g2, 2), (self.g3, 3)))
        discriminant = b**2 - 4 * a * c
        if not all(is_rational(x) for x in (a, b, discriminant)) or to_fraction(discriminant) < 0:
            return []
        root = as_scalar(to_fraction(discriminant)).sqrt()
        if root is None:
            return []
        points = []
        for sign in ((1, -1) if root != 0 else (1,)):
            z = (-b + sign * root) / (2 * a)
            points.append(self.lift(tuple(x + z * y for x, y in zip(self.c0, self.n))))
        return points


def _cone_reduction(intersection: QuadricIntersection):
    found = _find_cone(intersection)
    if found is None:
        return None
    cone, other, vertex = found
    rest = [m for m in range(4) if m != vertex]
    base3 = [intersection.base[m] for m in rest]
    if is_zero_vector(base3):
        return None
    conic = parametrize_conic([[cone[i][j] for j in rest] for i in rest], base3)
    a0, b0 = conic.parameter_of(base3)
    logger.debug("%s is a cone on coordinate %s", intersection, intersection.variables[vertex])
    return _ConeReduction(conic, other, vertex, affine_in_a=b0 != 0)


def quadrics_to_weierstrass(intersection: QuadricIntersection) -> Tuple[WeierstrassCurve, BirationalMap]:
    """Weierstrass model of an intersection of two quadrics and an exact map sending the base point to infinity.

    A cone in the pencil with vertex off the base point is used when one of the two forms is free of a coordinate;
    any other intersection goes through the projection from its base point.
    """
    reduction = _cone_reduction(intersection) or _TangentProjection(intersection)
    start = reduction.forward(intersection.base)
    model = QuarticModel(tuple(reduction.quartic()), 1, start, variables=reduction.variables)
    to_quartic = BirationalMap(
        source=intersection,
        target=model,
        stages=(MapStage(reduction.description, reduction.forward, reduction.backward),),
        exceptional=tuple(reduction.points_over_infinity()),
    )
    curve, quartic_map = quartic_to_weierstrass(model)
    logger.debug("%s gives quartic %s", reduction.description, model)
    return curve, to_quartic.compose(quartic_map)
