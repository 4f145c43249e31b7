"""This file contains tests of the curve models, their group laws and the birational maps between them."""

from fractions import Fraction

import numpy as np
import pytest

from diagforge.algebra import FieldElem, MPoly, RationalFunction
from diagforge.config import DEFAULT_SEED
from diagforge.errors import IndeterminateError, NotOnCurveError, SingularCurveError
from diagforge.genus1 import (
    ECPoint,
    PlaneCubic,
    QuadricIntersection,
    QuarticModel,
    WeierstrassCurve,
    cubic_mul,
    cubic_to_group,
    ec_add,
    ec_mul,
    ec_neg,
    lutz_nagell_integral,
    map_apply,
    parametrize_conic,
    pencil_discriminant,
    quadrics_to_weierstrass,
    quartic_to_weierstrass,
    torsion_test,
)
from diagforge.genus1.scalars import as_scalar, poly_value, projectively_equal, rational_roots, taylor_shift

CASES = 100


def fibration_curve(u):
    """Y^2 = X^3 + 27u(6+11u+6u^2)X + 54u^2(18+37u+18u^2) and the image of the seed (1,0,1,-1)."""
    curve = WeierstrassCurve(27 * u * (6 + 11 * u + 6 * u**2), 54 * u**2 * (18 + 37 * u + 18 * u**2))
    seed = ECPoint(as_scalar(3 * u * (3 * u + 4)), as_scalar(27 * u * (u + 1) * (u + 2)))
    return curve, seed


def test_seed_has_order_four_at_u_equal_one():
    """At u = 1 the seed image (21, 162) is a torsion point of order exactly 4."""
    curve, seed = fibration_curve(1)
    assert (curve.A, curve.B) == (621, 3942)
    assert seed == ECPoint(FieldElem(21), FieldElem(162))
    assert torsion_test(curve, seed) == 4
    assert ec_mul(curve, 4, seed).is_infinity
    assert not ec_mul(curve, 2, seed).is_infinity


def test_seed_has_infinite_order_at_u_equal_two():
    """At u = 2 the double of (60, 648) is not integral, so the point has infinite order."""
    curve, seed = fibration_curve(2)
    assert seed == ECPoint(FieldElem(60), FieldElem(648))
    double = ec_mul(curve, 2, seed)
    assert double.x == Fraction(-39, 4)
    assert not lutz_nagell_integral(curve, double)
    assert lutz_nagell_integral(curve, seed)
    assert torsion_test(curve, seed) is None


def test_symbolic_multiples_specialize():
    """2U computed over Q(u) and specialized at u = 2 equals 2U computed over Q."""
    u = RationalFunction.variable("u")
    curve, seed = fibration_curve(u)
    assert curve.contains(seed)
    double = ec_mul(curve, 2, seed)
    assert double.x.evaluate({"u": FieldElem(2)}) == Fraction(-39, 4)
    special_curve, special_seed = fibration_curve(2)
    assert double.y.evaluate({"u": FieldElem(2)}) == ec_mul(special_curve, 2, special_seed).y


def test_group_law_axioms():
    """Commutativity, associativity and inverses on Y^2 = X^3 + 17 with two independent points."""
    curve = WeierstrassCurve(0, 17)
    p = curve.point(-2, 3)
    q = curve.point(-1, 4)
    rng = np.random.default_rng(DEFAULT_SEED)

    def random_point():
        return ec_add(curve, ec_mul(curve, int(rng.integers(-3, 4)), p), ec_mul(curve, int(rng.integers(-3, 4)), q))

    for _ in range(CASES):
        a, b, c = random_point(), random_point(), random_point()
        assert ec_add(curve, a, b) == ec_add(curve, b, a)
        assert ec_add(curve, ec_add(curve, a, b), c) == ec_add(curve, a, ec_add(curve, b, c))
        assert ec_add(curve, a, ec_neg(curve, a)).is_infinity
        assert ec_add(curve, a, curve.base) == a


def test_multiplication_is_repeated_addition():
    """n * P agrees with adding P n times, for negative n too."""
    curve = WeierstrassCurve(0, 17)
    p = curve.point(-2, 3)
    total = curve.base
    for n in range(1, 7):
        total = ec_add(curve, total, p)
        assert ec_mul(curve, n, p) == total
        assert ec_mul(curve, -n, p) == -total
    assert ec_mul(curve, 0, p).is_infinity


def test_points_off_the_curve_are_rejected():
    """Group operations check their arguments."""
    curve = WeierstrassCurve(0, 17)
    with pytest.raises(NotOnCurveError):
        curve.point(1, 1)
    with pytest.raises(NotOnCurveError):
        ec_mul(curve, 2, ECPoint(FieldElem(1), FieldElem(1)))


def test_singular_weierstrass_curve():
    """4A^3 + 27B^2 = 0 is rejected."""
    with pytest.raises(SingularCurveError):
        WeierstrassCurve(-3, 2)


def test_isomorphic_curves():
    """Scaling by mu is detected, unrelated curves are not isomorphic."""
    curve = WeierstrassCurve(621, 3942)
    assert curve.is_isomorphic(curve.scaled(as_scalar(2))) == 2
    assert curve.scaled(as_scalar(3)).j_invariant() == curve.j_invariant()
    assert curve.is_isomorphic(WeierstrassCurve(1, 1)) is None


def test_long_weierstrass_form():
    """The change to the short model moves points between the two curves and back."""
    curve, stage = WeierstrassCurve.from_long(1, 0, 0, -1, 0)
    point = ECPoint(FieldElem(1), FieldElem(0))
    image = stage.forward(point)
    assert curve.contains(image)
    assert stage.backward(image) == point


def test_conic_parametrization_is_identically_on_the_conic():
    """Substituting the quadratic forms into X^2 + 3Y^2 - 4Z^2 gives the zero polynomial."""
    conic = parametrize_conic(((1, 0, 0), (0, 3, 0), (0, 0, -4)), (1, 1, 1))
    x, y, z = conic.forms()
    assert (x**2 + 3 * y**2 - 4 * z**2).is_zero()


def test_conic_parameters_round_trip():
    """parameter_of inverts the parametrization on random parameters."""
    matrix = ((1, 0, 0), (0, 3, 0), (0, 0, -4))
    conic = parametrize_conic(matrix, (1, 1, 1))
    rng = np.random.default_rng(DEFAULT_SEED)
    for _ in range(CASES):
        a, b = as_scalar(int(rng.integers(-20, 21))), as_scalar(int(rng.integers(1, 21)))
        point = conic(a, b)
        assert point[0] ** 2 + 3 * point[1] ** 2 - 4 * point[2] ** 2 == 0
        assert projectively_equal(conic.parameter_of(point), (a, b))


def test_degenerate_conics():
    """Singular matrices and base points off the conic are rejected."""
    with pytest.raises(SingularCurveError):
        parametrize_conic(((1, 0, 0), (0, 1, 0), (0, 0, 0)), (0, 0, 1))
    with pytest.raises(NotOnCurveError):
        parametrize_conic(((1, 0, 0), (0, 3, 0), (0, 0, -4)), (1, 0, 1))


def sum_of_cubes():
    """x^3 + y^3 = 9z^3 with origin (2, 1, 1) and the point (1, 2, 1)."""
    x, y, z = MPoly.variables_of("x", "y", "z")
    curve = PlaneCubic(x**3 + y**3 - 9 * z**3, (2, 1, 1))
    return curve, tuple(as_scalar(c) for c in (1, 2, 1))


def test_plane_cubic_group_law():
    """Chord-tangent multiples stay on the cubic and satisfy the group axioms."""
    curve, p = sum_of_cubes()
    assert projectively_equal(cubic_mul(curve, 2, p), cubic_to_group(curve, p, p))
    assert projectively_equal(curve.add(curve.negate(p), p), curve.base)
    assert projectively_equal(cubic_mul(curve, 0, p), curve.base)
    rng = np.random.default_rng(DEFAULT_SEED)
    for _ in range(CASES):
        a, b, c = (cubic_mul(curve, int(rng.integers(-3, 4)), p) for _ in range(3))
        assert curve.contains(a)
        assert projectively_equal(curve.add(a, b), curve.add(b, a))
        assert projectively_equal(curve.add(curve.add(a, b), c), curve.add(a, curve.add(b, c)))


def test_tangential_point_lies_on_the_cubic():
    """The third intersection of the tangent is a point of the curve."""
    curve, p = sum_of_cubes()
    assert curve.contains(curve.tangential_point(p))


def test_singular_and_malformed_cubics():
    """A cuspidal cubic is singular, a non-homogeneous form is no cubic form."""
    x, y, z = MPoly.variables_of("x", "y", "z")
    with pytest.raises(SingularCurveError):
        PlaneCubic(y**2 * z - x**3, (0, 1, 0))
    with pytest.raises(ValueError):
        PlaneCubic(x**3 + y**2 - z**3, (1, 0, 1))


def chain_quartic_model():
    """11 w^2 = t^4 + 6t^3 + 3t^2 + 2t - 1 through (1, 1)."""
    return QuarticModel((-1, 2, 3, 6, 1), 11, (1, 1))


def test_quartic_map_round_trip():
    """The base point goes to infinity, other points go to the Weierstrass curve and back."""
    model = chain_quartic_model()
    curve, mapping = quartic_to_weierstrass(model)
    assert map_apply(mapping, model.base).is_infinity
    point = (as_scalar(1), as_scalar(-1))
    image = map_apply(mapping, point)
    assert curve.contains(image)
    back = map_apply(mapping.inverse(), image)
    assert model.equal_points(back, point)


def test_quartic_multiples_round_trip():
    """Multiples of the image of (1, -1) pull back to points of the quartic model."""
    model = chain_quartic_model()
    curve, mapping = quartic_to_weierstrass(model)
    seed = map_apply(mapping, (as_scalar(1), as_scalar(-1)))
    inverse = mapping.inverse()
    for m in range(2, 5):
        assert model.contains(map_apply(inverse, ec_mul(curve, m, seed)))


def test_singular_quartic_models():
    """A repeated root or a vanishing scale is rejected."""
    with pytest.raises(SingularCurveError):
        QuarticModel((1, -2, 1), 1, (1, 0))
    with pytest.raises(SingularCurveError):
        QuarticModel((-1, 2, 3, 6, 1), 0, (1, 1))
    with pytest.raises(NotOnCurveError):
        QuarticModel((-1, 2, 3, 6, 1), 11, (1, 2))


def fibre_intersection(u):
    """X^2 - 2XY - 2uY^2 - Z^2 = X^2 + 2uXY - 2uY^2 - W^2 = 0 through (1, 0, 1, 1)."""
    X, Y, Z, W = MPoly.variables_of("X", "Y", "Z", "W")
    q_a = X**2 - 2 * X * Y - 2 * u * Y**2 - Z**2
    q_b = X**2 + 2 * u * X * Y - 2 * u * Y**2 - W**2
    return QuadricIntersection.from_polynomials(q_a, q_b, ("X", "Y", "Z", "W"), (1, 0, 1, 1))


def test_quadric_intersection_is_the_fibration_curve():
    """At u = 3 the Weierstrass model is isomorphic to the closed form curve and the seed is non-torsion."""
    intersection = fibre_intersection(3)
    curve, mapping = quadrics_to_weierstrass(intersection)
    expected, _ = fibration_curve(3)
    assert curve.j_invariant() == expected.j_invariant()
    assert curve.is_isomorphic(expected) is not None
    seed = map_apply(mapping, tuple(as_scalar(c) for c in (1, 0, 1, -1)))
    assert torsion_test(curve, seed) is None
    back = map_apply(mapping.inverse(), ec_mul(curve, 2, seed))
    assert intersection.contains(back)


def test_pencil_degenerates_at_excluded_parameters():
    """The discriminant of det(l A + B) vanishes at u in {-2, -1, -1/2, 0} and not at u = 3."""
    u = MPoly.variable("u")
    _, discriminant = pencil_discriminant(fibre_intersection(u))
    numerator = discriminant.numerator
    for value in ("-2", "-1", "-1/2", "0"):
        assert numerator.evaluate({"u": FieldElem(value)}) == 0
    assert numerator.evaluate({"u": FieldElem(3)}) != 0


def test_degenerate_pencil_is_rejected():
    """u = -1 makes the pencil singular."""
    with pytest.raises(SingularCurveError):
        fibre_intersection(-1)


def skew_intersection():
    """X^2 + Y^2 - Z^2 - W^2 = XY - ZW + XW = 0 through (1, 0, 1, 0); neither form is free of a coordinate."""
    X, Y, Z, W = MPoly.variables_of("X", "Y", "Z", "W")
    q_a = X**2 + Y**2 - Z**2 - W**2
    q_b = X * Y - Z * W + X * W
    return QuadricIntersection.from_polynomials(q_a, q_b, ("X", "Y", "Z", "W"), (1, 0, 1, 0))


@pytest.mark.parametrize("coordinates", [(1, 0, -1, 0), (0, 1, 1, 0), (0, 1, -1, 0)])
def test_intersection_without_a_cone_round_trip(coordinates):
    """The base point goes to infinity, other points go to the Weierstrass curve and back."""
    intersection = skew_intersection()
    curve, mapping = quadrics_to_weierstrass(intersection)
    assert map_apply(mapping, intersection.base).is_infinity
    point = tuple(as_scalar(c) for c in coordinates)
    image = map_apply(mapping, point)
    assert curve.contains(image)
    assert projectively_equal(map_apply(mapping.inverse(), image), point)


def test_intersection_without_a_cone_has_points_over_infinity():
    """(0, 1, 0, 1) and (0, 1, 0, -1) project to the line that the quartic chart misses."""
    intersection = skew_intersection()
    _, mapping = quadrics_to_weierstrass(intersection)
    for coordinates in ((0, 1, 0, 1), (0, 1, 0, -1)):
        with pytest.raises(IndeterminateError):
            map_apply(mapping, tuple(as_scalar(c) for c in coordinates))


def test_quartic_model_of_intersection_without_a_cone():
    """(0, 1, 1, 0) lands on v^2 = s^4/4 - s^2/256 + 1/16384 at (1/8, 1/128), the base point at (0, -1/128)."""
    intersection = skew_intersection()
    _, mapping = quadrics_to_weierstrass(intersection)
    to_quartic = mapping.stages[0]
    expected = QuarticModel((Fraction(1, 16384), 0, Fraction(-1, 256), 0, Fraction(1, 4)), 1, (0, Fraction(-1, 128)))
    assert to_quartic.forward(intersection.base) == expected.base
    image = to_quartic.forward(tuple(as_scalar(c) for c in (0, 1, 1, 0)))
    assert image == (as_scalar(Fraction(1, 8)), as_scalar(Fraction(1, 128)))
    assert expected.contains(image)


def test_univariate_helpers():
    """Values, Taylor shifts and rational roots of coefficient lists, constant term first."""
    u = RationalFunction.variable("u")
    assert taylor_shift([0, 0, 1], u) == [u**2, 2 * u, 1]
    assert poly_value([1, u, 1], as_scalar(2)) == 2 * u + 5
    shifted = taylor_shift([-1, 2, 3, 6, 1], as_scalar(1))
    assert poly_value(shifted, as_scalar(0)) == 11
    assert poly_value(shifted, as_scalar(1)) == 79
    assert rational_roots([-6, 1, 1]) == [Fraction(-3), Fraction(2)]
    assert rational_roots([1, 0, 1]) == []
    assert rational_roots([2]) == []
