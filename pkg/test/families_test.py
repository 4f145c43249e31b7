"""This file contains tests of the surface model, the family registry and the generated points."""

from fractions import Fraction
from itertools import product

import pytest

from diagforge.algebra import MPoly, RationalFunction
from diagforge.errors import InadmissibleParameterError, TrivialPointError, UnknownFamilyError
from diagforge.families import (
    DiagonalSurface,
    Marker,
    ProjPoint,
    canonicalize,
    carmichael_solution,
    conic_2k2_solution,
    equalized_chain,
    generate_points,
    get_family,
    height,
    instantiate,
    list_families,
    same_solution,
    sign_variants,
    sixth_power_chain,
)
from diagforge.genus1 import WeierstrassCurve, parametrize_conic
from diagforge.genus1.scalars import projectively_equal
from diagforge.verify import check_point

QUARTIC = DiagonalSurface((1, 1, -2, -14))
WEIGHTED = DiagonalSurface((1, 1, -36, 2), (6, 6, 6, 3))


def test_surface_rejects_bad_input():
    """Unsupported exponents and vanishing coefficients are errors."""
    with pytest.raises(ValueError):
        DiagonalSurface((1, 1, 1, 1), (4, 4, 4, 6))
    with pytest.raises(ValueError):
        DiagonalSurface((1, 0, 1, 1))
    with pytest.raises(ValueError):
        DiagonalSurface((1, 1, 1))


@pytest.mark.parametrize("coordinates", [(0, 0, 0, 0), (1, 2, 3), (1.0, 2, 3, 4)])
def test_point_rejects_bad_input(coordinates):
    """Points are four integers, not all zero."""
    with pytest.raises(ValueError):
        ProjPoint(coordinates)


def test_trivial_points():
    """Two zero coordinates make a point trivial."""
    assert ProjPoint((1, 0, 0, 1)).is_trivial
    assert not ProjPoint((0, 2, 1, 1)).is_trivial
    assert ProjPoint((0, 2, 1, 1)).zero_count == 1


def test_weights():
    """Weights are lcm / exponent."""
    assert QUARTIC.weights == (1, 1, 1, 1)
    assert WEIGHTED.weights == (1, 1, 1, 2)
    assert DiagonalSurface((1, 1, 1, 1), (6, 6, 3, 2)).weights == (1, 1, 2, 3)


@pytest.mark.parametrize(
    "surface, coordinates, expected",
    [
        (QUARTIC, (2, 4, 6, 8), (1, 2, 3, 4)),
        (QUARTIC, (-1, 2, 3, 4), (1, -2, -3, -4)),
        (QUARTIC, (0, Fraction(-1, 2), Fraction(1, 3), 1), (0, 3, -2, -6)),
        (WEIGHTED, (2, 2, 2, 8), (1, 1, 1, 2)),
        (WEIGHTED, (Fraction(1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(1, 4)), (1, 1, 1, 1)),
        (WEIGHTED, (-1, 1, 1, 2), (1, -1, -1, 2)),
    ],
)
def test_canonical_representative(surface, coordinates, expected):
    """Weighted scaling to coprime integers with a positive leading odd-weight coordinate."""
    assert canonicalize(surface, coordinates) == ProjPoint(expected)


def test_canonical_form_is_idempotent():
    """Canonicalizing twice changes nothing."""
    point = canonicalize(WEIGHTED, (37, -17, -21, 629))
    assert canonicalize(WEIGHTED, point.coordinates) == point


def test_sign_variants():
    """Even exponents allow sign changes; the weight two coordinate keeps its sign."""
    assert len(sign_variants(QUARTIC, ProjPoint((1, 2, 3, 4)))) == 8
    variants = sign_variants(WEIGHTED, ProjPoint((1, 2, 3, 4)))
    assert len(variants) == 4
    assert all(point[3] == 4 for point in variants)
    assert same_solution(WEIGHTED, (37, 17, 21, 629), (-37, 17, -21, 629))
    assert not same_solution(WEIGHTED, (37, 17, 21, 629), (37, 17, 21, -629))


def test_heights():
    """The height compares coordinate i against H^w_i."""
    assert height(QUARTIC, ProjPoint((0, 2, 1, -1))) == 2
    assert height(WEIGHTED, ProjPoint((37, 17, 21, 629))) == 37
    assert height(WEIGHTED, ProjPoint((1, 1, 1, 10))) == 4


def test_registry_lists_every_family_once():
    """Ids are unique and lookup goes both ways."""
    ids = [spec.family_id for spec in list_families()]
    assert len(ids) == len(set(ids)) == 23
    assert ids[0] == "v1_ex1"
    for family_id in ids:
        assert get_family(family_id).family_id == family_id
        assert get_family(family_id).describe()["id"] == family_id


def test_unknown_family():
    """Lookups of unregistered ids fail."""
    with pytest.raises(UnknownFamilyError):
        instantiate("nosuch", {})


@pytest.mark.parametrize(
    "family_id, params, parameter",
    [
        ("v1_ex1", {"u": "0"}, "u"),
        ("v1_ex1", {"u": "-1/2"}, "u"),
        ("v1_ex1", {}, "u"),
        ("v1_ex1", {"u": "x"}, "u"),
        ("v1_ex1", {"u": "3", "v": "1"}, "v"),
        ("sextic_w3_chain", {"t": "2"}, "t"),
        ("carmichael", {"a": "1", "c": "1", "d": "3"}, "d"),
    ],
)
def test_inadmissible_parameters(family_id, params, parameter):
    """Excluded, missing, malformed and unknown parameters name the offending parameter."""
    with pytest.raises(InadmissibleParameterError) as error:
        instantiate(family_id, params)
    assert error.value.family == family_id
    assert error.value.parameter == parameter


@pytest.mark.parametrize("family_id", [spec.family_id for spec in list_families()])
def test_generated_points_lie_on_the_surface(family_id):
    """Every family at its sample parameters produces exact points for m = 1..5."""
    instance = instantiate(family_id, {}, use_sample=True)
    generated = generate_points(instance, range(1, 6))
    assert [m for m, _ in generated] == [1, 2, 3, 4, 5]
    points = [point for _, point in generated if not isinstance(point, Marker)]
    assert points
    for point in points:
        assert not point.is_trivial
        assert canonicalize(instance.surface, point.coordinates) == point
        assert check_point(instance.surface, point).accepted


@pytest.mark.parametrize(
    "family_id, params",
    [("v1_ex1", {"u": "3"}), ("sec3_St", {"u": "1"}), ("sextic_w3_chain", {"t": "1"})],
)
def test_heights_grow_with_the_multiple(family_id, params):
    """Seeds of infinite order give points of strictly increasing height."""
    instance = instantiate(family_id, params)
    heights = [height(instance.surface, point) for _, point in generate_points(instance, range(1, 5))]
    assert heights == sorted(heights)
    assert len(set(heights)) == len(heights)


@pytest.mark.parametrize(
    "family_id, params, m, expected",
    [
        ("v1_ex1", {"u": "3"}, 2, (5, 1, -3, -7)),
        ("v1_ex1", {"u": "3"}, 3, (155, 21, 167, 43)),
        ("sec3_St", {"u": "1"}, 1, (0, 2, 1, -1)),
        ("sec3_St", {"u": "1"}, 2, (280, 58, 111, 143)),
        ("v2_ex2", {"alpha": "2"}, 2, (169, 1, 13, -239)),
        ("ident0", {"a": "1", "b": "1", "c": "2"}, 2, (-23, 40, 7, 53)),
        ("ident1_surf1", {"p": "1", "q": "3", "r": "1"}, 2, (-8, 25, -19, -31)),
        ("ident2_surf2", {"r": "1", "s": "2"}, 2, (-40, -47, 57, 37)),
        ("ident3_surf3", {"a": "3"}, 2, (-72, 1, -6, 161)),
        ("modsquares_m", {"m": "2"}, 2, (4, 25, -19, 31)),
        ("sextic_third_11m2", {"t": "-2"}, 2, (199, 217, 9, 1638832)),
    ],
)
def test_known_points(family_id, params, m, expected):
    """Multiples of the seed reproduce the known small solutions."""
    instance = instantiate(family_id, params)
    [(_, point)] = generate_points(instance, [m])
    assert same_solution(instance.surface, point, expected)


@pytest.mark.parametrize(
    "m, expected",
    [
        (1, (37, -17, -21, 629)),
        (2, (1805723, 2237723, 960540, -4040707888729)),
        (3, (209143555850753, 84691068680987, -112490043311709, -17712591252741962842340733211)),
    ],
)
def test_weighted_chain_points(m, expected):
    """t^2 x^6 + y^6 - 36 z^6 + 2t w^3 = 0 at t = 1 through the cubic (S+T)^3 - T^3 = 6 z^3."""
    instance = instantiate("sextic_w3_chain", {"t": "1"})
    assert instance.surface == WEIGHTED
    [(_, point)] = generate_points(instance, [m])
    assert same_solution(instance.surface, point, expected)
    assert instance.surface.contains(expected)


def test_carmichael_points():
    """The closed form solution of x^4 - y^4 + z^4 + 4w^4 = 0."""
    assert carmichael_solution(1, 1, 4, 1, 1) == ProjPoint((7, 9, 8, 2))
    with pytest.raises(TrivialPointError):
        carmichael_solution(1, 1, 4, 0, 1)
    with pytest.raises(InadmissibleParameterError):
        carmichael_solution(1, 1, 3, 1, 1)


def test_conic_2k2_solution():
    """Forms built from a parametrized conic solve x^4 + y^4 + z^4 = 2k^2 w^4 identically."""
    phi = parametrize_conic(((1, 0, 0), (0, 3, 0), (0, 0, -4)), (1, 1, 1)).forms()
    x, y, z, w = conic_2k2_solution(4, phi)
    assert (x**4 + y**4 + z**4 - 32 * w**4).is_zero()
    with pytest.raises(ValueError):
        conic_2k2_solution(2, phi)
    with pytest.raises(InadmissibleParameterError):
        conic_2k2_solution(0, phi)


@pytest.mark.parametrize(
    "params, first",
    [({"k": "4", "x1": "1", "x2": "1"}, (2, -2, 0, -1)), ({"k": "7", "x1": "2", "x2": "1"}, (3, -2, 1, -1))],
)
def test_conic_2k2_family_generates_points(params, first):
    """Base points on X1^2 + 3 X2^2 = k X3^2 give five solutions of x^4 + y^4 + z^4 = 2k^2 w^4."""
    instance = instantiate("conic_2k2", params)
    generated = generate_points(instance, range(1, 6))
    assert [m for m, _ in generated] == [1, 2, 3, 4, 5]
    for _, point in generated:
        assert isinstance(point, ProjPoint)
        assert check_point(instance.surface, point).accepted
    assert same_solution(instance.surface, generated[0][1].coordinates, first)


def test_conic_2k2_needs_a_base_point_on_the_conic():
    """(x1, x2, 1) off X1^2 + 3 X2^2 = k X3^2 is inadmissible."""
    with pytest.raises(InadmissibleParameterError) as raised:
        instantiate("conic_2k2", {"k": "5", "x1": "1", "x2": "1"})
    assert raised.value.family == "conic_2k2"
    assert raised.value.parameter == "k"


def _proportional_up_to_signs(point, expected):
    return any(
        projectively_equal(point, tuple(s * e for s, e in zip(signs, expected)))
        for signs in product((1, -1), repeat=4)
    )


def test_symbolic_pullback_of_the_first_fibration():
    """Over Q(u) the point 2Q pulls back to (1+10u+u^2, -4(1-u), -3-10u+u^2, 1-10u-3u^2)."""
    instance = instantiate("v1_ex1", {"u": MPoly.variable("u")})
    assert instance.is_symbolic
    u = RationalFunction.variable("u")
    expected = (1 + 10 * u + u**2, -4 * (1 - u), -3 - 10 * u + u**2, 1 - 10 * u - 3 * u**2)
    assert _proportional_up_to_signs(instance.surface_point(2), expected)


def test_symbolic_pullback_of_the_rank_one_family():
    """M pulls back to (u-1, u+1, u, -1) and 2M to the degree nine solution on x^4 + y^4 - 2z^4 - 2(1+6u^2)w^4."""
    instance = instantiate("sec3_St", {"u": MPoly.variable("u")})
    u = RationalFunction.variable("u")
    assert _proportional_up_to_signs(instance.surface_point(1), (u - 1, u + 1, u, -1))
    double = (
        -1 - 3 * u - 36 * u**3 + 54 * u**4 - 162 * u**5 - 324 * u**7 - 729 * u**8 + 81 * u**9,
        1 - 3 * u - 36 * u**3 - 54 * u**4 - 162 * u**5 - 324 * u**7 + 729 * u**8 + 81 * u**9,
        3 * u * (-1 - 12 * u**2 - 54 * u**4 - 108 * u**6 + 27 * u**8),
        -(1 + 12 * u**2 + 9 * u**4) * (-1 + 27 * u**4),
    )
    assert _proportional_up_to_signs(instance.surface_point(2), double)


def test_generation_rejects_bad_requests():
    """Zero multiples and symbolic instances are errors."""
    instance = instantiate("v1_ex1", {"u": "3"})
    with pytest.raises(ValueError):
        generate_points(instance, [0, 1])
    with pytest.raises(ValueError):
        generate_points(instantiate("v1_ex1", {"u": MPoly.variable("u")}), [1])


def test_generation_does_not_depend_on_threads():
    """One worker and four workers give identical output."""
    instance = instantiate("sec3_St", {"u": "1"})
    assert generate_points(instance, range(1, 6), threads=1) == generate_points(instance, range(1, 6), threads=4)


def test_sixth_power_chain():
    """At t0 = 1 the first member is (3, 2, -1, 1) with 2*3^6 - 2*2^6 + 1 = 11^3."""
    [first] = sixth_power_chain(1, 1)
    surface = DiagonalSurface((2, -2, 1, -1331), (6, 6, 6, 6))
    assert same_solution(surface, first, (3, 2, -1, 1))
    assert sixth_power_chain(1, 0) == []
    with pytest.raises(ValueError):
        sixth_power_chain(1, -1)


def test_equalized_chain():
    """Rescaled members share the value of 2X^6 - 2Y^6 + Z^6."""
    value, members = equalized_chain(1, 1)
    assert value == 1331
    assert len(members) == 1
    value, members = equalized_chain(1, 3)
    assert len(members) == 3
    assert len({abs(w) for _, _, _, w in members}) == 1
    for x, y, z, _ in members:
        assert 2 * x**6 - 2 * y**6 + z**6 == value


@pytest.mark.parametrize("u", [1, 2, 3])
def test_rank_one_fibre_matches_the_cubic_model(u):
    """The Weierstrass model of the fibre is isomorphic over Q to Y^2 = X^3 + 9(1 + 6u^2) X."""
    instance = instantiate("sec3_St", {"u": str(u)})
    assert instance.weierstrass.is_isomorphic(WeierstrassCurve(9 * (1 + 6 * u**2), 0)) is not None
