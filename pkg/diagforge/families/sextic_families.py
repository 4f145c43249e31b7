"""This file contains the sextic families a x^6 + b y^6 + c z^e + d w^f = 0 with (e, f) in {(6, 2), (6, 3), (6, 6)}."""

from diagforge.algebra.field import FieldElem
from diagforge.algebra.mpoly import MPoly
from diagforge.families.base import (
    Construction,
    CurveKind,
    Exclusion,
    FamilySpec,
    Params,
    nonzero,
    point,
    rational_root,
)
from diagforge.genus1.conic import parametrize_conic
from diagforge.genus1.cubic import PlaneCubic
from diagforge.genus1.quartic import QuarticModel

SEXTIC_W2 = (6, 6, 6, 2)
SEXTIC_W3 = (6, 6, 6, 3)
SEXTIC_W6 = (6, 6, 6, 6)

_CONIC_VARIABLES = ("T", "S", "z")


# --- conics Q(T, S) = z^2 with w a cubic form in T, S ---------------------------------------------------------------


def _build_w2_row1(params: Params) -> Construction:
    t = params["t"]
    T, S, z = MPoly.variables_of(*_CONIC_VARIABLES)
    conic = parametrize_conic(((1, FieldElem("1/2"), 0), (FieldElem("1/2"), 0, 0), (0, 0, -1)), (0, 1, 0))
    pullback = (T, S + T, z, (S + T) ** 3 - t * T**3)
    return Construction((t**2, 1, -2 * t, -1), conic, _CONIC_VARIABLES, pullback)


def _build_w2_row2(params: Params) -> Construction:
    t = params["t"]
    T, S, z = MPoly.variables_of(*_CONIC_VARIABLES)
    conic = parametrize_conic(((1 + 2 * t, 1, 0), (1, 1, 0), (0, 0, -1)), (0, 1, 1))
    pullback = (T, S + T, z, 4 * T * ((S + T) ** 2 + t * T**2))
    return Construction((16 * t**3, 8, -8, 3 * t), conic, _CONIC_VARIABLES, pullback)


_ROW34_CONIC = ((6, FieldElem("-3/2"), 0), (FieldElem("-3/2"), 1, 0), (0, 0, -1))


def _build_w2_row3(params: Params) -> Construction:
    T, S, z = MPoly.variables_of(*_CONIC_VARIABLES)
    conic = parametrize_conic(_ROW34_CONIC, (0, 1, 1))
    w = -(S**3) + 6 * T * S**2 - 12 * T**2 * S + 18 * T**3
    return Construction((1, -108, -4, 3), conic, _CONIC_VARIABLES, (S, T, z, w))


def _build_w2_row4(params: Params) -> Construction:
    T, S, z = MPoly.variables_of(*_CONIC_VARIABLES)
    conic = parametrize_conic(_ROW34_CONIC, (0, 1, 1))
    w = -(S**3) + 4 * T * S**2 - 12 * T**2 * S + 12 * T**3
    return Construction((1, -432, 8, -9), conic, _CONIC_VARIABLES, (S, T, z, w))


# --- plane cubics ---------------------------------------------------------------------------------------------------


def _cube_root(params: Params):
    return rational_root(params["t"], 3)


def _build_w3_chain(params: Params) -> Construction:
    t, m = params["t"], params["m"]
    T, S, z = MPoly.variables_of(*_CONIC_VARIABLES)
    c = FieldElem(_cube_root(params))
    cubic = PlaneCubic((S + T) ** 3 - t * T**3 - m * z**3, point(1, c - 1, 0), _CONIC_VARIABLES)
    pullback = (T, T + S, z, -T * (T + S))
    seed = point(params["T0"], 1, params["z0"])
    return Construction((t**2, 1, -(m**2), 2 * t), cubic, _CONIC_VARIABLES, pullback, seed)


def _cubic_section_t(a):
    return (1 + 12 * a**2 + 12 * a**3) / (1 + 6 * a + 18 * a**3)


def _build_cubic_section(params: Params) -> Construction:
    a = params["a"]
    t = _cubic_section_t(a)
    variables = ("x", "y", "z")
    x, y, z = MPoly.variables_of(*variables)
    form = (3 * t**2 + 1) * x**3 + (6 * t**2 - 2) * z**3 - 36 * t * y**3
    cubic = PlaneCubic(form, point(6 * a**2 - 1, a * (3 * a + 2), 6 * a**2 + 3 * a + 1), variables)
    pullback = (x, y, z, t * (x**3 + 2 * z**3) - 6 * y**3)
    return Construction((1, -108, -4, 3), cubic, variables, pullback, cubic.tangential_point(cubic.base))


# --- quartic models -------------------------------------------------------------------------------------------------


def _third_polynomial(p, q) -> MPoly:
    """G(T) = p T^6 + q (T + (p+q)/q)^6 - (p+q)(T+1)^6, of degree four."""
    p, q = FieldElem(p), FieldElem(q)
    T = MPoly.variable("T", ("T", "w"))
    return p * T**6 + q * (T + (p + q) / q) ** 6 - (p + q) * (T + 1) ** 6


def _third_construction(p, q, t) -> Construction:
    variables = ("T", "w")
    T, w = MPoly.variables_of(*variables)
    g = _third_polynomial(p, q)
    g_t = point(g.evaluate({"T": t}))[0]
    curve = QuarticModel.from_polynomial(g, "T", g_t, point(t, 1), variables)
    pullback = (T, T + (p + q) / q, T + 1, w)
    return Construction((p, q, -(p + q), -g_t), curve, variables, pullback, point(t, -1))


def _third_g_at(params: Params):
    return _third_polynomial(params["p"], params["q"]).evaluate({"T": params["t"]})


def _build_third_pq(params: Params) -> Construction:
    return _third_construction(params["p"], params["q"], params["t"])


def _build_third_11m2(params: Params) -> Construction:
    return _third_construction(FieldElem(1), FieldElem(1), params["t"])


def _sextsurf_polynomials(p, q):
    """G1, G2, G3 and F in ("t", "W") with 2 G1^6 - 2 G2^6 - (p^2 - 5q^2)^3 G3^6 = F^3."""
    t = MPoly.variable("t", ("t", "W"))
    g1 = (p + q) * t**2 + 4 * q * t + p - q
    g2 = 2 * q * t**2 + (2 * p - 2 * q) * t - p + 3 * q
    g3 = t**2 - t - 1
    f = (
        (p**2 + 4 * p * q - q**2) * t**4
        + (2 * p**2 + 22 * q**2) * t**3
        - (3 * p**2 - 24 * p * q + 9 * q**2) * t**2
        + (6 * p**2 - 16 * p * q + 18 * q**2) * t
        + 8 * p * q
        - 11 * q**2
        - p**2
    )
    return g1, g2, g3, f


def _chain_polynomials():
    t = MPoly.variable("t", ("t", "W"))
    return t**2 + 2 * t, t**2 + 1, t**2 - t - 1, t**4 + 6 * t**3 + 3 * t**2 + 2 * t - 1


def _sextsurf_construction(polynomials, c, t0) -> Construction:
    g1, g2, g3, f = polynomials
    variables = ("t", "W")
    W = MPoly.variable("W", variables)
    f0 = point(f.evaluate({"t": t0}))[0]
    curve = QuarticModel.from_polynomial(f, "t", f0, point(t0, 1), variables)
    return Construction((2, -2, c, -(f0**3)), curve, variables, (g1, g2, g3, W), point(t0, -1))


def _build_sextsurf_pq(params: Params) -> Construction:
    p, q = params["p"], params["q"]
    return _sextsurf_construction(_sextsurf_polynomials(p, q), -((p**2 - 5 * q**2) ** 3), params["t0"])


def _build_sextsurf_chain(params: Params) -> Construction:
    return _sextsurf_construction(_chain_polynomials(), 1, params["t0"])


def chain_quartic_at(t0) -> FieldElem:
    """f(t0) = t0^4 + 6 t0^3 + 3 t0^2 + 2 t0 - 1, the scale of the chain quartic."""
    return point(_chain_polynomials()[3].evaluate({"t": t0}))[0]


FAMILY_SPECS = (
    FamilySpec(
        "sextic_w2_row1",
        CurveKind.RATIONAL,
        ("t",),
        SEXTIC_W2,
        _build_w2_row1,
        sample={"t": "2"},
        exclusions=(nonzero("t", "t != 0", lambda params: params["t"]),),
        description="t^2 x^6 + y^6 - 2t z^6 = w^2 from the conic T(S+T) = z^2",
    ),
    FamilySpec(
        "sextic_w2_row2",
        CurveKind.RATIONAL,
        ("t",),
        SEXTIC_W2,
        _build_w2_row2,
        sample={"t": "1"},
        exclusions=(nonzero("t", "t != 0", lambda params: params["t"]),),
        description="16t^3 x^6 + 8 y^6 - 8 z^6 + 3t w^2 = 0 from the conic (S+T)^2 + 2t T^2 = z^2",
    ),
    FamilySpec(
        "sextic_w2_row3",
        CurveKind.RATIONAL,
        (),
        SEXTIC_W2,
        _build_w2_row3,
        note="abcd is a square",
        description="x^6 - 108 y^6 - 4 z^6 + 3 w^2 = 0 from the conic S^2 - 3TS + 6T^2 = z^2",
    ),
    FamilySpec(
        "sextic_w2_row4",
        CurveKind.RATIONAL,
        (),
        SEXTIC_W2,
        _build_w2_row4,
        description="x^6 - 432 y^6 + 8 z^6 - 9 w^2 = 0 from the conic S^2 - 3TS + 6T^2 = z^2",
    ),
    FamilySpec(
        "sextic_w3_chain",
        CurveKind.PLANE_CUBIC,
        ("t", "m", "T0", "z0"),
        SEXTIC_W3,
        _build_w3_chain,
        sample={"t": "1"},
        defaults={"m": "6", "T0": "-37/54", "z0": "7/18"},
        exclusions=(
            nonzero("t", "t != 0", lambda params: params["t"]),
            Exclusion("t", "t is a rational cube", lambda params: _cube_root(params) is None),
            nonzero("m", "m != 0", lambda params: params["m"]),
        ),
        description="t^2 x^6 + y^6 - m^2 z^6 + 2t w^3 = 0 from the cubic (S+T)^3 - t T^3 = m z^3",
    ),
    FamilySpec(
        "sextic_cubic_section",
        CurveKind.PLANE_CUBIC,
        ("a",),
        SEXTIC_W2,
        _build_cubic_section,
        sample={"a": "2"},
        exclusions=(
            nonzero("a", "1 + 6a + 18a^3 != 0", lambda params: 1 + 6 * params["a"] + 18 * params["a"] ** 3),
            nonzero("a", "1 + 12a^2 + 12a^3 != 0", lambda params: 1 + 12 * params["a"] ** 2 + 12 * params["a"] ** 3),
        ),
        note="abcd is a square",
        description="x^6 - 108 y^6 - 4 z^6 + 3 w^2 = 0 on (3t^2+1)x^3 + (6t^2-2)z^3 = 36t y^3, t = phi(a)",
    ),
    FamilySpec(
        "sextic_third_PQ",
        CurveKind.QUARTIC,
        ("p", "q", "t"),
        SEXTIC_W2,
        _build_third_pq,
        sample={"p": "1", "q": "2", "t": "1"},
        exclusions=(
            nonzero("p", "p != 0", lambda params: params["p"]),
            nonzero("q", "q != 0", lambda params: params["q"]),
            nonzero("q", "p + q != 0", lambda params: params["p"] + params["q"]),
            nonzero("t", "G(t) != 0", _third_g_at),
        ),
        description="p x^6 + q y^6 - (p+q) z^6 - G(t) w^2 = 0 along G(t) w^2 = G(T)",
    ),
    FamilySpec(
        "sextic_third_11m2",
        CurveKind.QUARTIC,
        ("t",),
        SEXTIC_W2,
        _build_third_11m2,
        sample={"t": "-2"},
        exclusions=(nonzero("t", "G(t) != 0", lambda params: _third_polynomial(1, 1).evaluate({"T": params["t"]})),),
        description="x^6 + y^6 - 2 z^6 - 2(31 + 90t + 105t^2 + 60t^3 + 15t^4) w^2 = 0",
    ),
    FamilySpec(
        "sec6_sextsurf_pq",
        CurveKind.QUARTIC,
        ("p", "q", "t0"),
        SEXTIC_W6,
        _build_sextsurf_pq,
        sample={"p": "2", "q": "1", "t0": "1"},
        exclusions=(
            nonzero("q", "(p, q) != (0, 0)", lambda params: params["p"] ** 2 + params["q"] ** 2),
            nonzero(
                "t0",
                "F(t0) != 0",
                lambda params: _sextsurf_polynomials(params["p"], params["q"])[3].evaluate({"t": params["t0"]}),
            ),
        ),
        description="2 x^6 - 2 y^6 - (p^2-5q^2)^3 z^6 - F(t0)^3 w^6 = 0 along F(t0) W^2 = F(t)",
    ),
    FamilySpec(
        "sec6_sextsurf_chain",
        CurveKind.QUARTIC,
        ("t0",),
        SEXTIC_W6,
        _build_sextsurf_chain,
        sample={"t0": "1"},
        exclusions=(nonzero("t0", "f(t0) != 0", lambda params: chain_quartic_at(params["t0"])),),
        description="2 x^6 - 2 y^6 + z^6 - f(t0)^3 w^6 = 0, f = t^4 + 6t^3 + 3t^2 + 2t - 1",
    ),
)
