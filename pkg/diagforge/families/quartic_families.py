"""This file contains the families of diagonal quartic surfaces a x^4 + b y^4 + c z^4 + d w^4 = 0.

Each builder returns the surface coefficients together with a fibre curve, a seed point on it and the pullback
from the curve to the surface. The curves are intersections of two quadrics in P^3, quartic models w^2 = F(t)
or, for the two rational families, parametrized lines and conics.
"""

from diagforge.algebra.field import FieldElem
from diagforge.algebra.mpoly import MPoly
from diagforge.families.base import (
    Construction,
    CurveKind,
    Exclusion,
    FamilySpec,
    Params,
    excluded_values,
    nonzero,
    point,
    rational_root,
    vanishing,
)
from diagforge.genus1.conic import parametrize_conic
from diagforge.genus1.quadrics import QuadricIntersection
from diagforge.genus1.quartic import QuarticModel

QUARTIC = (4, 4, 4, 4)

_XYZW = ("X", "Y", "Z", "W")
_TSZW = ("T", "S", "Z", "W")


def _intersection(q_a: MPoly, q_b: MPoly, variables, base) -> QuadricIntersection:
    return QuadricIntersection.from_polynomials(q_a, q_b, variables, point(*base))


# --- intersections found by asking for a rational point on the fibre ----------------------------------------------


def _build_v1_ex1(params: Params) -> Construction:
    u = params["u"]
    X, Y, Z, W = MPoly.variables_of(*_XYZW)
    q_a = X**2 - 2 * X * Y - 2 * u * Y**2 - Z**2
    q_b = X**2 + 2 * u * X * Y - 2 * u * Y**2 - W**2
    curve = _intersection(q_a, q_b, _XYZW, (1, 0, 1, 1))
    coefficients = (1 + u, 4 * u**2 * (1 + u), -u, -1)
    return Construction(coefficients, curve, _XYZW, (X, Y, Z, W), point(1, 0, 1, -1))


def _build_v2_ex2(params: Params) -> Construction:
    alpha = params["alpha"]
    X, Y, Z, W = MPoly.variables_of(*_XYZW)
    q_a = alpha * X**2 + (1 - alpha) * Y**2 - W**2
    q_b = X * Y - Z**2
    curve = _intersection(q_a, q_b, _XYZW, (1, 1, 1, 1))
    coefficients = (alpha**2, (1 - alpha) ** 2, 2 * alpha * (1 - alpha), -1)
    return Construction(coefficients, curve, _XYZW, (X, Y, Z, W), point(1, 1, -1, 1))


def _build_v3_surface1(params: Params) -> Construction:
    p, q = params["p"], params["q"]
    variables = ("x", "y", "Z", "W")
    x, y, Z, W = MPoly.variables_of(*variables)
    s = p**2 + p * q + q**2
    f = p**4 + q**4
    form = 2 * p**2 + 3 * p * q + 2 * q**2
    q_a = -p * q * (x**2 + y**2) + (p**2 + q**2) * x * y - f * (x + y) * Z + s * f * Z**2
    q_b = p * q * (p + q) ** 2 * form * W**2 + (x + y) ** 2 - 2 * s * (x + y) * Z + f * Z**2
    curve = _intersection(q_a, q_b, variables, (p * s, q * s, p + q, 1))
    coefficients = (1, 1, -(f**2), -(p**2) * q**2 * form**2 * f)
    return Construction(coefficients, curve, variables, (x, y, Z, W), point(p * s, q * s, p + q, -1))


# --- the quartic P x^4 + Q y^4 + R z^4 = k(T, S) w^4 with its shifted variables ------------------------------------


def _sec3_form(P, Q, a, b, c):
    """Coefficients of S^2, T S and T^2 in k(T, S), and R."""
    R = -(a**4 * P + b**4 * Q) / c**4
    return (
        b**8 * Q**2 - b**4 * c**4 * Q * R + c**8 * R**2,
        4 * b**4 * c * Q * (b**4 * Q - c**4 * R),
        6 * b**8 * c**2 * Q**2,
    ), R


def _sec3_k(params: Params, t=None):
    k0, k1, k2 = _sec3_form(params["P"], params["Q"], params["a"], params["b"], params["c"])[0]
    t = params["t"] if t is None else t
    return k0 + k1 * t + k2 * t**2


def _sec3_construction(P, Q, t, a, b, c) -> Construction:
    variables = ("T", "S", "V", "W")
    T, S, V, W = MPoly.variables_of(*variables)
    (k0, k1, k2), R = _sec3_form(P, Q, a, b, c)
    k_t = k0 + k1 * t + k2 * t**2
    q_a = k0 * S**2 + k1 * T * S + k2 * T**2 - k_t * V**2
    q_b = W**2 - V * S
    curve = _intersection(q_a, q_b, variables, (t, 1, 1, 1))
    shift = c**3 * R / (b**3 * Q)
    pullback = (a * T, b * T - shift * S, S + c * T, (a / (b**3 * c * Q)) * W)
    coefficients = (P, Q, R, -P * Q * (a**4 * P + b**4 * Q) * k_t)
    return Construction(coefficients, curve, variables, pullback, point(t, 1, 1, -1))


def _build_sec3_st(params: Params) -> Construction:
    one = FieldElem(1)
    return _sec3_construction(one, one, params["u"] - 1, one, one, one)


def _build_sec3_pq_generic(params: Params) -> Construction:
    return _sec3_construction(*(params[name] for name in ("P", "Q", "t", "a", "b", "c")))


def _sec3_form_sum(params: Params):
    return params["a"] ** 4 * params["P"] + params["b"] ** 4 * params["Q"]


def _torsion_line(params: Params) -> bool:
    if any(params[name] != 1 for name in ("a", "b", "c")):
        return False
    return params["P"] + 2 * params["Q"] + 3 * params["Q"] * params["t"] == 0


# --- intersections from the factored identities -------------------------------------------------------------------


def _build_ident0(params: Params) -> Construction:
    a, b, c = params["a"], params["b"], params["c"]
    variables = ("T", "S", "U", "V")
    T, S, U, V = MPoly.variables_of(*variables)
    q_a = a * b * S**2 + 2 * a * c * T * S + b * c * T**2 - a * b * U**2
    q_b = a * S**2 + b * T * S + c * T**2 - a * V**2
    curve = _intersection(q_a, q_b, variables, (0, 1, 1, 1))
    e = 2 * a * c - b**2
    coefficients = (e * a**2, e * c**2, a**2 * b**2, -2 * a**3 * c)
    return Construction(coefficients, curve, variables, (S, T, U, V), point(0, 1, 1, -1))


def _build_ident1_surf1(params: Params) -> Construction:
    p, q, r = params["p"], params["q"], params["r"]
    T, S, Z, W = MPoly.variables_of(*_TSZW)
    q_a = r * S**2 + q * T * S + p * T**2 - r * Z**2
    q_b = (
        r * (2 * r - q) * S**2
        - 2 * r * (p - r) * T * S
        + (-p * q + q**2 - 2 * q * r + 2 * r**2) * T**2
        - r * (2 * r - q) * W**2
    )
    curve = _intersection(q_a, q_b, _TSZW, (0, 1, 1, 1))
    e = q**2 - 2 * p * r - 2 * q * r + 2 * r**2
    coefficients = ((p - q + r) ** 2 * e, r**2 * e, 2 * r**3 * (p - q + r), -((q - 2 * r) ** 2) * r**2)
    return Construction(coefficients, curve, _TSZW, (T, S + T, Z, W), point(0, 1, 1, -1))


def _build_ident2_surf2(params: Params) -> Construction:
    r, s = params["r"], params["s"]
    T, S, Z, W = MPoly.variables_of(*_TSZW)
    q_a = r * S**2 + s * T**2 - r * Z**2
    q_b = r * S**2 + (r - s) * T * S + r * T**2 - r * W**2
    curve = _intersection(q_a, q_b, _TSZW, (0, 1, 1, 1))
    coefficients = (-(r - s) * (r + s) ** 2, -(r**2) * (r - s), -(r**2) * (r + s), 2 * r**3)
    return Construction(coefficients, curve, _TSZW, (T, S + T, Z, W), point(0, 1, 1, -1))


def _build_ident3_surf3(params: Params) -> Construction:
    a = params["a"]
    T, S, Z, W = MPoly.variables_of(*_TSZW)
    q_a = T * S + T**2 - 4 * (1 - a) * Z**2
    q_b = S**2 + 2 * T * S + 2 * a * T**2 - W**2
    curve = _intersection(q_a, q_b, _TSZW, (0, 1, 0, 1))
    coefficients = ((1 - 2 * a) ** 2, 1, -2 * (1 - a) ** 2 * (1 - 2 * a), -1)
    return Construction(coefficients, curve, _TSZW, (T, S + T, 2 * Z, W), point(-2, 2 * a, 1, 2 * a))


def _build_modsquares_m(params: Params) -> Construction:
    m = params["m"]
    T, S, Z, W = MPoly.variables_of(*_TSZW)
    q_a = S**2 - (1 + 2 * m) * T**2 - Z**2
    q_b = S**2 + 2 * (1 + m) * T * S + T**2 - W**2
    curve = _intersection(q_a, q_b, _TSZW, (0, 1, 1, 1))
    coefficients = (4 * m**2 * (1 + m), 1 + m, -m, -1)
    return Construction(coefficients, curve, _TSZW, (T, S + T, Z, W), point(0, 1, 1, -1))


# --- rational curves ----------------------------------------------------------------------------------------------


def _line(s, t):
    return (s, t)


def _carmichael_k(params: Params):
    return rational_root(4 * params["a"] ** 2 * params["c"] * params["d"], 4)


def _build_carmichael(params: Params) -> Construction:
    a, c, d = params["a"], params["c"], params["d"]
    k = FieldElem(_carmichael_k(params))
    s, t = MPoly.variables_of("s", "t")
    pullback = (
        k * (8 * a * s**4 - c * t**4),
        k * (8 * a * s**4 + c * t**4),
        8 * k * a * s**3 * t,
        4 * a * c * s * t**3,
    )
    return Construction((a, -a, c, d), _line, ("s", "t"), pullback)


def _build_conic_2k2(params: Params) -> Construction:
    k, x1, x2 = params["k"], params["x1"], params["x2"]
    variables = ("X1", "X2", "X3")
    X1, X2, X3 = MPoly.variables_of(*variables)
    curve = parametrize_conic(((1, 0, 0), (0, 3, 0), (0, 0, -k)), (x1, x2, 1))
    return Construction((1, 1, 1, -2 * k**2), curve, variables, (X1 - X2, 2 * X2, X1 + X2, X3))


# --- quartic model w^2 = F(t) with quadratic pullbacks ------------------------------------------------------------


def _quartsurf_polynomials(params: Params):
    """G1, G2, G3 and F in ("t", "W")."""
    a, b, c = params["a"], params["b"], params["c"]
    t = MPoly.variable("t", ("t", "W"))
    k = 2 * a * b - c
    s2 = a**2 + 2 * a * b + 2 * b**2
    g1 = 2 * a * k - 4 * b * k * t + (4 * b**3 + (a - 2 * b) * c) * t**2
    g2 = 2 * (a**3 - (a - b) * c) - 2 * a * k * t + b * k * t**2
    g3 = 2 * k - 2 * (a**2 + 2 * b**2 - c) * t + k * t**2
    f = (
        4 * (2 * a**4 * s2 - 2 * a**3 * (3 * a + 2 * b) * c + (5 * a**2 - 2 * a * b + 2 * b**2) * c**2 - c**3)
        - 8 * k * (2 * a**2 * s2 - 2 * a * (2 * a + b) * c + c**2) * t
        + 8 * k * (3 * a * b * s2 - (a**2 + 6 * a * b + 2 * b**2) * c + c**2) * t**2
        - 4 * k * (4 * b**2 * s2 - 2 * b * (a + 4 * b) * c + c**2) * t**3
        + (8 * b**4 * s2 - 8 * b**3 * (a + 3 * b) * c + (a**2 - 2 * a * b + 10 * b**2) * c**2 - c**3) * t**4
    )
    return g1, g2, g3, f


def _quartsurf_p(params: Params):
    a, b, c = params["a"], params["b"], params["c"]
    return a**2 + 2 * a * b + 2 * b**2 - 2 * c


def _quartsurf_f_at(params: Params):
    f = _quartsurf_polynomials(params)[3]
    return f.evaluate({"t": params["t0"]})


def _build_sec6_quartsurf(params: Params) -> Construction:
    a, b, c, t0 = params["a"], params["b"], params["c"], params["t0"]
    g1, g2, g3, f = _quartsurf_polynomials(params)
    f0 = point(f.evaluate({"t": t0}))[0]
    p = _quartsurf_p(params)
    curve = QuarticModel.from_polynomial(f, "t", f0, point(t0, 1), ("t", "W"))
    W = MPoly.variable("W", ("t", "W"))
    r = (a**2 - 2 * a * b + 2 * b**2) * c**2
    coefficients = (p, 4 * p, r, (2 * a * b - a**2 - 2 * b**2) * f0**2)
    return Construction(coefficients, curve, ("t", "W"), (g1, g2, g3, W), point(t0, -1))


FAMILY_SPECS = (
    FamilySpec(
        "v1_ex1",
        CurveKind.QUADRIC_INTERSECTION,
        ("u",),
        QUARTIC,
        _build_v1_ex1,
        sample={"u": "3"},
        exclusions=(excluded_values("u", ("-2", "-1", "-1/2", "0", "1")),),
        note="generic Picard rank 2",
        description="(1+u)X^4 + 4u^2(1+u)Y^4 - uZ^4 - W^4 = 0 via two quadrics through (1,0,1,1)",
    ),
    FamilySpec(
        "v2_ex2",
        CurveKind.QUADRIC_INTERSECTION,
        ("alpha",),
        QUARTIC,
        _build_v2_ex2,
        sample={"alpha": "2"},
        exclusions=(excluded_values("alpha", ("0", "1")),),
        note="generic Picard rank 2",
        description="a^2 x^4 + (1-a)^2 y^4 + 2a(1-a) z^4 - w^4 = 0 on a x^2 + (1-a) y^2 = w^2, xy = z^2",
    ),
    FamilySpec(
        "v3_surface1",
        CurveKind.QUADRIC_INTERSECTION,
        ("p", "q"),
        QUARTIC,
        _build_v3_surface1,
        sample={"p": "1", "q": "2"},
        exclusions=(
            nonzero("p", "p != 0", lambda params: params["p"]),
            nonzero("q", "q != 0", lambda params: params["q"]),
            nonzero("q", "p + q != 0", lambda params: params["p"] + params["q"]),
        ),
        note="generic Picard rank 3",
        description="x^4 + y^4 - (p^4+q^4)^2 Z^4 - p^2q^2(2p^2+3pq+2q^2)^2(p^4+q^4) W^4 = 0",
    ),
    FamilySpec(
        "sec3_St",
        CurveKind.QUADRIC_INTERSECTION,
        ("u",),
        QUARTIC,
        _build_sec3_st,
        sample={"u": "1"},
        exclusions=(nonzero("u", "u != 0", lambda params: params["u"]),),
        note="generic Picard rank 1",
        description="x^4 + y^4 - 2z^4 - 2(1+6u^2)w^4 = 0, the case P = Q = 1, t = u - 1",
    ),
    FamilySpec(
        "sec3_PQ_generic",
        CurveKind.QUADRIC_INTERSECTION,
        ("P", "Q", "t", "a", "b", "c"),
        QUARTIC,
        _build_sec3_pq_generic,
        sample={"P": "1", "Q": "2", "t": "1"},
        defaults={"a": "1", "b": "1", "c": "1"},
        exclusions=(
            nonzero("P", "P != 0", lambda params: params["P"]),
            nonzero("Q", "Q != 0", lambda params: params["Q"]),
            nonzero("a", "a != 0", lambda params: params["a"]),
            nonzero("b", "b != 0", lambda params: params["b"]),
            nonzero("c", "c != 0", lambda params: params["c"]),
            nonzero("Q", "a^4 P + b^4 Q != 0", lambda params: _sec3_form_sum(params)),
            nonzero("t", "k(t) != 0", _sec3_k),
            Exclusion("t", "P + 2Q + 3Qt != 0 when a = b = c = 1", _torsion_line),
        ),
        require_infinite_order=True,
        note="generic Picard rank 1",
        description="P x^4 + Q y^4 + R z^4 - PQ(a^4P+b^4Q)k(t) w^4 = 0 with R = -(a^4P+b^4Q)/c^4",
    ),
    FamilySpec(
        "ident0",
        CurveKind.QUADRIC_INTERSECTION,
        ("a", "b", "c"),
        QUARTIC,
        _build_ident0,
        sample={"a": "1", "b": "1", "c": "2"},
        exclusions=(
            nonzero("a", "a != 0", lambda params: params["a"]),
            nonzero("b", "b != 0", lambda params: params["b"]),
            nonzero("c", "c != 0", lambda params: params["c"]),
            nonzero("b", "2ac - b^2 != 0", lambda params: 2 * params["a"] * params["c"] - params["b"] ** 2),
        ),
        note="generic Picard rank 2",
        description="(2ac-b^2)a^2 x^4 + (2ac-b^2)c^2 y^4 + a^2b^2 z^4 - 2a^3c w^4 = 0",
    ),
    FamilySpec(
        "ident1_surf1",
        CurveKind.QUADRIC_INTERSECTION,
        ("p", "q", "r"),
        QUARTIC,
        _build_ident1_surf1,
        sample={"p": "1", "q": "3", "r": "1"},
        exclusions=(
            nonzero("r", "r != 0", lambda params: params["r"]),
            nonzero("q", "q != 2r", lambda params: params["q"] - 2 * params["r"]),
            nonzero("p", "p - q + r != 0", lambda params: params["p"] - params["q"] + params["r"]),
            nonzero(
                "p",
                "q^2 - 2pr - 2qr + 2r^2 != 0",
                lambda params: params["q"] ** 2
                - 2 * params["p"] * params["r"]
                - 2 * params["q"] * params["r"]
                + 2 * params["r"] ** 2,
            ),
        ),
        note="generic Picard rank 2",
        description="surface from the first factored identity, fibred over (T : S)",
    ),
    FamilySpec(
        "ident2_surf2",
        CurveKind.QUADRIC_INTERSECTION,
        ("r", "s"),
        QUARTIC,
        _build_ident2_surf2,
        sample={"r": "1", "s": "2"},
        exclusions=(
            nonzero("r", "r != 0", lambda params: params["r"]),
            nonzero("s", "r - s != 0", lambda params: params["r"] - params["s"]),
            nonzero("s", "r + s != 0", lambda params: params["r"] + params["s"]),
        ),
        note="generic Picard rank 2",
        description="-(r-s)(r+s)^2 x^4 - r^2(r-s) y^4 - r^2(r+s) z^4 + 2r^3 w^4 = 0",
    ),
    FamilySpec(
        "ident3_surf3",
        CurveKind.QUADRIC_INTERSECTION,
        ("a",),
        QUARTIC,
        _build_ident3_surf3,
        sample={"a": "3"},
        exclusions=(excluded_values("a", ("1/2", "1")),),
        note="generic Picard rank 2",
        description="(1-2a)^2 x^4 + y^4 - 2(1-a)^2(1-2a) z^4 - w^4 = 0",
    ),
    FamilySpec(
        "modsquares_m",
        CurveKind.QUADRIC_INTERSECTION,
        ("m",),
        QUARTIC,
        _build_modsquares_m,
        sample={"m": "2"},
        exclusions=(excluded_values("m", ("-1", "-1/2", "0")),),
        note="abcd = (2m(1+m))^2 is a square; generic Picard rank 2",
        description="4m^2(1+m) x^4 + (1+m) y^4 - m z^4 - w^4 = 0",
    ),
    FamilySpec(
        "carmichael",
        CurveKind.RATIONAL,
        ("a", "c", "d"),
        QUARTIC,
        _build_carmichael,
        sample={"a": "1", "c": "1", "d": "4"},
        exclusions=(
            nonzero("a", "a != 0", lambda params: params["a"]),
            nonzero("c", "c != 0", lambda params: params["c"]),
            nonzero("d", "d != 0", lambda params: params["d"]),
            Exclusion("d", "4a^2cd is a rational fourth power", lambda params: _carmichael_k(params) is None),
        ),
        note="contains the line x = y, z = w = 0",
        description="a x^4 - a y^4 + c z^4 + d w^4 = 0 parametrized by (s : t)",
    ),
    FamilySpec(
        "conic_2k2",
        CurveKind.RATIONAL,
        ("k", "x1", "x2"),
        QUARTIC,
        _build_conic_2k2,
        sample={"k": "4", "x1": "1", "x2": "1"},
        exclusions=(
            nonzero("k", "k != 0", lambda params: params["k"]),
            vanishing(
                "k",
                "x1^2 + 3 x2^2 = k",
                lambda params: params["x1"] ** 2 + 3 * params["x2"] ** 2 - params["k"],
            ),
        ),
        description="x^4 + y^4 + z^4 = 2k^2 w^4 through the conic X1^2 + 3 X2^2 = k X3^2",
    ),
    FamilySpec(
        "sec6_quartsurf",
        CurveKind.QUARTIC,
        ("a", "b", "c", "t0"),
        QUARTIC,
        _build_sec6_quartsurf,
        sample={"a": "1", "b": "1", "c": "1", "t0": "2"},
        exclusions=(
            nonzero(
                "c",
                "a^2 + 2ab + 2b^2 - 2c != 0",
                _quartsurf_p,
            ),
            nonzero("c", "c != 0", lambda params: params["c"]),
            nonzero("b", "(a, b) != (0, 0)", lambda params: params["a"] ** 2 + params["b"] ** 2),
            nonzero("t0", "F(t0) != 0", _quartsurf_f_at),
        ),
        note="generic Picard rank 2",
        description="P G1^4 + Q G2^4 + R G3^4 + S F^2 = 0 pulled back along W^2 F(t0) = F(t)",
    ),
)
