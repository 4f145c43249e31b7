"""Parametric families of diagonal quartic and sextic surfaces and the integral points they produce."""

from diagforge.families.base import (
    CurveKind,
    FamilySpec,
    Marker,
    SurfaceInstance,
    generate_points,
)
from diagforge.families.registry import FAMILIES, get_family, instantiate, list_families
from diagforge.families.solutions import (
    carmichael_solution,
    conic_2k2_solution,
    equalized_chain,
    sixth_power_chain,
)
from diagforge.families.surface import (
    EXPONENT_SIGNATURES,
    DiagonalSurface,
    ProjPoint,
    canonicalize,
    height,
    same_solution,
    sign_variants,
)

__all__ = [
    "EXPONENT_SIGNATURES",
    "FAMILIES",
    "CurveKind",
    "DiagonalSurface",
    "FamilySpec",
    "Marker",
    "ProjPoint",
    "SurfaceInstance",
    "canonicalize",
    "carmichael_solution",
    "conic_2k2_solution",
    "equalized_chain",
    "generate_points",
    "get_family",
    "height",
    "instantiate",
    "list_families",
    "same_solution",
    "sign_variants",
    "sixth_power_chain",
]
