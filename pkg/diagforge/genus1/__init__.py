"""Genus one curve models, their group laws and exact birational maps between them."""

from diagforge.genus1.conic import ConicParametrization, parametrize_conic
from diagforge.genus1.cubic import PlaneCubic, cubic_mul, cubic_to_group
from diagforge.genus1.maps import BirationalMap, MapStage, map_apply
from diagforge.genus1.quadrics import QuadricIntersection, pencil_discriminant, quadrics_to_weierstrass
from diagforge.genus1.quartic import QuarticModel, quartic_to_weierstrass
from diagforge.genus1.weierstrass import (
    ECPoint,
    WeierstrassCurve,
    ec_add,
    ec_mul,
    ec_neg,
    lutz_nagell_integral,
    torsion_test,
)

__all__ = [
    "BirationalMap",
    "ConicParametrization",
    "ECPoint",
    "MapStage",
    "PlaneCubic",
    "QuadricIntersection",
    "QuarticModel",
    "WeierstrassCurve",
    "cubic_mul",
    "cubic_to_group",
    "ec_add",
    "ec_mul",
    "ec_neg",
    "lutz_nagell_integral",
    "map_apply",
    "parametrize_conic",
    "pencil_discriminant",
    "quadrics_to_weierstrass",
    "quartic_to_weierstrass",
    "torsion_test",
]
