"""This file contains the table of registered families, looked up by their public id."""

import logging
from typing import Any, Dict, List, Mapping

from diagforge.errors import UnknownFamilyError
from diagforge.families import quartic_families, sextic_families
from diagforge.families.base import FamilySpec, SurfaceInstance

logger = logging.getLogger(__name__)

FAMILY_ORDER = (
    "v1_ex1",
    "v2_ex2",
    "v3_surface1",
    "sec3_St",
    "sec3_PQ_generic",
    "ident0",
    "ident1_surf1",
    "ident2_surf2",
    "ident3_surf3",
    "modsquares_m",
    "carmichael",
    "conic_2k2",
    "sextic_w2_row1",
    "sextic_w2_row2",
    "sextic_w2_row3",
    "sextic_w2_row4",
    "sextic_w3_chain",
    "sextic_third_PQ",
    "sextic_third_11m2",
    "sec6_quartsurf",
    "sec6_sextsurf_chain",
    "sextic_cubic_section",
    "sec6_sextsurf_pq",
)


def _build_table() -> Dict[str, FamilySpec]:
    specs = {spec.family_id: spec for spec in quartic_families.FAMILY_SPECS + sextic_families.FAMILY_SPECS}
    if set(specs) != set(FAMILY_ORDER):
        raise RuntimeError(f"family table out of sync: {sorted(set(specs) ^ set(FAMILY_ORDER))}")
    return {family_id: specs[family_id] for family_id in FAMILY_ORDER}


FAMILIES: Dict[str, FamilySpec] = _build_table()


def list_families() -> List[FamilySpec]:
    """All registered families in documentation order."""
    return list(FAMILIES.values())


def get_family(family_id: str) -> FamilySpec:
    """The family registered under `family_id`."""
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise UnknownFamilyError(f"unknown family {family_id!r}, expected one of {', '.join(FAMILIES)}") from None


def instantiate(family_id: str, params: Mapping[str, Any], use_sample: bool = False) -> SurfaceInstance:
    """Looks up a family and instantiates it.

    Args:
        family_id: registered id
        params: parameter values as rationals, "p/q" strings or MPoly variables for symbolic work
        use_sample: fill unspecified parameters from the documented sample

    Returns:
        the validated instance
    """
    spec = get_family(family_id)
    logger.debug("instantiating %s with %s", family_id, dict(params))
    return spec.instantiate(params, use_sample)
