"""This file contains exact point checks and the comparison of generated points with the search oracle."""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from diagforge.families.base import SurfaceInstance, generate_points
from diagforge.families.surface import DiagonalSurface, ProjPoint, canonicalize, height, sign_variants
from diagforge.genus1.scalars import to_fraction
from diagforge.verify.search import SearchResult, brute_search

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    """Verdict of check_point."""

    accepted: bool
    # exact value of the surface polynomial at the point as given
    value: Fraction
    # number of vanishing coordinates; two or more reject even a zero of the polynomial
    zero_count: int

    @property
    def reason(self) -> str:
        """Why a point was rejected; empty when accepted."""
        if self.accepted:
            return ""
        if self.value != 0:
            return f"value {self.value}"
        return f"{self.zero_count} zero coordinates"


def check_point(surface: DiagonalSurface, point: Sequence[int]) -> CheckResult:
    """Evaluates the surface exactly at an integral point.

    Raises:
        ValueError: the zero vector or a malformed point
    """
    point = point if isinstance(point, ProjPoint) else ProjPoint(tuple(point))
    value = to_fraction(surface.evaluate(point.coordinates))
    accepted = value == 0 and not point.is_trivial
    return CheckResult(accepted, value, point.zero_count)


def _solution_class(surface: DiagonalSurface, point: ProjPoint) -> Tuple[int, ...]:
    return sign_variants(surface, point)[0].coordinates


@dataclass(frozen=True)
class CrossValidation:
    """Generated points compared with an exhaustive search."""

    family_id: str
    # generated points of height at most the bound, in order of m
    generated: Tuple[Tuple[int, ProjPoint], ...]
    # generated points above the bound, not comparable
    beyond_bound: Tuple[Tuple[int, ProjPoint], ...]
    # generated but not found by the search; always empty unless something is broken
    missed: Tuple[ProjPoint, ...]
    # found by the search in no generated class, for information
    extra: Tuple[ProjPoint, ...]
    search: SearchResult

    @property
    def consistent(self) -> bool:
        """Whether the search found every generated point of bounded height."""
        return not self.missed


def cross_validate(
    instance: SurfaceInstance, bound: int, multiples: Sequence[int], threads: int = 1
) -> CrossValidation:
    """Generates points of an instance and checks them against brute_search up to `bound`."""
    surface = instance.surface
    search = brute_search(surface, bound, threads)
    found = set(search.points)
    generated: List[Tuple[int, ProjPoint]] = []
    beyond: List[Tuple[int, ProjPoint]] = []
    results = generate_points(instance, list(multiples), threads) if multiples else []
    for m, point in results:
        if not isinstance(point, ProjPoint):
            continue
        (generated if height(surface, point) <= bound else beyond).append((m, point))
    missed = tuple(point for _, point in generated if canonicalize(surface, point.coordinates) not in found)
    classes = {_solution_class(surface, point) for _, point in generated}
    extra = tuple(p for p in search.points if _solution_class(surface, p) not in classes)
    for point in missed:
        logger.error("%s: generated point %s not found by the search", instance.spec.family_id, point)
    logger.info(
        "%s: %d generated points within height %d, %d missed, %d found only by the search",
        instance.spec.family_id,
        len(generated),
        bound,
        len(missed),
        len(extra),
    )
    return CrossValidation(instance.spec.family_id, tuple(generated), tuple(beyond), missed, extra, search)
