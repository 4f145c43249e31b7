"""This file contains the exhaustive height-bounded search for integral points on a diagonal surface.

The box is |x_i| <= H^w_i in the weighted sense of the surface. The four coordinates are split into two pairs;
sums over the first pair are matched against sorted negated sums over the second (meet in the middle) with numpy.
Coordinates with an even exponent are only scanned with nonnegative values and the solutions found are closed
under sign changes afterwards.
"""

import logging
import math
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Sequence, Set, Tuple

import numpy as np

from diagforge.families.surface import DiagonalSurface, ProjPoint, canonicalize, sign_variants
from diagforge.genus1.scalars import to_fraction

logger = logging.getLogger(__name__)

# largest absolute value handled in int64 arrays
_INT64_LIMIT = 2**62

Match = Tuple[int, int, int, int]


@dataclass(frozen=True)
class SearchResult:
    """All canonical nontrivial solutions within a height bound."""

    surface: DiagonalSurface
    # height bound H
    bound: int
    # sorted lexicographically, one entry per canonical point
    points: Tuple[ProjPoint, ...]
    # wall time in seconds
    seconds: float
    # number of coordinate vectors covered by the scan
    candidates: int


def integral_coefficients(surface: DiagonalSurface) -> Tuple[int, int, int, int]:
    """The coefficients scaled by their common denominator."""
    if not surface.is_rational:
        raise ValueError(f"cannot search on {surface}: coefficients are not rational")
    values = [to_fraction(c) for c in surface.coefficients]
    common = math.lcm(*(v.denominator for v in values))
    return tuple(int(v * common) for v in values)


def _coordinate_values(limit: int, exponent: int, first: bool) -> np.ndarray:
    low = 0 if first or exponent % 2 == 0 else -limit
    return np.arange(low, limit + 1, dtype=np.int64)


def _terms(values: np.ndarray, coefficient: int, exponent: int, exact: bool) -> np.ndarray:
    if exact:
        return np.array([coefficient * int(v) ** exponent for v in values], dtype=object)
    return coefficient * values**exponent


def _pairing(sizes: Sequence[int]) -> Tuple[int, int, int]:
    """(partner of x, other two) minimizing the larger half."""
    options = []
    for partner in (1, 2, 3):
        rest = [i for i in (1, 2, 3) if i != partner]
        options.append((max(sizes[0] * sizes[partner], sizes[rest[0]] * sizes[rest[1]]), partner, *rest))
    _, partner, first, second = min(options)
    return partner, first, second


def _match_rows(
    rows: np.ndarray, first: np.ndarray, partner: np.ndarray, ordered: np.ndarray, order: np.ndarray, width: int
) -> List[Match]:
    """Matches of first[rows] + partner against the sorted other half, as index quadruples."""
    sums = (first[rows][:, None] + partner[None, :]).ravel()
    left = np.searchsorted(ordered, sums, side="left")
    right = np.searchsorted(ordered, sums, side="right")
    matches: List[Match] = []
    for flat in np.nonzero(right > left)[0]:
        row, column = divmod(int(flat), len(partner))
        for position in range(int(left[flat]), int(right[flat])):
            k, l = divmod(int(order[position]), width)
            matches.append((int(rows[row]), column, k, l))
    return matches


def brute_search(surface: DiagonalSurface, bound: int, threads: int = 1) -> SearchResult:
    """Every canonical nontrivial solution with height at most `bound`.

    Args:
        surface: a surface with rational coefficients
        bound: height bound H >= 1
        threads: worker threads; the result does not depend on it

    Returns:
        the sorted canonical solutions, closed under sign changes of even-exponent coordinates
    """
    if bound < 1:
        raise ValueError(f"the height bound must be at least 1, got {bound}")
    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    start = time.perf_counter()
    coefficients = integral_coefficients(surface)
    exponents = surface.exponents
    limits = [bound**w for w in surface.weights]
    values = [_coordinate_values(limit, e, i == 0) for i, (limit, e) in enumerate(zip(limits, exponents))]
    largest = sum(abs(c) * limit**e for c, limit, e in zip(coefficients, limits, exponents))
    exact = 2 * largest >= _INT64_LIMIT
    terms = [_terms(v, c, e, exact) for v, c, e in zip(values, coefficients, exponents)]

    partner, third, fourth = _pairing([len(v) for v in values])
    other = (-(terms[third][:, None] + terms[fourth][None, :])).ravel()
    order = np.argsort(other, kind="stable")
    ordered = other[order]
    width = len(terms[fourth])

    chunks = [c for c in np.array_split(np.arange(len(terms[0])), threads) if len(c)]
    with ThreadPoolExecutor(max_workers=threads) as executor:
        results = executor.map(lambda rows: _match_rows(rows, terms[0], terms[partner], ordered, order, width), chunks)
        matches = [m for chunk in results for m in chunk]

    found: Set[ProjPoint] = set()
    for i, j, k, l in matches:
        coordinates = [0, 0, 0, 0]
        for axis, index in ((0, i), (partner, j), (third, k), (fourth, l)):
            coordinates[axis] = int(values[axis][index])
        if not any(coordinates):
            continue
        point = canonicalize(surface, coordinates)
        if point.is_trivial or point in found:
            continue
        found.update(sign_variants(surface, point))
    points = tuple(sorted(found, key=lambda p: p.coordinates))
    candidates = math.prod(2 * limit + 1 for limit in limits)
    seconds = time.perf_counter() - start
    logger.info("search on %s up to height %d: %d points in %.3fs", surface, bound, len(points), seconds)
    return SearchResult(surface, bound, points, seconds, candidates)
