"""This file contains birational maps between curve models, stored as a chain of exact point transformations.

Every curve model used here offers the same small protocol: `contains(point)`, `equal_points(p, q)`,
`generic_point()` (a point whose coordinates are the coordinate functions) and `point_coordinates(point)`.
"""

import logging
from dataclasses import dataclass
from functools import cached_property
from typing import Any, Callable, Tuple

from diagforge.errors import IndeterminateError, NotOnCurveError

logger = logging.getLogger(__name__)

PointMap = Callable[[Any], Any]


@dataclass(frozen=True)
class MapStage:
    """One step of a birational map, given by point formulas in both directions."""

    # short label used in error messages
    name: str
    # source point -> target point
    forward: PointMap
    # target point -> source point
    backward: PointMap

    def inverse(self) -> "MapStage":
        """The same step run backwards."""
        return MapStage(f"{self.name}^-1", self.backward, self.forward)


def _run(stages: Tuple[MapStage, ...], point: Any) -> Any:
    for stage in stages:
        point = stage.forward(point)
    return point


@dataclass(frozen=True)
class BirationalMap:
    """A birational map source -> target with its inverse, as a chain of stages."""

    # curve model the map starts from
    source: Any
    # curve model the map lands on
    target: Any
    # stages applied in order by the forward map
    stages: Tuple[MapStage, ...]
    # source points where the forward map is undefined
    exceptional: Tuple[Any, ...] = ()
    # target points where the backward map is undefined
    target_exceptional: Tuple[Any, ...] = ()

    def inverse(self) -> "BirationalMap":
        """The backward map as a BirationalMap target -> source."""
        return BirationalMap(
            source=self.target,
            target=self.source,
            stages=tuple(stage.inverse() for stage in reversed(self.stages)),
            exceptional=self.target_exceptional,
            target_exceptional=self.exceptional,
        )

    def compose(self, other: "BirationalMap") -> "BirationalMap":
        """The map `other` after `self`, source of self -> target of other."""
        exceptional = self.exceptional
        for point in other.exceptional:
            try:
                exceptional += (map_apply(self.inverse(), point),)
            except IndeterminateError:
                continue
        return BirationalMap(
            source=self.source,
            target=other.target,
            stages=self.stages + other.stages,
            exceptional=exceptional,
            target_exceptional=other.target_exceptional,
        )

    @cached_property
    def forward_functions(self) -> tuple:
        """Coordinates of the image of the generic source point, as rational functions."""
        image = _run(self.stages, self.source.generic_point())
        return tuple(self.target.point_coordinates(image))

    @cached_property
    def backward_functions(self) -> tuple:
        """Coordinates of the image of the generic target point under the backward map."""
        inverse = self.inverse()
        image = _run(inverse.stages, self.target.generic_point())
        return tuple(self.source.point_coordinates(image))


def map_apply(mapping: BirationalMap, point: Any) -> Any:
    """Exact image of a source point; points of the exceptional locus raise IndeterminateError."""
    if not mapping.source.contains(point):
        raise NotOnCurveError(f"{point} does not lie on {mapping.source}")
    if any(mapping.source.equal_points(point, bad) for bad in mapping.exceptional):
        raise IndeterminateError(f"{point} lies on the exceptional locus of the map from {mapping.source}")
    try:
        image = _run(mapping.stages, point)
    except ZeroDivisionError as error:
        raise IndeterminateError(f"map from {mapping.source} is undefined at {point}: {error}") from error
    if not mapping.target.contains(image):
        raise NotOnCurveError(f"image {image} of {point} does not lie on {mapping.target}")
    logger.debug("mapped %s to %s", point, image)
    return image

