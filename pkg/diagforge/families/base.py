"""This file contains the family abstraction: parameters in, surface, fibre curve, seed and pullback out."""

import logging
from abc import ABC, abstractmethod
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Mapping, Optional, Sequence, Tuple, Union

from sympy import integer_nthroot

from diagforge.algebra.field import FieldElem, format_rational, parse_rational
from diagforge.algebra.mpoly import MPoly
from diagforge.algebra.rational_function import RationalFunction
from diagforge.errors import IndeterminateError, InadmissibleParameterError, NotOnCurveError
from diagforge.families.surface import DiagonalSurface, ProjPoint, canonicalize
from diagforge.genus1.cubic import cubic_mul
from diagforge.genus1.maps import map_apply
from diagforge.genus1.quadrics import QuadricIntersection, quadrics_to_weierstrass
from diagforge.genus1.quartic import quartic_to_weierstrass
from diagforge.genus1.scalars import as_scalar, is_zero_vector, scalar_from_polynomial, to_fraction
from diagforge.genus1.weierstrass import ec_mul, torsion_test

logger = logging.getLogger(__name__)

Params = Dict[str, Any]


class CurveKind(Enum):
    """Type of fibre curve carrying the seed point."""

    QUADRIC_INTERSECTION = "intersection of two quadrics"
    QUARTIC = "quartic model"
    PLANE_CUBIC = "plane cubic"
    RATIONAL = "rational curve"


class Marker(str, Enum):
    """Placeholder returned instead of a point for multiples that produce none."""

    INDETERMINATE = "indeterminate"
    TRIVIAL = "trivial"


@dataclass(frozen=True)
class Exclusion:
    """An admissibility condition on the parameters."""

    # parameter reported when the condition fails
    parameter: str
    # human readable predicate that must hold
    predicate: str
    # returns True when the predicate is violated
    violated: Callable[[Params], bool]


@dataclass(frozen=True)
class Construction:
    """Everything a family builds from one parameter assignment."""

    # a, b, c, d of the diagonal surface
    coefficients: Tuple[Any, Any, Any, Any]
    # QuadricIntersection, QuarticModel, PlaneCubic, or a callable (a, b) -> coordinates for rational curves
    curve: Any
    # names of the curve coordinates the pullback is written in
    variables: Tuple[str, ...]
    # four MPoly or RationalFunction in the curve coordinates
    pullback: Tuple[Any, Any, Any, Any]
    # point of infinite order; unused for rational curves
    seed: Any = None


def _parameter_value(family: str, name: str, value: Any) -> Any:
    if isinstance(value, MPoly):
        return value
    if isinstance(value, str):
        try:
            return FieldElem(parse_rational(value))
        except ValueError:
            raise InadmissibleParameterError(family, name, "a rational number p/q") from None
    try:
        return as_scalar(value)
    except TypeError:
        raise InadmissibleParameterError(family, name, "a rational number p/q") from None


def is_symbolic(params: Mapping[str, Any]) -> bool:
    """Whether some parameter is kept as a polynomial variable."""
    return any(isinstance(v, MPoly) and not v.is_constant() for v in params.values())


def scalar(value: Any) -> Any:
    """Surface and curve coefficients as scalars; polynomials in symbolic parameters become rational functions."""
    if isinstance(value, MPoly):
        return scalar_from_polynomial(value)
    return as_scalar(value)


def point(*coordinates: Any) -> tuple:
    """Curve coordinates as scalars."""
    return tuple(scalar(c) for c in coordinates)


def rational_root(value: Any, n: int) -> Optional[Fraction]:
    """The real n-th root of a rational number when it is rational, else None."""
    value = to_fraction(value)
    if value < 0 and n % 2 == 0:
        return None
    numerator, exact_numerator = integer_nthroot(abs(value.numerator), n)
    denominator, exact_denominator = integer_nthroot(value.denominator, n)
    if not (exact_numerator and exact_denominator):
        return None
    return (-1 if value < 0 else 1) * Fraction(int(numerator), int(denominator))


def nonzero(parameter: str, predicate: str, expression: Callable[[Params], Any]) -> Exclusion:
    """Exclusion violated when `expression` vanishes at the parameters."""
    return Exclusion(parameter, predicate, lambda params: expression(params) == 0)


def vanishing(parameter: str, predicate: str, expression: Callable[[Params], Any]) -> Exclusion:
    """Exclusion violated unless `expression` vanishes at the parameters."""
    return Exclusion(parameter, predicate, lambda params: expression(params) != 0)


def excluded_values(parameter: str, values: Sequence[str]) -> Exclusion:
    """Exclusion violated when the parameter takes one of the listed rational values."""
    forbidden = frozenset(parse_rational(v) for v in values)
    predicate = f"{parameter} \N{NOT AN ELEMENT OF} {{{', '.join(values)}}}"
    return Exclusion(parameter, predicate, lambda params: to_fraction(params[parameter]) in forbidden)


@dataclass(frozen=True)
class FamilySpec:
    """A registered construction."""

    # stable public id
    family_id: str
    # type of fibre curve
    kind: CurveKind
    # parameter names in documentation order
    parameters: Tuple[str, ...]
    # exponents of the surface
    exponents: Tuple[int, int, int, int]
    # builds the construction from resolved parameters
    build: Callable[[Params], Construction] = field(repr=False)
    # documented sample parameters, as rational strings
    sample: Mapping[str, str] = field(default_factory=dict)
    # values used for parameters the caller leaves out
    defaults: Mapping[str, str] = field(default_factory=dict)
    # admissibility conditions checked before building
    exclusions: Tuple[Exclusion, ...] = ()
    # whether instantiation rejects seeds of finite order
    require_infinite_order: bool = False
    # Picard rank remark
    note: str = ""
    # one line summary
    description: str = ""

    def resolve(self, params: Mapping[str, Any], use_sample: bool = False) -> Params:
        """Parses parameter values and fills in defaults (and sample values when asked)."""
        for name in params:
            if name not in self.parameters:
                raise InadmissibleParameterError(self.family_id, name, f"one of {', '.join(self.parameters)}")
        resolved: Params = {}
        for name in self.parameters:
            if name in params:
                raw = params[name]
            elif name in self.defaults:
                raw = self.defaults[name]
            elif use_sample and name in self.sample:
                raw = self.sample[name]
            else:
                raise InadmissibleParameterError(self.family_id, name, "a value is required")
            resolved[name] = _parameter_value(self.family_id, name, raw)
        return resolved

    def check_admissible(self, params: Params) -> None:
        """Raises InadmissibleParameterError for the first violated exclusion."""
        if is_symbolic(params):
            return
        for exclusion in self.exclusions:
            if exclusion.violated(params):
                raise InadmissibleParameterError(self.family_id, exclusion.parameter, exclusion.predicate)

    def instantiate(self, params: Mapping[str, Any], use_sample: bool = False) -> "SurfaceInstance":
        """Checks admissibility, builds and validates an instance."""
        resolved = self.resolve(params, use_sample)
        self.check_admissible(resolved)
        construction = self.build(resolved)
        surface = DiagonalSurface(tuple(scalar(c) for c in construction.coefficients), self.exponents, self.note)
        instance = _INSTANCE_TYPES[self.kind](self, resolved, surface, construction)
        instance.validate()
        logger.debug("instantiated %s at %s", self.family_id, instance.parameter_strings())
        return instance

    def describe(self) -> Dict[str, Any]:
        """Summary used by the command line listing."""
        return {
            "id": self.family_id,
            "kind": self.kind.value,
            "parameters": list(self.parameters),
            "sample": dict(self.sample),
            "defaults": dict(self.defaults),
            "exponents": list(self.exponents),
            "admissibility": [f"{e.parameter}: {e.predicate}" for e in self.exclusions],
            "note": self.note,
            "description": self.description,
        }


class SurfaceInstance(ABC):
    """A family at concrete (or symbolic) parameters."""

    def __init__(self, spec: FamilySpec, params: Params, surface: DiagonalSurface, construction: Construction):
        """Stores the resolved pieces.

        Args:
            spec: the family
            params: resolved parameter values
            surface: the diagonal surface
            construction: curve, seed and pullback
        """
        self.spec = spec
        self.params = params
        self.surface = surface
        self.construction = construction

    @property
    def curve(self) -> Any:
        """The fibre curve."""
        return self.construction.curve

    @property
    def seed(self) -> Any:
        """The seed point on the fibre curve."""
        return self.construction.seed

    @property
    def is_symbolic(self) -> bool:
        """Whether some parameter is a polynomial variable."""
        return is_symbolic(self.params)

    @abstractmethod
    def curve_point(self, m: int) -> Any:
        """The point of the fibre curve indexed by m."""

    @abstractmethod
    def coordinates_of(self, point: Any) -> tuple:
        """Coordinates of a curve point in the order of the pullback variables."""

    def pull_back(self, point: Any) -> tuple:
        """Surface coordinates of a curve point; division by zero becomes IndeterminateError."""
        assignment = {
            name: RationalFunction.variable(name)
            for value in self.params.values()
            if isinstance(value, MPoly)
            for name in value.used_variables
        }
        assignment.update(zip(self.construction.variables, self.coordinates_of(point)))
        try:
            return tuple(as_scalar(f.evaluate(assignment)) for f in self.construction.pullback)
        except ZeroDivisionError as error:
            raise IndeterminateError(f"pullback of {self.spec.family_id} undefined at {point}: {error}") from None

    def surface_point(self, m: int) -> tuple:
        """Surface coordinates (unnormalized) of the pullback of the m-th curve point."""
        return self.pull_back(self.curve_point(m))

    def validate(self) -> None:
        """Checks the seed and that its pullback lies on the surface."""
        coordinates = self.surface_point(1)
        if not self.surface.contains(coordinates):
            raise NotOnCurveError(f"pullback {coordinates} of the seed of {self.spec.family_id} is off {self.surface}")

    def parameter_strings(self) -> Dict[str, str]:
        """Parameter values as rational strings (symbolic ones by name)."""
        return {
            name: str(value) if isinstance(value, MPoly) else format_rational(to_fraction(value))
            for name, value in self.params.items()
        }

    def _seed_must_lie_on(self, contains: Callable[[Any], bool]) -> None:
        if not contains(self.seed):
            parameter = self.spec.parameters[0] if self.spec.parameters else "seed"
            raise InadmissibleParameterError(self.spec.family_id, parameter, "seed lies on the fibre curve")


class EllipticInstance(SurfaceInstance):
    """Genus one fibre curve with a Weierstrass model; m-th point is m * seed with the base point as origin."""

    def __init__(self, spec: FamilySpec, params: Params, surface: DiagonalSurface, construction: Construction):
        """Builds the Weierstrass model and the image of the seed."""
        super().__init__(spec, params, surface, construction)
        self._seed_must_lie_on(self.curve.contains)
        if isinstance(self.curve, QuadricIntersection):
            self.weierstrass, self.to_weierstrass = quadrics_to_weierstrass(self.curve)
        else:
            self.weierstrass, self.to_weierstrass = quartic_to_weierstrass(self.curve)
        self.seed_image = map_apply(self.to_weierstrass, self.seed)
        if spec.require_infinite_order and not self.is_symbolic:
            order = torsion_test(self.weierstrass, self.seed_image)
            if order is not None:
                predicate = f"seed of infinite order (it has order {order})"
                raise InadmissibleParameterError(spec.family_id, "seed", predicate)

    @cached_property
    def from_weierstrass(self):
        """Inverse of the map to the Weierstrass model."""
        return self.to_weierstrass.inverse()

    def curve_point(self, m: int) -> Any:
        """Pullback to the fibre curve of m times the seed image."""
        multiple = ec_mul(self.weierstrass, m, self.seed_image)
        if multiple.is_infinity:
            return self.curve.base
        return map_apply(self.from_weierstrass, multiple)

    def coordinates_of(self, point: Any) -> tuple:
        """Coordinates from the curve model."""
        return self.curve.point_coordinates(point)


class CubicInstance(SurfaceInstance):
    """Plane cubic fibre with chord-tangent multiples of the seed."""

    def __init__(self, spec: FamilySpec, params: Params, surface: DiagonalSurface, construction: Construction):
        """Checks that the seed lies on the cubic."""
        super().__init__(spec, params, surface, construction)
        self._seed_must_lie_on(lambda seed: self.curve.contains(tuple(as_scalar(x) for x in seed)))

    def curve_point(self, m: int) -> Any:
        """m * seed on the cubic."""
        return cubic_mul(self.curve, m, self.seed)

    def coordinates_of(self, point: Any) -> tuple:
        """Homogeneous coordinates."""
        return tuple(point)


class RationalInstance(SurfaceInstance):
    """Rational fibre: the m-th point is the parametrization at (m : 1)."""

    def curve_point(self, m: int) -> Any:
        """The parametrization at (m : 1)."""
        point = self.curve(as_scalar(m), as_scalar(1))
        if is_zero_vector(point):
            raise IndeterminateError(f"the parametrization of {self.spec.family_id} vanishes at ({m} : 1)")
        return point

    def coordinates_of(self, point: Any) -> tuple:
        """The coordinates as given by the parametrization."""
        return tuple(point)


_INSTANCE_TYPES = {
    CurveKind.QUADRIC_INTERSECTION: EllipticInstance,
    CurveKind.QUARTIC: EllipticInstance,
    CurveKind.PLANE_CUBIC: CubicInstance,
    CurveKind.RATIONAL: RationalInstance,
}

Generated = Tuple[int, Union[ProjPoint, Marker]]


def _generate_one(instance: SurfaceInstance, m: int) -> Generated:
    try:
        coordinates = instance.surface_point(m)
    except IndeterminateError as error:
        logger.warning("%s: multiple %d is indeterminate: %s", instance.spec.family_id, m, error)
        return m, Marker.INDETERMINATE
    if is_zero_vector(coordinates):
        logger.warning("%s: multiple %d pulls back to the zero vector", instance.spec.family_id, m)
        return m, Marker.INDETERMINATE
    point = canonicalize(instance.surface, coordinates)
    if not instance.surface.contains(point.coordinates):
        raise NotOnCurveError(f"{instance.spec.family_id}: multiple {m} gives {point}, which is off {instance.surface}")
    if point.is_trivial:
        logger.warning("%s: multiple %d gives the trivial point %s", instance.spec.family_id, m, point)
        return m, Marker.TRIVIAL
    logger.debug("%s: multiple %d gives %s", instance.spec.family_id, m, point)
    return m, point


def generate_points(instance: SurfaceInstance, multiples: Sequence[int], threads: int = 1) -> List[Generated]:
    """Canonical surface points of the given multiples of the seed, in ascending order of m.

    Args:
        instance: a family instance with rational parameters
        multiples: nonzero integers
        threads: worker threads; the result does not depend on it

    Returns:
        pairs (m, point), with a Marker in place of the point where the pullback is undefined or trivial
    """
    if instance.is_symbolic:
        raise ValueError(f"cannot generate integral points on {instance.spec.family_id} with symbolic parameters")
    multiples = sorted(set(int(m) for m in multiples))
    if any(m == 0 for m in multiples):
        raise ValueError("multiples must be nonzero")
    if threads < 1:
        raise ValueError(f"threads must be positive, got {threads}")
    if threads == 1 or len(multiples) < 2:
        results = [_generate_one(instance, m) for m in multiples]
    else:
        with ThreadPoolExecutor(max_workers=threads) as executor:
            results = list(executor.map(lambda m: _generate_one(instance, m), multiples))
    results.sort(key=lambda item: item[0])
    produced = sum(1 for _, point in results if isinstance(point, ProjPoint))
    logger.info("%s: generated %d of %d multiples", instance.spec.family_id, produced, len(multiples))
    return results

