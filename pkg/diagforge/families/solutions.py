"""This file contains closed form solutions and the chain of sixth powers with a common value."""

import logging
import math
from typing import Any, List, Optional, Sequence, Tuple

from diagforge.algebra.mpoly import MPoly
from diagforge.errors import InadmissibleParameterError, IndeterminateError, TrivialPointError
from diagforge.families.base import Marker, generate_points, rational_root
from diagforge.families.registry import instantiate
from diagforge.families.surface import DiagonalSurface, ProjPoint, canonicalize, same_solution
from diagforge.genus1.scalars import as_scalar, to_fraction

logger = logging.getLogger(__name__)

CHAIN_FAMILY = "sec6_sextsurf_chain"


def carmichael_solution(a, c, d, s, t, k: Optional[Any] = None) -> ProjPoint:
    """The point (k(8as^4 - ct^4), k(8as^4 + ct^4), 8kas^3 t, 4acst^3) of a x^4 - a y^4 + c z^4 + d w^4 = 0.

    Args:
        a, c, d: nonzero rationals with 4 a^2 c d = k^4
        s, t: the parameter
        k: the fourth root; extracted from 4 a^2 c d when omitted

    Returns:
        the canonical point

    Raises:
        InadmissibleParameterError: 4 a^2 c d is not the fourth power of k (or of any rational)
        TrivialPointError: the point has two zero coordinates, which happens for s t = 0
    """
    a, c, d, s, t = (to_fraction(as_scalar(x)) for x in (a, c, d, s, t))
    if 0 in (a, c, d):
        raise InadmissibleParameterError("carmichael", "a, c, d", "nonzero coefficients")
    product = 4 * a**2 * c * d
    k = rational_root(product, 4) if k is None else to_fraction(as_scalar(k))
    if k is None or k**4 != product:
        raise InadmissibleParameterError("carmichael", "d", "4a^2cd is a rational fourth power")
    coordinates = (
        k * (8 * a * s**4 - c * t**4),
        k * (8 * a * s**4 + c * t**4),
        8 * k * a * s**3 * t,
        4 * a * c * s * t**3,
    )
    surface = DiagonalSurface((a, -a, c, d))
    point = canonicalize(surface, coordinates)
    if point.is_trivial:
        raise TrivialPointError(f"(s, t) = ({s}, {t}) gives the trivial point {point}")
    return point


def conic_2k2_solution(k, phi: Sequence[MPoly]) -> Tuple[MPoly, MPoly, MPoly, MPoly]:
    """Forms (phi1 - phi2, 2 phi2, phi1 + phi2, phi3) solving x^4 + y^4 + z^4 = 2 k^2 w^4.

    phi must be polynomials with phi1^2 + 3 phi2^2 = k phi3^2 identically.
    """
    if len(phi) != 3 or not all(isinstance(form, MPoly) for form in phi):
        raise ValueError("phi must be three polynomial forms")
    k = as_scalar(k)
    if k == 0:
        raise InadmissibleParameterError("conic_2k2", "k", "k != 0")
    phi1, phi2, phi3 = MPoly.unify(*phi)
    if not (phi1**2 + 3 * phi2**2 - k * phi3**2).is_zero():
        raise ValueError(f"({phi1}, {phi2}, {phi3}) does not solve X1^2 + 3 X2^2 = {k} X3^2")
    return phi1 - phi2, 2 * phi2, phi1 + phi2, phi3


def sixth_power_chain(t0, length: int) -> List[Any]:
    """Pullbacks of Q, 2Q, ..., length*Q on 2X^6 - 2Y^6 + Z^6 = f(t0)^3 W^6.

    Rational t0 gives canonical ProjPoints. A symbolic t0 (an MPoly variable) gives the coordinate tuples as
    rational functions in it.
    """
    if length < 0:
        raise ValueError(f"the chain length must be nonnegative, got {length}")
    if length == 0:
        return []
    instance = instantiate(CHAIN_FAMILY, {"t0": t0})
    if instance.is_symbolic:
        return [instance.surface_point(m) for m in range(1, length + 1)]
    members: List[ProjPoint] = []
    for m, point in generate_points(instance, range(1, length + 1)):
        if isinstance(point, Marker):
            raise IndeterminateError(f"chain member {m} at t0 = {t0} is {point.value}")
        for earlier in members:
            if same_solution(instance.surface, earlier, point):
                raise InadmissibleParameterError(CHAIN_FAMILY, "t0", "seed of infinite order")
        members.append(point)
    logger.info("chain of %d members at t0 = %s", len(members), t0)
    return members


def equalized_chain(t0, length: int) -> Tuple[int, List[ProjPoint]]:
    """Chain members rescaled so that 2X^6 - 2Y^6 + Z^6 is the same integer for all of them.

    Returns:
        the common value and the rescaled members, each a multiple of its canonical form
    """
    members = sixth_power_chain(t0, length)
    if any(not isinstance(member, ProjPoint) for member in members):
        raise ValueError("equalized chains need a rational t0")
    if any(member[3] == 0 for member in members):
        raise IndeterminateError(f"a chain member at t0 = {t0} has w = 0")
    if not members:
        return 0, []
    common = math.lcm(*(abs(member[3]) for member in members))
    scaled = [ProjPoint(tuple(x * (common // abs(member[3])) for x in member)) for member in members]
    values = {2 * x**6 - 2 * y**6 + z**6 for x, y, z, _ in scaled}
    if len(values) != 1:
        raise ArithmeticError(f"rescaled chain members give different values {sorted(values)}")
    value = values.pop()
    logger.info("equalized %d chain members at the common value %d", len(scaled), value)
    return value, scaled
