"""This file contains the norm form of g0 + g1*theta + g2*theta^2 over a cubic field, with polynomial coordinates."""

from typing import Sequence, Union

from diagforge.algebra.field import NumberField, determinant
from diagforge.algebra.mpoly import MPoly


def _minpoly_coefficients(minpoly: Union[NumberField, Sequence]) -> list:
    if isinstance(minpoly, NumberField):
        return list(minpoly.minpoly)
    return list(minpoly)


def norm_form(g0: MPoly, g1: MPoly, g2: MPoly, minpoly: Union[NumberField, Sequence]) -> MPoly:
    """Norm of g0 + g1*theta + g2*theta^2 for theta a root of a monic cubic, expanded over Q.

    The norm is the determinant of multiplication by the element on the basis 1, theta, theta^2. With
    theta^3 = -(f0 + f1*theta + f2*theta^2) the columns are the images of 1, theta and theta^2.
    """
    coefficients = _minpoly_coefficients(minpoly)
    if len(coefficients) != 4:
        raise ValueError(f"norm_form needs a cubic minimal polynomial, got degree {len(coefficients) - 1}")
    if coefficients[-1] != 1:
        raise ValueError(f"norm_form needs a monic minimal polynomial, leading coefficient is {coefficients[-1]}")
    f0, f1, f2 = coefficients[:3]
    g0, g1, g2 = MPoly.unify(g0, g1, g2)

    def times_theta(column):
        c0, c1, c2 = column
        # c0 + c1*theta + c2*theta^2 times theta, reduced with theta^3 = -(f0 + f1*theta + f2*theta^2)
        return (-f0 * c2, c0 - f1 * c2, c1 - f2 * c2)

    first = (g0, g1, g2)
    second = times_theta(first)
    third = times_theta(second)
    matrix = [[first[i], second[i], third[i]] for i in range(3)]
    return determinant(matrix)
