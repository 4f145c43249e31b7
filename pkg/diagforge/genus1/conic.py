"""This file contains the parametrization of a plane conic through a known point by lines through that point."""

import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from diagforge.algebra.field import determinant
from diagforge.algebra.mpoly import MPoly
from diagforge.errors import NotOnCurveError, SingularCurveError
from diagforge.genus1.scalars import (
    Scalar,
    as_scalar,
    first_nonzero,
    is_rational,
    is_zero_vector,
    matrix_vector,
    quadratic_value,
    to_fraction,
)

# coefficients of a^2, a*b, b^2
BinaryQuadratic = Tuple[Scalar, Scalar, Scalar]


def _content_free(forms: Sequence[BinaryQuadratic]) -> Tuple[BinaryQuadratic, ...]:
    values = [to_fraction(c) for form in forms for c in form]
    common = math.lcm(*(v.denominator for v in values))
    integers = [int(v * common) for v in values]
    divisor = math.gcd(*integers) or 1
    integers = [as_scalar(n // divisor) for n in integers]
    return tuple(tuple(integers[3 * m : 3 * m + 3]) for m in range(3))


@dataclass(frozen=True)
class ConicParametrization:
    """The map (a : b) -> (X0 : X1 : X2) sweeping the conic by lines through the base point."""

    # symmetric 3x3 matrix of the conic X^T M X = 0
    matrix: Tuple[Tuple[Scalar, ...], ...]
    # the known point
    base: Tuple[Scalar, Scalar, Scalar]
    # index of the first nonzero coordinate of the base point
    pivot: int
    # the two other indices, in increasing order: a moves along the first, b along the second
    free: Tuple[int, int]
    # for each coordinate the coefficients of a^2, a*b and b^2
    coefficients: Tuple[BinaryQuadratic, BinaryQuadratic, BinaryQuadratic]

    def __call__(self, a: Scalar, b: Scalar) -> Tuple[Scalar, Scalar, Scalar]:
        """The conic point with parameter (a : b)."""
        return tuple(c0 * a * a + c1 * a * b + c2 * b * b for c0, c1, c2 in self.coefficients)

    def forms(self, variables: Tuple[str, str] = ("a", "b")) -> Tuple[MPoly, MPoly, MPoly]:
        """The three coordinates as binary quadratic forms."""
        a, b = MPoly.variables_of(*variables)
        return tuple(a * a * c0 + a * b * c1 + b * b * c2 for c0, c1, c2 in self.coefficients)

    def parameter_of(self, point: Sequence[Scalar]) -> Tuple[Scalar, Scalar]:
        """The parameter (a : b) of a conic point; the base point belongs to the tangent direction."""
        p = self.base
        k = self.pivot
        i, j = self.free
        first = p[k] * point[i] - point[k] * p[i]
        second = p[k] * point[j] - point[k] * p[j]
        if first == 0 and second == 0:
            r = matrix_vector(self.matrix, p)
            return r[j], -r[i]
        return first, second

    def inverse_forms(self, variables: Tuple[str, str, str] = ("x", "y", "z")) -> Tuple[MPoly, MPoly]:
        """The two linear forms giving (a : b) away from the base point."""
        coordinates = MPoly.variables_of(*variables)
        p = self.base
        k = self.pivot
        i, j = self.free
        return (
            coordinates[i] * p[k] - coordinates[k] * p[i],
            coordinates[j] * p[k] - coordinates[k] * p[j],
        )


def parametrize_conic(matrix: Sequence[Sequence], base: Sequence) -> ConicParametrization:
    """Parametrizes the nondegenerate conic X^T M X = 0 through the rational point `base`."""
    matrix = tuple(tuple(as_scalar(entry) for entry in row) for row in matrix)
    base = tuple(as_scalar(x) for x in base)
    if len(matrix) != 3 or any(len(row) != 3 for row in matrix):
        raise ValueError(f"a conic needs a 3x3 matrix, got {matrix}")
    if any(matrix[i][j] != matrix[j][i] for i in range(3) for j in range(i)):
        raise ValueError(f"the conic matrix must be symmetric, got {matrix}")
    if determinant(matrix) == 0:
        raise SingularCurveError(f"the conic with matrix {matrix} is degenerate")
    if is_zero_vector(base) or quadratic_value(matrix, base) != 0:
        raise NotOnCurveError(f"{base} is not a point of the conic with matrix {matrix}")
    k = first_nonzero(base)
    i, j = (index for index in range(3) if index != k)
    r = matrix_vector(matrix, base)
    coefficients = []
    for m in range(3):
        delta_i = 1 if m == i else 0
        delta_j = 1 if m == j else 0
        coefficients.append(
            (
                -base[m] * matrix[i][i] + 2 * r[i] * delta_i,
                -2 * base[m] * matrix[i][j] + 2 * r[j] * delta_i + 2 * r[i] * delta_j,
                -base[m] * matrix[j][j] + 2 * r[j] * delta_j,
            )
        )
    if all(is_rational(c) for form in coefficients for c in form):
        coefficients = _content_free(coefficients)
    return ConicParametrization(matrix, base, k, (i, j), tuple(tuple(form) for form in coefficients))
