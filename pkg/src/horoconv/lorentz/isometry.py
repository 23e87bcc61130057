"""
The isometry module provides the time-orientation preserving isometries of
L^{n+2}, generated by spatial rotations and boosts.
"""

from typing import Optional, Sequence, Tuple

import numpy as np

from horoconv.constants import ISOMETRY_TOLERANCE
from horoconv.errors import (
    DimensionMismatchError,
    InvalidAxisError,
    NotAnIsometryError,
    SpecError,
)
from horoconv.lorentz.vector import LorentzVector


def minkowski_metric(n: int) -> np.ndarray:
    """
    The Gram matrix J = diag(-1, 1, ..., 1) of L^{n+2}.
    """
    metric = np.eye(n + 2)
    metric[0, 0] = -1.0
    return metric


def isometry_defect(matrix: np.ndarray) -> float:
    """
    The entrywise deviation of M^T J M from J.
    """
    metric = minkowski_metric(matrix.shape[0] - 2)
    return float(np.max(np.abs(matrix.T @ metric @ matrix - metric)))


class LorentzIsometry:
    """
    An element of the orthochronous Lorentz group acting on L^{n+2}.
    """

    def __init__(self, matrix: np.ndarray, tolerance: float = ISOMETRY_TOLERANCE):
        """
        Initialize the isometry and validate M^T J M = J and M_00 > 0.
        :param np.ndarray matrix: The (n+2)x(n+2) matrix.
        :param float tolerance: The entrywise tolerance, scaled with the size
        of the entries.
        """
        matrix = np.array(matrix, dtype=float)
        if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
            raise DimensionMismatchError(f"isometry matrix of shape {matrix.shape}")
        if matrix.shape[0] < 5:
            raise SpecError("isometries act on L^{n+2} with n >= 3")
        defect = isometry_defect(matrix)
        scale = (1.0 + float(np.max(np.abs(matrix)))) ** 2
        if defect > tolerance * scale:
            raise NotAnIsometryError(
                f"matrix violates M^T J M = J by {defect:.3e}"
            )
        if matrix[0, 0] <= 0:
            raise NotAnIsometryError("matrix reverses the time orientation")
        matrix.setflags(write=False)
        self.matrix = matrix
        self.n = matrix.shape[0] - 2
        self.preserves_time = True

    def __matmul__(self, other: "LorentzIsometry") -> "LorentzIsometry":
        if not isinstance(other, LorentzIsometry):
            return NotImplemented
        if other.n != self.n:
            raise DimensionMismatchError(
                f"cannot compose isometries of L^{self.n + 2} and L^{other.n + 2}"
            )
        return LorentzIsometry(self.matrix @ other.matrix)

    def inverse(self) -> "LorentzIsometry":
        """
        The inverse J M^T J.
        """
        metric = minkowski_metric(self.n)
        return LorentzIsometry(metric @ self.matrix.T @ metric)

    def apply_array(self, points: np.ndarray) -> np.ndarray:
        """
        Apply the isometry to an array of coordinates of shape (..., n+2).
        """
        points = np.asarray(points, dtype=float)
        if points.shape[-1] != self.n + 2:
            raise DimensionMismatchError(
                f"isometry of L^{self.n + 2} applied to vectors of length "
                f"{points.shape[-1]}"
            )
        return points @ self.matrix.T

    def __call__(self, v: LorentzVector) -> LorentzVector:
        return apply_isometry(self, v)

    def __repr__(self):
        return f"LorentzIsometry(n={self.n}, defect={isometry_defect(self.matrix):.1e})"


def apply_isometry(T: LorentzIsometry, v: LorentzVector) -> LorentzVector:
    """
    Apply an isometry to a vector.
    :param LorentzIsometry T: The isometry.
    :param LorentzVector v: The vector.
    :return LorentzVector: The image Mv.
    """
    if v.n != T.n:
        raise DimensionMismatchError(
            f"isometry of L^{T.n + 2} applied to a vector of L^{v.n + 2}"
        )
    return LorentzVector(T.matrix @ v.coords, v.n)


def _check_spatial(axis: int, n: int):
    if not 1 <= axis <= n + 1:
        raise InvalidAxisError(f"spatial axis {axis} outside 1..{n + 1}")


def identity(n: int) -> LorentzIsometry:
    return LorentzIsometry(np.eye(n + 2))


def rotation(n: int, axes: Tuple[int, int], angle: float) -> LorentzIsometry:
    """
    Rotate by an angle in the plane of two spatial axes.
    :param int n: The sphere dimension.
    :param Tuple[int, int] axes: Two distinct spatial axes in 1..n+1.
    :param float angle: The rotation angle.
    :return LorentzIsometry: The rotation.
    """
    i, j = axes
    _check_spatial(i, n)
    _check_spatial(j, n)
    if i == j:
        raise InvalidAxisError(f"rotation plane needs two distinct axes, got {axes}")
    matrix = np.eye(n + 2)
    c, s = np.cos(angle), np.sin(angle)
    matrix[i, i], matrix[i, j] = c, -s
    matrix[j, i], matrix[j, j] = s, c
    return LorentzIsometry(matrix)


def boost(n: int, axis: int, rapidity: float) -> LorentzIsometry:
    """
    Boost with a rapidity in the plane of the time axis and a spatial axis.
    :param int n: The sphere dimension.
    :param int axis: The spatial axis in 1..n+1.
    :param float rapidity: The hyperbolic angle.
    :return LorentzIsometry: The boost.
    """
    _check_spatial(axis, n)
    matrix = np.eye(n + 2)
    ch, sh = np.cosh(rapidity), np.sinh(rapidity)
    matrix[0, 0], matrix[0, axis] = ch, sh
    matrix[axis, 0], matrix[axis, axis] = sh, ch
    return LorentzIsometry(matrix)


def compose(*isometries: LorentzIsometry) -> LorentzIsometry:
    """
    The product T_1 T_2 ... T_m, applied right to left.
    """
    if not isometries:
        raise SpecError("composition of no isometries")
    result = isometries[0]
    for isometry in isometries[1:]:
        result = result @ isometry
    return result


def make_isometry(
    kind: str,
    n: int,
    axes: Optional[Tuple[int, int]] = None,
    axis: Optional[int] = None,
    angle: float = 0.0,
    rapidity: float = 0.0,
    factors: Optional[Sequence[LorentzIsometry]] = None,
) -> LorentzIsometry:
    """
    Build an isometry from one of the generator kinds.
    :param str kind: One of rotation, boost or composition.
    :param int n: The sphere dimension.
    :param axes: The rotation plane for rotations.
    :param axis: The spatial axis for boosts.
    :param float angle: The rotation angle.
    :param float rapidity: The boost rapidity.
    :param factors: The factors of a composition.
    :return LorentzIsometry: The isometry.
    """
    if kind == "rotation":
        if axes is None:
            raise InvalidAxisError("rotation needs an axis pair")
        return rotation(n, axes, angle)
    elif kind == "boost":
        if axis is None:
            raise InvalidAxisError("boost needs a spatial axis")
        return boost(n, axis, rapidity)
    elif kind == "composition":
        factors = list(factors or [])
        if any(f.n != n for f in factors):
            raise DimensionMismatchError("composition factors of another dimension")
        return compose(*factors) if factors else identity(n)
    raise SpecError(f"unknown isometry kind {kind!r}")


__all__ = [
    "minkowski_metric",
    "isometry_defect",
    "LorentzIsometry",
    "apply_isometry",
    "identity",
    "rotation",
    "boost",
    "compose",
    "make_isometry",
]
