"""
The chart module provides points of the unit sphere S^n in R^{n+1} and the
stereographic charts used to differentiate fields on it.
"""

from typing import Tuple, Union

import numpy as np
import scipy.linalg

from horoconv.constants import SECOND_POLE_TILT, UNIT_TOLERANCE
from horoconv.errors import ChartPoleError, DimensionMismatchError, DomainError, SpecError


class SpherePoint:
    """
    An immutable point of the unit sphere S^n in R^{n+1}.
    """

    def __init__(self, coords, normalize: bool = False):
        """
        Initialize the point.
        :param coords: The n+1 Euclidean coordinates.
        :param bool normalize: Rescale to unit length instead of validating it.
        """
        array = np.array(coords, dtype=float).reshape(-1)
        if array.size < 4:
            raise SpecError(f"points of S^n need n >= 3, got {array.size} coordinates")
        norm = float(np.dot(array, array))
        if normalize:
            if norm == 0 or not np.isfinite(norm):
                raise DomainError("cannot normalize a zero or non-finite vector")
            array = array / np.sqrt(norm)
        elif abs(norm - 1) > UNIT_TOLERANCE:
            raise DomainError(f"point is off the unit sphere by {abs(norm - 1):.3e}")
        array.setflags(write=False)
        self.coords = array
        self.n = array.size - 1

    def __eq__(self, other):
        if not isinstance(other, SpherePoint):
            return NotImplemented
        return np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash(self.coords.tobytes())

    def __neg__(self) -> "SpherePoint":
        return SpherePoint(-self.coords)

    def __repr__(self):
        return "[" + ", ".join(f"{c:.6g}" for c in self.coords) + "]"


SphereLike = Union[SpherePoint, np.ndarray]


def as_array(x: SphereLike) -> np.ndarray:
    """
    The coordinates of a sphere point given as SpherePoint or array.
    """
    if isinstance(x, SpherePoint):
        return x.coords
    return np.asarray(x, dtype=float)


def basis_vector(n: int, index: int) -> np.ndarray:
    """
    The unit vector e_index of R^{n+1}, counting from 1.
    """
    e = np.zeros(n + 1)
    e[index - 1] = 1.0
    return e


def aligned_frame(pole: np.ndarray) -> np.ndarray:
    """
    An orthonormal frame of the hyperplane orthogonal to the pole, obtained from
    the coordinate axes other than the dominant one of the pole.
    """
    keep = np.delete(np.eye(pole.size), int(np.argmax(np.abs(pole))), axis=1)
    projected = keep - np.outer(pole, pole @ keep)
    q, r = scipy.linalg.qr(projected, mode="economic")
    return q * np.sign(np.diag(r))


class StereoChart:
    """
    The stereographic projection from a pole onto the tangent hyperplane of the
    pole, written in an orthonormal frame of that hyperplane. The antipode of the
    pole is the chart origin and the round metric reads (2 / (1 + |u|^2))^2 |du|^2.
    """

    def __init__(self, pole: SphereLike, aligned: bool = False):
        """
        Initialize the chart.
        :param pole: The projection center, excluded from the chart.
        :param bool aligned: Use the frame closest to the coordinate axes, so that
        the chart coordinates of the pole e_j are the remaining coordinates in order.
        """
        pole = SpherePoint(as_array(pole), normalize=True).coords
        self.pole = pole
        self.n = pole.size - 1
        if aligned:
            self.frame = aligned_frame(pole)
        else:
            self.frame = scipy.linalg.null_space(pole[None, :])

    @classmethod
    def centered_at(cls, x: SphereLike) -> "StereoChart":
        """
        The chart whose origin is x.
        """
        return cls(-as_array(x))

    @classmethod
    def tilted_at(cls, x: SphereLike, tilt: float = SECOND_POLE_TILT) -> "StereoChart":
        """
        A second chart around x whose pole is a perturbed antipode of x.
        """
        x = as_array(x)
        tangent = scipy.linalg.null_space(x[None, :])[:, 0]
        return cls(-x + tilt * tangent)

    def _check(self, points: np.ndarray):
        if points.shape[-1] != self.n + 1:
            raise DimensionMismatchError(
                f"chart of S^{self.n} applied to points of R^{points.shape[-1]}"
            )

    def to_chart_array(self, points: np.ndarray) -> np.ndarray:
        """
        Chart coordinates of sphere points, shape (..., n+1) to (..., n).
        """
        points = np.asarray(points, dtype=float)
        self._check(points)
        denominator = 1.0 - points @ self.pole
        if np.any(denominator <= 1e-14):
            raise ChartPoleError("point coincides with the chart pole")
        return (points @ self.frame) / denominator[..., None]

    def from_chart_array(self, coords: np.ndarray) -> np.ndarray:
        """
        Sphere points of chart coordinates, shape (..., n) to (..., n+1).
        """
        coords = np.asarray(coords, dtype=float)
        square = np.sum(coords**2, axis=-1)[..., None]
        numerator = 2.0 * coords @ self.frame.T + (square - 1.0) * self.pole
        return numerator / (1.0 + square)

    def to_chart(self, x: SphereLike) -> np.ndarray:
        """
        The chart coordinate of a sphere point.
        :param x: A point different from the pole.
        :return np.ndarray: The n chart coordinates.
        """
        return self.to_chart_array(as_array(x)[None, :])[0]

    def from_chart(self, u: np.ndarray) -> SpherePoint:
        """
        The sphere point of a chart coordinate.
        :param np.ndarray u: The n chart coordinates.
        :return SpherePoint: The point on S^n.
        """
        return SpherePoint(self.from_chart_array(np.asarray(u)[None, :])[0], normalize=True)

    @staticmethod
    def conformal_factor(u: np.ndarray) -> float:
        return 2.0 / (1.0 + float(np.dot(u, u)))

    def embedding_jet(self, u: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        The inverse chart map X and its first and second derivatives at u.
        :param np.ndarray u: The chart coordinate.
        :return: X of shape (n+1,), dX of shape (n+1, n) and ddX of shape
        (n+1, n, n).
        """
        u = np.asarray(u, dtype=float)
        n = self.n
        square = float(np.dot(u, u))
        d = 1.0 + square
        numerator = 2.0 * self.frame @ u + (square - 1.0) * self.pole
        position = numerator / d
        dnum = 2.0 * self.frame + 2.0 * np.outer(self.pole, u)
        tangents = dnum / d - 2.0 * np.outer(numerator, u) / d**2
        eye = np.eye(n)
        second = (
            2.0 * self.pole[:, None, None] * eye[None] / d
            - 2.0 * dnum[:, :, None] * u[None, None, :] / d**2
            - 2.0 * dnum[:, None, :] * u[None, :, None] / d**2
            - 2.0 * numerator[:, None, None] * eye[None] / d**2
            + 8.0 * numerator[:, None, None] * np.outer(u, u)[None] / d**3
        )
        return position, tangents, second

    def __repr__(self):
        return f"StereoChart(pole={SpherePoint(self.pole)})"


__all__ = [
    "SpherePoint",
    "SphereLike",
    "as_array",
    "basis_vector",
    "aligned_frame",
    "StereoChart",
]
