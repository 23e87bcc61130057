"""
The vector module provides the points of the Lorentz-Minkowski space L^{n+2}, the
Minkowski inner product and the classification into the hyperbolic space, the
de Sitter space and the positive null cone.
"""

import enum
from typing import Optional, Sequence, Union

import numpy as np

from horoconv.constants import QUADRIC_TOLERANCE
from horoconv.errors import DimensionMismatchError, DomainError, SpecError


def lorentz_dot(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """
    Compute the Minkowski inner product -a_0 b_0 + sum a_i b_i over the last axis.
    :param np.ndarray a: The first array of coordinates, shape (..., n+2).
    :param np.ndarray b: The second array of coordinates, shape (..., n+2).
    :return np.ndarray: The inner products, shape (...).
    """
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    if a.shape[-1] != b.shape[-1]:
        raise DimensionMismatchError(
            f"cannot pair vectors of length {a.shape[-1]} and {b.shape[-1]}"
        )
    return np.sum(a[..., 1:] * b[..., 1:], axis=-1) - a[..., 0] * b[..., 0]


class LorentzVector:
    """
    An immutable point of L^{n+2} for an ambient sphere dimension n >= 3.
    """

    def __init__(self, coords: Union[Sequence[float], np.ndarray], n: Optional[int] = None):
        """
        Initialize the vector.
        :param coords: The n+2 coordinates (x_0, x_1, ..., x_{n+1}).
        :param Optional[int] n: The sphere dimension, inferred when omitted.
        """
        array = np.array(coords, dtype=float).reshape(-1)
        if n is None:
            n = array.size - 2
        if array.size != n + 2:
            raise DimensionMismatchError(
                f"a vector of L^{n + 2} needs {n + 2} coordinates, got {array.size}"
            )
        if n < 3:
            raise SpecError(f"the sphere dimension must be at least 3, got {n}")
        if not np.all(np.isfinite(array)):
            raise DomainError("Lorentz vector with non-finite coordinates")
        array.setflags(write=False)
        self.coords = array
        self.n = n

    @property
    def time(self) -> float:
        return float(self.coords[0])

    @property
    def spatial(self) -> np.ndarray:
        return self.coords[1:]

    def _check(self, other: "LorentzVector"):
        if not isinstance(other, LorentzVector):
            raise TypeError(f"expected a LorentzVector, got {type(other).__name__}")
        if other.n != self.n:
            raise DimensionMismatchError(
                f"vectors of L^{self.n + 2} and L^{other.n + 2} cannot be combined"
            )

    def __add__(self, other: "LorentzVector") -> "LorentzVector":
        self._check(other)
        return LorentzVector(self.coords + other.coords, self.n)

    def __sub__(self, other: "LorentzVector") -> "LorentzVector":
        self._check(other)
        return LorentzVector(self.coords - other.coords, self.n)

    def __mul__(self, scalar: float) -> "LorentzVector":
        return LorentzVector(self.coords * float(scalar), self.n)

    __rmul__ = __mul__

    def __neg__(self) -> "LorentzVector":
        return LorentzVector(-self.coords, self.n)

    def __eq__(self, other):
        if not isinstance(other, LorentzVector):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.coords, other.coords)

    def __hash__(self):
        return hash((self.n, self.coords.tobytes()))

    def distance(self, other: "LorentzVector") -> float:
        """
        The maximal componentwise deviation from another vector.
        :param LorentzVector other: The vector to compare with.
        :return float: The sup-norm of the difference.
        """
        self._check(other)
        return float(np.max(np.abs(self.coords - other.coords)))

    def __repr__(self):
        return "(" + ", ".join(f"{c:.6g}" for c in self.coords) + ")"

    def __str__(self):
        return self.__repr__()


def minkowski_inner(a: LorentzVector, b: LorentzVector) -> float:
    """
    The Lorentzian inner product of two vectors of the same space.
    :param LorentzVector a: The first vector.
    :param LorentzVector b: The second vector.
    :return float: -a_0 b_0 + sum_i a_i b_i.
    """
    a._check(b)
    return float(lorentz_dot(a.coords, b.coords))


class Hyperquadric(enum.Enum):
    HYPERBOLIC = "Hyperbolic"
    DE_SITTER = "DeSitter"
    NULL_CONE_PLUS = "NullConePlus"
    NONE = "None"


class HyperquadricClass:
    """
    The hyperquadric a vector belongs to together with the tolerance used to
    decide it.
    """

    def __init__(self, tag: Hyperquadric, tolerance: float):
        self.tag = tag
        self.tolerance = tolerance

    def __eq__(self, other):
        if isinstance(other, Hyperquadric):
            return self.tag == other
        if isinstance(other, HyperquadricClass):
            return self.tag == other.tag
        return NotImplemented

    def __hash__(self):
        return hash(self.tag)

    def __repr__(self):
        return f"{self.tag.value}[{self.tolerance:.1e}]"


def classify_array(coords: np.ndarray, tol: float = QUADRIC_TOLERANCE) -> Hyperquadric:
    """
    Classify raw coordinates, see classify.
    """
    norm = float(lorentz_dot(coords, coords))
    if abs(norm + 1) <= tol and coords[0] > 0:
        return Hyperquadric.HYPERBOLIC
    if abs(norm - 1) <= tol:
        return Hyperquadric.DE_SITTER
    if abs(norm) <= tol and coords[0] > 0:
        return Hyperquadric.NULL_CONE_PLUS
    return Hyperquadric.NONE


def classify(v: LorentzVector, tol: float = QUADRIC_TOLERANCE) -> HyperquadricClass:
    """
    Tag a vector with the hyperquadric it lies on.
    :param LorentzVector v: The vector to classify.
    :param float tol: The absolute tolerance on the Minkowski norm.
    :return HyperquadricClass: Hyperbolic, DeSitter, NullConePlus or None.
    """
    if tol <= 0:
        raise SpecError(f"classification tolerance must be positive, got {tol}")
    return HyperquadricClass(classify_array(v.coords, tol), tol)


def poincare_array(points: np.ndarray) -> np.ndarray:
    """
    Project hyperboloid points, shape (..., n+2), into the Poincare ball.
    """
    points = np.asarray(points, dtype=float)
    return points[..., 1:] / (1.0 + points[..., :1])


def poincare_projection(p: LorentzVector) -> np.ndarray:
    """
    Project a point of the hyperbolic space into the Poincare ball.
    :param LorentzVector p: A point with <p,p> = -1 and p_0 > 0.
    :return np.ndarray: The n+1 ball coordinates (x_1, ..., x_{n+1}) / (1 + x_0).
    """
    if classify_array(p.coords) != Hyperquadric.HYPERBOLIC:
        raise DomainError(f"{p} does not lie on the hyperbolic space")
    return poincare_array(p.coords)


def origin(n: int) -> LorentzVector:
    """
    The base point O = (1, 0, ..., 0) of the hyperbolic space.
    """
    coords = np.zeros(n + 2)
    coords[0] = 1.0
    return LorentzVector(coords, n)


def null_lift_array(points: np.ndarray, scale: Optional[np.ndarray] = None) -> np.ndarray:
    """
    The null vectors e^{scale} (1, x) over sphere points of shape (m, n+1).
    """
    points = np.atleast_2d(np.asarray(points, dtype=float))
    lifts = np.hstack((np.ones((points.shape[0], 1)), points))
    if scale is None:
        return lifts
    return np.exp(np.asarray(scale, dtype=float)).reshape(-1, 1) * lifts


def null_lift(x: np.ndarray, scale: float = 0.0) -> LorentzVector:
    """
    The null vector e^{scale} (1, x) over a point x of the sphere.
    """
    return LorentzVector(null_lift_array(x, scale)[0])


__all__ = [
    "lorentz_dot",
    "LorentzVector",
    "minkowski_inner",
    "Hyperquadric",
    "HyperquadricClass",
    "classify_array",
    "classify",
    "poincare_array",
    "poincare_projection",
    "origin",
    "null_lift_array",
    "null_lift",
]
