"""
The mobius module translates between isometries of the hyperbolic space and
conformal diffeomorphisms of the sphere: an isometry T acts on the future null
cone by T(1, x) = e^{-omega(x)} (1, Phi(x)).
"""

from typing import Callable, Optional

import numpy as np
import scipy.linalg

from horoconv.conformal.chart import SphereLike, SpherePoint, as_array
from horoconv.conformal.metric import ConformalMetricField
from horoconv.constants import MOBIUS_TOLERANCE
from horoconv.errors import DimensionMismatchError, NoAdmissibleSamplesError, NotAnIsometryError
from horoconv.lorentz.isometry import LorentzIsometry, isometry_defect
from horoconv.lorentz.vector import null_lift_array

SphereMap = Callable[[np.ndarray], np.ndarray]


class MobiusMap:
    """
    The conformal diffeomorphism Phi of S^n induced by an isometry, with its
    conformal exponent omega: Phi^* g_0 = e^{2 omega} g_0.
    """

    def __init__(self, isometry: LorentzIsometry):
        self.isometry = isometry
        self.n = isometry.n

    def _image(self, points: np.ndarray) -> np.ndarray:
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if points.shape[1] != self.n + 1:
            raise DimensionMismatchError(
                f"Mobius map of S^{self.n} applied to points with {points.shape[1]} coordinates"
            )
        return self.isometry.apply_array(null_lift_array(points))

    def apply_array(self, points: np.ndarray) -> np.ndarray:
        image = self._image(points)
        return image[:, 1:] / image[:, :1]

    def omega_array(self, points: np.ndarray) -> np.ndarray:
        return -np.log(self._image(points)[:, 0])

    def __call__(self, x: SphereLike) -> SpherePoint:
        return SpherePoint(self.apply_array(as_array(x)[None, :])[0], normalize=True)

    def omega(self, x: SphereLike) -> float:
        return float(self.omega_array(as_array(x)[None, :])[0])

    def inverse(self) -> "MobiusMap":
        return MobiusMap(self.isometry.inverse())

    def __matmul__(self, other: "MobiusMap") -> "MobiusMap":
        """
        The composition self after other.
        """
        return MobiusMap(self.isometry @ other.isometry)

    def cone_residual(self, points: np.ndarray) -> float:
        """
        The deviation of T(1, x) from e^{-omega(x)} (1, Phi(x)).
        """
        image = self._image(points)
        rebuilt = null_lift_array(self.apply_array(points), -self.omega_array(points))
        return float(np.max(np.abs(image - rebuilt)))

    def round_trip(self, points: np.ndarray) -> float:
        """
        The deviation of Phi^{-1}(Phi(x)) from x.
        """
        points = np.atleast_2d(points)
        return float(np.max(np.abs(self.inverse().apply_array(self.apply_array(points)) - points)))

    def __repr__(self):
        return f"Mobius({self.isometry})"


def mobius_from_isometry(T: LorentzIsometry) -> MobiusMap:
    """
    The conformal diffeomorphism of the sphere induced by an isometry.
    :param LorentzIsometry T: A time-orientation preserving isometry.
    :return MobiusMap: Phi and omega with T(1, x) = e^{-omega(x)} (1, Phi(x)).
    """
    if not T.preserves_time or T.matrix[0, 0] <= 0:
        raise NotAnIsometryError("isometry reverses the time orientation")
    return MobiusMap(T)


def default_samples(n: int) -> np.ndarray:
    """
    The points +-e_i of S^n, whose null lifts span L^{n+2} with room to validate.
    """
    return np.vstack((np.eye(n + 1), -np.eye(n + 1)))


def isometry_from_mobius(
    phi_map: SphereMap,
    omega: Callable[[np.ndarray], np.ndarray],
    samples: Optional[np.ndarray] = None,
    n: Optional[int] = None,
    tolerance: float = MOBIUS_TOLERANCE,
) -> LorentzIsometry:
    """
    Reconstruct the isometry of a Mobius pair from its action on null lifts.
    :param phi_map: The vectorized map Phi on points of shape (m, n+1).
    :param omega: The vectorized conformal exponent.
    :param samples: The sphere points used, +-e_i if omitted.
    :param n: The sphere dimension, needed when samples are omitted.
    :param float tolerance: The tolerance on the fit and on M^T J M = J.
    :return LorentzIsometry: The isometry T with T(1, x) = e^{-omega(x)} (1, Phi(x)).
    """
    if samples is None:
        if n is None:
            raise DimensionMismatchError("either samples or the dimension n are needed")
        samples = default_samples(n)
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    size = samples.shape[1] + 1
    lifts = null_lift_array(samples)
    images = null_lift_array(phi_map(samples), -np.asarray(omega(samples), dtype=float))
    solution, _, rank, _ = scipy.linalg.lstsq(lifts, images)
    if rank < size:
        raise NoAdmissibleSamplesError(
            f"null lifts of {samples.shape[0]} samples span only {rank} of {size} dimensions"
        )
    matrix = solution.T
    fit = float(np.max(np.abs(lifts @ solution - images)))
    if fit > tolerance:
        raise NotAnIsometryError(f"samples are not the action of a linear map (residual {fit:.3e})")
    defect = isometry_defect(matrix)
    if defect > tolerance:
        raise NotAnIsometryError(f"reconstructed matrix violates M^T J M = J by {defect:.3e}")
    return LorentzIsometry(matrix, tolerance=tolerance)


def pullback_exponent(m: MobiusMap, f: ConformalMetricField) -> ConformalMetricField:
    """
    The exponent x -> rho(Phi(x)) + omega(x) of the pulled back metric Phi^* g.
    :param MobiusMap m: The Mobius map.
    :param ConformalMetricField f: The field.
    :return ConformalMetricField: The pulled back field, differentiated numerically.
    """
    if m.n != f.n:
        raise DimensionMismatchError(f"Mobius map of S^{m.n} and metric on S^{f.n}")

    def rho(points):
        return f.value_array(m.apply_array(points)) + m.omega_array(points)

    def domain(points):
        return f.contains_array(m.apply_array(points))

    return ConformalMetricField(f.n, rho, domain=domain, name=f"{f.name} pulled back")


__all__ = [
    "MobiusMap",
    "mobius_from_isometry",
    "default_samples",
    "isometry_from_mobius",
    "pullback_exponent",
]
