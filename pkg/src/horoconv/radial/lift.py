"""
The lift module turns a radial profile into a conformal metric on a spherical
annulus and builds the rotational hypersurface it induces: jets along a
meridian, the profile curve against the rotation axis and a surface of
revolution in the Poincare ball.
"""

from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicSpline

from horoconv.conformal.metric import ConformalMetricField
from horoconv.conformal.schouten import eigenvalues_at, normalize_below_half
from horoconv.constants import (
    BELOW_HALF_MARGIN,
    LIFT_ANGLES,
    LIFT_S_LIMIT,
    LIFT_SAMPLES,
)
from horoconv.correspondence.hypersurface import HypersurfaceJet, jet
from horoconv.errors import DomainError, EigenvalueBoundError, SpecError
from horoconv.io.mesh import grid_faces
from horoconv.logger import LOGGER
from horoconv.lorentz.vector import lorentz_dot, poincare_array
from horoconv.radial.profile import RadialProfile


def radial_field(profile: RadialProfile) -> ConformalMetricField:
    """
    The field of e^{2u(|x|)} |dx|^2 transported to the sphere by the stereographic
    projection from e_{n+1}. With z = x_{n+1} = tanh s the exponent is
    rho = u(s) - log(1 - z).
    :param RadialProfile profile: The profile.
    :return ConformalMetricField: A height-function field on the annulus.
    """
    low, high = np.tanh(profile.s[0]), np.tanh(profile.s[-1])

    def h(z):
        s = np.arctanh(z)
        xi, _, _ = profile.cylindrical(s)
        return xi - s - np.log1p(-z)

    def dh(z):
        s = np.arctanh(z)
        _, p, _ = profile.cylindrical(s)
        return (p - 1) / (1 - z**2) + 1 / (1 - z)

    def d2h(z):
        s = np.arctanh(z)
        _, p, ddxi = profile.cylindrical(s)
        sz = 1 / (1 - z**2)
        return ddxi * sz**2 + (p - 1) * 2 * z * sz**2 + 1 / (1 - z) ** 2

    return ConformalMetricField.height_function(
        profile.n,
        h,
        dh,
        d2h,
        domain=lambda points: (points[:, -1] > low) & (points[:, -1] < high),
        name=f"radial(n={profile.n},k={profile.k})",
    )


def meridian(n: int, s: np.ndarray) -> np.ndarray:
    """
    The sphere points (sech s, 0, ..., 0, tanh s), shape (m, n+1).
    """
    s = np.asarray(s, dtype=float)
    points = np.zeros((s.size, n + 1))
    points[:, 0] = 1 / np.cosh(s)
    points[:, -1] = np.tanh(s)
    return points


def lift_grid(
    profile: RadialProfile, samples: int, limit: float = LIFT_S_LIMIT
) -> np.ndarray:
    """
    Interior sample values of s, clipped to |s| <= limit.
    """
    if samples < 2:
        raise SpecError(f"a lift needs at least 2 samples, got {samples}")
    low, high = max(profile.s[0], -limit), min(profile.s[-1], limit)
    if low >= high:
        raise DomainError(
            f"profile range [{profile.s[0]}, {profile.s[-1]}] misses |s| <= {limit}"
        )
    return np.linspace(low, high, samples + 2)[1:-1]


def eigenvalue_deviation(profile: RadialProfile, s: np.ndarray) -> float:
    """
    The deviation of the radial eigenvalue formulas from the chart-based Schouten
    eigenvalues of the lifted field at the given log-radii.
    """
    s = np.asarray(s, dtype=float)
    field = radial_field(profile)
    pipeline = eigenvalues_at(field, meridian(profile.n, s))
    xi, p, ddxi = profile.cylindrical(s)
    scale = np.exp(-2 * xi)
    tangential = scale * (1 - p**2) / 2
    radial = scale * (-ddxi + (p**2 - 1) / 2)
    copies = np.repeat(tangential[:, None], profile.n - 1, axis=1)
    formula = np.sort(np.column_stack([copies, radial]), axis=1)
    return float(np.max(np.abs(pipeline - formula)))


def profile_curve(phi: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    The geodesic distance to the rotation axis, the axial coordinate and the
    cumulative hyperbolic arc length of meridian points, shape (m, n+2).
    """
    radial = np.linalg.norm(phi[:, 1:-1], axis=1)
    distance = np.arcsinh(radial)
    axial = np.arctanh(phi[:, -1] / phi[:, 0])
    steps = np.arccosh(np.maximum(-lorentz_dot(phi[:-1], phi[1:]), 1.0))
    arc = np.concatenate(([0.0], np.cumsum(steps)))
    return distance, axial, arc


def revolve(ball: np.ndarray, angles: int) -> Tuple[np.ndarray, np.ndarray]:
    """
    The surface of revolution of a meridian given in Poincare-ball coordinates.
    :param np.ndarray ball: The meridian, shape (m, n+1), in the plane of the
    first and last axis.
    :param int angles: The number of rotation angles.
    :return: Vertices of shape (m * angles, 3) and 0-based triangles.
    """
    if angles < 3:
        raise SpecError(f"a surface of revolution needs at least 3 angles, got {angles}")
    theta = np.linspace(0, 2 * np.pi, angles, endpoint=False)
    m = ball.shape[0]
    vertices = np.stack(
        [
            np.outer(ball[:, 0], np.cos(theta)),
            np.outer(ball[:, 0], np.sin(theta)),
            np.repeat(ball[:, -1][:, None], angles, axis=1),
        ],
        axis=-1,
    ).reshape(-1, 3)
    return vertices, grid_faces(m, angles)


class LiftResult:
    """
    The rotational hypersurface of a radial profile.
    """

    def __init__(
        self,
        profile: RadialProfile,
        field: ConformalMetricField,
        dilation: float,
        s: np.ndarray,
        jets: List[HypersurfaceJet],
        angles: int = LIFT_ANGLES,
    ):
        self.profile = profile
        self.field = field
        self.dilation = dilation
        self.s = s
        self.jets = jets
        self.phi = np.array([j.phi.coords for j in jets])
        self.distance, self.axial, self.arc = profile_curve(self.phi)
        self.vertices, self.faces = revolve(poincare_array(self.phi), angles)

    @property
    def kappas(self) -> np.ndarray:
        return np.array([j.kappas for j in self.jets])

    @property
    def lambdas(self) -> np.ndarray:
        return np.array([j.lambdas for j in self.jets])

    def sigma_values(self) -> np.ndarray:
        normalized = self.profile.convention == "normalized"
        return np.array([j.sigma(self.profile.k, normalized) for j in self.jets])

    def weingarten_values(self) -> np.ndarray:
        normalized = self.profile.convention == "normalized"
        return np.array([j.weingarten(self.profile.k, normalized) for j in self.jets])

    @property
    def weingarten_spread(self) -> float:
        values = self.weingarten_values()
        return float(np.max(values) - np.min(values))

    @property
    def horosphere_type(self) -> bool:
        return all(j.horosphere_type for j in self.jets)

    def max_residual(self) -> float:
        return max(max(j.residuals().values()) for j in self.jets)

    def axial_shift(self, period: float) -> Tuple[float, float]:
        """
        The translation along the axis that maps the profile curve at s to the
        curve at s + period, with the mismatch of the distance to the axis.
        :param float period: A period of the profile in s.
        :return: The mean axial shift and the largest distance mismatch.
        """
        inside = self.s[self.s + period <= self.s[-1]]
        if inside.size == 0:
            raise DomainError(f"the lifted range is shorter than the period {period}")
        distance = CubicSpline(self.s, self.distance)
        axial = CubicSpline(self.s, self.axial)
        shift = axial(inside + period) - axial(inside)
        mismatch = np.abs(distance(inside + period) - distance(inside))
        return float(np.mean(shift)), float(np.max(mismatch))

    def curve_rows(self):
        for row in zip(self.s, self.distance, self.axial, self.arc):
            yield [format(float(value), ".17g") for value in row]

    def summary(self) -> Dict[str, object]:
        return {
            "dilation": self.dilation,
            "samples": len(self.jets),
            "horosphere-type": self.horosphere_type,
            "sigma": [float(np.min(self.sigma_values())), float(np.max(self.sigma_values()))],
            "weingarten": [
                float(np.min(self.weingarten_values())),
                float(np.max(self.weingarten_values())),
            ],
            "weingarten-spread": self.weingarten_spread,
            "max-quadric-residual": self.max_residual(),
        }

    def __repr__(self):
        return f"Lift({self.profile!r}, t={self.dilation:.4g}, {len(self.jets)} jets)"


def profile_to_hypersurface(
    profile: RadialProfile,
    samples: int = LIFT_SAMPLES,
    allow_dilation: bool = False,
    angles: int = LIFT_ANGLES,
    limit: float = LIFT_S_LIMIT,
    margin: float = BELOW_HALF_MARGIN,
    tolerance: Optional[float] = None,
) -> LiftResult:
    """
    Lift a radial profile to a rotational horospherically convex hypersurface.
    :param RadialProfile profile: The profile.
    :param int samples: The number of meridian samples.
    :param bool allow_dilation: Dilate the metric when an eigenvalue reaches 1/2.
    :param int angles: The number of rotation angles of the mesh.
    :param float limit: The bound on |s| of the meridian samples.
    :param float margin: The distance kept from 1/2.
    :param Optional[float] tolerance: The dictionary tolerance of the jets.
    :return LiftResult: Jets, profile curve and mesh, with the applied dilation.
    """
    s = lift_grid(profile, samples, limit)
    points = meridian(profile.n, s)
    field = radial_field(profile)
    dilated, t = normalize_below_half(field, points, margin)
    if t > 0 and not allow_dilation:
        raise EigenvalueBoundError(
            f"Schouten eigenvalues of {field.name} reach 1/2 on the meridian; "
            f"a dilation by t = {t:.6g} is needed"
        )
    jets = [jet(dilated, x, tolerance=tolerance) for x in points]
    result = LiftResult(profile, dilated, t, s, jets, angles)
    LOGGER.info(
        f"lifted {profile!r} with t = {t:.6g}, weingarten spread {result.weingarten_spread:.3e}"
    )
    return result


__all__ = [
    "radial_field",
    "meridian",
    "lift_grid",
    "eigenvalue_deviation",
    "profile_curve",
    "revolve",
    "LiftResult",
    "profile_to_hypersurface",
]
