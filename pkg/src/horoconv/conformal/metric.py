"""
The metric module provides conformal metrics g = e^{2 rho} g_0 on domains of the
round sphere, given by the exponent rho and, optionally, analytic derivatives.
"""

from typing import Callable, Optional

import numpy as np

from horoconv.conformal.chart import SphereLike, as_array
from horoconv.errors import DomainError, SpecError

ScalarField = Callable[[np.ndarray], np.ndarray]
VectorField = Callable[[np.ndarray], np.ndarray]
Predicate = Callable[[np.ndarray], np.ndarray]


class ConformalMetricField:
    """
    A conformal metric e^{2 rho} g_0 on a domain of S^n.

    All callables are vectorized: they receive sphere points of shape (m, n+1).
    rho returns shape (m,), domain returns a boolean mask of shape (m,). The
    analytic derivative callbacks return the ambient gradient (m, n+1) and the
    ambient Hessian (m, n+1, n+1) of any extension of rho to a neighbourhood of
    the sphere. Without them, derivatives are taken by finite differences in
    stereographic charts.
    """

    def __init__(
        self,
        n: int,
        rho: ScalarField,
        domain: Optional[Predicate] = None,
        gradient: Optional[VectorField] = None,
        hessian: Optional[VectorField] = None,
        offset: float = 0.0,
        name: str = "metric",
    ):
        """
        Initialize the field.
        :param int n: The sphere dimension, at least 3.
        :param rho: The conformal exponent.
        :param domain: The predicate of the domain, the whole sphere if omitted.
        :param gradient: The ambient gradient of an extension of rho.
        :param hessian: The ambient Hessian of an extension of rho.
        :param float offset: A constant added to rho.
        :param str name: A label used in reports.
        """
        if n < 3:
            raise SpecError(f"conformal metrics need n >= 3, got {n}")
        if (gradient is None) != (hessian is None):
            raise SpecError("analytic mode needs both the gradient and the Hessian")
        self.n = n
        self.rho = rho
        self.domain = domain
        self.gradient = gradient
        self.hessian = hessian
        self.offset = float(offset)
        self.name = name

    @property
    def analytic(self) -> bool:
        return self.gradient is not None

    @property
    def derivative_mode(self) -> str:
        return "analytic" if self.analytic else "finite-difference"

    def contains_array(self, points: np.ndarray) -> np.ndarray:
        """
        The domain mask of sphere points of shape (m, n+1).
        """
        points = np.atleast_2d(np.asarray(points, dtype=float))
        if self.domain is None:
            return np.ones(points.shape[0], dtype=bool)
        return np.asarray(self.domain(points), dtype=bool).reshape(points.shape[0])

    def contains(self, x: SphereLike) -> bool:
        return bool(self.contains_array(as_array(x)[None, :])[0])

    def require(self, x: SphereLike) -> np.ndarray:
        """
        Return the coordinates of x, raising if x lies outside the domain.
        """
        coords = as_array(x)
        if coords.shape != (self.n + 1,):
            raise DomainError(f"{self.name} lives on S^{self.n}, got {coords.shape}")
        if not self.contains(coords):
            raise DomainError(f"point {coords} lies outside the domain of {self.name}")
        return coords

    def raw_array(self, points: np.ndarray) -> np.ndarray:
        """
        rho without the offset at points of shape (m, n+1).
        """
        return np.asarray(self.rho(np.atleast_2d(points)), dtype=float).reshape(-1)

    def value_array(self, points: np.ndarray) -> np.ndarray:
        """
        rho at points of shape (m, n+1).
        """
        return self.raw_array(points) + self.offset

    def __call__(self, x: SphereLike) -> float:
        coords = self.require(x)
        value = float(self.value_array(coords[None, :])[0])
        if not np.isfinite(value):
            raise DomainError(f"{self.name} is not finite at {coords}")
        return value

    def dilate(self, t: float) -> "ConformalMetricField":
        """
        The field of e^t g, that is rho + t/2.
        """
        if t == 0:
            return self
        return ConformalMetricField(
            self.n,
            self.rho,
            domain=self.domain,
            gradient=self.gradient,
            hessian=self.hessian,
            offset=self.offset + t / 2.0,
            name=self.name,
        )

    def finite_difference(self) -> "ConformalMetricField":
        """
        The same field with the analytic derivatives dropped.
        """
        return ConformalMetricField(
            self.n, self.rho, domain=self.domain, offset=self.offset, name=self.name
        )

    def __repr__(self):
        return f"{self.name}[n={self.n}, {self.derivative_mode}, offset={self.offset:.4g}]"

    @classmethod
    def constant(cls, n: int, t: float = 0.0, name: Optional[str] = None):
        """
        The field rho = t, a multiple of the round metric.
        """
        return cls(
            n,
            lambda points: np.zeros(points.shape[0]),
            gradient=lambda points: np.zeros(points.shape),
            hessian=lambda points: np.zeros(points.shape + points.shape[-1:]),
            offset=t,
            name=name or ("round" if t == 0 else f"constant({t:g})"),
        )

    @classmethod
    def height_function(
        cls,
        n: int,
        h: Callable[[np.ndarray], np.ndarray],
        dh: Callable[[np.ndarray], np.ndarray],
        d2h: Callable[[np.ndarray], np.ndarray],
        domain: Optional[Predicate] = None,
        axis: int = -1,
        name: str = "height",
    ):
        """
        A field rho(x) = h(x_axis) depending on one coordinate only, with
        analytic derivatives from dh and d2h.
        :param int n: The sphere dimension.
        :param h: The profile, applied to an array of heights.
        :param dh: The first derivative of the profile.
        :param d2h: The second derivative of the profile.
        :param domain: The domain predicate.
        :param int axis: The coordinate index of the symmetry axis.
        :param str name: A label used in reports.
        """
        index = axis % (n + 1)

        def gradient(points):
            result = np.zeros(points.shape)
            result[:, index] = dh(points[:, index])
            return result

        def hessian(points):
            result = np.zeros(points.shape + points.shape[-1:])
            result[:, index, index] = d2h(points[:, index])
            return result

        return cls(
            n,
            lambda points: h(points[:, index]),
            domain=domain,
            gradient=gradient,
            hessian=hessian,
            name=name,
        )


def dilate(f: ConformalMetricField, t: float) -> ConformalMetricField:
    """
    Dilate a metric to e^t g.
    :param ConformalMetricField f: The field.
    :param float t: The dilation parameter.
    :return ConformalMetricField: The field with exponent rho + t/2.
    """
    return f.dilate(t)


__all__ = ["ConformalMetricField", "dilate", "ScalarField", "VectorField", "Predicate"]
