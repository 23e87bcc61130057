"""
The entries module provides the families of the catalog: totally geodesic
hyperplanes, equidistant hypersurfaces, the products H^k x S^{n-k}, geodesic
spheres and horospheres.
"""

from typing import List

import numpy as np
import scipy.linalg
from multiset import FrozenMultiset

from horoconv.catalog.entry import CatalogEntry, ball_mask, spectrum
from horoconv.conformal.metric import ConformalMetricField
from horoconv.constants import PRODUCT_X_RADIUS, SPHERE_CHART_RADIUS
from horoconv.errors import SpecError


def _positive(**params: float):
    for key, value in params.items():
        if not (np.isfinite(value) and value > 0):
            raise SpecError(f"parameter {key} must be positive, got {value}")


def _affine_derivatives(slope: float, shift: float):
    """
    Derivatives of rho(y) = const - ln(slope * y_{n+1} - shift).
    """

    def gradient(points):
        result = np.zeros(points.shape)
        result[:, -1] = -slope / (slope * points[:, -1] - shift)
        return result

    def hessian(points):
        result = np.zeros(points.shape + points.shape[-1:])
        result[:, -1, -1] = slope**2 / (slope * points[:, -1] - shift) ** 2
        return result

    return gradient, hessian


class TotallyGeodesic(CatalogEntry):
    """
    A totally geodesic hyperplane over the ball |x| < r.
    """

    name = "totally-geodesic"

    def __init__(self, r: float, n: int):
        _positive(r=r)
        super().__init__(n, {"r": r})
        self.r = float(r)

    def _q(self, omega):
        omega = np.atleast_2d(omega)
        return omega, np.sqrt(self.r**2 - np.sum(omega * omega, axis=1))

    def phi_closed(self, omega):
        omega, q = self._q(omega)
        r2 = self.r**2
        return np.column_stack(
            ((1 + r2) / (2 * q), omega / q[:, None], (1 - r2) / (2 * q))
        )

    def eta_closed(self, omega):
        omega = np.atleast_2d(omega)
        r, r2 = self.r, self.r**2
        row = np.concatenate(([(1 - r2) / (2 * r)], np.zeros(self.n), [(1 + r2) / (2 * r)]))
        return np.tile(row, (omega.shape[0], 1))

    def _alpha(self, q):
        r, r2 = self.r, self.r**2
        return r * (1 + r2) + (1 - r2) * q

    def rho_closed(self, omega):
        omega, q = self._q(omega)
        return np.log(self._alpha(q) / (2 * self.r * q))

    def gauss_closed(self, omega):
        omega, q = self._q(omega)
        r, r2 = self.r, self.r**2
        alpha = self._alpha(q)
        return np.column_stack(
            (2 * r * omega / alpha[:, None], (r * (1 - r2) + (1 + r2) * q) / alpha)
        )

    def chart_contains(self, omega, inset=0.0):
        return ball_mask(np.atleast_2d(omega), self.r * (1 - inset))

    def chart_bounds(self):
        return -self.r * np.ones(self.n), self.r * np.ones(self.n)

    @property
    def expected_kappas(self):
        return spectrum({0.0: self.n})

    def inverse_gauss(self, y):
        y = np.atleast_2d(y)
        scaled = 2 * self.r / self._affine(y)
        w = scaled[:, None] * y[:, :-1]
        return self.r * w / np.sqrt(1 + np.sum(w * w, axis=1))[:, None]

    def _affine(self, y):
        r2 = self.r**2
        return (1 + r2) * y[:, -1] - (1 - r2)

    def sphere_contains(self, y):
        return self._affine(np.atleast_2d(y)) > 0

    def sphere_closed(self, y):
        """
        e^rho = 2r / ((1 + r^2) y_{n+1} - (1 - r^2)) on the Gauss image.
        """
        return np.log(2 * self.r) - np.log(self._affine(np.atleast_2d(y)))

    def sphere_derivatives(self):
        r2 = self.r**2
        return _affine_derivatives(1 + r2, 1 - r2)


class Equidistant(CatalogEntry):
    """
    A hypersurface at distance arctanh(t/R) from a totally geodesic one,
    R^2 = t^2 + r^2, over the ball |x| < r.
    """

    name = "equidistant"

    def __init__(self, r: float, t: float, n: int):
        _positive(r=r, t=t)
        super().__init__(n, {"r": r, "t": t})
        self.r = float(r)
        self.t = float(t)
        self.R = float(np.hypot(r, t))

    def _q(self, omega):
        omega = np.atleast_2d(omega)
        q = np.sqrt(self.R**2 - np.sum(omega * omega, axis=1))
        return omega, q, q - self.t

    def phi_closed(self, omega):
        omega, q, beta = self._q(omega)
        s = np.sum(omega * omega, axis=1)
        return np.column_stack(
            (
                (1 + s + beta**2) / (2 * beta),
                omega / beta[:, None],
                (1 - s - beta**2) / (2 * beta),
            )
        )

    def eta_closed(self, omega):
        omega, q, beta = self._q(omega)
        R, t = self.R, self.t
        R2, t2 = R**2, t**2
        scale = 2 * R * beta
        return np.column_stack(
            (
                ((1 - t2 - R2) * q + 2 * t * R2) / scale,
                t * omega / (R * beta)[:, None],
                ((1 + t2 + R2) * q - 2 * t * R2) / scale,
            )
        )

    def _alpha(self, q):
        outer = (self.R + self.t) ** 2
        return self.R + q + outer * (self.R - q), self.R + q - outer * (self.R - q)

    def rho_closed(self, omega):
        omega, q, beta = self._q(omega)
        alpha, _ = self._alpha(q)
        return np.log(alpha / (2 * self.R * beta))

    def gauss_closed(self, omega):
        omega, q, _ = self._q(omega)
        alpha, axial = self._alpha(q)
        return np.column_stack(
            (2 * (self.R + self.t) * omega / alpha[:, None], axial / alpha)
        )

    def chart_contains(self, omega, inset=0.0):
        return ball_mask(np.atleast_2d(omega), self.r * (1 - inset))

    def chart_bounds(self):
        return -self.r * np.ones(self.n), self.r * np.ones(self.n)

    @property
    def expected_kappas(self):
        return spectrum({-self.t / self.R: self.n})

    @property
    def kappa_candidates(self) -> List[FrozenMultiset]:
        return [spectrum({-self.t / self.R: self.n}), spectrum({self.t / self.R: self.n})]

    @property
    def stated_lambdas(self) -> FrozenMultiset:
        """
        The eigenvalue -(R+t) / (2 (R-t)) as usually quoted for this family; it
        belongs to the curvature +t/R of the opposite orientation.
        """
        R, t = self.R, self.t
        return spectrum({-(R + t) / (2 * (R - t)): self.n})

    def _affine(self, y):
        r2 = self.r**2
        return (1 + r2) * y[:, -1] - (1 - r2)

    def inverse_gauss(self, y):
        y = np.atleast_2d(y)
        outer = (self.R + self.t) ** 2
        plus, minus = outer * (1 + y[:, -1]), 1 - y[:, -1]
        q = self.R * (plus - minus) / (plus + minus)
        alpha, _ = self._alpha(q)
        return alpha[:, None] * y[:, :-1] / (2 * (self.R + self.t))

    def sphere_contains(self, y):
        return self._affine(np.atleast_2d(y)) > 0

    def sphere_closed(self, y):
        """
        e^rho = 2(R+t) / ((1 + r^2) y_{n+1} - (1 - r^2)), the totally geodesic
        metric dilated by 2 ln((R+t)/r).
        """
        return np.log(2 * (self.R + self.t)) - np.log(self._affine(np.atleast_2d(y)))

    def sphere_derivatives(self):
        r2 = self.r**2
        return _affine_derivatives(1 + r2, 1 - r2)


class Product(CatalogEntry):
    """
    The half of H^k(-1/(1+r^2)) x S^{n-k}(1/r) over R^k x {|z| < r}.
    """

    name = "product"

    def __init__(self, k: int, r: float, n: int):
        if not 1 <= k <= n - 1:
            raise SpecError(f"product needs 1 <= k <= n-1, got k={k}, n={n}")
        _positive(r=r)
        super().__init__(n, {"k": k, "r": r})
        self.k = int(k)
        self.r = float(r)
        self.root = float(np.sqrt(1 + r**2))

    def _split(self, omega):
        omega = np.atleast_2d(omega)
        x, z = omega[:, : self.k], omega[:, self.k :]
        p = np.sqrt(np.sum(x * x, axis=1) + self.root**2)
        w = np.sqrt(self.r**2 - np.sum(z * z, axis=1))
        return x, z, p, w

    def phi_closed(self, omega):
        x, z, p, w = self._split(omega)
        return np.column_stack((p, x, z, w))

    def eta_closed(self, omega):
        x, z, p, w = self._split(omega)
        r, root = self.r, self.root
        return np.column_stack((r * p / root, r * x / root, root * z / r, root * w / r))

    def rho_closed(self, omega):
        _, _, p, _ = self._split(omega)
        return np.log((self.r + self.root) * p / self.root)

    def gauss_closed(self, omega):
        x, z, p, w = self._split(omega)
        scale = self.root / (self.r * p)
        return np.column_stack((x / p[:, None], z * scale[:, None], w * scale))

    def chart_contains(self, omega, inset=0.0):
        omega = np.atleast_2d(omega)
        return ball_mask(omega[:, : self.k], PRODUCT_X_RADIUS * (1 - inset)) & ball_mask(
            omega[:, self.k :], self.r * (1 - inset)
        )

    def chart_bounds(self):
        high = np.concatenate(
            (PRODUCT_X_RADIUS * np.ones(self.k), self.r * np.ones(self.n - self.k))
        )
        return -high, high

    @property
    def expected_kappas(self):
        return spectrum(
            {-self.r / self.root: self.k, -self.root / self.r: self.n - self.k}
        )

    def inverse_gauss(self, y):
        y = np.atleast_2d(y)
        head = y[:, : self.k]
        p = self.root / np.sqrt(1 - np.sum(head * head, axis=1))
        z = self.r * p[:, None] * y[:, self.k : self.n] / self.root
        return np.hstack((head * p[:, None], z))

    def sphere_contains(self, y):
        return np.atleast_2d(y)[:, -1] > 0

    def sphere_closed(self, y):
        """
        e^rho = (r + sqrt(1+r^2)) / sqrt(1 - |y_x|^2) on the upper hemisphere.
        """
        head = np.atleast_2d(y)[:, : self.k]
        return np.log(self.r + self.root) - 0.5 * np.log(1 - np.sum(head * head, axis=1))

    def sphere_derivatives(self):
        k = self.k

        def gradient(points):
            head = points[:, :k]
            result = np.zeros(points.shape)
            result[:, :k] = head / (1 - np.sum(head * head, axis=1))[:, None]
            return result

        def hessian(points):
            head = points[:, :k]
            rest = 1 - np.sum(head * head, axis=1)
            result = np.zeros(points.shape + points.shape[-1:])
            result[:, :k, :k] = np.eye(k) / rest[:, None, None] + 2 * np.einsum(
                "mi,mj->mij", head, head
            ) / (rest**2)[:, None, None]
            return result

        return gradient, hessian


class GeodesicSphere(CatalogEntry):
    """
    The geodesic sphere of radius t about the origin, parametrized through the
    stereographic chart u -> (2u, |u|^2 - 1) / (1 + |u|^2).
    """

    name = "geodesic-sphere"

    def __init__(self, t: float, n: int):
        _positive(t=t)
        super().__init__(n, {"t": t})
        self.t = float(t)

    def gauss_closed(self, omega):
        omega = np.atleast_2d(omega)
        square = np.sum(omega * omega, axis=1)
        return np.column_stack((2 * omega, square - 1)) / (1 + square)[:, None]

    def phi_closed(self, omega):
        y = self.gauss_closed(omega)
        return np.column_stack((np.full(y.shape[0], np.cosh(self.t)), np.sinh(self.t) * y))

    def eta_closed(self, omega):
        y = self.gauss_closed(omega)
        return np.column_stack((np.full(y.shape[0], np.sinh(self.t)), np.cosh(self.t) * y))

    def rho_closed(self, omega):
        return np.full(np.atleast_2d(omega).shape[0], self.t)

    def chart_contains(self, omega, inset=0.0):
        return ball_mask(np.atleast_2d(omega), SPHERE_CHART_RADIUS * (1 - inset))

    def chart_bounds(self):
        return -SPHERE_CHART_RADIUS * np.ones(self.n), SPHERE_CHART_RADIUS * np.ones(self.n)

    @property
    def expected_kappas(self):
        return spectrum({-1.0 / np.tanh(self.t): self.n})

    def inverse_gauss(self, y):
        y = np.atleast_2d(y)
        return y[:, :-1] / (1 - y[:, -1])[:, None]

    def sphere_contains(self, y):
        return np.ones(np.atleast_2d(y).shape[0], dtype=bool)

    def sphere_closed(self, y):
        return np.full(np.atleast_2d(y).shape[0], self.t)

    def metric_field(self, analytic: bool = True) -> ConformalMetricField:
        field = ConformalMetricField.constant(self.n, self.t, name=str(self))
        return field if analytic else field.finite_difference()


class Horosphere(CatalogEntry):
    """
    The horosphere whose light cone map is the constant e^{rho0} (1, x0).
    """

    name = "horosphere"
    degenerate = True

    def __init__(self, rho0: float, x0: np.ndarray, n: int):
        x0 = np.asarray(x0, dtype=float).reshape(-1)
        if x0.size != n + 1:
            raise SpecError(f"x0 must have {n + 1} coordinates, got {x0.size}")
        norm = np.linalg.norm(x0)
        if not np.isfinite(rho0) or norm == 0:
            raise SpecError("horosphere needs a finite rho0 and a nonzero x0")
        super().__init__(n, {"rho0": rho0})
        self.rho0 = float(rho0)
        self.x0 = x0 / norm
        self.v = np.exp(self.rho0) * np.concatenate(([1.0], self.x0))
        self.w = np.exp(-self.rho0) * np.concatenate(([1.0], -self.x0)) / 2
        frame = scipy.linalg.null_space(self.x0[None, :])
        self.frame = np.vstack((np.zeros((1, n)), frame))

    def phi_closed(self, omega):
        omega = np.atleast_2d(omega)
        square = np.sum(omega * omega, axis=1)
        return self.w + omega @ self.frame.T + ((1 + square) / 2)[:, None] * self.v

    def eta_closed(self, omega):
        return self.v - self.phi_closed(omega)

    def rho_closed(self, omega):
        return np.full(np.atleast_2d(omega).shape[0], self.rho0)

    def gauss_closed(self, omega):
        return np.tile(self.x0, (np.atleast_2d(omega).shape[0], 1))

    def chart_contains(self, omega, inset=0.0):
        return ball_mask(np.atleast_2d(omega), 2.0 * (1 - inset))

    def chart_bounds(self):
        return -2.0 * np.ones(self.n), 2.0 * np.ones(self.n)

    @property
    def expected_kappas(self):
        return spectrum({1.0: self.n})

    def describe(self):
        return {**super().describe(), "x0": self.x0}


def totally_geodesic(r: float, n: int) -> TotallyGeodesic:
    """
    The totally geodesic entry with expected kappa = 0 and lambda = -1/2.
    :param float r: The radius of the parameter ball, positive.
    :param int n: The sphere dimension.
    :return TotallyGeodesic: The entry.
    """
    return TotallyGeodesic(r, n)


def equidistant(r: float, t: float, n: int) -> Equidistant:
    """
    The equidistant entry; the sign of kappa = -+t/R is adjudicated on verification.
    """
    return Equidistant(r, t, n)


def product_hk_snk(k: int, r: float, n: int) -> Product:
    """
    The product entry with two constant principal curvatures of multiplicities
    k and n-k.
    :param int k: The dimension of the hyperbolic factor, 1 <= k <= n-1.
    :param float r: The radius of the spherical factor, positive.
    :param int n: The sphere dimension.
    :return Product: The entry.
    """
    return Product(k, r, n)


def geodesic_sphere(t: float, n: int) -> GeodesicSphere:
    return GeodesicSphere(t, n)


def horosphere_entry(rho0: float, x0, n: int) -> Horosphere:
    """
    The degenerate horosphere entry, used for the constancy of its light cone map.
    """
    return Horosphere(rho0, as_coords(x0), n)


def as_coords(x0) -> np.ndarray:
    coords = getattr(x0, "coords", x0)
    return np.asarray(coords, dtype=float)


ENTRIES = {
    "totally-geodesic": (totally_geodesic, ("r",)),
    "equidistant": (equidistant, ("r", "t")),
    "product": (product_hk_snk, ("k", "r")),
    "geodesic-sphere": (geodesic_sphere, ("t",)),
    "horosphere": (horosphere_entry, ("rho0", "x0")),
}


def make_entry(name: str, n: int, **params) -> CatalogEntry:
    """
    Build an entry by its command line name.
    :param str name: One of the names in ENTRIES.
    :param int n: The sphere dimension.
    :param params: The parameters of the family.
    :return CatalogEntry: The entry.
    """
    if name not in ENTRIES:
        raise SpecError(f"unknown catalog entry {name!r}, expected one of {sorted(ENTRIES)}")
    factory, names = ENTRIES[name]
    missing = [key for key in names if key not in params]
    if missing:
        raise SpecError(f"{name} needs parameters {', '.join(missing)}")
    unknown = sorted(set(params) - set(names))
    if unknown:
        raise SpecError(f"{name} does not take parameters {', '.join(unknown)}")
    if name == "product":
        if float(params["k"]) != int(params["k"]):
            raise SpecError(f"product needs an integer k, got {params['k']}")
        params["k"] = int(params["k"])
    if name == "horosphere" and np.ndim(params["x0"]) == 0:
        raise SpecError("horosphere needs x0 as a vector")
    return factory(n=n, **{key: params[key] for key in names})


def default_instances(n: int) -> List[CatalogEntry]:
    """
    The parameter grid of verify-catalog: r in {0.5, 1, 2}, t in {0.5, 1}, sphere
    radii t in {0.5, 1, 2} and every admissible k.
    """
    entries: List[CatalogEntry] = []
    for r in (0.5, 1.0, 2.0):
        entries.append(totally_geodesic(r, n))
        for t in (0.5, 1.0):
            entries.append(equidistant(r, t, n))
        for k in range(1, n):
            entries.append(product_hk_snk(k, r, n))
    for t in (0.5, 1.0, 2.0):
        entries.append(geodesic_sphere(t, n))
    north = np.zeros(n + 1)
    north[-1] = 1.0
    entries.append(horosphere_entry(0.0, north, n))
    return entries


__all__ = [
    "TotallyGeodesic",
    "Equidistant",
    "Product",
    "GeodesicSphere",
    "Horosphere",
    "totally_geodesic",
    "equidistant",
    "product_hk_snk",
    "geodesic_sphere",
    "horosphere_entry",
    "ENTRIES",
    "make_entry",
    "default_instances",
]
