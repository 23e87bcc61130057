"""
The entry module provides the abstract catalog entry: a closed-form
parametrization of a hypersurface with constant principal curvatures over a
parameter domain, together with the isoparametric conformal metric it induces
on the image of its Gauss map.
"""

import abc
from typing import Dict, List, Optional, Tuple

import numpy as np
from multiset import FrozenMultiset

from horoconv.conformal.metric import ConformalMetricField
from horoconv.constants import SAMPLE_INSET
from horoconv.correspondence.dictionary import lambda_from_kappa
from horoconv.errors import DegenerateImmersionError, NoAdmissibleSamplesError, SpecError
from horoconv.lorentz.vector import lorentz_dot

MAX_REJECTION_ROUNDS = 1000


def ball_mask(points: np.ndarray, radius: float) -> np.ndarray:
    return np.sum(points * points, axis=-1) < radius**2


def spectrum(values: Dict[float, int]) -> FrozenMultiset:
    return FrozenMultiset({float(value): count for value, count in values.items()})


def lambda_spectrum(kappas: FrozenMultiset) -> FrozenMultiset:
    """
    The Schouten eigenvalues of a principal curvature multiset. Curvatures equal
    to 1 are horospherical directions and contribute no eigenvalue.
    """
    return FrozenMultiset(
        {
            lambda_from_kappa(kappa): count
            for kappa, count in kappas.items()
            if kappa != 1.0
        }
    )


class CatalogEntry(abc.ABC):
    """
    Abstract class for catalog entries.

    Closed forms are vectorized over parameter points of shape (m, n): phi and
    eta return (m, n+2), rho returns (m,) and the Gauss map returns (m, n+1).
    """

    name = "entry"
    degenerate = False

    def __init__(self, n: int, params: Dict[str, float]):
        """
        Initialize the entry.
        :param int n: The sphere dimension, at least 3.
        :param Dict[str, float] params: The named parameters of the family.
        """
        if n < 3:
            raise SpecError(f"catalog entries need n >= 3, got {n}")
        self.n = n
        self.params = dict(params)

    @abc.abstractmethod
    def phi_closed(self, omega: np.ndarray) -> np.ndarray:
        """
        The immersion into the hyperbolic space.
        """
        pass

    @abc.abstractmethod
    def eta_closed(self, omega: np.ndarray) -> np.ndarray:
        """
        The unit normal in the de Sitter space.
        """
        pass

    @abc.abstractmethod
    def rho_closed(self, omega: np.ndarray) -> np.ndarray:
        pass

    @abc.abstractmethod
    def gauss_closed(self, omega: np.ndarray) -> np.ndarray:
        pass

    @abc.abstractmethod
    def chart_contains(self, omega: np.ndarray, inset: float = 0.0) -> np.ndarray:
        """
        The mask of parameter points inside the domain, shrunk by a relative inset.
        """
        pass

    @abc.abstractmethod
    def chart_bounds(self) -> Tuple[np.ndarray, np.ndarray]:
        """
        A box containing the parameter domain.
        """
        pass

    @property
    @abc.abstractmethod
    def expected_kappas(self) -> FrozenMultiset:
        pass

    @property
    def expected_lambdas(self) -> FrozenMultiset:
        return lambda_spectrum(self.expected_kappas)

    @property
    def kappa_candidates(self) -> List[FrozenMultiset]:
        """
        The principal curvature multisets the verifier decides between.
        """
        return [self.expected_kappas]

    def psi_closed(self, omega: np.ndarray) -> np.ndarray:
        """
        The light cone map phi + eta.
        """
        return self.phi_closed(omega) + self.eta_closed(omega)

    def lifted_gauss(self, omega: np.ndarray) -> np.ndarray:
        """
        e^rho (1, G), which agrees with the light cone map.
        """
        omega = np.atleast_2d(omega)
        lift = np.hstack((np.ones((omega.shape[0], 1)), self.gauss_closed(omega)))
        return np.exp(self.rho_closed(omega))[:, None] * lift

    def sample_chart(self, count: int, rng: np.random.Generator) -> np.ndarray:
        """
        Rejection sampling inside the parameter domain with the sampling inset.
        :param int count: The number of samples.
        :param np.random.Generator rng: The seeded generator.
        :return np.ndarray: The samples, shape (count, n).
        """
        if count < 1:
            raise SpecError(f"sample count must be positive, got {count}")
        low, high = self.chart_bounds()
        accepted = []
        total = 0
        for _ in range(MAX_REJECTION_ROUNDS):
            batch = rng.uniform(low, high, size=(2 * count, self.n))
            batch = batch[self.chart_contains(batch, SAMPLE_INSET)]
            accepted.append(batch)
            total += batch.shape[0]
            if total >= count:
                return np.vstack(accepted)[:count]
        raise NoAdmissibleSamplesError(f"rejection sampling of {self} found {total} points")

    # Sphere side, unavailable for degenerate entries.

    def inverse_gauss(self, y: np.ndarray) -> np.ndarray:
        """
        The parameter point whose Gauss image is y, shape (m, n).
        """
        raise DegenerateImmersionError(f"{self} has no inverse Gauss map")

    def sphere_contains(self, y: np.ndarray) -> np.ndarray:
        """
        The mask of sphere points in the image of the Gauss map.
        """
        raise DegenerateImmersionError(f"{self} has no sphere domain")

    def sphere_rho(self, y: np.ndarray) -> np.ndarray:
        """
        The exponent of the induced metric, rho_closed after the inverse Gauss map.
        """
        return self.rho_closed(self.inverse_gauss(np.atleast_2d(y)))

    def sphere_derivatives(self):
        """
        The ambient gradient and Hessian callbacks of the sphere exponent, or
        None when the field should be differentiated numerically.
        """
        return None

    def metric_field(self, analytic: bool = True) -> ConformalMetricField:
        """
        The isoparametric conformal metric e^{2 rho(G^{-1}(y))} g_0 on the
        Gauss image.
        :param bool analytic: Use the closed-form derivatives when available.
        :return ConformalMetricField: The induced field.
        """
        if self.degenerate:
            raise DegenerateImmersionError(f"{self} has a constant Gauss map")
        derivatives = self.sphere_derivatives() if analytic else None
        gradient, hessian = derivatives if derivatives else (None, None)
        return ConformalMetricField(
            self.n,
            self.sphere_rho,
            domain=self.sphere_contains,
            gradient=gradient,
            hessian=hessian,
            name=str(self),
        )

    def quadric_residuals(self, omega: np.ndarray) -> Dict[str, float]:
        """
        The maximal deviations of the closed forms from their hyperquadrics.
        """
        phi, eta = self.phi_closed(omega), self.eta_closed(omega)
        psi = phi + eta
        return {
            "psi-null": float(np.max(np.abs(lorentz_dot(psi, psi)))),
            "eta-de-sitter": float(np.max(np.abs(lorentz_dot(eta, eta) - 1.0))),
            "phi-hyperbolic": float(np.max(np.abs(lorentz_dot(phi, phi) + 1.0))),
            "phi-eta-orthogonal": float(np.max(np.abs(lorentz_dot(phi, eta)))),
            "phi-future": float(max(0.0, -np.min(phi[:, 0]))),
        }

    def describe(self) -> Dict[str, object]:
        return {"name": self.name, "n": self.n, "params": self.params}

    def __repr__(self):
        args = ", ".join(f"{key}={value:g}" for key, value in self.params.items())
        return f"{self.name}({args}, n={self.n})"


def sphere_point(n: int, coords: Optional[np.ndarray] = None) -> np.ndarray:
    """
    The north pole e_{n+1} of S^n or the normalized coordinates given.
    """
    if coords is None:
        coords = np.zeros(n + 1)
        coords[-1] = 1.0
    coords = np.asarray(coords, dtype=float)
    return coords / np.linalg.norm(coords)


__all__ = ["CatalogEntry", "ball_mask", "spectrum", "sphere_point"]
