"""
The hypersurface module builds the horospherically convex hypersurface of a
conformal metric: the immersion phi, its unit normal eta, the light cone map
psi = phi + eta = e^rho (1, x) and the principal curvatures, parametrized by the
hyperbolic Gauss map G(x) = x.
"""

from typing import Dict, Iterable, List, Optional

import numpy as np
import scipy.linalg

from horoconv.conformal.chart import SphereLike
from horoconv.conformal.metric import ConformalMetricField
from horoconv.conformal.schouten import ChartJet, chart_jet, schouten_from_jet, sigma_k
from horoconv.constants import (
    ANALYTIC_TOLERANCE,
    DEGENERATE_TOLERANCE,
    FD_TOLERANCE,
    QUADRIC_TOLERANCE,
    RANK_TOLERANCE,
)
from horoconv.correspondence.dictionary import sorted_lambdas, weingarten_sigma
from horoconv.errors import (
    DegenerateImmersionError,
    DictionaryMismatchError,
    EigenvalueBoundError,
)
from horoconv.logger import LOGGER
from horoconv.lorentz.vector import LorentzVector, lorentz_dot, minkowski_inner, null_lift


def dictionary_tolerance(f: ConformalMetricField) -> float:
    return ANALYTIC_TOLERANCE if f.analytic else FD_TOLERANCE


class Immersion:
    """
    The immersion, the normal and the light cone map at a point together with
    their derivatives along the chart coordinates.
    """

    def __init__(self, jet: ChartJet):
        """
        Evaluate the representation formula and differentiate it.
        :param ChartJet jet: The chart data of the exponent.
        """
        x = jet.position
        dx = jet.tangents
        f = jet.gradient
        scale = jet.inverse_factor
        dscale = (1.0 + jet.square) * jet.u
        grow, shrink = np.exp(jet.value), np.exp(-jet.value)

        direction = dx @ f
        gradient = scale * direction
        gradient = gradient - np.dot(gradient, x) * x
        square = float(np.dot(gradient, gradient))
        dgradient = np.outer(direction, dscale) + scale * (
            dx @ jet.hessian + np.einsum("aij,i->aj", jet.second, f)
        )
        dsquare = 2.0 * gradient @ dgradient

        a = 0.5 * (grow + shrink * (1.0 + square))
        da = 0.5 * (grow * f - shrink * f * (1.0 + square) + shrink * dsquare)

        lift = np.concatenate(([1.0], x))
        dlift = np.vstack((np.zeros((1, dx.shape[1])), dx))
        tail = np.concatenate(([0.0], gradient - x))
        dtail = np.vstack((np.zeros((1, dx.shape[1])), dgradient - dx))

        self.gradient = gradient
        self.phi = a * lift + shrink * tail
        self.psi = grow * lift
        self.eta = self.psi - self.phi
        self.dphi = np.outer(lift, da) + a * dlift - shrink * np.outer(tail, f) + shrink * dtail
        self.dpsi = grow * (np.outer(lift, f) + dlift)
        self.deta = self.dpsi - self.dphi
        self.jet = jet

    def first_form(self) -> np.ndarray:
        return lorentz_dot(self.dphi.T[:, None, :], self.dphi.T[None, :, :])

    def principal_curvatures(self) -> np.ndarray:
        """
        The eigenvalues of S = -(d phi)^{-1} d eta, sorted ascending.
        """
        first = self.first_form()
        spectrum = np.linalg.eigvalsh(first)
        if spectrum[0] <= RANK_TOLERANCE * max(1.0, abs(spectrum[-1])):
            raise DegenerateImmersionError(
                f"immersion has rank below {first.shape[0]} at {self.jet.position}"
            )
        second = -lorentz_dot(self.dphi.T[:, None, :], self.deta.T[None, :, :])
        second = (second + second.T) / 2.0
        return np.sort(scipy.linalg.eigh(second, first, eigvals_only=True))

    def metric_residual(self) -> float:
        """
        The deviation of the pullback of the Minkowski metric under psi from
        e^{2 rho} times the round metric.
        """
        pullback = lorentz_dot(self.dpsi.T[:, None, :], self.dpsi.T[None, :, :])
        round_metric = self.jet.tangents.T @ self.jet.tangents
        return float(np.max(np.abs(pullback - np.exp(2 * self.jet.value) * round_metric)))


def enforce_bound(f: ConformalMetricField, lambdas: np.ndarray, x) -> bool:
    """
    Raise if an eigenvalue exceeds 1/2 and report whether one equals 1/2.
    """
    tolerance = DEGENERATE_TOLERANCE if f.analytic else FD_TOLERANCE
    top = float(np.max(lambdas))
    if top > 0.5 + tolerance:
        raise EigenvalueBoundError(
            f"Schouten eigenvalue {top:.6g} of {f.name} at {x} is not below 1/2; "
            f"dilate the metric first"
        )
    if top >= 0.5 - tolerance:
        LOGGER.warning(f"{f.name} has a Schouten eigenvalue 1/2 at {x}: degenerate point")
        return True
    return False


def _immersion(f: ConformalMetricField, x: SphereLike, check: bool) -> Immersion:
    jet = chart_jet(f, x)
    if check:
        enforce_bound(f, schouten_from_jet(jet).eigenvalues, jet.position)
    return Immersion(jet)


def representation(
    f: ConformalMetricField, x: SphereLike, check_bound: bool = True
) -> LorentzVector:
    """
    The point of the hypersurface whose hyperbolic Gauss map value is x.
    :param ConformalMetricField f: The horospherical metric, eigenvalues below 1/2.
    :param x: The point of the sphere, inside the domain.
    :param bool check_bound: Verify the eigenvalue bound first.
    :return LorentzVector: phi(x) on the hyperbolic space.
    """
    immersion = _immersion(f, x, check_bound)
    return LorentzVector(immersion.phi, f.n)


def light_cone_map(f: ConformalMetricField, x: SphereLike) -> LorentzVector:
    """
    The light cone map e^{rho(x)} (1, x).
    """
    return null_lift(f.require(x), f(x))


def normal(f: ConformalMetricField, x: SphereLike, check_bound: bool = True) -> LorentzVector:
    """
    The unit normal eta = psi - phi.
    """
    immersion = _immersion(f, x, check_bound)
    return LorentzVector(immersion.eta, f.n)


def principal_curvatures(
    f: ConformalMetricField, x: SphereLike, check_bound: bool = True
) -> np.ndarray:
    """
    The principal curvatures of the hypersurface at the point over x.
    :param ConformalMetricField f: The horospherical metric.
    :param x: The point of the sphere.
    :param bool check_bound: Verify the eigenvalue bound first.
    :return np.ndarray: The sorted eigenvalues of -(d phi)^{-1} d eta.
    """
    immersion = _immersion(f, x, check_bound)
    return immersion.principal_curvatures()


class HypersurfaceJet:
    """
    The data of both sides of the correspondence at one point.
    """

    def __init__(
        self,
        x: np.ndarray,
        rho: float,
        phi: LorentzVector,
        eta: LorentzVector,
        psi: LorentzVector,
        kappas: np.ndarray,
        lambdas: np.ndarray,
        metric_residual: float = 0.0,
        dictionary_residual: float = 0.0,
    ):
        self.x = x
        self.rho = rho
        self.phi = phi
        self.eta = eta
        self.psi = psi
        self.kappas = kappas
        self.lambdas = lambdas
        self.metric_residual = metric_residual
        self.dictionary_residual = dictionary_residual

    @property
    def n(self) -> int:
        return self.phi.n

    @property
    def horosphere_type(self) -> bool:
        """
        All eigenvalues vanish: a horosphere, whose light cone map is constant
        for the opposite orientation.
        """
        return bool(np.max(np.abs(self.lambdas)) <= FD_TOLERANCE)

    def sigma(self, k: int, normalized: bool = False) -> float:
        return sigma_k(self.lambdas, k, normalized)

    def weingarten(self, k: int, normalized: bool = False) -> float:
        return weingarten_sigma(self.kappas, k, normalized)

    def residuals(self) -> Dict[str, float]:
        """
        The residuals of the quadric and light cone relations.
        """
        lift = null_lift(self.x, self.rho).coords
        return {
            "phi-hyperbolic": abs(minkowski_inner(self.phi, self.phi) + 1.0),
            "eta-de-sitter": abs(minkowski_inner(self.eta, self.eta) - 1.0),
            "phi-eta-orthogonal": abs(minkowski_inner(self.phi, self.eta)),
            "psi-null": abs(minkowski_inner(self.psi, self.psi)),
            "psi-light-cone": float(np.max(np.abs(self.psi.coords - lift))),
            "psi-sum": self.psi.distance(self.phi + self.eta),
        }

    def check(self, tol: float = QUADRIC_TOLERANCE) -> bool:
        return all(value <= tol for value in self.residuals().values()) and self.phi.time > 0

    def __repr__(self):
        return (
            f"Jet(x={np.round(self.x, 6).tolist()}, "
            f"kappa={np.round(self.kappas, 6).tolist()}, "
            f"lambda={np.round(self.lambdas, 6).tolist()})"
        )


def jet(
    f: ConformalMetricField,
    x: SphereLike,
    check_dictionary: bool = True,
    tolerance: Optional[float] = None,
) -> HypersurfaceJet:
    """
    Bundle the correspondence data at a point and cross-check the eigenvalue
    dictionary.
    :param ConformalMetricField f: The horospherical metric, eigenvalues below 1/2.
    :param x: The point of the sphere.
    :param bool check_dictionary: Raise when Schouten eigenvalues and principal
    curvatures disagree.
    :param Optional[float] tolerance: The dictionary tolerance, by derivative mode
    if omitted.
    :return HypersurfaceJet: The jet.
    """
    chart = chart_jet(f, x)
    lambdas = schouten_from_jet(chart).eigenvalues
    enforce_bound(f, lambdas, chart.position)
    immersion = Immersion(chart)
    kappas = immersion.principal_curvatures()
    residual = float(np.max(np.abs(lambdas - sorted_lambdas(kappas))))
    tolerance = dictionary_tolerance(f) if tolerance is None else tolerance
    if check_dictionary and residual > tolerance:
        raise DictionaryMismatchError(lambdas, kappas, residual)
    return HypersurfaceJet(
        chart.position,
        chart.value,
        LorentzVector(immersion.phi, f.n),
        LorentzVector(immersion.eta, f.n),
        LorentzVector(immersion.psi, f.n),
        kappas,
        lambdas,
        metric_residual=immersion.metric_residual(),
        dictionary_residual=residual,
    )


def jets(f: ConformalMetricField, points: Iterable[SphereLike], **kwargs) -> List[HypersurfaceJet]:
    return [jet(f, x, **kwargs) for x in points]


__all__ = [
    "dictionary_tolerance",
    "Immersion",
    "enforce_bound",
    "representation",
    "light_cone_map",
    "normal",
    "principal_curvatures",
    "HypersurfaceJet",
    "jet",
    "jets",
]
