"""
The schouten module provides the derivatives of conformal exponents in
stereographic charts, the Schouten endomorphism of g = e^{2 rho} g_0, the
elementary symmetric polynomials of its eigenvalues and the dilation that pushes
all eigenvalues below 1/2.
"""

from typing import Iterable, Optional, Sequence, Tuple

import numpy as np
import scipy.special

from horoconv.conformal.chart import SphereLike, StereoChart, as_array
from horoconv.conformal.metric import ConformalMetricField
from horoconv.constants import BELOW_HALF_MARGIN, GRADIENT_STEP, HESSIAN_STEP
from horoconv.errors import DomainError, NoAdmissibleSamplesError, SpecError, StencilError
from horoconv.logger import LOGGER


class ChartJet:
    """
    The second order data of a field at a point, written in a stereographic chart.
    """

    def __init__(
        self,
        chart: StereoChart,
        u: np.ndarray,
        position: np.ndarray,
        tangents: np.ndarray,
        second: np.ndarray,
        value: float,
        gradient: np.ndarray,
        hessian: np.ndarray,
    ):
        """
        Initialize the jet.
        :param StereoChart chart: The chart.
        :param np.ndarray u: The chart coordinate of the point.
        :param np.ndarray position: The sphere point X(u).
        :param np.ndarray tangents: dX, shape (n+1, n).
        :param np.ndarray second: ddX, shape (n+1, n, n).
        :param float value: rho at the point, offset included.
        :param np.ndarray gradient: The chart gradient of rho.
        :param np.ndarray hessian: The chart Hessian of rho.
        """
        self.chart = chart
        self.u = u
        self.position = position
        self.tangents = tangents
        self.second = second
        self.value = value
        self.gradient = gradient
        self.hessian = hessian

    @property
    def square(self) -> float:
        return float(np.dot(self.u, self.u))

    @property
    def inverse_factor(self) -> float:
        """
        The reciprocal square of the conformal factor of the chart, (1+|u|^2)^2 / 4.
        """
        return (1.0 + self.square) ** 2 / 4.0

    @property
    def sphere_gradient(self) -> np.ndarray:
        """
        The g_0-gradient of rho as an ambient vector tangent to the sphere.
        """
        vector = self.inverse_factor * (self.tangents @ self.gradient)
        return vector - np.dot(vector, self.position) * self.position

    def flat_exponent(self) -> Tuple[float, np.ndarray, np.ndarray]:
        """
        The exponent w of g = e^{2w} |du|^2 with its chart gradient and Hessian.
        """
        d = 1.0 + self.square
        n = self.u.size
        value = self.value + np.log(2.0 / d)
        gradient = self.gradient - 2.0 * self.u / d
        hessian = self.hessian - 2.0 * np.eye(n) / d + 4.0 * np.outer(self.u, self.u) / d**2
        return value, gradient, hessian


def _stencil(u: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    n = u.size
    hg = GRADIENT_STEP * (1.0 + np.abs(u))
    hh = HESSIAN_STEP * (1.0 + np.abs(u))
    offsets = [np.zeros(n)]
    for i in range(n):
        e = np.zeros(n)
        e[i] = hg[i]
        offsets += [e, -e]
    for i in range(n):
        e = np.zeros(n)
        e[i] = hh[i]
        offsets += [e, -e]
    for i in range(n):
        for j in range(i + 1, n):
            ei = np.zeros(n)
            ej = np.zeros(n)
            ei[i] = hh[i]
            ej[j] = hh[j]
            offsets += [ei + ej, ei - ej, -ei + ej, -ei - ej]
    return u + np.array(offsets), hg, hh


def _finite_differences(
    f: ConformalMetricField, chart: StereoChart, u: np.ndarray
) -> Tuple[float, np.ndarray, np.ndarray]:
    n = u.size
    coords, hg, hh = _stencil(u)
    points = chart.from_chart_array(coords)
    if not np.all(f.contains_array(points)):
        raise StencilError(f"finite-difference stencil at {u} leaves the domain of {f.name}")
    values = f.raw_array(points)
    if not np.all(np.isfinite(values)):
        raise StencilError(f"{f.name} is not finite on the stencil at {u}")
    center = values[0]
    gradient = np.empty(n)
    hessian = np.empty((n, n))
    for i in range(n):
        gradient[i] = (values[1 + 2 * i] - values[2 + 2 * i]) / (2 * hg[i])
    base = 1 + 2 * n
    for i in range(n):
        plus, minus = values[base + 2 * i], values[base + 2 * i + 1]
        hessian[i, i] = (plus - 2 * center + minus) / hh[i] ** 2
    index = base + 2 * n
    for i in range(n):
        for j in range(i + 1, n):
            pp, pm, mp, mm = values[index : index + 4]
            hessian[i, j] = hessian[j, i] = (pp - pm - mp + mm) / (4 * hh[i] * hh[j])
            index += 4
    return center, gradient, hessian


def chart_jet(
    f: ConformalMetricField, x: SphereLike, chart: Optional[StereoChart] = None
) -> ChartJet:
    """
    Differentiate the exponent of a field twice at a point.
    :param ConformalMetricField f: The field.
    :param x: The point, inside the domain.
    :param Optional[StereoChart] chart: The chart, centered at x if omitted.
    :return ChartJet: Value, chart gradient and chart Hessian of rho.
    """
    x = f.require(x)
    chart = chart or StereoChart.centered_at(x)
    u = chart.to_chart(x)
    position, tangents, second = chart.embedding_jet(u)
    if f.analytic:
        points = position[None, :]
        value = float(f.raw_array(points)[0])
        ambient = np.asarray(f.gradient(points), dtype=float)[0]
        ambient_hessian = np.asarray(f.hessian(points), dtype=float)[0]
        gradient = tangents.T @ ambient
        hessian = tangents.T @ ambient_hessian @ tangents + np.tensordot(
            ambient, second, axes=(0, 0)
        )
    else:
        value, gradient, hessian = _finite_differences(f, chart, u)
    if not np.isfinite(value):
        raise DomainError(f"{f.name} is not finite at {x}")
    return ChartJet(
        chart, u, position, tangents, second, value + f.offset, gradient, hessian
    )


def sphere_gradient(f: ConformalMetricField, x: SphereLike) -> np.ndarray:
    """
    The gradient of rho with respect to the round metric.
    :param ConformalMetricField f: The field.
    :param x: The point.
    :return np.ndarray: An ambient vector tangent to the sphere at x.
    """
    return chart_jet(f, x).sphere_gradient


class SchoutenAtPoint:
    """
    The Schouten endomorphism g^{-1} Sch_g at a point, in the frame of a chart.
    """

    def __init__(self, matrix: np.ndarray, lowered: np.ndarray, jet: ChartJet):
        """
        Initialize the endomorphism.
        :param np.ndarray matrix: The endomorphism in the chart frame.
        :param np.ndarray lowered: The Schouten tensor against the flat chart metric.
        :param ChartJet jet: The chart data it was computed from.
        """
        self.matrix = matrix
        self.lowered = lowered
        self.jet = jet
        self.eigenvalues = np.sort(np.linalg.eigvalsh((matrix + matrix.T) / 2.0))

    @property
    def asymmetry(self) -> float:
        return float(np.max(np.abs(self.lowered - self.lowered.T)))

    def __repr__(self):
        return "Sch[" + ", ".join(f"{v:.6g}" for v in self.eigenvalues) + "]"


def schouten_from_jet(jet: ChartJet) -> SchoutenAtPoint:
    """
    The Schouten endomorphism from chart data, using the flat background formula
    Sch = -Hess w + dw dw - |dw|^2 / 2 Id for g = e^{2w} |du|^2.
    """
    value, gradient, hessian = jet.flat_exponent()
    n = gradient.size
    lowered = -hessian + np.outer(gradient, gradient) - 0.5 * np.dot(gradient, gradient) * np.eye(n)
    return SchoutenAtPoint(np.exp(-2.0 * value) * lowered, lowered, jet)


def schouten(
    f: ConformalMetricField, x: SphereLike, chart: Optional[StereoChart] = None
) -> SchoutenAtPoint:
    """
    The Schouten endomorphism of e^{2 rho} g_0 and its sorted eigenvalues.
    :param ConformalMetricField f: The field.
    :param x: The point, inside the domain.
    :param Optional[StereoChart] chart: The chart, centered at x if omitted.
    :return SchoutenAtPoint: The endomorphism.
    """
    return schouten_from_jet(chart_jet(f, x, chart))


def eigenvalues_at(f: ConformalMetricField, points: Iterable[SphereLike]) -> np.ndarray:
    """
    The sorted Schouten eigenvalues at several points, shape (m, n).
    """
    return np.array([schouten(f, x).eigenvalues for x in points]).reshape(-1, f.n)


def chart_independence(f: ConformalMetricField, x: SphereLike) -> float:
    """
    The deviation between the eigenvalues computed in the centered chart and in a
    chart with a tilted pole.
    """
    first = schouten(f, x).eigenvalues
    second = schouten(f, x, StereoChart.tilted_at(as_array(x))).eigenvalues
    return float(np.max(np.abs(first - second)))


def elementary_symmetric(eigs: Sequence[float]) -> np.ndarray:
    """
    All elementary symmetric polynomials e_0, ..., e_n of the values.
    """
    coefficients = np.zeros(len(eigs) + 1)
    coefficients[0] = 1.0
    for value in eigs:
        coefficients[1:] = coefficients[1:] + value * coefficients[:-1]
    return coefficients


def sigma_k(eigs: Sequence[float], k: int, normalized: bool = False) -> float:
    """
    The k-th elementary symmetric polynomial of the values.
    :param Sequence[float] eigs: The eigenvalues.
    :param int k: The degree, 1 <= k <= n.
    :param bool normalized: Divide by binomial(n, k).
    :return float: sigma_k.
    """
    eigs = np.asarray(eigs, dtype=float).reshape(-1)
    n = eigs.size
    if not 1 <= k <= n:
        raise SpecError(f"sigma_k needs 1 <= k <= {n}, got {k}")
    value = float(elementary_symmetric(eigs)[k])
    if normalized:
        value /= float(scipy.special.comb(n, k, exact=True))
    return value


def normalize_below_half(
    f: ConformalMetricField,
    samples: Sequence[SphereLike],
    margin: float = BELOW_HALF_MARGIN,
) -> Tuple[ConformalMetricField, float]:
    """
    Dilate a field until all sampled eigenvalues lie below 1/2 - margin.
    :param ConformalMetricField f: The field.
    :param samples: The sample points.
    :param float margin: The distance kept from 1/2.
    :return: The dilated field and the dilation parameter t, 0 when nothing was done.
    """
    samples = list(samples)
    if not samples:
        raise NoAdmissibleSamplesError("cannot normalize eigenvalues without samples")
    supremum = float(np.max(eigenvalues_at(f, samples)))
    if not np.isfinite(supremum):
        raise DomainError(f"eigenvalues of {f.name} are not finite on the samples")
    bound = 0.5 - margin
    if supremum < bound:
        return f, 0.0
    t = float(np.log(supremum / bound)) + 1e-9
    LOGGER.info(f"dilating {f.name} by t = {t:.6g} (sup lambda = {supremum:.6g})")
    return f.dilate(t), t


__all__ = [
    "ChartJet",
    "chart_jet",
    "sphere_gradient",
    "SchoutenAtPoint",
    "schouten_from_jet",
    "schouten",
    "eigenvalues_at",
    "chart_independence",
    "elementary_symmetric",
    "sigma_k",
    "normalize_below_half",
]
