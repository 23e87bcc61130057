"""
The equation module provides the Schouten eigenvalues of radial metrics
g = e^{2u(|x|)} |dx|^2 and the radial sigma_k equation, both in the radius r and
in the cylindrical form xi(s) = u(e^s) + s, where the equation is autonomous.
"""

from typing import Union

import numpy as np
import scipy.special

from horoconv.errors import DomainError, SolverSingularityError, SpecError

Scalar = Union[float, np.ndarray]

CONVENTIONS = ("raw", "normalized")


def binom(n: int, k: int) -> float:
    return float(scipy.special.comb(n, k, exact=True)) if 0 <= k <= n else 0.0


def check_orders(n: int, k: int):
    if n < 3:
        raise SpecError(f"the radial equation needs n >= 3, got {n}")
    if not 1 <= k <= n:
        raise SpecError(f"the radial equation needs 1 <= k <= n, got k={k}, n={n}")


def raw_level(c: float, n: int, k: int, convention: str = "raw") -> float:
    """
    The level of the unnormalized sigma_k.
    """
    if convention not in CONVENTIONS:
        raise SpecError(f"unknown sigma convention {convention!r}")
    return c * binom(n, k) if convention == "normalized" else c


def round_level(n: int, k: int, convention: str = "raw", t: float = 0.0) -> float:
    """
    sigma_k of the eigenvalues e^{-2t}/2 of a dilated round metric.
    """
    value = binom(n, k) * (np.exp(-2 * t) / 2) ** k
    return value / binom(n, k) if convention == "normalized" else value


class RadialEigenvalues:
    """
    The tangential eigenvalue, of multiplicity n-1, and the radial eigenvalue of
    a radial metric.
    """

    def __init__(self, lambda_tangential: Scalar, lambda_radial: Scalar):
        self.lambda_tangential = lambda_tangential
        self.lambda_radial = lambda_radial

    def sigma(self, n: int, k: int, normalized: bool = False) -> Scalar:
        """
        sigma_k of n-1 copies of the tangential and one radial eigenvalue.
        """
        check_orders(n, k)
        a, b = np.asarray(self.lambda_tangential), np.asarray(self.lambda_radial)
        value = binom(n - 1, k) * a**k + binom(n - 1, k - 1) * a ** (k - 1) * b
        return value / binom(n, k) if normalized else value

    def values(self, n: int) -> np.ndarray:
        """
        The sorted list of all n eigenvalues at a single point.
        """
        return np.sort(
            np.array([float(self.lambda_tangential)] * (n - 1) + [float(self.lambda_radial)])
        )

    def __repr__(self):
        return f"Radial(tan={self.lambda_tangential}, rad={self.lambda_radial})"


def radial_eigenvalues(u: Scalar, du: Scalar, ddu: Scalar, r: Scalar) -> RadialEigenvalues:
    """
    The Schouten eigenvalues of e^{2u} |dx|^2 at radius r.
    :param u: The exponent.
    :param du: Its first derivative in r.
    :param ddu: Its second derivative in r.
    :param r: The radius, positive.
    :return RadialEigenvalues: e^{-2u}(-u'/r - u'^2/2) and e^{-2u}(-u'' + u'^2/2).
    """
    u, du, ddu, r = (np.asarray(value, dtype=float) for value in (u, du, ddu, r))
    if np.any(r <= 0):
        raise DomainError("radial eigenvalues need r > 0")
    scale = np.exp(-2 * u)
    tangential = scale * (-du / r - 0.5 * du**2)
    radial = scale * (-ddu + 0.5 * du**2)
    if tangential.ndim == 0:
        return RadialEigenvalues(float(tangential), float(radial))
    return RadialEigenvalues(tangential, radial)


def _radial_from_level(a: Scalar, n: int, k: int, c: float) -> Scalar:
    """
    The radial eigenvalue b with sigma_k(a, ..., a, b) = c.
    """
    a = np.asarray(a, dtype=float)
    coefficient = binom(n - 1, k - 1) * a ** (k - 1)
    if np.any(coefficient == 0):
        raise SolverSingularityError(
            f"sigma_{k - 1} of the tangential eigenvalues vanishes, the equation is singular"
        )
    return (c - binom(n - 1, k) * a**k) / coefficient


def solve_second_derivative(
    u: float, du: float, r: float, n: int, k: int, c: float, convention: str = "raw"
) -> float:
    """
    The u'' for which sigma_k of the radial metric equals c.
    :param float u: The exponent.
    :param float du: Its first derivative.
    :param float r: The radius.
    :param int n: The dimension.
    :param int k: The order of sigma_k.
    :param float c: The level.
    :param str convention: raw or normalized sigma_k.
    :return float: u'' = u'^2/2 - e^{2u} b with b the radial eigenvalue.
    """
    check_orders(n, k)
    a = radial_eigenvalues(u, du, 0.0, r).lambda_tangential
    b = _radial_from_level(a, n, k, raw_level(c, n, k, convention))
    return float(0.5 * du**2 - np.exp(2 * u) * b)


def tangential(xi: Scalar, p: Scalar) -> Scalar:
    """
    The tangential eigenvalue e^{-2 xi} (1 - p^2) / 2 in cylindrical form.
    """
    return np.exp(-2 * np.asarray(xi)) * (1 - np.asarray(p) ** 2) / 2


def cylindrical_acceleration(xi: Scalar, p: Scalar, n: int, k: int, c_raw: float) -> Scalar:
    """
    xi'' = (p^2 - 1)/2 - e^{2 xi} b of the autonomous radial equation.
    """
    b = _radial_from_level(tangential(xi, p), n, k, c_raw)
    return (np.asarray(p) ** 2 - 1) / 2 - np.exp(2 * np.asarray(xi)) * b


def cylindrical_eigenvalues(xi: Scalar, p: Scalar, ddxi: Scalar) -> RadialEigenvalues:
    scale = np.exp(-2 * np.asarray(xi))
    return RadialEigenvalues(
        scale * (1 - np.asarray(p) ** 2) / 2, scale * (-np.asarray(ddxi) + (np.asarray(p) ** 2 - 1) / 2)
    )


def first_integral(xi: Scalar, p: Scalar, n: int, k: int, c_raw: float) -> Scalar:
    """
    The conserved quantity e^{n xi} (a^k - c / binom(n, k)) of the cylindrical
    equation, a the tangential eigenvalue.
    """
    return np.exp(n * np.asarray(xi)) * (tangential(xi, p) ** k - c_raw / binom(n, k))


def level_slope(xi: float, level: float, n: int, k: int, c_raw: float) -> float:
    """
    The slope p >= 0 that puts (xi, p) on a level of the first integral.
    :param float xi: The cylindrical exponent.
    :param float level: The value of the first integral.
    :return float: p with first_integral(xi, p) = level.
    """
    target = (2**k) * (level + c_raw / binom(n, k) * np.exp(n * xi)) * np.exp(-(n - 2 * k) * xi)
    root = np.sign(target) * abs(target) ** (1.0 / k)
    if k % 2 == 0 and target < 0:
        raise DomainError(f"level {level} is not reached at xi = {xi}")
    square = 1 - root
    if square < 0:
        raise DomainError(f"level {level} is not reached at xi = {xi}")
    return float(np.sqrt(square))


__all__ = [
    "CONVENTIONS",
    "binom",
    "check_orders",
    "raw_level",
    "round_level",
    "RadialEigenvalues",
    "radial_eigenvalues",
    "solve_second_derivative",
    "tangential",
    "cylindrical_acceleration",
    "cylindrical_eigenvalues",
    "first_integral",
    "level_slope",
]
