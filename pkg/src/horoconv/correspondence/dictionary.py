"""
The dictionary module translates between principal curvatures of horospherically
convex hypersurfaces and eigenvalues of the Schouten tensor of their
horospherical metrics.
"""

from typing import Sequence, Union

import numpy as np

from horoconv.conformal.schouten import sigma_k
from horoconv.errors import DomainError

Scalar = Union[float, np.ndarray]


def lambda_from_kappa(kappa: Scalar) -> Scalar:
    """
    The Schouten eigenvalue of a principal curvature, 1/2 - 1/(1 - kappa).
    :param kappa: A principal curvature different from 1, or an array of them.
    :return: The eigenvalue(s).
    """
    kappa = np.asarray(kappa, dtype=float)
    if np.any(kappa == 1.0):
        raise DomainError("principal curvature 1 has no Schouten eigenvalue")
    result = 0.5 - 1.0 / (1.0 - kappa)
    return float(result) if result.ndim == 0 else result


def kappa_from_lambda(lam: Scalar) -> Scalar:
    """
    The principal curvature of a Schouten eigenvalue, 1 - 1/(1/2 - lambda).
    :param lam: An eigenvalue different from 1/2, or an array of them.
    :return: The principal curvature(s).
    """
    lam = np.asarray(lam, dtype=float)
    if np.any(lam == 0.5):
        raise DomainError("Schouten eigenvalue 1/2 has no principal curvature")
    result = 1.0 - 1.0 / (0.5 - lam)
    return float(result) if result.ndim == 0 else result


def is_horospherically_convex(kappas: Sequence[float]) -> bool:
    """
    Whether all principal curvatures lie on the same side of 1.
    """
    kappas = np.asarray(kappas, dtype=float)
    return bool(np.max(kappas) < 1.0 or np.min(kappas) > 1.0)


def weingarten_values(kappas: Sequence[float]) -> np.ndarray:
    """
    The values (1 + kappa) / (2 (1 - kappa)), the negatives of the eigenvalues.
    """
    kappas = np.asarray(kappas, dtype=float)
    if np.any(kappas == 1.0):
        raise DomainError("principal curvature 1 in a Weingarten functional")
    return (1.0 + kappas) / (2.0 * (1.0 - kappas))


def weingarten_sigma(kappas: Sequence[float], k: int, normalized: bool = False) -> float:
    """
    sigma_k of (1 + kappa_i) / (2 (1 - kappa_i)), which equals (-1)^k sigma_k
    of the Schouten eigenvalues.
    :param kappas: The principal curvatures, all different from 1.
    :param int k: The degree.
    :param bool normalized: Divide by binomial(n, k).
    :return float: The Weingarten value.
    """
    return sigma_k(weingarten_values(kappas), k, normalized)


def sorted_lambdas(kappas: Sequence[float]) -> np.ndarray:
    """
    The sorted eigenvalues matching a list of principal curvatures.
    """
    return np.sort(np.atleast_1d(lambda_from_kappa(np.asarray(kappas, dtype=float))))


__all__ = [
    "lambda_from_kappa",
    "kappa_from_lambda",
    "is_horospherically_convex",
    "weingarten_values",
    "weingarten_sigma",
    "sorted_lambdas",
]
