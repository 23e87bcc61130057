"""
The correspondence module provides the two-way bridge between conformal metrics
on the sphere and horospherically convex hypersurfaces of the hyperbolic space.
"""

from horoconv.correspondence.dictionary import (
    is_horospherically_convex,
    kappa_from_lambda,
    lambda_from_kappa,
    sorted_lambdas,
    weingarten_sigma,
    weingarten_values,
)
from horoconv.correspondence.hypersurface import (
    HypersurfaceJet,
    Immersion,
    dictionary_tolerance,
    enforce_bound,
    jet,
    jets,
    light_cone_map,
    normal,
    principal_curvatures,
    representation,
)

__all__ = [
    "is_horospherically_convex",
    "kappa_from_lambda",
    "lambda_from_kappa",
    "sorted_lambdas",
    "weingarten_sigma",
    "weingarten_values",
    "HypersurfaceJet",
    "Immersion",
    "dictionary_tolerance",
    "enforce_bound",
    "jet",
    "jets",
    "light_cone_map",
    "normal",
    "principal_curvatures",
    "representation",
]
