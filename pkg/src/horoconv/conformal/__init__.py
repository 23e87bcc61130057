"""
The conformal module provides conformal metrics on domains of the round sphere,
their Schouten endomorphisms, sigma_k polynomials and dilations.
"""

from horoconv.conformal.chart import SpherePoint, StereoChart, as_array, basis_vector
from horoconv.conformal.metric import ConformalMetricField, dilate
from horoconv.conformal.schouten import (
    ChartJet,
    SchoutenAtPoint,
    chart_independence,
    chart_jet,
    eigenvalues_at,
    elementary_symmetric,
    normalize_below_half,
    schouten,
    schouten_from_jet,
    sigma_k,
    sphere_gradient,
)

__all__ = [
    "SpherePoint",
    "StereoChart",
    "as_array",
    "basis_vector",
    "ConformalMetricField",
    "dilate",
    "ChartJet",
    "SchoutenAtPoint",
    "chart_independence",
    "chart_jet",
    "eigenvalues_at",
    "elementary_symmetric",
    "normalize_below_half",
    "schouten",
    "schouten_from_jet",
    "sigma_k",
    "sphere_gradient",
]
