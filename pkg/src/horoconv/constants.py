"""
This module contains the constants used in the horoconv package.
"""

import os
from pathlib import Path

import numpy as np

DEFAULT_WORK_DIR = Path(os.getcwd(), "horoconv-out")

REPORT_HEADER = "horoconv-report/1"
VERSION = "0.1.0"

# Lorentz-Minkowski model
QUADRIC_TOLERANCE = 1e-9
ISOMETRY_TOLERANCE = 1e-12
MOBIUS_TOLERANCE = 1e-8

# Sphere charts and differentiation
UNIT_TOLERANCE = 1e-12
GRADIENT_STEP = float(np.cbrt(np.finfo(float).eps))
HESSIAN_STEP = float(np.finfo(float).eps ** 0.25)
SECOND_POLE_TILT = 0.3

# Correspondence
FD_TOLERANCE = 1e-5
ANALYTIC_TOLERANCE = 1e-8
BELOW_HALF_MARGIN = 1e-3
DEGENERATE_TOLERANCE = 1e-9
RANK_TOLERANCE = 1e-10

# Eigenvalue structure
MULTIPLICITY_GAP = 1e-5
DEPENDENCE_THRESHOLD = 0.99

# Invariance
INVARIANCE_TOLERANCE = 1e-7
SUBGROUP_PARAMETERS = (1.0, -1.0, 0.3, -0.3, 0.05, -0.05)

# Catalog sampling
SAMPLE_INSET = 1e-3
PRODUCT_X_RADIUS = 2.0
SPHERE_CHART_RADIUS = 3.0

# Radial solver
ODE_TOLERANCE = 1e-10
ODE_RTOL = 1e-11
ODE_ATOL = 1e-12
ODE_METHOD = "DOP853"
MAX_SPAN = 20.0
BLOWUP = 50.0
PROFILE_POINTS = 2001
DELAUNAY_PERTURBATIONS = (1e-2, 5e-2, 1e-1)
PERIOD_TOLERANCE = 1e-6

LIFT_S_LIMIT = 6.0
LIFT_SAMPLES = 65
LIFT_ANGLES = 48

EPSILON = 1e-12

__all__ = [
    "DEFAULT_WORK_DIR",
    "REPORT_HEADER",
    "VERSION",
    "QUADRIC_TOLERANCE",
    "ISOMETRY_TOLERANCE",
    "MOBIUS_TOLERANCE",
    "UNIT_TOLERANCE",
    "GRADIENT_STEP",
    "HESSIAN_STEP",
    "SECOND_POLE_TILT",
    "FD_TOLERANCE",
    "ANALYTIC_TOLERANCE",
    "BELOW_HALF_MARGIN",
    "DEGENERATE_TOLERANCE",
    "RANK_TOLERANCE",
    "MULTIPLICITY_GAP",
    "DEPENDENCE_THRESHOLD",
    "INVARIANCE_TOLERANCE",
    "SUBGROUP_PARAMETERS",
    "SAMPLE_INSET",
    "PRODUCT_X_RADIUS",
    "SPHERE_CHART_RADIUS",
    "ODE_TOLERANCE",
    "ODE_RTOL",
    "ODE_ATOL",
    "ODE_METHOD",
    "MAX_SPAN",
    "BLOWUP",
    "PROFILE_POINTS",
    "DELAUNAY_PERTURBATIONS",
    "PERIOD_TOLERANCE",
    "LIFT_S_LIMIT",
    "LIFT_SAMPLES",
    "LIFT_ANGLES",
    "EPSILON",
]
