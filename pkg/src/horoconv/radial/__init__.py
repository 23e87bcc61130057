"""
The radial module solves the sigma_k equation for radial conformal metrics by
shooting in the log-radius, detects periodic Delaunay-type profiles and lifts
profiles to rotational hypersurfaces.
"""

from horoconv.radial.equation import (
    CONVENTIONS,
    RadialEigenvalues,
    binom,
    cylindrical_acceleration,
    cylindrical_eigenvalues,
    first_integral,
    level_slope,
    radial_eigenvalues,
    raw_level,
    round_level,
    solve_second_derivative,
    tangential,
)
from horoconv.radial.lift import (
    LiftResult,
    eigenvalue_deviation,
    meridian,
    profile_curve,
    profile_to_hypersurface,
    radial_field,
    revolve,
)
from horoconv.radial.profile import PROFILE_COLUMNS, RadialProfile
from horoconv.radial.shooting import (
    PeriodResult,
    ShootConfig,
    delaunay_search,
    delaunay_start,
    detect_period,
    shoot,
    shoot_cylindrical,
)

__all__ = [
    "CONVENTIONS",
    "RadialEigenvalues",
    "binom",
    "cylindrical_acceleration",
    "cylindrical_eigenvalues",
    "first_integral",
    "level_slope",
    "radial_eigenvalues",
    "raw_level",
    "round_level",
    "solve_second_derivative",
    "tangential",
    "LiftResult",
    "eigenvalue_deviation",
    "meridian",
    "profile_curve",
    "profile_to_hypersurface",
    "radial_field",
    "revolve",
    "PROFILE_COLUMNS",
    "RadialProfile",
    "PeriodResult",
    "ShootConfig",
    "delaunay_search",
    "delaunay_start",
    "detect_period",
    "shoot",
    "shoot_cylindrical",
]
