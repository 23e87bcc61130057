"""
The horoconv module relates conformal metrics on the sphere to horospherically
convex hypersurfaces of hyperbolic space.
"""

from horoconv import (
    catalog,
    cli,
    conformal,
    constants,
    correspondence,
    errors,
    invariance,
    io,
    lorentz,
    radial,
)
from horoconv.constants import VERSION

__all__ = [
    "catalog",
    "cli",
    "conformal",
    "constants",
    "correspondence",
    "errors",
    "invariance",
    "io",
    "lorentz",
    "radial",
    "VERSION",
]
