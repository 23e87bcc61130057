"""
The catalog module provides closed-form hypersurfaces with constant principal
curvatures, the isoparametric conformal metrics they induce and their verifier.
"""

from horoconv.catalog.entries import (
    ENTRIES,
    Equidistant,
    GeodesicSphere,
    Horosphere,
    Product,
    TotallyGeodesic,
    default_instances,
    equidistant,
    geodesic_sphere,
    horosphere_entry,
    make_entry,
    product_hk_snk,
    totally_geodesic,
)
from horoconv.catalog.entry import CatalogEntry, lambda_spectrum, spectrum
from horoconv.catalog.verification import CONSTANCY_TOLERANCE, expand, verify_entry

__all__ = [
    "ENTRIES",
    "Equidistant",
    "GeodesicSphere",
    "Horosphere",
    "Product",
    "TotallyGeodesic",
    "default_instances",
    "equidistant",
    "geodesic_sphere",
    "horosphere_entry",
    "make_entry",
    "product_hk_snk",
    "totally_geodesic",
    "CatalogEntry",
    "lambda_spectrum",
    "spectrum",
    "CONSTANCY_TOLERANCE",
    "expand",
    "verify_entry",
]
