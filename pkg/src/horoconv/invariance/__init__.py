"""
The invariance module provides Mobius maps of the sphere induced by isometries,
invariance checks for metrics and hypersurfaces and the eigenvalue structure
detector.
"""

from horoconv.invariance.checks import (
    Generator,
    SweepResult,
    admissible,
    generator_family,
    is_hypersurface_invariant,
    is_metric_invariant,
    max_symmetry_dimension,
    subgroup_sweep,
    validate_symmetry_dimension,
)
from horoconv.invariance.mobius import (
    MobiusMap,
    default_samples,
    isometry_from_mobius,
    mobius_from_isometry,
    pullback_exponent,
)
from horoconv.invariance.structure import (
    DEPENDENCE_NOTE,
    StructureReport,
    StructureThresholds,
    dependence_score,
    detect_radial_structure,
    multiplicity_signature,
    split_pair,
)

__all__ = [
    "Generator",
    "SweepResult",
    "admissible",
    "generator_family",
    "is_hypersurface_invariant",
    "is_metric_invariant",
    "max_symmetry_dimension",
    "subgroup_sweep",
    "validate_symmetry_dimension",
    "MobiusMap",
    "default_samples",
    "isometry_from_mobius",
    "mobius_from_isometry",
    "pullback_exponent",
    "DEPENDENCE_NOTE",
    "StructureReport",
    "StructureThresholds",
    "dependence_score",
    "detect_radial_structure",
    "multiplicity_signature",
    "split_pair",
]
