"""
The lorentz module provides the exact-signature linear algebra of the
Lorentz-Minkowski space, its hyperquadrics and its isometry group.
"""

from horoconv.lorentz.isometry import (
    LorentzIsometry,
    apply_isometry,
    boost,
    compose,
    identity,
    isometry_defect,
    make_isometry,
    minkowski_metric,
    rotation,
)
from horoconv.lorentz.vector import (
    Hyperquadric,
    HyperquadricClass,
    LorentzVector,
    classify,
    classify_array,
    lorentz_dot,
    minkowski_inner,
    null_lift,
    null_lift_array,
    origin,
    poincare_array,
    poincare_projection,
)

__all__ = [
    "LorentzIsometry",
    "apply_isometry",
    "boost",
    "compose",
    "identity",
    "isometry_defect",
    "make_isometry",
    "minkowski_metric",
    "rotation",
    "Hyperquadric",
    "HyperquadricClass",
    "LorentzVector",
    "classify",
    "classify_array",
    "lorentz_dot",
    "minkowski_inner",
    "null_lift",
    "null_lift_array",
    "origin",
    "poincare_array",
    "poincare_projection",
]
