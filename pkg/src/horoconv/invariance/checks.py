"""
The checks module tests whether a conformal metric is invariant under a Mobius
map, whether its hypersurface is invariant under the corresponding isometry, and
sweeps one-parameter subgroups of generators.
"""

from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from horoconv.conformal.metric import ConformalMetricField
from horoconv.constants import INVARIANCE_TOLERANCE, MULTIPLICITY_GAP, SUBGROUP_PARAMETERS
from horoconv.correspondence.hypersurface import representation
from horoconv.errors import NoAdmissibleSamplesError, SpecError
from horoconv.invariance.mobius import MobiusMap, mobius_from_isometry
from horoconv.logger import LOGGER
from horoconv.lorentz.isometry import LorentzIsometry, boost, rotation


def admissible(f: ConformalMetricField, m: MobiusMap, samples: np.ndarray) -> np.ndarray:
    """
    The samples x with both x and Phi(x) inside the domain of f.
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    mask = f.contains_array(samples) & f.contains_array(m.apply_array(samples))
    if not np.any(mask):
        raise NoAdmissibleSamplesError(f"no sample and its image lie in the domain of {f.name}")
    return samples[mask]


def is_metric_invariant(
    f: ConformalMetricField,
    m: MobiusMap,
    samples: np.ndarray,
    tol: float = INVARIANCE_TOLERANCE,
) -> Tuple[bool, float]:
    """
    Whether Phi^* g = g on the samples, that is rho(x) = rho(Phi(x)) + omega(x).
    :param ConformalMetricField f: The field.
    :param MobiusMap m: The Mobius map.
    :param np.ndarray samples: The sample points.
    :param float tol: The tolerance on the maximal residual.
    :return: The verdict and the maximal residual.
    """
    points = admissible(f, m, samples)
    residual = f.value_array(points) - f.value_array(m.apply_array(points)) - m.omega_array(points)
    worst = float(np.max(np.abs(residual)))
    return worst <= tol, worst


def is_hypersurface_invariant(
    f: ConformalMetricField,
    T: LorentzIsometry,
    samples: np.ndarray,
    tol: float = INVARIANCE_TOLERANCE,
) -> Tuple[bool, float]:
    """
    Whether T phi(x) = phi(Phi(x)) on the samples, with Phi the Mobius map of T
    reparametrizing the hypersurface.
    :param ConformalMetricField f: The field, eigenvalues below 1/2.
    :param LorentzIsometry T: The isometry.
    :param np.ndarray samples: The sample points.
    :param float tol: The tolerance on the maximal residual.
    :return: The verdict and the maximal residual.
    """
    m = mobius_from_isometry(T)
    points = admissible(f, m, samples)
    images = m.apply_array(points)
    worst = 0.0
    for x, y in zip(points, images):
        moved = T(representation(f, x)).coords
        target = representation(f, y / np.linalg.norm(y)).coords
        worst = max(worst, float(np.max(np.abs(moved - target))))
    return worst <= tol, worst


class Generator:
    """
    A one-parameter subgroup: rotations in a coordinate plane or boosts along
    a spatial axis.
    """

    def __init__(self, kind: str, axes: Tuple[int, ...]):
        """
        Initialize the generator.
        :param str kind: Either rotation or boost.
        :param axes: The plane (i, j) of a rotation or the axis (a,) of a boost.
        """
        if kind == "rotation" and len(axes) == 2:
            self.kind = kind
        elif kind == "boost" and len(axes) == 1:
            self.kind = kind
        else:
            raise SpecError(f"invalid generator {kind}{tuple(axes)}")
        self.axes = tuple(int(axis) for axis in axes)

    def at(self, n: int, value: float) -> LorentzIsometry:
        if self.kind == "rotation":
            return rotation(n, self.axes, value)
        return boost(n, self.axes[0], value)

    @classmethod
    def parse(cls, text: str) -> "Generator":
        """
        Parse rot(i,j) or boost(a).
        """
        text = text.strip().replace(" ", "")
        for prefix, kind in (("rot(", "rotation"), ("rotation(", "rotation"), ("boost(", "boost")):
            if text.startswith(prefix) and text.endswith(")"):
                body = text[len(prefix) : -1]
                try:
                    return cls(kind, tuple(int(part) for part in body.split(",")))
                except ValueError:
                    break
        raise SpecError(f"cannot parse generator {text!r}, expected rot(i,j) or boost(a)")

    def __repr__(self):
        prefix = "rot" if self.kind == "rotation" else "boost"
        return f"{prefix}({','.join(map(str, self.axes))})"


class SweepResult:
    """
    The verdicts of a subgroup sweep per generator and parameter value.
    """

    def __init__(self, rows: List[Dict[str, object]]):
        self.rows = rows

    def invariant(self, generator: Generator) -> bool:
        return all(
            row["metric-invariant"] for row in self.rows if row["generator"] == repr(generator)
        )

    @property
    def agreement(self) -> bool:
        """
        Whether the metric and hypersurface verdicts coincide wherever both ran.
        """
        return all(
            row["metric-invariant"] == row["hypersurface-invariant"]
            for row in self.rows
            if row.get("hypersurface-invariant") is not None
        )

    def symmetry_dimension(self, generators: Sequence[Generator]) -> int:
        return sum(self.invariant(generator) for generator in generators)


def subgroup_sweep(
    f: ConformalMetricField,
    generators: Sequence[Generator],
    samples: np.ndarray,
    values: Sequence[float] = SUBGROUP_PARAMETERS,
    tol: float = INVARIANCE_TOLERANCE,
    hypersurface: bool = False,
) -> SweepResult:
    """
    Test every generator at every parameter value.
    :param ConformalMetricField f: The field.
    :param generators: The generators.
    :param np.ndarray samples: The sample points.
    :param values: The parameter values.
    :param float tol: The tolerance.
    :param bool hypersurface: Also test the hypersurface.
    :return SweepResult: One row per generator and value.
    """
    rows = []
    for generator in generators:
        for value in values:
            T = generator.at(f.n, value)
            flag, residual = is_metric_invariant(f, mobius_from_isometry(T), samples, tol)
            row = {
                "generator": repr(generator),
                "value": value,
                "metric-invariant": flag,
                "metric-residual": residual,
                "hypersurface-invariant": None,
                "hypersurface-residual": None,
            }
            if hypersurface:
                flag, residual = is_hypersurface_invariant(f, T, samples, tol)
                row["hypersurface-invariant"] = flag
                row["hypersurface-residual"] = residual
            LOGGER.debug(f"{generator} at {value:g}: {row}")
            rows.append(row)
    return SweepResult(rows)


def max_symmetry_dimension(n: int) -> int:
    return n * (n - 1) // 2


def validate_symmetry_dimension(
    claimed: int, eigenvalues: np.ndarray, gap: float = MULTIPLICITY_GAP
) -> bool:
    """
    Reject a continuous symmetry dimension above n(n-1)/2 for metrics whose
    eigenvalues are not constant on the samples.
    :param int claimed: The claimed dimension.
    :param np.ndarray eigenvalues: Sorted eigenvalues, shape (m, n).
    :param float gap: The spread below which eigenvalues count as constant.
    :return bool: True when the claim is admissible.
    """
    eigenvalues = np.atleast_2d(eigenvalues)
    n = eigenvalues.shape[1]
    isoparametric = bool(np.max(np.ptp(eigenvalues, axis=0)) <= gap)
    if claimed > max_symmetry_dimension(n) and not isoparametric:
        LOGGER.warning(
            f"a metric with nonconstant eigenvalues has at most {max_symmetry_dimension(n)} "
            f"independent symmetries, {claimed} were claimed"
        )
        raise SpecError(
            f"symmetry dimension {claimed} exceeds {max_symmetry_dimension(n)} for a "
            f"metric that is not isoparametric"
        )
    return True


def generator_family(n: int, kinds: Optional[Sequence[str]] = None) -> List[Generator]:
    """
    All rotations of coordinate planes and boosts along axes of L^{n+2}.
    """
    kinds = kinds or ("rotation", "boost")
    family = []
    if "rotation" in kinds:
        family += [
            Generator("rotation", (i, j)) for i in range(1, n + 2) for j in range(i + 1, n + 2)
        ]
    if "boost" in kinds:
        family += [Generator("boost", (a,)) for a in range(1, n + 2)]
    return family


__all__ = [
    "admissible",
    "is_metric_invariant",
    "is_hypersurface_invariant",
    "Generator",
    "SweepResult",
    "subgroup_sweep",
    "max_symmetry_dimension",
    "validate_symmetry_dimension",
    "generator_family",
]
