"""
The structure module inspects the eigenvalue pattern of the Schouten tensor on
samples: whether it splits into one eigenvalue of multiplicity n-1 and a second
one, how far apart the two are and how well the second is a function of the
first. It reports whether these hypotheses hold; it never concludes that a
metric is radial.
"""

from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

from horoconv.conformal.chart import SphereLike
from horoconv.conformal.metric import ConformalMetricField
from horoconv.conformal.schouten import eigenvalues_at
from horoconv.constants import DEPENDENCE_THRESHOLD, MULTIPLICITY_GAP
from horoconv.errors import SpecError

DEPENDENCE_NOTE = (
    "dependence score: 1 - normalized residual of predicting the simple eigenvalue "
    "from its neighbours in the order of the multiple one; a statistic, not a proof"
)


def multiplicity_signature(
    values: Sequence[float], gap: float = MULTIPLICITY_GAP
) -> List[Tuple[float, int]]:
    """
    Cluster sorted values whose consecutive differences stay below the gap.
    :param values: The eigenvalues.
    :param float gap: The relative gap separating clusters.
    :return: The (mean, multiplicity) pairs in ascending order.
    """
    values = np.sort(np.asarray(values, dtype=float).reshape(-1))
    if values.size == 0:
        return []
    threshold = gap * (1.0 + float(values[-1] - values[0]))
    clusters = [[values[0]]]
    for value in values[1:]:
        if value - clusters[-1][-1] > threshold:
            clusters.append([value])
        else:
            clusters[-1].append(value)
    return [(float(np.mean(cluster)), len(cluster)) for cluster in clusters]


class StructureThresholds:
    """
    The thresholds of the structure detector.
    """

    def __init__(self, gap: float = MULTIPLICITY_GAP, dependence: float = DEPENDENCE_THRESHOLD):
        """
        Initialize the thresholds.
        :param float gap: The gap separating distinct eigenvalues.
        :param float dependence: The score above which dependence is reported.
        """
        if gap <= 0 or not 0 <= dependence <= 1:
            raise SpecError(f"invalid structure thresholds gap={gap}, dependence={dependence}")
        self.gap = gap
        self.dependence = dependence


class StructureReport:
    """
    The eigenvalue pattern of a metric on samples.
    """

    def __init__(
        self,
        n: int,
        patterns: List[Tuple[int, ...]],
        pairs: List[Optional[Tuple[float, float]]],
        dependence: float,
        thresholds: StructureThresholds,
    ):
        """
        Initialize the report.
        :param int n: The sphere dimension.
        :param patterns: The multiplicity signature of every sample.
        :param pairs: The (multiple, simple) eigenvalue pair of every sample with
        two eigenvalues, None elsewhere.
        :param float dependence: The dependence score.
        :param StructureThresholds thresholds: The thresholds used.
        """
        self.n = n
        self.patterns = patterns
        self.pairs = pairs
        self.dependence = dependence
        self.thresholds = thresholds

    @property
    def two_eigenvalue_samples(self) -> List[bool]:
        return [pair is not None for pair in self.pairs]

    @property
    def two_eigenvalues(self) -> bool:
        return bool(self.pairs) and all(self.two_eigenvalue_samples)

    @property
    def multiplicity_n_minus_1(self) -> bool:
        return bool(self.patterns) and all(
            max(pattern) >= self.n - 1 for pattern in self.patterns
        )

    @property
    def gap(self) -> float:
        """
        The minimum of |lambda - nu| over the samples with two eigenvalues.
        """
        gaps = [abs(pair[0] - pair[1]) for pair in self.pairs if pair is not None]
        return float(min(gaps)) if gaps else 0.0

    @property
    def dependent(self) -> bool:
        return self.dependence >= self.thresholds.dependence

    def to_dict(self) -> Dict[str, Any]:
        return {
            "patterns": [list(pattern) for pattern in self.patterns],
            "two-eigenvalues": self.two_eigenvalues,
            "multiplicity-n-minus-1": self.multiplicity_n_minus_1,
            "gap": self.gap,
            "dependence-score": self.dependence,
            "dependence-threshold": self.thresholds.dependence,
            "dependent": self.dependent,
            "note": DEPENDENCE_NOTE,
        }

    def __repr__(self):
        return (
            f"Structure(two={self.two_eigenvalues}, gap={self.gap:.3g}, "
            f"dependence={self.dependence:.4f})"
        )


def split_pair(
    eigenvalues: Sequence[float], n: int, gap: float = MULTIPLICITY_GAP
) -> Optional[Tuple[float, float]]:
    """
    The pair (lambda, nu) of an eigenvalue list splitting as multiplicities
    (n-1, 1), or None.
    """
    signature = multiplicity_signature(eigenvalues, gap)
    if len(signature) != 2:
        return None
    (first, a), (second, b) = signature
    if (a, b) == (n - 1, 1):
        return first, second
    if (a, b) == (1, n - 1):
        return second, first
    return None


def dependence_score(pairs: Sequence[Tuple[float, float]], gap: float = MULTIPLICITY_GAP) -> float:
    """
    How well nu is predicted from lambda by linear interpolation between the
    neighbours of every sample in lambda order.
    :param pairs: The (lambda, nu) pairs, at least two.
    :param float gap: Spreads below this count as constant.
    :return float: A score in [0, 1], 1 when nu is a function of lambda.
    """
    if len(pairs) < 2:
        raise SpecError("the dependence score needs at least 2 samples with two eigenvalues")
    data = np.array(sorted(pairs), dtype=float)
    lam, nu = data[:, 0], data[:, 1]
    if np.ptp(nu) <= gap:
        return 1.0
    if len(pairs) == 2:
        return 1.0 if np.ptp(lam) > gap else 0.0
    predicted = np.empty(nu.size - 2)
    for index in range(1, nu.size - 1):
        left, right = lam[index - 1], lam[index + 1]
        if right - left <= gap * 1e-3:
            predicted[index - 1] = (nu[index - 1] + nu[index + 1]) / 2
        else:
            weight = (lam[index] - left) / (right - left)
            predicted[index - 1] = (1 - weight) * nu[index - 1] + weight * nu[index + 1]
    residual = np.sqrt(np.mean((nu[1:-1] - predicted) ** 2))
    return float(np.clip(1.0 - residual / np.std(nu), 0.0, 1.0))


def detect_radial_structure(
    f: ConformalMetricField,
    samples: Sequence[SphereLike],
    thresholds: Optional[StructureThresholds] = None,
) -> StructureReport:
    """
    Report the multiplicity pattern, the gap and the dependence score of the
    Schouten eigenvalues of f on the samples.
    :param ConformalMetricField f: The field.
    :param samples: The sample points, at least two.
    :param Optional[StructureThresholds] thresholds: The thresholds.
    :return StructureReport: The report.
    """
    thresholds = thresholds or StructureThresholds()
    samples = list(samples)
    if len(samples) < 2:
        raise SpecError("the structure detector needs at least 2 samples")
    eigenvalues = eigenvalues_at(f, samples)
    patterns = [
        tuple(count for _, count in multiplicity_signature(row, thresholds.gap))
        for row in eigenvalues
    ]
    pairs = [split_pair(row, f.n, thresholds.gap) for row in eigenvalues]
    found = [pair for pair in pairs if pair is not None]
    dependence = dependence_score(found, thresholds.gap) if len(found) >= 2 else 0.0
    return StructureReport(f.n, patterns, pairs, dependence, thresholds)


__all__ = [
    "DEPENDENCE_NOTE",
    "multiplicity_signature",
    "StructureThresholds",
    "StructureReport",
    "split_pair",
    "dependence_score",
    "detect_radial_structure",
]
