"""
The verification module checks a catalog entry on seeded samples of its
parameter domain: the closed forms against the hyperquadrics, the induced metric
against the closed forms and the eigenvalue dictionary against the expected
constant curvatures.
"""

from typing import Dict, List, Optional

import numpy as np
from multiset import FrozenMultiset
from scipy.spatial.distance import pdist

from horoconv.catalog.entry import CatalogEntry
from horoconv.constants import (
    ANALYTIC_TOLERANCE,
    EPSILON,
    FD_TOLERANCE,
    QUADRIC_TOLERANCE,
)
from horoconv.correspondence.dictionary import is_horospherically_convex, sorted_lambdas
from horoconv.correspondence.hypersurface import (
    HypersurfaceJet,
    dictionary_tolerance,
    jet,
)
from horoconv.errors import HoroconvError
from horoconv.invariance.structure import multiplicity_signature
from horoconv.io.report import VerificationReport
from horoconv.logger import LOGGER
from horoconv.lorentz.vector import Hyperquadric, classify_array

CONSTANCY_TOLERANCE = {"analytic": 1e-9, "finite-difference": 1e-6}


def expand(values: FrozenMultiset) -> np.ndarray:
    """
    The sorted array of a multiset, each value repeated by its multiplicity.
    """
    return np.sort(np.array([value for value in values], dtype=float))


def _relative(difference: np.ndarray, reference: np.ndarray) -> float:
    scale = 1.0 + np.max(np.abs(reference), axis=1)
    return float(np.max(np.max(np.abs(difference), axis=1) / scale))


def _spread(values: np.ndarray) -> float:
    return float(np.max(np.max(values, axis=0) - np.min(values, axis=0)))


def _check_closed_forms(
    e: CatalogEntry, omega: np.ndarray, report: VerificationReport, seed: Optional[int]
):
    m = omega.shape[0]
    psi = e.psi_closed(omega)
    report.add_check(
        "light-cone-closed", _relative(psi - e.lifted_gauss(omega), psi), QUADRIC_TOLERANCE, m, seed
    )
    for name, residual in e.quadric_residuals(omega).items():
        report.add_check(name, residual, QUADRIC_TOLERANCE, m, seed)
    gauss = e.gauss_closed(omega)
    report.add_check(
        "gauss-unit",
        float(np.max(np.abs(np.sum(gauss * gauss, axis=1) - 1.0))),
        QUADRIC_TOLERANCE,
        m,
        seed,
    )


def _check_horosphere(
    e: CatalogEntry, omega: np.ndarray, report: VerificationReport, seed: Optional[int]
):
    m = omega.shape[0]
    psi = e.psi_closed(omega)
    report.add_check(
        "light-cone-constant", float(np.max(np.abs(psi - psi[0]))), QUADRIC_TOLERANCE, m, seed
    )
    ideal = psi[:, 1:] / psi[:, :1]
    report.add_check(
        "ideal-point",
        float(np.max(np.abs(ideal - e.gauss_closed(omega)))),
        QUADRIC_TOLERANCE,
        m,
        seed,
    )
    off_cone = sum(
        classify_array(row) != Hyperquadric.NULL_CONE_PLUS for row in psi
    )
    report.add_check("psi-null-cone", off_cone, 0, m, seed)
    report.adjudicate("degenerate", "constant Gauss map, excluded from jet construction")


def _collect_jets(field, points: np.ndarray, report: VerificationReport, seed):
    collected: List[HypersurfaceJet] = []
    indices: List[int] = []
    failures: Dict[str, int] = {}
    for index, y in enumerate(points):
        try:
            collected.append(jet(field, y, check_dictionary=False))
            indices.append(index)
        except HoroconvError as error:
            key = type(error).__name__
            failures[key] = failures.get(key, 0) + 1
            LOGGER.debug(f"jet of {field.name} failed at {y}: {error}")
    report.add_check("jet-construction", sum(failures.values()), 0, points.shape[0], seed)
    if failures:
        report.adjudicate("jet-failures", failures)
    return indices, collected


def _adjudicate_candidates(
    e: CatalogEntry,
    kappas: np.ndarray,
    lambdas: np.ndarray,
    tolerance: float,
    report: VerificationReport,
    seed: Optional[int],
):
    deviations = []
    for candidate in e.kappa_candidates:
        expected = expand(candidate)
        deviation = max(
            float(np.max(np.abs(kappas - expected))),
            float(np.max(np.abs(lambdas - sorted_lambdas(expected)))),
        )
        deviations.append(deviation)
    matches = [index for index, value in enumerate(deviations) if value <= tolerance]
    report.add_check("expected-curvatures", min(deviations), tolerance, kappas.shape[0], seed)
    report.add_check("unique-candidate", abs(len(matches) - 1), 0, kappas.shape[0], seed)
    if len(e.kappa_candidates) > 1:
        verdict = {
            "candidates": [expand(candidate) for candidate in e.kappa_candidates],
            "deviations": deviations,
            "matching": [expand(e.kappa_candidates[index]) for index in matches],
        }
        stated = getattr(e, "stated_lambdas", None)
        if stated is not None:
            verdict["stated-lambdas"] = expand(stated)
            verdict["stated-lambdas-match"] = bool(
                np.max(np.abs(lambdas - expand(stated))) <= tolerance
            )
        report.adjudicate("kappa-sign", verdict)
        LOGGER.info(f"{e}: curvature candidates {verdict['matching']} match the computed jets")


def _check_correspondence(
    e: CatalogEntry,
    omega: np.ndarray,
    report: VerificationReport,
    seed: Optional[int],
    analytic: bool,
):
    m = omega.shape[0]
    field = e.metric_field(analytic)
    gauss = e.gauss_closed(omega)
    report.add_check(
        "gauss-injective",
        float(np.min(pdist(gauss))) if m > 1 else 1.0,
        EPSILON,
        m,
        seed,
        at_least=True,
    )
    report.add_check(
        "gauss-image-in-domain", int(np.sum(~field.contains_array(gauss))), 0, m, seed
    )
    report.add_check(
        "inverse-gauss",
        _relative(e.inverse_gauss(gauss) - omega, omega),
        ANALYTIC_TOLERANCE,
        m,
        seed,
    )
    closed = getattr(e, "sphere_closed", None)
    if closed is not None:
        report.add_check(
            "sphere-exponent",
            float(np.max(np.abs(closed(gauss) - e.rho_closed(omega)))),
            ANALYTIC_TOLERANCE,
            m,
            seed,
        )

    indices, collected = _collect_jets(field, gauss, report, seed)
    if not collected:
        return
    count = len(collected)
    tolerance = dictionary_tolerance(field)
    phis = np.array([j.phi.coords for j in collected])
    etas = np.array([j.eta.coords for j in collected])
    report.add_check(
        "representation", _relative(phis - e.phi_closed(omega[indices]), phis), tolerance, count, seed
    )
    report.add_check(
        "normal", _relative(etas - e.eta_closed(omega[indices]), etas), tolerance, count, seed
    )
    residuals = [j.residuals() for j in collected]
    for name in residuals[0]:
        report.add_check(
            f"jet-{name}",
            max(r[name] for r in residuals) / (1.0 + float(np.max(np.abs(phis)))),
            QUADRIC_TOLERANCE,
            count,
            seed,
        )
    report.add_check(
        "metric-consistency",
        max(j.metric_residual for j in collected) / (1.0 + float(np.max(np.abs(phis)))) ** 2,
        tolerance,
        count,
        seed,
    )
    report.add_check(
        "dictionary", max(j.dictionary_residual for j in collected), tolerance, count, seed
    )

    kappas = np.array([j.kappas for j in collected])
    lambdas = np.array([j.lambdas for j in collected])
    constancy = CONSTANCY_TOLERANCE[field.derivative_mode]
    report.add_check("kappa-constancy", _spread(kappas), constancy, count, seed)
    report.add_check("lambda-constancy", _spread(lambdas), constancy, count, seed)
    report.add_check(
        "horospherical-convexity",
        sum(not is_horospherically_convex(row) for row in kappas),
        0,
        count,
        seed,
    )
    _adjudicate_candidates(e, kappas, lambdas, max(tolerance, FD_TOLERANCE), report, seed)

    report.add_value("kappas", multiplicity_signature(np.mean(kappas, axis=0)), constancy)
    report.add_value("lambdas", multiplicity_signature(np.mean(lambdas, axis=0)), constancy)
    report.add_value(
        "multiplicities",
        [count for _, count in multiplicity_signature(np.mean(lambdas, axis=0))],
    )


def verify_entry(
    e: CatalogEntry, sample_count: int = 100, seed: int = 0, analytic: bool = True
) -> VerificationReport:
    """
    Run the invariants of an entry and the correspondence checks on seeded
    samples. Failures are report content, not exceptions.
    :param CatalogEntry e: The entry.
    :param int sample_count: The number of samples, at least 1.
    :param int seed: The seed of the sampler.
    :param bool analytic: Use the closed-form derivatives of the induced metric.
    :return VerificationReport: One record per check.
    """
    report = VerificationReport(str(e), {**e.describe(), "samples": sample_count, "seed": seed})
    omega = e.sample_chart(sample_count, np.random.default_rng(seed))
    _check_closed_forms(e, omega, report, seed)
    report.add_value("expected-kappas", e.expected_kappas)
    report.add_value("expected-lambdas", e.expected_lambdas)
    if e.degenerate:
        _check_horosphere(e, omega, report, seed)
    else:
        _check_correspondence(e, omega, report, seed, analytic)
    level = LOGGER.info if report.passed else LOGGER.warning
    level(f"{report}: {', '.join(map(repr, report.failures())) or 'all checks pass'}")
    return report


__all__ = ["verify_entry", "expand", "CONSTANCY_TOLERANCE"]
