"""
The shooting module integrates the radial sigma_k equation from initial data,
detects periodic profiles through the return map to xi' = 0 and searches the
Delaunay-type branch near the round solution.
"""

from typing import List, Optional, Sequence, Tuple

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import brentq

from horoconv.constants import (
    BLOWUP,
    DELAUNAY_PERTURBATIONS,
    EPSILON,
    MAX_SPAN,
    ODE_ATOL,
    ODE_METHOD,
    ODE_RTOL,
    ODE_TOLERANCE,
    PERIOD_TOLERANCE,
    PROFILE_POINTS,
)
from horoconv.errors import SolverSingularityError, SpecError
from horoconv.logger import LOGGER
from horoconv.radial.equation import (
    check_orders,
    cylindrical_acceleration,
    first_integral,
    raw_level,
    round_level,
    tangential,
)
from horoconv.radial.profile import RadialProfile

DIRECTIONS = {"outward": 1.0, "inward": -1.0}


class ShootConfig:
    """
    The integrator settings of a shot.
    """

    def __init__(
        self,
        rtol: float = ODE_RTOL,
        atol: float = ODE_ATOL,
        method: str = ODE_METHOD,
        max_span: float = MAX_SPAN,
        blowup: float = BLOWUP,
        points: int = PROFILE_POINTS,
        ode_tol: float = ODE_TOLERANCE,
    ):
        """
        Initialize the configuration.
        :param float rtol: The relative tolerance of the integrator.
        :param float atol: The absolute tolerance of the integrator.
        :param str method: The scipy integration method.
        :param float max_span: The maximal length of the s-interval.
        :param float blowup: The bound on |xi| that ends the integration.
        :param int points: The number of grid points of the emitted profile.
        :param float ode_tol: The bound on the sigma_k residual of the profile.
        """
        if rtol <= 0 or atol <= 0 or max_span <= 0 or points < 2:
            raise SpecError("invalid shooting configuration")
        self.rtol = rtol
        self.atol = atol
        self.method = method
        self.max_span = max_span
        self.blowup = blowup
        self.points = points
        self.ode_tol = ode_tol

    def halved(self) -> "ShootConfig":
        """
        The same settings with both integrator tolerances halved.
        """
        return ShootConfig(
            self.rtol / 2, self.atol / 2, self.method, self.max_span, self.blowup, self.points, self.ode_tol
        )

    def with_span(self, span: float) -> "ShootConfig":
        return ShootConfig(
            self.rtol, self.atol, self.method, span, self.blowup, self.points, self.ode_tol
        )


def shoot_cylindrical(
    xi0: float,
    p0: float,
    s0: float,
    direction: str,
    n: int,
    k: int,
    c: float,
    config: Optional[ShootConfig] = None,
    convention: str = "raw",
) -> RadialProfile:
    """
    Integrate xi'' = (p^2 - 1)/2 - e^{2 xi} b(xi, p) from cylindrical data.
    :param float xi0: The cylindrical exponent at s0.
    :param float p0: Its derivative at s0.
    :param float s0: The starting log-radius.
    :param str direction: outward or inward.
    :param int n: The dimension.
    :param int k: The order of sigma_k.
    :param float c: The level.
    :param Optional[ShootConfig] config: The integrator settings.
    :param str convention: The sigma_k convention of c.
    :return RadialProfile: The profile on the integrated interval.
    """
    check_orders(n, k)
    config = config or ShootConfig()
    if direction not in DIRECTIONS:
        raise SpecError(f"direction must be inward or outward, got {direction!r}")
    c_raw = raw_level(c, n, k, convention)
    if k >= 2 and abs(tangential(xi0, p0)) <= EPSILON:
        raise SolverSingularityError("singular start: the tangential eigenvalue vanishes", s0)

    def rhs(_, y):
        return [y[1], cylindrical_acceleration(y[0], y[1], n, k, c_raw)]

    def singular(_, y):
        return tangential(y[0], y[1])

    def blowup(_, y):
        return config.blowup - abs(y[0])

    singular.terminal = True
    blowup.terminal = True
    events = [blowup] + ([singular] if k >= 2 else [])
    end = s0 + DIRECTIONS[direction] * config.max_span
    try:
        solution = solve_ivp(
            rhs,
            (s0, end),
            [xi0, p0],
            method=config.method,
            rtol=config.rtol,
            atol=config.atol,
            dense_output=True,
            events=events,
        )
    except SolverSingularityError as error:
        raise SolverSingularityError(str(error), s0)
    if solution.status == -1:
        raise SolverSingularityError(f"integration failed: {solution.message}", solution.t[-1])

    reason = "max-span"
    if solution.status == 1:
        reason = "blow-up" if solution.t_events[0].size else "singular-coefficient"
        LOGGER.warning(f"shot from s={s0:g} stopped at s={solution.t[-1]:.6g}: {reason}")
    else:
        LOGGER.info(f"shot from s={s0:g} reached s={solution.t[-1]:.6g}")

    stop = solution.t[-1]
    grid = np.linspace(min(s0, stop), max(s0, stop), config.points)
    if reason != "max-span":
        # the dense output is not reliable at the terminating event itself
        grid = grid[:-1] if direction == "outward" else grid[1:]
    xi, p = solution.sol(grid)
    profile = RadialProfile(
        n,
        k,
        grid,
        xi,
        p,
        c,
        convention,
        "shot",
        metadata={"termination": reason, "start": s0, "stop": float(stop), "direction": direction},
    )
    residual = float(np.max(profile.sigma_residual()))
    tolerance = config.ode_tol * max(1.0, abs(c))
    profile.metadata["sigma-residual"] = residual
    profile.metadata["sigma-tolerance"] = tolerance
    profile.metadata["energy-drift"] = profile.energy_drift()
    if residual > tolerance:
        LOGGER.warning(f"sigma_{k} residual {residual:.3e} exceeds {tolerance:.1e}")
    return profile


def shoot(
    initial: Tuple[float, float],
    r0: float,
    direction: str,
    n: int,
    k: int,
    c: float,
    config: Optional[ShootConfig] = None,
    convention: str = "raw",
) -> RadialProfile:
    """
    Integrate the radial equation from u(r0) and u'(r0) in the flat chart.
    :param initial: The pair (u0, u0').
    :param float r0: The starting radius, positive.
    :param str direction: outward or inward.
    :param int n: The dimension.
    :param int k: The order of sigma_k.
    :param float c: The level.
    :param Optional[ShootConfig] config: The integrator settings.
    :param str convention: The sigma_k convention of c.
    :return RadialProfile: The profile.
    """
    if r0 <= 0:
        raise SpecError(f"starting radius must be positive, got {r0}")
    u0, du0 = initial
    s0 = float(np.log(r0))
    return shoot_cylindrical(u0 + s0, r0 * du0 + 1, s0, direction, n, k, c, config, convention)


class PeriodResult:
    """
    The outcome of a period search.
    """

    def __init__(
        self,
        period: Optional[float],
        constant: bool = False,
        crossings: Optional[Sequence[float]] = None,
        residual: float = 0.0,
    ):
        self.period = period
        self.constant = constant
        self.crossings = list(crossings or [])
        self.residual = residual

    @property
    def periodic(self) -> bool:
        return self.period is not None and not self.constant

    def to_dict(self):
        return {
            "period": self.period,
            "constant": self.constant,
            "crossings": self.crossings,
            "residual": self.residual,
        }

    def __repr__(self):
        if self.constant:
            return "Period(constant)"
        return f"Period({self.period})" if self.period is not None else "Period(none)"


def _constant(profile: RadialProfile, tol: float) -> bool:
    if np.ptp(profile.xi) <= tol and np.ptp(profile.p) <= tol:
        return True
    eigenvalues = profile.eigenvalues()
    return bool(
        np.ptp(eigenvalues.lambda_tangential) <= tol and np.ptp(eigenvalues.lambda_radial) <= tol
    )


def detect_period(profile: RadialProfile, tol: float = PERIOD_TOLERANCE) -> PeriodResult:
    """
    The period of a profile in s, found from the crossings of xi' = 0 with xi'
    decreasing and validated on the overlap of the profile with its shift.
    :param RadialProfile profile: The profile.
    :param float tol: The tolerance on the shifted profile.
    :return PeriodResult: The period, a constant flag, or no period.
    """
    if _constant(profile, tol):
        return PeriodResult(0.0, constant=True)
    s, p = profile.s, profile.p
    crossings = []
    for index in np.nonzero((p[:-1] > 0) & (p[1:] <= 0))[0]:
        left, right = s[index], s[index + 1]
        if p[index + 1] == 0:
            crossings.append(float(right))
            continue
        crossings.append(
            float(brentq(lambda value: profile.cylindrical(value)[1], left, right, xtol=1e-14))
        )
    if len(crossings) < 2:
        return PeriodResult(None, crossings=crossings)
    gaps = np.diff(crossings)
    period = float(np.mean(gaps))
    if period > profile.span / 2 or np.ptp(gaps) > tol:
        return PeriodResult(None, crossings=crossings, residual=float(np.ptp(gaps)))
    overlap = s[s <= s[-1] - period]
    xi, dxi, _ = profile.cylindrical(overlap)
    shifted_xi, shifted_dxi, _ = profile.cylindrical(np.minimum(overlap + period, s[-1]))
    residual = float(max(np.max(np.abs(shifted_xi - xi)), np.max(np.abs(shifted_dxi - dxi))))
    if residual > tol:
        return PeriodResult(None, crossings=crossings, residual=residual)
    return PeriodResult(period, crossings=crossings, residual=residual)


def delaunay_start(delta: float) -> Tuple[float, float]:
    """
    The cylindrical data (-delta, 0) inside the orbit of the round solution.
    """
    return -abs(delta), 0.0


def delaunay_search(
    n: int,
    k: int,
    c: Optional[float] = None,
    perturbations: Sequence[float] = DELAUNAY_PERTURBATIONS,
    config: Optional[ShootConfig] = None,
    convention: str = "raw",
    tol: float = PERIOD_TOLERANCE,
) -> List[Tuple[float, RadialProfile, PeriodResult]]:
    """
    Shoot from perturbations of the round solution at a fixed level and look
    for periodic profiles. Closed orbits need n > 2k.
    :param int n: The dimension.
    :param int k: The order of sigma_k.
    :param Optional[float] c: The level, the round one if omitted.
    :param perturbations: The perturbation sizes.
    :param Optional[ShootConfig] config: The integrator settings.
    :param str convention: The sigma_k convention of c.
    :param float tol: The period tolerance.
    :return: One (perturbation, profile, period) triple per perturbation.
    """
    check_orders(n, k)
    c = round_level(n, k, convention) if c is None else c
    if n <= 2 * k:
        LOGGER.warning(
            f"the level sets of the first integral are not closed for n={n}, k={k}; "
            f"no periodic profile is expected"
        )
    results = []
    for delta in perturbations:
        xi0, p0 = delaunay_start(delta)
        profile = shoot_cylindrical(xi0, p0, 0.0, "outward", n, k, c, config, convention)
        period = detect_period(profile, tol)
        profile.metadata["perturbation"] = delta
        profile.metadata["level"] = float(
            first_integral(xi0, p0, n, k, raw_level(c, n, k, convention))
        )
        LOGGER.info(f"perturbation {delta:g}: {period}")
        results.append((delta, profile, period))
    return results


__all__ = [
    "DIRECTIONS",
    "ShootConfig",
    "shoot_cylindrical",
    "shoot",
    "PeriodResult",
    "detect_period",
    "delaunay_start",
    "delaunay_search",
]
