"""
The profile module provides radial profiles: the exponent u of g = e^{2u}|dx|^2
sampled on an increasing grid of s = log r, kept internally in the cylindrical
form xi = u + s, p = xi'.
"""

import csv
import os
from pathlib import Path
from typing import Dict, Optional, Tuple

import numpy as np
from scipy.interpolate import CubicHermiteSpline

from horoconv.errors import DomainError, SolverSingularityError, SpecError
from horoconv.radial.equation import (
    CONVENTIONS,
    RadialEigenvalues,
    check_orders,
    cylindrical_acceleration,
    cylindrical_eigenvalues,
    first_integral,
    raw_level,
    round_level,
)

PROFILE_COLUMNS = ("s", "r", "u", "du", "lambda_tan", "lambda_rad", "sigma_residual")
PROVENANCES = ("shot", "closed-form", "synthetic", "file")


class RadialProfile:
    """
    A solution, or a candidate, of the radial sigma_k equation.
    """

    def __init__(
        self,
        n: int,
        k: int,
        s: np.ndarray,
        xi: np.ndarray,
        p: np.ndarray,
        c: Optional[float] = None,
        convention: str = "raw",
        provenance: str = "shot",
        ddxi: Optional[np.ndarray] = None,
        metadata: Optional[Dict[str, object]] = None,
    ):
        """
        Initialize the profile.
        :param int n: The dimension.
        :param int k: The order of sigma_k.
        :param np.ndarray s: The strictly increasing grid of s = log r.
        :param np.ndarray xi: The cylindrical exponent on the grid.
        :param np.ndarray p: Its derivative in s.
        :param Optional[float] c: The level, None for profiles without an equation.
        :param str convention: The sigma_k convention c refers to.
        :param str provenance: Where the profile comes from.
        :param Optional[np.ndarray] ddxi: The second derivative, from the equation
        or from the data if omitted.
        :param metadata: Termination reasons and other annotations.
        """
        check_orders(n, k)
        if convention not in CONVENTIONS:
            raise SpecError(f"unknown sigma convention {convention!r}")
        if provenance not in PROVENANCES:
            raise SpecError(f"unknown profile provenance {provenance!r}")
        s, xi, p = (np.asarray(a, dtype=float).reshape(-1) for a in (s, xi, p))
        if not (s.size == xi.size == p.size) or s.size < 2:
            raise SpecError("profile arrays must have equal length of at least 2")
        if np.any(np.diff(s) <= 0):
            raise SpecError("profile grid must be strictly increasing")
        self.n, self.k = n, k
        self.s, self.xi, self.p = s, xi, p
        self.c = c
        self.convention = convention
        self.provenance = provenance
        self.metadata = dict(metadata or {})
        if ddxi is None:
            ddxi = np.gradient(p, s)
            if c is not None:
                try:
                    ddxi = cylindrical_acceleration(xi, p, n, k, self.c_raw)
                except SolverSingularityError:
                    pass
        self.ddxi = np.asarray(ddxi, dtype=float).reshape(-1)
        self._xi_spline = CubicHermiteSpline(s, xi, p)
        self._p_spline = CubicHermiteSpline(s, p, self.ddxi)

    @property
    def c_raw(self) -> Optional[float]:
        if self.c is None:
            return None
        return raw_level(self.c, self.n, self.k, self.convention)

    @property
    def r(self) -> np.ndarray:
        return np.exp(self.s)

    @property
    def u(self) -> np.ndarray:
        return self.xi - self.s

    @property
    def du(self) -> np.ndarray:
        """
        du/dr on the grid.
        """
        return (self.p - 1) * np.exp(-self.s)

    @property
    def ddu(self) -> np.ndarray:
        return (self.ddxi - self.p + 1) * np.exp(-2 * self.s)

    @property
    def span(self) -> float:
        return float(self.s[-1] - self.s[0])

    def contains(self, s) -> np.ndarray:
        s = np.asarray(s, dtype=float)
        return (s >= self.s[0]) & (s <= self.s[-1])

    def cylindrical(self, s) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
        """
        xi, xi' and xi'' at arbitrary s inside the grid.
        """
        s = np.asarray(s, dtype=float)
        if not np.all(self.contains(s)):
            raise DomainError(f"s outside the profile range [{self.s[0]}, {self.s[-1]}]")
        xi, p = self._xi_spline(s), self._p_spline(s)
        if self.c is not None:
            try:
                return xi, p, cylindrical_acceleration(xi, p, self.n, self.k, self.c_raw)
            except SolverSingularityError:
                pass
        return xi, p, self._p_spline(s, 1)

    def eigenvalues(self) -> RadialEigenvalues:
        return cylindrical_eigenvalues(self.xi, self.p, self.ddxi)

    def sigma(self) -> np.ndarray:
        return self.eigenvalues().sigma(self.n, self.k, self.convention == "normalized")

    def sigma_residual(self) -> np.ndarray:
        """
        |sigma_k(lambda(s)) - c| on the grid.
        """
        if self.c is None:
            raise SpecError("a profile without a level has no sigma_k residual")
        return np.abs(self.sigma() - self.c)

    def first_integral(self) -> np.ndarray:
        if self.c is None:
            raise SpecError("a profile without a level has no first integral")
        return first_integral(self.xi, self.p, self.n, self.k, self.c_raw)

    def energy_drift(self) -> float:
        values = self.first_integral()
        return float(np.max(values) - np.min(values))

    def rows(self):
        eigenvalues = self.eigenvalues()
        residual = self.sigma_residual() if self.c is not None else np.full(self.s.size, np.nan)
        for row in zip(
            self.s,
            self.r,
            self.u,
            self.du,
            eigenvalues.lambda_tangential,
            eigenvalues.lambda_radial,
            residual,
        ):
            yield [format(float(value), ".17g") for value in row]

    def write_csv(self, path: os.PathLike) -> Path:
        """
        Write the profile with a comment line carrying n, k, c and the convention.
        """
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", newline="") as fp:
            fp.write(
                f"# n={self.n},k={self.k},c={'' if self.c is None else format(self.c, '.17g')},"
                f"convention={self.convention}\n"
            )
            writer = csv.writer(fp)
            writer.writerow(PROFILE_COLUMNS)
            writer.writerows(self.rows())
        return path

    @classmethod
    def read_csv(cls, path: os.PathLike) -> "RadialProfile":
        """
        Read a profile written by write_csv.
        """
        path = Path(path)
        if not path.exists():
            raise SpecError(f"profile file {path} does not exist")
        with path.open("r", newline="") as fp:
            header = fp.readline().strip()
            if not header.startswith("#"):
                raise SpecError(f"{path} lacks the profile comment line")
            fields = dict(
                item.split("=", 1) for item in header[1:].strip().split(",") if "=" in item
            )
            rows = list(csv.DictReader(fp))
        try:
            n, k = int(fields["n"]), int(fields["k"])
            c = float(fields["c"]) if fields.get("c") else None
            s = np.array([float(row["s"]) for row in rows])
            u = np.array([float(row["u"]) for row in rows])
            du = np.array([float(row["du"]) for row in rows])
        except (KeyError, ValueError) as error:
            raise SpecError(f"malformed profile file {path}: {error}")
        return cls.from_flat(
            n, k, s, u, du, c=c, convention=fields.get("convention", "raw"), provenance="file"
        )

    @classmethod
    def from_flat(cls, n, k, s, u, du, c=None, convention="raw", provenance="shot"):
        """
        A profile from u and du/dr on a grid of s = log r.
        """
        s = np.asarray(s, dtype=float)
        return cls(
            n, k, s, np.asarray(u) + s, np.asarray(du) * np.exp(s) + 1, c, convention, provenance
        )

    @classmethod
    def from_cylindrical(cls, n, k, s, xi, p, c=None, convention="raw", ddxi=None):
        """
        A synthetic profile from cylindrical data.
        """
        return cls(n, k, s, xi, p, c, convention, "synthetic", ddxi)

    @classmethod
    def round(cls, n: int, k: int, s: np.ndarray, t: float = 0.0, convention: str = "raw"):
        """
        The closed-form profile u = t + log(2 / (1 + r^2)) of a dilated round metric.
        """
        s = np.asarray(s, dtype=float)
        return cls(
            n,
            k,
            s,
            t - np.log(np.cosh(s)),
            -np.tanh(s),
            round_level(n, k, convention, t),
            convention,
            "closed-form",
        )

    @classmethod
    def flat(cls, n: int, k: int, s: np.ndarray, convention: str = "raw"):
        """
        The profile u = 0 of the flat metric, a solution of sigma_k = 0.
        """
        s = np.asarray(s, dtype=float)
        return cls(n, k, s, s.copy(), np.ones_like(s), 0.0, convention, "closed-form", np.zeros_like(s))

    def __repr__(self):
        return (
            f"RadialProfile(n={self.n}, k={self.k}, c={self.c}, {self.convention}, "
            f"s in [{self.s[0]:.4g}, {self.s[-1]:.4g}], {self.provenance})"
        )


__all__ = ["PROFILE_COLUMNS", "PROVENANCES", "RadialProfile"]
