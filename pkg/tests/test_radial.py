import shutil
import unittest

import numpy as np

from horoconv.errors import DomainError, EigenvalueBoundError, SolverSingularityError, SpecError
from horoconv.radial import (
    RadialProfile,
    ShootConfig,
    cylindrical_acceleration,
    delaunay_search,
    detect_period,
    eigenvalue_deviation,
    first_integral,
    profile_to_hypersurface,
    radial_eigenvalues,
    round_level,
    shoot,
    shoot_cylindrical,
    solve_second_derivative,
)
from horoconv.radial.equation import level_slope, raw_level
from utils import OUT


class TestEquation(unittest.TestCase):
    def test_round_level(self):
        self.assertAlmostEqual(1.5, round_level(3, 1))
        self.assertAlmostEqual(1.5, round_level(4, 2))
        self.assertAlmostEqual(0.25, round_level(4, 2, "normalized"))
        self.assertAlmostEqual(1.5 * np.exp(-2), round_level(3, 1, t=1.0))

    def test_round_eigenvalues(self):
        r = np.array([0.3, 1.0, 2.5])
        u = np.log(2 / (1 + r**2))
        du = -2 * r / (1 + r**2)
        ddu = (2 * r**2 - 2) / (1 + r**2) ** 2
        eigenvalues = radial_eigenvalues(u, du, ddu, r)
        np.testing.assert_allclose(0.5, eigenvalues.lambda_tangential, atol=1e-14)
        np.testing.assert_allclose(0.5, eigenvalues.lambda_radial, atol=1e-14)

    def test_solve_second_derivative(self):
        for n, k, c in ((3, 1, 0.7), (4, 2, 0.3), (5, 3, 0.1)):
            u, du, r = -0.2, -0.4, 1.3
            ddu = solve_second_derivative(u, du, r, n, k, c)
            sigma = radial_eigenvalues(u, du, ddu, r).sigma(n, k)
            self.assertAlmostEqual(c, float(sigma), places=12)

    def test_round_acceleration(self):
        s = np.linspace(-3, 3, 31)
        acceleration = cylindrical_acceleration(
            -np.log(np.cosh(s)), -np.tanh(s), 4, 2, round_level(4, 2)
        )
        np.testing.assert_allclose(-1 / np.cosh(s) ** 2, acceleration, atol=1e-12)

    def test_level_slope(self):
        xi, level = -0.3, first_integral(-0.3, 0.4, 3, 1, 1.5)
        self.assertAlmostEqual(0.4, level_slope(xi, level, 3, 1, 1.5))

    def test_orders(self):
        with self.assertRaises(SpecError):
            raw_level(1.0, 3, 1, "scaled")
        with self.assertRaises(SpecError):
            shoot_cylindrical(0.0, 0.0, 0.0, "outward", 3, 4, 1.0)


class TestShooting(unittest.TestCase):
    def test_constant_branch(self):
        config = ShootConfig(max_span=4.0)
        for n, k in ((3, 1), (4, 2), (5, 2)):
            profile = shoot_cylindrical(0.0, 0.0, 0.0, "outward", n, k, round_level(n, k), config)
            closed = RadialProfile.round(n, k, profile.s)
            self.assertLess(float(np.max(np.abs(profile.u - closed.u))), 1e-8)
            self.assertLess(float(np.max(profile.sigma_residual())), 1e-8)
            self.assertLess(profile.energy_drift(), 1e-8)
            self.assertEqual("max-span", profile.metadata["termination"])

    def test_sigma_residual_recorded(self):
        config = ShootConfig(max_span=5.0)
        profile = shoot_cylindrical(-0.3, 0.0, 0.0, "outward", 3, 1, 1.5, config)
        residual = profile.metadata["sigma-residual"]
        self.assertAlmostEqual(1.5e-10, profile.metadata["sigma-tolerance"])
        self.assertAlmostEqual(float(np.max(profile.sigma_residual())), residual)
        self.assertLessEqual(residual, profile.metadata["sigma-tolerance"])
        strict = ShootConfig(max_span=5.0, ode_tol=1e-300)
        with self.assertLogs("horoconv", "WARNING"):
            profile = shoot_cylindrical(-0.3, 0.0, 0.0, "outward", 3, 1, 1.5, strict)
        self.assertGreater(profile.metadata["sigma-residual"], profile.metadata["sigma-tolerance"])

    def test_shoot_from_flat_data(self):
        profile = shoot(
            (np.log(2 / 1.25), -0.8), 0.5, "inward", 3, 1, 1.5, ShootConfig(max_span=2.0)
        )
        self.assertAlmostEqual(np.log(0.5), profile.s[-1])
        closed = RadialProfile.round(3, 1, profile.s)
        self.assertLess(float(np.max(np.abs(profile.u - closed.u))), 1e-8)

    def test_singular_start(self):
        with self.assertRaises(SolverSingularityError):
            shoot_cylindrical(0.0, 1.0, 0.0, "outward", 4, 2, 0.0)

    def test_bad_arguments(self):
        with self.assertRaises(SpecError):
            shoot((0.0, 0.0), -1.0, "outward", 3, 1, 1.5)
        with self.assertRaises(SpecError):
            shoot_cylindrical(0.0, 0.0, 0.0, "sideways", 3, 1, 1.5)

    def test_flat_profile(self):
        profile = RadialProfile.flat(4, 2, np.linspace(0, 5, 11))
        np.testing.assert_allclose(0.0, profile.u)
        np.testing.assert_allclose(0.0, profile.sigma_residual())


class TestPeriod(unittest.TestCase):
    def test_synthetic_period(self):
        s = np.linspace(0, 30, 3001)
        w = 2 * np.pi / 3
        profile = RadialProfile.from_cylindrical(
            3, 1, s, 0.1 * np.sin(w * s), 0.1 * w * np.cos(w * s),
            ddxi=-0.1 * w**2 * np.sin(w * s),
        )
        result = detect_period(profile)
        self.assertTrue(result.periodic)
        self.assertAlmostEqual(3.0, result.period, delta=1e-6)

    def test_constant_profile(self):
        s = np.linspace(0, 10, 101)
        xi = np.full_like(s, -0.5 * np.log(3))
        profile = RadialProfile(3, 1, s, xi, np.zeros_like(s), 1.5)
        result = detect_period(profile)
        self.assertTrue(result.constant)
        self.assertFalse(result.periodic)

    def test_delaunay(self):
        config = ShootConfig(max_span=40.0)
        results = delaunay_search(3, 1, perturbations=(0.1, 0.3), config=config)
        periods = []
        for delta, profile, period in results:
            self.assertTrue(period.periodic, f"{delta}: {period.to_dict()}")
            self.assertGreater(period.period, 2 * np.pi - 0.5)
            self.assertLess(profile.energy_drift(), 1e-8)
            again = detect_period(
                shoot_cylindrical(-delta, 0.0, 0.0, "outward", 3, 1, 1.5, config.halved())
            )
            self.assertAlmostEqual(period.period, again.period, delta=1e-4)
            periods.append(period.period)
        self.assertGreater(periods[0], periods[1])

    def test_delaunay_higher_order(self):
        results = delaunay_search(5, 2, perturbations=(0.3,), config=ShootConfig(max_span=40.0))
        self.assertTrue(results[0][2].periodic)

    def test_no_closed_orbits(self):
        results = delaunay_search(4, 2, perturbations=(0.1,), config=ShootConfig(max_span=20.0))
        self.assertFalse(results[0][2].periodic)


class TestLift(unittest.TestCase):
    def test_round_eigenvalues(self):
        profile = RadialProfile.round(3, 1, np.linspace(-2.5, 2.5, 501), t=0.5)
        self.assertLess(eigenvalue_deviation(profile, np.linspace(-2, 2, 9)), 1e-8)

    def test_delaunay_eigenvalues(self):
        config = ShootConfig(max_span=6.0)
        profile = shoot_cylindrical(-0.3, 0.0, -3.0, "outward", 3, 1, 1.5, config)
        s = np.linspace(-2.5, 2.5, 50)
        xi, _, _ = profile.cylindrical(s)
        self.assertGreater(float(np.ptp(xi)), 0.1)
        self.assertLess(eigenvalue_deviation(profile, s), 1e-8)

    def test_round_lift_is_geodesic_sphere(self):
        t = 1.0
        profile = RadialProfile.round(3, 1, np.linspace(-3, 3, 601), t=t)
        lift = profile_to_hypersurface(profile, samples=21)
        self.assertEqual(0.0, lift.dilation)
        np.testing.assert_allclose(np.exp(-2 * t) / 2, lift.lambdas, atol=1e-8)
        np.testing.assert_allclose(np.cosh(t), lift.phi[:, 0], atol=1e-8)
        self.assertLess(lift.weingarten_spread, 1e-8)
        self.assertLess(lift.max_residual(), 1e-9)
        self.assertEqual((21 * 48, 3), lift.vertices.shape)
        radii = np.linalg.norm(lift.vertices, axis=1)
        np.testing.assert_allclose(np.tanh(t / 2), radii, atol=1e-8)

    def test_delaunay_lift(self):
        long = shoot_cylindrical(-0.3, 0.0, 0.0, "outward", 3, 1, 1.5, ShootConfig(max_span=40.0))
        period = detect_period(long)
        self.assertTrue(period.periodic)
        profile = shoot_cylindrical(-0.3, 0.0, -6.0, "outward", 3, 1, 1.5, ShootConfig(max_span=12.0))
        with self.assertRaises(EigenvalueBoundError):
            profile_to_hypersurface(profile, samples=21)
        lift = profile_to_hypersurface(profile, samples=201, allow_dilation=True, limit=5.0)
        self.assertGreater(lift.dilation, 0)
        self.assertLess(lift.weingarten_spread, 1e-6)
        self.assertLess(float(np.max(lift.lambdas)), 0.5)
        shift, mismatch = lift.axial_shift(period.period)
        self.assertAlmostEqual(period.period, shift, delta=1e-4)
        self.assertLess(mismatch, 1e-4)
        with self.assertRaises(DomainError):
            lift.axial_shift(20.0)


class TestProfileFile(unittest.TestCase):
    def tearDown(self):
        shutil.rmtree(OUT, ignore_errors=True)

    def test_csv(self):
        profile = RadialProfile.round(4, 2, np.linspace(-1, 1, 21), t=0.2)
        path = profile.write_csv(OUT / "round.csv")
        with path.open() as fp:
            self.assertTrue(fp.readline().startswith("# n=4,k=2,c="))
        again = RadialProfile.read_csv(path)
        self.assertEqual((4, 2), (again.n, again.k))
        self.assertAlmostEqual(profile.c, again.c)
        np.testing.assert_allclose(profile.u, again.u, atol=1e-14)
        np.testing.assert_allclose(profile.du, again.du, atol=1e-14)

    def test_missing_file(self):
        with self.assertRaises(SpecError):
            RadialProfile.read_csv(OUT / "missing.csv")
