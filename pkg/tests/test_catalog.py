import unittest

import numpy as np

from horoconv.catalog import (
    default_instances,
    equidistant,
    expand,
    geodesic_sphere,
    horosphere_entry,
    lambda_spectrum,
    make_entry,
    product_hk_snk,
    spectrum,
    totally_geodesic,
    verify_entry,
)
from horoconv.errors import DegenerateImmersionError, SpecError
from utils import rng


class TestEntries(unittest.TestCase):
    def test_make_entry(self):
        entry = make_entry("product", 4, k=2.0, r=1.0)
        self.assertEqual(2, entry.k)
        self.assertEqual({"k": 2, "r": 1.0}, entry.params)

    def test_make_entry_errors(self):
        with self.assertRaises(SpecError):
            make_entry("nosuch", 3, r=1.0)
        with self.assertRaises(SpecError):
            make_entry("equidistant", 3, r=1.0)
        with self.assertRaises(SpecError):
            make_entry("totally-geodesic", 3, r=1.0, t=2.0)
        with self.assertRaises(SpecError):
            make_entry("product", 3, k=1.5, r=1.0)
        with self.assertRaises(SpecError):
            product_hk_snk(3, 1.0, 3)
        with self.assertRaises(SpecError):
            totally_geodesic(-1.0, 3)

    def test_totally_geodesic_lambdas(self):
        entry = totally_geodesic(1.0, 3)
        np.testing.assert_allclose([-0.5] * 3, expand(entry.expected_lambdas))

    def test_product_lambdas(self):
        for r in (0.5, 1.0, 2.0):
            entry = product_hk_snk(1, r, 3)
            root = np.sqrt(1 + r**2)
            expected = sorted(
                [-0.5 - r**2 + r * root] + [0.5 + r**2 - r * root] * 2
            )
            np.testing.assert_allclose(expected, expand(entry.expected_lambdas))

    def test_geodesic_sphere_lambdas(self):
        entry = geodesic_sphere(1.0, 3)
        np.testing.assert_allclose([np.exp(-2) / 2] * 3, expand(entry.expected_lambdas))

    def test_lambda_spectrum(self):
        lambdas = lambda_spectrum(spectrum({-1.0: 2, 0.0: 1}))
        self.assertEqual({0.0: 2, -0.5: 1}, dict(lambdas.items()))
        self.assertEqual(0, len(lambda_spectrum(spectrum({1.0: 3}))))
        entry = horosphere_entry(0.0, [0, 0, 0, 1], 3)
        self.assertEqual(0, len(entry.expected_lambdas))

    def test_default_sphere_radii(self):
        radii = [e.params["t"] for e in default_instances(4) if e.name == "geodesic-sphere"]
        self.assertEqual([0.5, 1.0, 2.0], radii)

    def test_closed_forms(self):
        for entry in default_instances(3):
            omega = entry.sample_chart(10, rng())
            for name, residual in entry.quadric_residuals(omega).items():
                self.assertLess(residual, 1e-9, f"{entry} {name}")

    def test_light_cone_is_lifted_gauss(self):
        entry = product_hk_snk(2, 0.7, 4)
        omega = entry.sample_chart(10, rng())
        np.testing.assert_allclose(
            entry.psi_closed(omega), entry.lifted_gauss(omega), rtol=1e-10, atol=1e-10
        )

    def test_inverse_gauss(self):
        entry = equidistant(1.0, 0.5, 3)
        omega = entry.sample_chart(10, rng())
        np.testing.assert_allclose(
            omega, entry.inverse_gauss(entry.gauss_closed(omega)), atol=1e-10
        )

    def test_sampling_inside(self):
        entry = totally_geodesic(0.5, 4)
        omega = entry.sample_chart(50, rng())
        self.assertEqual((50, 4), omega.shape)
        self.assertTrue(np.all(np.linalg.norm(omega, axis=1) < 0.5))
        with self.assertRaises(SpecError):
            entry.sample_chart(0, rng())

    def test_horosphere_has_no_metric(self):
        entry = horosphere_entry(0.0, [0, 0, 0, 1], 3)
        self.assertTrue(entry.degenerate)
        with self.assertRaises(DegenerateImmersionError):
            entry.metric_field()


class TestVerification(unittest.TestCase):
    def assertPassed(self, report):
        self.assertTrue(report.passed, report.failures())

    def test_totally_geodesic(self):
        report = verify_entry(totally_geodesic(1.0, 3), 20, seed=1)
        self.assertPassed(report)

    def test_product(self):
        for k in (1, 2):
            self.assertPassed(verify_entry(product_hk_snk(k, 1.0, 3), 20, seed=2))

    def test_geodesic_sphere(self):
        self.assertPassed(verify_entry(geodesic_sphere(0.5, 4), 20, seed=3))
        for n in (3, 4):
            report = verify_entry(geodesic_sphere(2.0, n), 50, seed=3)
            self.assertPassed(report)

    def test_horosphere(self):
        report = verify_entry(horosphere_entry(0.3, [0, 1, 0, 0], 3), 20, seed=4)
        self.assertPassed(report)
        self.assertIn("degenerate", report.adjudications)

    def test_equidistant_adjudication(self):
        report = verify_entry(equidistant(1.0, 0.5, 3), 20, seed=5)
        self.assertPassed(report)
        verdict = report.adjudications["kappa-sign"]
        self.assertEqual(1, len(verdict["matching"]))

    def test_finite_differences(self):
        report = verify_entry(totally_geodesic(0.5, 3), 10, seed=6, analytic=False)
        self.assertPassed(report)

    def test_deterministic(self):
        first = verify_entry(product_hk_snk(1, 2.0, 3), 10, seed=8).render()
        second = verify_entry(product_hk_snk(1, 2.0, 3), 10, seed=8).render()
        self.assertEqual(first, second)
