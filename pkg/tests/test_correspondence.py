import unittest

import numpy as np

from horoconv.conformal import ConformalMetricField, eigenvalues_at
from horoconv.correspondence import (
    enforce_bound,
    is_horospherically_convex,
    jet,
    kappa_from_lambda,
    lambda_from_kappa,
    light_cone_map,
    normal,
    principal_curvatures,
    representation,
    sorted_lambdas,
    weingarten_sigma,
)
from horoconv.conformal.schouten import sigma_k
from horoconv.errors import DomainError, EigenvalueBoundError
from horoconv.lorentz import Hyperquadric, classify, minkowski_inner, poincare_projection
from utils import sphere_points


def bump_field(n: int) -> ConformalMetricField:
    return ConformalMetricField.height_function(
        n,
        lambda z: 1.0 + 0.2 * z,
        lambda z: np.full_like(z, 0.2),
        lambda z: np.zeros_like(z),
        name="bump",
    )


class TestDictionary(unittest.TestCase):
    def test_inverse_maps(self):
        for kappa in (-3.0, -1.0, 0.0, 0.5, 2.0, 7.0):
            self.assertAlmostEqual(kappa, kappa_from_lambda(lambda_from_kappa(kappa)))

    def test_singular_values(self):
        with self.assertRaises(DomainError):
            lambda_from_kappa(1.0)
        with self.assertRaises(DomainError):
            kappa_from_lambda(0.5)

    def test_horospherical_convexity(self):
        self.assertTrue(is_horospherically_convex([-2.0, 0.5]))
        self.assertTrue(is_horospherically_convex([1.5, 3.0]))
        self.assertFalse(is_horospherically_convex([0.5, 1.5]))

    def test_weingarten_sign(self):
        kappas = np.array([-2.0, -1.5, 0.3])
        lambdas = sorted_lambdas(kappas)
        for k in (1, 2, 3):
            self.assertAlmostEqual(
                (-1) ** k * sigma_k(lambdas, k), weingarten_sigma(kappas, k)
            )


class TestGeodesicSphere(unittest.TestCase):
    def setUp(self):
        self.t = 1.0
        self.f = ConformalMetricField.constant(3, self.t)

    def test_representation(self):
        for x in sphere_points(3, 6):
            phi = representation(self.f, x)
            expected = np.concatenate(([np.cosh(self.t)], np.sinh(self.t) * x))
            np.testing.assert_allclose(expected, phi.coords, atol=1e-12)
            self.assertAlmostEqual(
                np.tanh(self.t / 2), float(np.linalg.norm(poincare_projection(phi)))
            )

    def test_curvatures(self):
        x = sphere_points(3, 1)[0]
        np.testing.assert_allclose(
            -1 / np.tanh(self.t), principal_curvatures(self.f, x), atol=1e-10
        )
        item = jet(self.f, x)
        np.testing.assert_allclose(np.exp(-2 * self.t) / 2, item.lambdas, atol=1e-12)
        self.assertLess(item.dictionary_residual, 1e-10)

    def test_light_cone(self):
        x = sphere_points(3, 1)[0]
        psi = light_cone_map(self.f, x)
        eta = normal(self.f, x)
        phi = representation(self.f, x)
        self.assertEqual(Hyperquadric.NULL_CONE_PLUS, classify(psi))
        self.assertEqual(Hyperquadric.DE_SITTER, classify(eta))
        self.assertLess(psi.distance(phi + eta), 1e-12)

    def test_round_is_rejected(self):
        x = sphere_points(3, 1)[0]
        round_metric = ConformalMetricField.constant(3)
        self.assertTrue(enforce_bound(round_metric, eigenvalues_at(round_metric, [x])[0], x))
        self.assertFalse(enforce_bound(self.f, eigenvalues_at(self.f, [x])[0], x))
        with self.assertRaises(EigenvalueBoundError):
            jet(ConformalMetricField.constant(3, -0.5), x)


class TestJet(unittest.TestCase):
    def test_quadrics_and_dictionary(self):
        f = bump_field(4)
        for x in sphere_points(4, 8):
            item = jet(f, x)
            self.assertTrue(item.check(), item.residuals())
            self.assertLess(item.dictionary_residual, 1e-8)
            self.assertLess(item.metric_residual, 1e-9)
            self.assertEqual(4, item.kappas.size)
            self.assertFalse(item.horosphere_type)

    def test_finite_differences(self):
        f = bump_field(3).finite_difference()
        item = jet(f, sphere_points(3, 1)[0])
        self.assertLess(item.dictionary_residual, 1e-5)
        self.assertLess(abs(minkowski_inner(item.phi, item.phi) + 1), 1e-9)

    def test_sigma_and_weingarten(self):
        f = bump_field(3)
        item = jet(f, sphere_points(3, 1, seed=11)[0])
        for k in (1, 2, 3):
            self.assertAlmostEqual(
                (-1) ** k * item.sigma(k), item.weingarten(k), delta=1e-7
            )
