import unittest

import numpy as np

from horoconv.errors import (
    DimensionMismatchError,
    DomainError,
    InvalidAxisError,
    NotAnIsometryError,
    SpecError,
)
from horoconv.lorentz import (
    Hyperquadric,
    LorentzIsometry,
    LorentzVector,
    apply_isometry,
    boost,
    classify,
    compose,
    identity,
    make_isometry,
    minkowski_inner,
    null_lift,
    null_lift_array,
    origin,
    poincare_projection,
    rotation,
)
from utils import sphere_points


class TestLorentzVector(unittest.TestCase):
    def test_inner_product(self):
        a = LorentzVector([2, 1, 0, 0, 1])
        b = LorentzVector([1, 0, 1, 0, 3])
        self.assertAlmostEqual(1.0, minkowski_inner(a, b))
        self.assertAlmostEqual(-2.0, minkowski_inner(a, a))

    def test_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            minkowski_inner(LorentzVector([1, 0, 0, 0, 0]), LorentzVector(np.eye(6)[0]))
        with self.assertRaises(DimensionMismatchError):
            LorentzVector([1, 0, 0, 0], n=3)

    def test_small_dimension(self):
        with self.assertRaises(SpecError):
            LorentzVector([1, 0, 0, 0])

    def test_non_finite(self):
        with self.assertRaises(DomainError):
            LorentzVector([np.inf, 0, 0, 0, 0])

    def test_immutable(self):
        v = origin(3)
        with self.assertRaises(ValueError):
            v.coords[0] = 2.0

    def test_classify(self):
        self.assertEqual(Hyperquadric.HYPERBOLIC, classify(origin(3)))
        self.assertEqual(Hyperquadric.DE_SITTER, classify(LorentzVector([0, 1, 0, 0, 0])))
        self.assertEqual(Hyperquadric.NULL_CONE_PLUS, classify(null_lift([0, 0, 0, 1])))
        self.assertEqual(Hyperquadric.NONE, classify(LorentzVector([-1, 0, 0, 0, 1])))
        self.assertEqual(Hyperquadric.NONE, classify(LorentzVector([2, 0, 0, 0, 0])))

    def test_null_lift(self):
        points = sphere_points(3, 5)
        scale = np.linspace(-1.0, 1.0, 5)
        lifts = null_lift_array(points, scale)
        np.testing.assert_allclose(np.exp(scale), lifts[:, 0])
        np.testing.assert_allclose(1.0, null_lift_array(points)[:, 0])
        for x, s, row in zip(points, scale, lifts):
            np.testing.assert_allclose(row, null_lift(x, s).coords)
            self.assertAlmostEqual(0.0, minkowski_inner(null_lift(x, s), null_lift(x, s)))
        np.testing.assert_allclose(lifts[:, 1:], np.exp(scale)[:, None] * points)

    def test_classify_tolerance(self):
        v = LorentzVector([1 + 1e-12, 0, 0, 0, 0])
        self.assertEqual(Hyperquadric.HYPERBOLIC, classify(v))
        with self.assertRaises(SpecError):
            classify(v, tol=0)

    def test_poincare_projection(self):
        t = 1.0
        p = LorentzVector([np.cosh(t), 0, 0, 0, np.sinh(t)])
        ball = poincare_projection(p)
        self.assertAlmostEqual(np.tanh(t / 2), ball[-1])
        self.assertAlmostEqual(0.0, float(np.linalg.norm(poincare_projection(origin(3)))))
        with self.assertRaises(DomainError):
            poincare_projection(LorentzVector([0, 1, 0, 0, 0]))


class TestLorentzIsometry(unittest.TestCase):
    def test_rotation_and_boost(self):
        for isometry in (rotation(3, (1, 2), 0.7), boost(3, 4, 1.3), identity(4)):
            self.assertTrue(isometry.preserves_time)
            p = isometry(origin(isometry.n))
            self.assertEqual(Hyperquadric.HYPERBOLIC, classify(p))

    def test_apply_isometry(self):
        a = LorentzVector([2.0, 0.3, -0.4, 1.1, 0.2], 3)
        b = LorentzVector([1.5, -0.7, 0.1, 0.5, 0.9], 3)
        np.testing.assert_allclose(a.coords, apply_isometry(identity(3), a).coords)
        isometry = compose(boost(3, 3, 0.6), rotation(3, (2, 4), -1.2))
        self.assertAlmostEqual(
            minkowski_inner(a, b),
            minkowski_inner(apply_isometry(isometry, a), apply_isometry(isometry, b)),
        )
        spin = apply_isometry(rotation(3, (1, 2), 0.9), null_lift(np.array([0.6, 0, 0.8, 0])))
        self.assertAlmostEqual(1.0, spin.time)
        self.assertAlmostEqual(0.8, spin.coords[3])
        with self.assertRaises(DimensionMismatchError):
            apply_isometry(identity(4), a)

    def test_boost_moves_origin(self):
        p = boost(3, 4, 2.0)(origin(3))
        self.assertAlmostEqual(np.cosh(2.0), p.time)
        self.assertAlmostEqual(np.sinh(2.0), p.coords[4])

    def test_null_cone_preserved(self):
        isometry = compose(rotation(3, (1, 3), 0.4), boost(3, 2, -0.8))
        for x in sphere_points(3, 10):
            image = isometry(null_lift(x))
            self.assertEqual(Hyperquadric.NULL_CONE_PLUS, classify(image))

    def test_inverse(self):
        isometry = compose(boost(3, 1, 0.9), rotation(3, (2, 4), 1.1))
        product = isometry @ isometry.inverse()
        np.testing.assert_allclose(np.eye(5), product.matrix, atol=1e-12)

    def test_rejects_non_isometry(self):
        with self.assertRaises(NotAnIsometryError):
            LorentzIsometry(2 * np.eye(5))
        with self.assertRaises(NotAnIsometryError):
            LorentzIsometry(-np.eye(5))

    def test_invalid_axes(self):
        with self.assertRaises(InvalidAxisError):
            rotation(3, (1, 1), 0.3)
        with self.assertRaises(InvalidAxisError):
            boost(3, 0, 0.3)
        with self.assertRaises(InvalidAxisError):
            boost(3, 5, 0.3)
        with self.assertRaises(InvalidAxisError):
            make_isometry("rotation", 3)

    def test_make_isometry(self):
        composed = make_isometry(
            "composition", 3, factors=[rotation(3, (1, 2), 0.2), boost(3, 1, 0.5)]
        )
        expected = rotation(3, (1, 2), 0.2).matrix @ boost(3, 1, 0.5).matrix
        np.testing.assert_allclose(expected, composed.matrix)
        with self.assertRaises(SpecError):
            make_isometry("shear", 3)

    def test_compose_dimension_mismatch(self):
        with self.assertRaises(DimensionMismatchError):
            compose(identity(3), identity(4))
        with self.assertRaises(DimensionMismatchError):
            identity(3).apply_array(np.zeros((2, 6)))
