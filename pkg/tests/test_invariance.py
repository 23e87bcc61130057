import unittest

import numpy as np

from horoconv.catalog import equidistant, product_hk_snk, totally_geodesic
from horoconv.conformal import ConformalMetricField, eigenvalues_at
from horoconv.errors import NotAnIsometryError, SpecError
from horoconv.invariance import (
    Generator,
    dependence_score,
    detect_radial_structure,
    generator_family,
    is_hypersurface_invariant,
    is_metric_invariant,
    isometry_from_mobius,
    max_symmetry_dimension,
    mobius_from_isometry,
    multiplicity_signature,
    pullback_exponent,
    subgroup_sweep,
    validate_symmetry_dimension,
)
from horoconv.lorentz import boost, compose, rotation
from utils import SEED, rng, sphere_points


def radial_bump(n: int) -> ConformalMetricField:
    return ConformalMetricField.height_function(
        n,
        lambda z: 1.0 + 0.2 * z,
        lambda z: np.full_like(z, 0.2),
        lambda z: np.zeros_like(z),
        name="radial-bump",
    )


def generic_field(n: int) -> ConformalMetricField:
    return ConformalMetricField(
        n,
        lambda p: 0.2 * p[:, 0] + 0.1 * p[:, 1] ** 2 - 0.15 * p[:, 2] * p[:, -1],
        name="generic",
    )


def random_isometry(n: int, generator: np.random.Generator, count: int = 5):
    factors = []
    for _ in range(count):
        value = generator.uniform(-2.0, 2.0)
        if generator.uniform() < 0.5:
            i, j = sorted(generator.choice(np.arange(1, n + 2), size=2, replace=False))
            factors.append(rotation(n, (int(i), int(j)), value))
        else:
            factors.append(boost(n, int(generator.integers(1, n + 2)), value))
    return compose(*factors)


def planes(axes) -> list:
    axes = list(axes)
    return [(i, j) for index, i in enumerate(axes) for j in axes[index + 1 :]]


def catalog_pair(index: int, generator: np.random.Generator):
    """
    A catalog field with an isometry that preserves it on even indices and one
    tilting its symmetry axis on odd indices.
    """
    n = 3 + (index // 2) % 2
    r = float(generator.choice([0.5, 1.0, 2.0]))
    family = index % 3
    if family == 2:
        k = int(generator.integers(1, n))
        entry = product_hk_snk(k, r, n)
        fixing = planes(range(1, k + 1)) + planes(range(k + 1, n + 1))
        tilting = (1, n + 1)
    else:
        if family == 0:
            entry = totally_geodesic(r, n)
        else:
            entry = equidistant(r, float(generator.choice([0.5, 1.0])), n)
        fixing = planes(range(1, n + 1))
        tilting = (int(generator.integers(1, n + 1)), n + 1)
    if index % 2 == 0:
        plane = fixing[int(generator.integers(len(fixing)))]
        angle = generator.uniform(-2.0, 2.0)
    else:
        plane = tilting
        angle = generator.choice([-1.0, 1.0]) * generator.uniform(0.3, 0.5)
    samples = entry.gauss_closed(entry.sample_chart(30, generator))
    return entry.metric_field(), rotation(n, plane, angle), samples


class TestMobius(unittest.TestCase):
    def test_rotation_is_isometric(self):
        m = mobius_from_isometry(rotation(3, (1, 3), 0.6))
        points = sphere_points(3, 10)
        np.testing.assert_allclose(0.0, m.omega_array(points), atol=1e-14)
        np.testing.assert_allclose(1.0, np.linalg.norm(m.apply_array(points), axis=1))

    def test_boost_round_trip(self):
        m = mobius_from_isometry(compose(boost(4, 2, 0.9), rotation(4, (1, 5), 0.3)))
        points = sphere_points(4, 10)
        self.assertLess(m.round_trip(points), 1e-12)
        self.assertLess(m.cone_residual(points), 1e-12)

    def test_reconstruct_isometry(self):
        T = compose(boost(3, 4, -0.7), rotation(3, (2, 3), 1.2))
        m = mobius_from_isometry(T)
        rebuilt = isometry_from_mobius(m.apply_array, m.omega_array, n=3)
        np.testing.assert_allclose(T.matrix, rebuilt.matrix, atol=1e-10)

    def test_reject_non_mobius(self):
        with self.assertRaises(NotAnIsometryError):
            isometry_from_mobius(
                lambda p: p, lambda p: 0.3 * p[:, 0] ** 2, samples=sphere_points(3, 20)
            )

    def test_random_compositions(self):
        generator = rng(SEED)
        for n in (3, 4):
            for _ in range(50):
                T = random_isometry(n, generator)
                m = mobius_from_isometry(T)
                rebuilt = isometry_from_mobius(m.apply_array, m.omega_array, n=n)
                np.testing.assert_allclose(T.matrix, rebuilt.matrix, atol=1e-8)

    def test_reject_constant_exponent(self):
        with self.assertRaises(NotAnIsometryError):
            isometry_from_mobius(lambda p: p, lambda p: np.ones(p.shape[0]), n=3)

    def test_pullback_of_round_is_round(self):
        m = mobius_from_isometry(boost(3, 1, 0.8))
        pulled = pullback_exponent(m, ConformalMetricField.constant(3))
        eigs = eigenvalues_at(pulled, sphere_points(3, 4))
        np.testing.assert_allclose(0.5, eigs, atol=1e-5)


class TestInvariance(unittest.TestCase):
    def test_rotation_about_axis(self):
        f = radial_bump(3)
        samples = sphere_points(3, 12)
        inside = mobius_from_isometry(rotation(3, (1, 2), 0.7))
        across = mobius_from_isometry(rotation(3, (1, 4), 0.7))
        self.assertTrue(is_metric_invariant(f, inside, samples)[0])
        self.assertFalse(is_metric_invariant(f, across, samples)[0])

    def test_round_metric_not_boost_invariant(self):
        f = ConformalMetricField.constant(3, 1.0)
        m = mobius_from_isometry(boost(3, 2, 0.4))
        flag, residual = is_metric_invariant(f, m, sphere_points(3, 10))
        self.assertFalse(flag)
        self.assertGreater(residual, 0.1)

    def test_hypersurface_invariance(self):
        f = radial_bump(3)
        samples = sphere_points(3, 6)
        self.assertTrue(is_hypersurface_invariant(f, rotation(3, (2, 3), 0.5), samples)[0])
        self.assertFalse(is_hypersurface_invariant(f, boost(3, 4, 0.5), samples)[0])

    def test_catalog_metric_and_hypersurface_agree(self):
        generator = rng(SEED)
        verdicts = []
        for index in range(50):
            f, T, samples = catalog_pair(index, generator)
            metric, _ = is_metric_invariant(f, mobius_from_isometry(T), samples)
            hypersurface, _ = is_hypersurface_invariant(f, T, samples)
            self.assertEqual(metric, hypersurface, f"{f.name} under {T}")
            verdicts.append(metric)
        self.assertGreaterEqual(sum(verdicts), 10)
        self.assertGreaterEqual(len(verdicts) - sum(verdicts), 10)

    def test_subgroup_sweep(self):
        f = radial_bump(3)
        generators = generator_family(3)
        sweep = subgroup_sweep(
            f, generators, sphere_points(3, 6), values=(0.3, -1.0), hypersurface=True
        )
        self.assertTrue(sweep.agreement)
        self.assertEqual(3, sweep.symmetry_dimension(generators))
        self.assertTrue(sweep.invariant(Generator.parse("rot(1,2)")))
        self.assertFalse(sweep.invariant(Generator.parse("boost(4)")))

    def test_parse_generators(self):
        self.assertEqual("rot(1,3)", repr(Generator.parse(" rot(1, 3) ")))
        self.assertEqual("boost(2)", repr(Generator.parse("boost(2)")))
        for text in ("rot(1)", "boost(1,2)", "shear(1,2)", "rot(a,b)"):
            with self.assertRaises(SpecError):
                Generator.parse(text)

    def test_generator_family(self):
        family = generator_family(3)
        self.assertEqual(6 + 4, len(family))
        self.assertEqual(4, len(generator_family(3, kinds=("boost",))))

    def test_symmetry_dimension_bound(self):
        self.assertEqual(3, max_symmetry_dimension(3))
        constant = np.full((4, 3), 0.2)
        self.assertTrue(validate_symmetry_dimension(6, constant))
        varying = eigenvalues_at(radial_bump(3), sphere_points(3, 4))
        self.assertTrue(validate_symmetry_dimension(3, varying))
        with self.assertRaises(SpecError):
            validate_symmetry_dimension(4, varying)


class TestStructure(unittest.TestCase):
    def test_multiplicity_signature(self):
        self.assertEqual([(0.1, 2), (0.3, 1)], multiplicity_signature([0.3, 0.1, 0.1]))
        self.assertEqual([], multiplicity_signature([]))

    def test_dependence_score(self):
        lam = np.linspace(0, 1, 50)
        self.assertGreater(dependence_score(list(zip(lam, lam**2))), 0.99)
        noise = rng().uniform(size=50)
        self.assertLess(dependence_score(list(zip(lam, noise))), 0.5)
        self.assertEqual(1.0, dependence_score([(0.1, 0.2), (0.3, 0.2)]))
        with self.assertRaises(SpecError):
            dependence_score([(0.1, 0.2)])

    def test_radial_field(self):
        report = detect_radial_structure(radial_bump(4), sphere_points(4, 12))
        self.assertTrue(report.two_eigenvalues)
        self.assertTrue(report.multiplicity_n_minus_1)
        self.assertGreater(report.gap, 0)
        self.assertIn("note", report.to_dict())

    def test_quadratic_height(self):
        for n in (3, 4):
            f = ConformalMetricField.height_function(
                n, lambda z: 0.1 * z**2, lambda z: 0.2 * z, lambda z: np.full_like(z, 0.2)
            )
            report = detect_radial_structure(f, sphere_points(n, 200))
            self.assertTrue(report.two_eigenvalues)
            self.assertTrue(report.multiplicity_n_minus_1)
            self.assertTrue(report.dependent)
            self.assertGreaterEqual(report.dependence, 0.99)

    def test_product_entry(self):
        for n in (3, 4):
            entry = product_hk_snk(n - 1, 1.0, n)
            samples = entry.gauss_closed(entry.sample_chart(20, rng()))
            report = detect_radial_structure(entry.metric_field(), samples)
            self.assertTrue(report.two_eigenvalues)
            self.assertTrue(report.multiplicity_n_minus_1)
            self.assertTrue(report.dependent)

    def test_round_metric(self):
        report = detect_radial_structure(ConformalMetricField.constant(3), sphere_points(3, 10))
        self.assertFalse(report.two_eigenvalues)
        self.assertFalse(report.dependent)
        self.assertEqual([(3,)] * 10, report.patterns)

    def test_generic_field(self):
        report = detect_radial_structure(generic_field(3), sphere_points(3, 8))
        self.assertFalse(report.two_eigenvalues)

    def test_too_few_samples(self):
        with self.assertRaises(SpecError):
            detect_radial_structure(radial_bump(3), sphere_points(3, 1))
