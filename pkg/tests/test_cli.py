import io
import shutil
import sys
import unittest

import numpy as np

from horoconv.cli import main
from horoconv.io import read_obj, read_report
from horoconv.radial import RadialProfile
from utils import OUT


class CLITestCase(unittest.TestCase):
    def setUp(self):
        self.stdout, self.stderr = sys.stdout, sys.stderr
        self.out, self.err = io.StringIO(), io.StringIO()

    def tearDown(self):
        sys.stdout, sys.stderr = self.stdout, self.stderr
        shutil.rmtree(OUT, ignore_errors=True)

    def run_cli(self, *args: str) -> int:
        return main(*args, "-o", str(OUT), "-q", stdout=self.out, stderr=self.err)


class TestVerifyCatalog(CLITestCase):
    def test_single_instance(self):
        code = self.run_cli(
            "verify-catalog", "--entry", "totally-geodesic", "--r", "1", "--samples", "10"
        )
        self.assertEqual(0, code)
        report = read_report(OUT / "verify-catalog" / "totally-geodesic-00.report")
        self.assertTrue(report["passed"])
        self.assertIn("pass", self.out.getvalue())

    def test_unknown_entry(self):
        self.assertEqual(2, self.run_cli("verify-catalog", "--entry", "nosuch"))
        self.assertIn("nosuch", self.err.getvalue())

    def test_bad_arguments(self):
        self.assertEqual(2, self.run_cli("verify-catalog", "--samples", "many"))
        self.assertEqual(2, self.run_cli("no-such-command"))


class TestCorrespond(CLITestCase):
    def test_round_needs_dilation(self):
        self.assertEqual(4, self.run_cli("correspond", "round", "--grid", "4x6"))
        self.assertEqual(0, self.run_cli("correspond", "round", "--grid", "4x6", "--dilate"))
        report = read_report(OUT / "correspond.report")
        self.assertGreater(report["values"]["dilation"]["value"], 0)

    def test_geodesic_sphere_mesh(self):
        code = self.run_cli("correspond", "constant:t=1", "--grid", "6x8")
        self.assertEqual(0, code)
        vertices, faces = read_obj(OUT / "mesh.obj")
        self.assertEqual((48, 3), vertices.shape)
        self.assertEqual((80, 3), faces.shape)
        np.testing.assert_allclose(np.tanh(0.5), np.linalg.norm(vertices, axis=1))
        self.assertTrue((OUT / "jets.csv").exists())
        self.assertTrue(read_report(OUT / "correspond.report")["passed"])

    def test_export_mesh(self):
        code = self.run_cli(
            "export-mesh", "constant:t=1", "--grid", "4x6", "--format", "ply"
        )
        self.assertEqual(0, code)
        with (OUT / "mesh.ply").open() as fp:
            self.assertEqual("ply", fp.readline().strip())


class TestAnalyze(CLITestCase):
    def test_flat_expression(self):
        code = self.run_cli(
            "analyze", "expr:0", "--points", "1,0,0,0/0,1,0,0/0,0,0,-1/0.6,0,0,-0.8"
        )
        self.assertEqual(0, code)
        report = read_report(OUT / "analyze.report")
        self.assertAlmostEqual(0.0, report["values"]["sup-lambda"]["value"], delta=1e-5)
        self.assertEqual(0.0, report["values"]["dilation-needed"]["value"])

    def test_catalog_entry(self):
        code = self.run_cli("analyze", "product:k=1,r=1", "--samples", "10")
        self.assertEqual(0, code)
        report = read_report(OUT / "analyze.report")
        root = np.sqrt(2)
        np.testing.assert_allclose(
            [-1.5 + root, 1.5 - root, 1.5 - root],
            report["values"]["eigenvalue-max"]["value"],
            atol=1e-8,
        )

    def test_invalid_expression(self):
        self.assertEqual(2, self.run_cli("analyze", "expr:x1+"))
        self.assertIn("x1+", self.err.getvalue())


class TestInvariance(CLITestCase):
    def test_geodesic_sphere(self):
        code = self.run_cli(
            "invariance",
            "constant:t=1",
            "--generators",
            "rot(1,2)",
            "boost(1)",
            "--values",
            "0.3",
        )
        self.assertEqual(0, code)
        report = read_report(OUT / "invariance.report")
        self.assertIs(True, report["adjudications"]["rot(1,2)"])
        self.assertIs(False, report["adjudications"]["boost(1)"])

    def test_round_needs_dilation(self):
        self.assertEqual(4, self.run_cli("invariance", "round"))


class TestRadial(CLITestCase):
    def test_constant_branch(self):
        self.assertEqual(0, self.run_cli("radial", "--k", "1", "--branch", "constant"))
        profile = RadialProfile.read_csv(OUT / "radial-constant.csv")
        self.assertEqual((3, 1), (profile.n, profile.k))
        self.assertAlmostEqual(1.5, profile.c_raw)
        self.assertTrue(read_report(OUT / "radial.report")["passed"])

    def test_delaunay_branch(self):
        code = self.run_cli(
            "radial", "--k", "1", "--branch", "delaunay", "--perturb", "0.3", "--span", "40"
        )
        self.assertEqual(0, code)
        report = read_report(OUT / "radial.report")
        period = report["values"]["delaunay-0.3-period"]["value"]
        self.assertIsNotNone(period["period"])
        self.assertGreater(period["period"], 2 * np.pi - 0.5)

    def test_sigma_tolerance_fails_report(self):
        code = self.run_cli(
            "radial", "--k", "1", "--branch", "delaunay", "--perturb", "0.3", "--span", "10",
            "--tol", "1e-300",
        )
        self.assertEqual(3, code)
        report = read_report(OUT / "radial.report")
        self.assertFalse(report["passed"])

    def test_order_out_of_range(self):
        self.assertEqual(2, self.run_cli("radial", "--k", "4"))
