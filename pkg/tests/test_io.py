import shutil
import unittest

import numpy as np

from horoconv.conformal import ConformalMetricField, eigenvalues_at
from horoconv.correspondence import jet
from horoconv.errors import ExpressionError, NoAdmissibleSamplesError, SpecError
from horoconv.io import (
    VerificationReport,
    export_mesh,
    grid_faces,
    read_obj,
    read_report,
    slice_mesh,
    slice_points,
    write_curve_csv,
    write_jets_csv,
)
from horoconv.io.spec import (
    Expression,
    MetricSpec,
    expression_field,
    parse_metric_spec,
    parse_params,
    parse_pole,
    parse_samples,
)
from horoconv.radial import RadialProfile
from utils import OUT, sphere_points


class TestExpression(unittest.TestCase):
    def test_power_precedence(self):
        expression = Expression("1+r^2", 3)
        np.testing.assert_allclose([2.0, 1.0], expression(np.array([[1, 0, 0], [0, 0, 0]])))
        expression = Expression("2*x1^2 - x3", 3)
        np.testing.assert_allclose([17.0], expression(np.array([[3.0, 5.0, 1.0]])))

    def test_functions_and_constants(self):
        expression = Expression("exp(x2) * cos(pi * x1)", 3)
        np.testing.assert_allclose([np.e], expression(np.array([[0.0, 1.0, 0.0]])))

    def test_constant_broadcast(self):
        self.assertEqual((4,), Expression("0", 3)(np.zeros((4, 3))).shape)

    def test_errors(self):
        with self.assertRaises(ExpressionError) as context:
            Expression("x1+", 3)
        self.assertIsNotNone(context.exception.column)
        with self.assertRaises(ExpressionError) as context:
            Expression("x4 + 1", 3)
        self.assertEqual(0, context.exception.column)
        with self.assertRaises(ExpressionError) as context:
            Expression("1 + foo(x1)", 3)
        self.assertEqual(4, context.exception.column)
        with self.assertRaises(ExpressionError):
            Expression("x1 % 2", 3)
        with self.assertRaises(ExpressionError):
            Expression("exp(x1, x2)", 3)
        with self.assertRaises(ExpressionError):
            Expression("  ", 3)

    def test_flat_field(self):
        f = expression_field("0", 3)
        points = sphere_points(3, 40)
        points = points[points[:, -1] < 0.5][:10]
        np.testing.assert_allclose(0.0, eigenvalues_at(f, points), atol=1e-5)

    def test_flat_field_misses_pole(self):
        f = expression_field("x1", 3)
        self.assertFalse(f.contains(np.array([0.0, 0.0, 0.0, 1.0])))
        self.assertTrue(f.contains(np.array([0.0, 0.0, 0.0, -1.0])))


class TestSpecParsing(unittest.TestCase):
    def test_parse_params(self):
        self.assertEqual({"r": 1.0, "t": 2.0}, parse_params("r=1, t=2", "test"))
        params = parse_params("x0=1;0;0;0", "test")
        np.testing.assert_allclose([1, 0, 0, 0], params["x0"])
        self.assertEqual({}, parse_params("", "test"))
        with self.assertRaises(SpecError):
            parse_params("r", "test")
        with self.assertRaises(SpecError):
            parse_params("r=one", "test")

    def test_parse_pole(self):
        self.assertIsNone(parse_pole(None, 3))
        np.testing.assert_allclose([0, 0, 0, 1], parse_pole("north", 3))
        np.testing.assert_allclose([0, 0, 0, -1], parse_pole("south", 3))
        np.testing.assert_allclose([0, 1, 0, 0], parse_pole("e2", 3))
        np.testing.assert_allclose([1, 1, 0, 0] / np.sqrt(2), parse_pole("1,1,0,0", 3))
        for text in ("e5", "1,2", "0,0,0,0", "up"):
            with self.assertRaises(SpecError):
                parse_pole(text, 3)

    def test_parse_samples(self):
        points = parse_samples("1,0,0,0/0,0,0,2", 3)
        self.assertEqual(2, len(points))
        np.testing.assert_allclose([0, 0, 0, 1], points[1])
        with self.assertRaises(SpecError):
            parse_samples("1,0", 3)
        with self.assertRaises(SpecError):
            parse_samples("a,b,c,d", 3)

    def test_round_and_constant(self):
        spec = parse_metric_spec("round", 3)
        self.assertEqual("round", spec.kind)
        self.assertEqual(0.0, spec.build()(np.array([1.0, 0, 0, 0])))
        spec = parse_metric_spec("constant:t=1", 3)
        self.assertEqual(1.0, spec.build()(np.array([1.0, 0, 0, 0])))
        with self.assertRaises(SpecError):
            parse_metric_spec("round:t=1", 3)
        with self.assertRaises(SpecError):
            parse_metric_spec("constant:r=1", 3)

    def test_catalog(self):
        spec = parse_metric_spec("totally-geodesic:r=1", 3)
        self.assertEqual("catalog", spec.kind)
        self.assertEqual("totally-geodesic", spec.entry)
        spec = parse_metric_spec("catalog:product:k=1,r=1", 4)
        self.assertEqual("product", spec.entry)
        self.assertEqual(1, spec.catalog_entry().k)
        self.assertIsInstance(spec.build(), ConformalMetricField)
        with self.assertRaises(SpecError):
            parse_metric_spec("nosuch:r=1", 3)
        with self.assertRaises(SpecError):
            parse_metric_spec("equidistant:r=1", 3)

    def test_expression_and_profile(self):
        spec = parse_metric_spec("expr:0.1*x1", 3, pole="south")
        self.assertEqual("expr", spec.kind)
        np.testing.assert_allclose([0, 0, 0, -1], spec.pole)
        with self.assertRaises(ExpressionError):
            parse_metric_spec("expr:x1+", 3)
        with self.assertRaises(SpecError):
            parse_metric_spec("radial-profile:", 3)
        with self.assertRaises(SpecError):
            parse_metric_spec("radial-profile:missing.csv", 3).build()

    def test_metric_spec_errors(self):
        with self.assertRaises(SpecError):
            MetricSpec("bogus", 3)
        with self.assertRaises(SpecError):
            MetricSpec("round", 2)
        with self.assertRaises(SpecError):
            MetricSpec("round", 3, convention="scaled")
        with self.assertRaises(SpecError):
            MetricSpec("round", 3).catalog_entry()

    def test_to_dict(self):
        document = parse_metric_spec("geodesic-sphere:t=0.5", 3).to_dict()
        self.assertEqual("catalog", document["kind"])
        self.assertEqual("geodesic-sphere", document["entry"])
        self.assertEqual({"t": 0.5}, document["params"])


class TestMesh(unittest.TestCase):
    def tearDown(self):
        shutil.rmtree(OUT, ignore_errors=True)

    def test_obj(self):
        vertices = np.array([[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]])
        path = export_mesh(vertices, [[0, 1, 2]], OUT / "triangle.obj")
        with path.open() as fp:
            lines = fp.read().splitlines()
        self.assertTrue(lines[0].startswith("#"))
        self.assertEqual("v 1 0 0", lines[2])
        self.assertEqual("f 1 2 3", lines[-1])
        read_vertices, read_faces = read_obj(path)
        np.testing.assert_allclose(vertices, read_vertices)
        np.testing.assert_array_equal([[0, 1, 2]], read_faces)

    def test_ply(self):
        vertices = np.eye(3)
        path = export_mesh(vertices, [[0, 1, 2]], OUT / "triangle.mesh", fmt="ply")
        with path.open() as fp:
            lines = fp.read().splitlines()
        self.assertEqual("ply", lines[0])
        self.assertIn("element vertex 3", lines)
        self.assertIn("element face 1", lines)
        self.assertEqual("3 0 1 2", lines[-1])

    def test_empty_mesh(self):
        path = export_mesh(np.zeros((0, 3)), np.zeros((0, 3)), OUT / "empty.obj")
        vertices, faces = read_obj(path)
        self.assertEqual((0, 3), vertices.shape)
        self.assertEqual((0, 3), faces.shape)

    def test_mesh_errors(self):
        with self.assertRaises(SpecError):
            export_mesh(np.eye(3), [[0, 1, 3]], OUT / "bad.obj")
        with self.assertRaises(SpecError):
            export_mesh(np.eye(3), [[0, 1, 2]], OUT / "bad.stl")

    def test_grid_faces(self):
        self.assertEqual((2 * 4 * 2, 3), grid_faces(3, 4).shape)
        self.assertEqual((2 * 3 * 2, 3), grid_faces(3, 4, wrap=False).shape)
        self.assertEqual(11, grid_faces(3, 4).max())

    def test_slice_points(self):
        points = slice_points(4, 3, 5)
        self.assertEqual((15, 5), points.shape)
        np.testing.assert_allclose(1.0, np.linalg.norm(points, axis=1))
        np.testing.assert_allclose(0.0, points[:, 3:])
        points = slice_points(4, 3, 5, fixed=[0.6, 0.0])
        np.testing.assert_allclose(0.6, points[:, 3])
        with self.assertRaises(SpecError):
            slice_points(3, 3, 5, axes=(1, 1, 2))
        with self.assertRaises(SpecError):
            slice_points(3, 1, 5)
        with self.assertRaises(SpecError):
            slice_points(3, 3, 5, fixed=[1.0])
        with self.assertRaises(SpecError):
            slice_points(4, 3, 5, fixed=[0.1])

    def test_slice_mesh_geodesic_sphere(self):
        mesh = slice_mesh(ConformalMetricField.constant(3, 1.0), grid=(6, 8))
        self.assertEqual((48, 3), mesh.vertices.shape)
        self.assertEqual((80, 3), mesh.faces.shape)
        np.testing.assert_allclose(np.tanh(0.5), np.linalg.norm(mesh.vertices, axis=1))
        self.assertAlmostEqual(np.tanh(0.5), mesh.max_ball_radius)
        path = mesh.export(OUT / "sphere.obj")
        self.assertEqual(48, read_obj(path)[0].shape[0])

    def test_slice_mesh_outside_domain(self):
        f = ConformalMetricField.constant(3, 1.0)
        f.domain = lambda points: points[:, -1] > 0.5
        with self.assertRaises(NoAdmissibleSamplesError):
            slice_mesh(f, grid=(4, 6))

    def test_jets_csv(self):
        f = ConformalMetricField.constant(3, 1.0)
        jets = [jet(f, x) for x in sphere_points(3, 3)]
        path = write_jets_csv(jets, OUT / "jets.csv")
        with path.open() as fp:
            lines = fp.read().splitlines()
        self.assertEqual(4, len(lines))
        header = lines[0].split(",")
        self.assertEqual(4 + 1 + 5 + 5 + 3 + 3, len(header))
        self.assertEqual("rho", header[4])
        self.assertEqual(1.0, float(lines[1].split(",")[4]))

    def test_curve_csv(self):
        profile = RadialProfile.round(3, 1, np.linspace(-1, 1, 11))
        rows = [[str(s), "0", "0", "0"] for s in profile.s]
        path = write_curve_csv(rows, OUT / "curve.csv")
        with path.open() as fp:
            lines = fp.read().splitlines()
        self.assertEqual("s,distance,axial,arc", lines[0])
        self.assertEqual(12, len(lines))


class TestReport(unittest.TestCase):
    def tearDown(self):
        shutil.rmtree(OUT, ignore_errors=True)

    def test_checks(self):
        report = VerificationReport("unit", {"kind": "round"})
        report.add_check("residual", 1e-12, 1e-9, 10, seed=7)
        self.assertTrue(report.passed)
        report.add_check("margin", 0.2, 0.5, 10, at_least=True)
        self.assertFalse(report.passed)
        self.assertEqual(["margin"], [record.name for record in report.failures()])

    def test_render_and_read(self):
        report = VerificationReport("unit")
        report.add_check("residual", np.float64(1e-12), 1e-9, 3)
        report.adjudicate("horosphere-type", np.bool_(True))
        report.add_value("lambdas", np.array([0.1, 0.2]), 1e-9)
        text = report.render()
        self.assertTrue(text.startswith("horoconv-report/1\n"))
        self.assertEqual(text, report.render())
        document = read_report(report.write(OUT / "unit.report"))
        self.assertTrue(document["passed"])
        self.assertEqual("horoconv", document["tool"]["name"])
        self.assertIs(True, document["adjudications"]["horosphere-type"])
        self.assertEqual([0.1, 0.2], document["values"]["lambdas"]["value"])

    def test_read_foreign_file(self):
        OUT.mkdir(parents=True, exist_ok=True)
        path = OUT / "foreign.report"
        path.write_text("{}\n")
        with self.assertRaises(ValueError):
            read_report(path)
