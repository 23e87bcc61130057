"""
The mesh module triangulates hypersurfaces in Poincare-ball coordinates and
writes them as OBJ or ascii PLY files, together with the CSV side files of jets
and profile curves.
"""

import csv
import os
from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from horoconv.conformal.metric import ConformalMetricField
from horoconv.correspondence.hypersurface import HypersurfaceJet, jet
from horoconv.errors import NoAdmissibleSamplesError, SpecError
from horoconv.lorentz.vector import poincare_array

FORMATS = ("obj", "ply")
SLICE_GRID = (24, 48)
SLICE_AXES = (1, 2, 3)


def grid_faces(rows: int, cols: int, wrap: bool = True) -> np.ndarray:
    """
    Two triangles per cell of a rows x cols vertex grid stored row by row.
    :param int rows: The number of rows.
    :param int cols: The number of columns.
    :param bool wrap: Close the grid between the last and the first column.
    :return np.ndarray: 0-based triangles, shape (m, 3).
    """
    faces = []
    for i in range(rows - 1):
        for j in range(cols if wrap else cols - 1):
            a, b = i * cols + j, i * cols + (j + 1) % cols
            c, d = a + cols, b + cols
            faces += [(a, c, d), (a, d, b)]
    return np.array(faces, dtype=int).reshape(-1, 3)


def restrict(vertices: np.ndarray, faces: np.ndarray, mask: np.ndarray):
    """
    Drop masked-out vertices and every face touching one, renumbering the rest.
    """
    index = np.full(mask.size, -1)
    index[mask] = np.arange(int(np.sum(mask)))
    kept = faces[np.all(mask[faces], axis=1)] if faces.size else faces
    return vertices[mask], index[kept].reshape(-1, 3)


def _check_mesh(vertices: np.ndarray, faces: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    vertices = np.asarray(vertices, dtype=float).reshape(-1, 3)
    faces = np.asarray(faces, dtype=int).reshape(-1, 3)
    if faces.size and (faces.min() < 0 or faces.max() >= vertices.shape[0]):
        raise SpecError(
            f"face index out of range for {vertices.shape[0]} vertices: "
            f"[{faces.min()}, {faces.max()}]"
        )
    return vertices, faces


def export_mesh(
    vertices: np.ndarray,
    faces: np.ndarray,
    path: os.PathLike,
    fmt: Optional[str] = None,
) -> Path:
    """
    Write a triangle mesh.
    :param np.ndarray vertices: The vertices, shape (m, 3).
    :param np.ndarray faces: 0-based triangles, shape (k, 3).
    :param os.PathLike path: The output file.
    :param Optional[str] fmt: obj or ply, taken from the suffix if omitted.
    :return Path: The written file.
    """
    path = Path(path)
    fmt = (fmt or path.suffix.lstrip(".") or "obj").lower()
    if fmt not in FORMATS:
        raise SpecError(f"unknown mesh format {fmt!r}, expected one of {FORMATS}")
    vertices, faces = _check_mesh(vertices, faces)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="\n") as fp:
        if fmt == "obj":
            fp.write(f"# horoconv mesh: {vertices.shape[0]} vertices, {faces.shape[0]} faces\n")
            for vertex in vertices:
                fp.write("v " + " ".join(format(float(c), ".17g") for c in vertex) + "\n")
            for face in faces:
                fp.write("f " + " ".join(str(int(i) + 1) for i in face) + "\n")
        else:
            fp.write(
                "ply\nformat ascii 1.0\ncomment horoconv mesh\n"
                f"element vertex {vertices.shape[0]}\n"
                "property double x\nproperty double y\nproperty double z\n"
                f"element face {faces.shape[0]}\n"
                "property list uchar int vertex_indices\nend_header\n"
            )
            for vertex in vertices:
                fp.write(" ".join(format(float(c), ".17g") for c in vertex) + "\n")
            for face in faces:
                fp.write("3 " + " ".join(str(int(i)) for i in face) + "\n")
    return path


def read_obj(path: os.PathLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Read the vertices and 0-based triangles of an OBJ file.
    """
    vertices, faces = [], []
    with Path(path).open("r") as fp:
        for line in fp:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                vertices.append([float(c) for c in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(c.split("/")[0]) - 1 for c in parts[1:4]])
    return np.array(vertices).reshape(-1, 3), np.array(faces, dtype=int).reshape(-1, 3)


def slice_points(
    n: int,
    rows: int,
    cols: int,
    axes: Sequence[int] = SLICE_AXES,
    fixed: Optional[Sequence[float]] = None,
) -> np.ndarray:
    """
    A latitude-longitude grid on the 2-sphere slice of S^n that fixes the
    coordinates off the three slice axes.
    :param int n: The sphere dimension.
    :param int rows: The number of latitudes, poles excluded.
    :param int cols: The number of longitudes.
    :param axes: Three distinct 1-based coordinate indices.
    :param fixed: The values of the remaining n-2 coordinates, 0 if omitted.
    :return np.ndarray: Sphere points of shape (rows * cols, n+1).
    """
    axes = [int(a) for a in axes]
    if len(set(axes)) != 3 or min(axes) < 1 or max(axes) > n + 1:
        raise SpecError(f"slice needs three distinct axes in 1..{n + 1}, got {axes}")
    if rows < 2 or cols < 3:
        raise SpecError(f"slice grid needs at least 2 x 3 points, got {rows} x {cols}")
    others = [i for i in range(1, n + 2) if i not in axes]
    fixed = np.zeros(len(others)) if fixed is None else np.asarray(fixed, dtype=float)
    if fixed.size != len(others):
        raise SpecError(f"slice fixes {len(others)} coordinates, got {fixed.size} values")
    scale = 1.0 - float(np.dot(fixed, fixed))
    if scale <= 0:
        raise SpecError("fixed slice coordinates must lie inside the unit ball")
    polar = np.linspace(0, np.pi, rows + 2)[1:-1]
    azimuth = np.linspace(0, 2 * np.pi, cols, endpoint=False)
    b, a = np.meshgrid(polar, azimuth, indexing="ij")
    sphere = np.stack([np.sin(b) * np.cos(a), np.sin(b) * np.sin(a), np.cos(b)], axis=-1)
    points = np.zeros((rows * cols, n + 1))
    points[:, [i - 1 for i in axes]] = np.sqrt(scale) * sphere.reshape(-1, 3)
    if others:
        points[:, [i - 1 for i in others]] = fixed
    return points


class SliceMesh:
    """
    The hypersurface over a 2-sphere slice, triangulated in Poincare-ball
    coordinates of the slice axes.
    """

    def __init__(
        self,
        vertices: np.ndarray,
        faces: np.ndarray,
        jets: List[HypersurfaceJet],
        grid: Tuple[int, int],
    ):
        self.vertices = vertices
        self.faces = faces
        self.jets = jets
        self.grid = grid

    @property
    def max_ball_radius(self) -> float:
        if self.vertices.size == 0:
            return 0.0
        return float(np.max(np.linalg.norm(self.vertices, axis=1)))

    def export(self, path: os.PathLike, fmt: Optional[str] = None) -> Path:
        return export_mesh(self.vertices, self.faces, path, fmt)

    def __repr__(self):
        return f"SliceMesh({self.vertices.shape[0]} vertices, {self.faces.shape[0]} faces)"


def slice_mesh(
    f: ConformalMetricField,
    grid: Tuple[int, int] = SLICE_GRID,
    axes: Sequence[int] = SLICE_AXES,
    fixed: Optional[Sequence[float]] = None,
    tolerance: Optional[float] = None,
) -> SliceMesh:
    """
    Build the hypersurface of a field over a 2-sphere slice of its domain.
    :param ConformalMetricField f: The field, eigenvalues below 1/2.
    :param grid: The number of latitudes and longitudes.
    :param axes: The slice axes, also the axes of the ball coordinates.
    :param fixed: The values of the remaining sphere coordinates.
    :param Optional[float] tolerance: The dictionary tolerance of the jets.
    :return SliceMesh: Vertices, faces and jets of the points inside the domain.
    """
    rows, cols = grid
    points = slice_points(f.n, rows, cols, axes, fixed)
    mask = f.contains_array(points)
    if not np.any(mask):
        raise NoAdmissibleSamplesError(f"the slice misses the domain of {f.name}")
    jets = [jet(f, x, tolerance=tolerance) for x in points[mask]]
    ball = poincare_array(np.array([j.phi.coords for j in jets]))
    vertices = np.zeros((points.shape[0], 3))
    vertices[mask] = ball[:, [i - 1 for i in axes]]
    vertices, faces = restrict(vertices, grid_faces(rows, cols), mask)
    return SliceMesh(vertices, faces, jets, (rows, cols))


def write_jets_csv(jets: Iterable[HypersurfaceJet], path: os.PathLike) -> Path:
    """
    Write one row per jet: x, rho, phi, eta, kappas and lambdas.
    """
    jets = list(jets)
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fp:
        writer = csv.writer(fp)
        if not jets:
            writer.writerow(["x", "rho", "phi", "eta", "kappa", "lambda"])
            return path
        n = jets[0].n
        writer.writerow(
            [f"x{i}" for i in range(n + 1)]
            + ["rho"]
            + [f"phi{i}" for i in range(n + 2)]
            + [f"eta{i}" for i in range(n + 2)]
            + [f"kappa{i + 1}" for i in range(n)]
            + [f"lambda{i + 1}" for i in range(n)]
        )
        for item in jets:
            values = np.concatenate(
                [item.x, [item.rho], item.phi.coords, item.eta.coords, item.kappas, item.lambdas]
            )
            writer.writerow([format(float(v), ".17g") for v in values])
    return path


def write_curve_csv(rows: Iterable[Sequence[str]], path: os.PathLike) -> Path:
    """
    Write the profile curve of a rotational hypersurface.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fp:
        writer = csv.writer(fp)
        writer.writerow(["s", "distance", "axial", "arc"])
        writer.writerows(rows)
    return path


__all__ = [
    "FORMATS",
    "SLICE_GRID",
    "SLICE_AXES",
    "grid_faces",
    "restrict",
    "export_mesh",
    "read_obj",
    "slice_points",
    "SliceMesh",
    "slice_mesh",
    "write_jets_csv",
    "write_curve_csv",
]
