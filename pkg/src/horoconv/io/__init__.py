"""
The io module provides the versioned verification reports, mesh export and the
CSV side files. Metric specifications are parsed in horoconv.io.spec.
"""

from horoconv.io.mesh import (
    FORMATS,
    SliceMesh,
    export_mesh,
    grid_faces,
    read_obj,
    slice_mesh,
    slice_points,
    write_curve_csv,
    write_jets_csv,
)
from horoconv.io.report import CheckRecord, VerificationReport, plain, read_report

__all__ = [
    "FORMATS",
    "SliceMesh",
    "export_mesh",
    "grid_faces",
    "read_obj",
    "slice_mesh",
    "slice_points",
    "write_curve_csv",
    "write_jets_csv",
    "CheckRecord",
    "VerificationReport",
    "plain",
    "read_report",
]
