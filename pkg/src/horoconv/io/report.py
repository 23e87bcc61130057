"""
The report module provides the verification reports written by the command line
interface: a versioned header line followed by a JSON document with sorted keys,
so that identical inputs give byte-identical files.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, List, Optional

import numpy as np
from multiset import BaseMultiset

from horoconv.constants import REPORT_HEADER, VERSION


def plain(value: Any) -> Any:
    """
    Convert numpy values and multisets into JSON-compatible structures.
    """
    if isinstance(value, dict):
        return {str(key): plain(item) for key, item in value.items()}
    if isinstance(value, BaseMultiset):
        return [[plain(item), count] for item, count in sorted(value.items())]
    if isinstance(value, (list, tuple)):
        return [plain(item) for item in value]
    if isinstance(value, np.ndarray):
        return plain(value.tolist())
    if isinstance(value, np.bool_):
        return bool(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.floating):
        return float(value)
    if isinstance(value, Path):
        return str(value)
    return value


class CheckRecord:
    """
    The outcome of one check: the maximal residual over all samples judged
    against a tolerance.
    """

    def __init__(
        self,
        name: str,
        residual: float,
        tolerance: float,
        samples: int,
        seed: Optional[int] = None,
        at_least: bool = False,
    ):
        """
        Initialize the record.
        :param str name: The name of the check.
        :param float residual: The maximal residual, or the minimal margin when
        at_least is set.
        :param float tolerance: The tolerance.
        :param int samples: The number of samples the check ran on.
        :param Optional[int] seed: The seed of the samples.
        :param bool at_least: Pass when residual > tolerance instead of <=.
        """
        self.name = name
        self.residual = float(residual)
        self.tolerance = float(tolerance)
        self.samples = int(samples)
        self.seed = seed
        self.at_least = at_least
        if at_least:
            self.passed = bool(self.residual > self.tolerance)
        else:
            self.passed = bool(self.residual <= self.tolerance)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "max-residual" if not self.at_least else "min-margin": self.residual,
            "tolerance": self.tolerance,
            "passed": self.passed,
            "samples": self.samples,
            "seed": self.seed,
        }

    def __repr__(self):
        verdict = "pass" if self.passed else "FAIL"
        return f"{self.name}[{self.residual:.3e} / {self.tolerance:.1e} {verdict}]"


class VerificationReport:
    """
    A collection of check records, adjudications and measured values.
    """

    def __init__(self, subject: str, spec: Optional[Dict[str, Any]] = None):
        """
        Initialize the report.
        :param str subject: What the report is about.
        :param spec: The echo of the input specification.
        """
        self.subject = subject
        self.spec = dict(spec or {})
        self.records: List[CheckRecord] = []
        self.adjudications: Dict[str, Any] = {}
        self.values: Dict[str, Any] = {}
        self.timing: Optional[float] = None

    def add_check(
        self,
        name: str,
        residual: float,
        tolerance: float,
        samples: int,
        seed: Optional[int] = None,
        at_least: bool = False,
    ) -> CheckRecord:
        record = CheckRecord(name, residual, tolerance, samples, seed, at_least)
        self.records.append(record)
        return record

    def adjudicate(self, name: str, value: Any):
        self.adjudications[name] = value

    def add_value(self, name: str, value: Any, tolerance: Optional[float] = None):
        """
        Record a measured value with the tolerance it was computed to.
        """
        self.values[name] = {"value": value, "tolerance": tolerance}

    @property
    def passed(self) -> bool:
        return all(record.passed for record in self.records)

    def failures(self) -> List[CheckRecord]:
        return [record for record in self.records if not record.passed]

    def to_dict(self) -> Dict[str, Any]:
        document = {
            "tool": {"name": "horoconv", "version": VERSION},
            "subject": self.subject,
            "spec": self.spec,
            "passed": self.passed,
            "checks": [record.to_dict() for record in self.records],
            "adjudications": self.adjudications,
            "values": self.values,
        }
        if self.timing is not None:
            document["timing"] = {"seconds": self.timing}
        return plain(document)

    def render(self) -> str:
        return REPORT_HEADER + "\n" + json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    def write(self, path: os.PathLike) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w") as fp:
            fp.write(self.render())
        return path

    def __repr__(self):
        verdict = "pass" if self.passed else "FAIL"
        return f"Report({self.subject}, {len(self.records)} checks, {verdict})"


def read_report(path: os.PathLike) -> Dict[str, Any]:
    """
    Load a report written by VerificationReport.write.
    """
    with Path(path).open("r") as fp:
        header = fp.readline().strip()
        if header != REPORT_HEADER:
            raise ValueError(f"{path} is not a {REPORT_HEADER} document")
        return json.load(fp)


__all__ = ["plain", "CheckRecord", "VerificationReport", "read_report"]
