"""
The spec module parses metric specifications given on the command line into
conformal metric fields. A specification is a kind followed by its arguments:

- ``round`` and ``constant:t=<t>`` for multiples of the round metric,
- ``<entry>:<key>=<value>,...`` or ``catalog:<entry>:...`` for catalog entries,
- ``expr:<formula>`` for a flat exponent w in stereographic coordinates
  x1, ..., xn and r = |x|, giving g = e^{2w} |dx|^2,
- ``radial-profile:<path>`` for a profile CSV written by the radial solver.
"""

import ast
from pathlib import Path
from typing import Callable, Dict, Optional, Sequence

import numpy as np

from horoconv.catalog import ENTRIES, CatalogEntry, make_entry
from horoconv.conformal.chart import StereoChart, basis_vector
from horoconv.conformal.metric import ConformalMetricField
from horoconv.catalog.entry import MAX_REJECTION_ROUNDS
from horoconv.errors import ExpressionError, NoAdmissibleSamplesError, SpecError
from horoconv.radial.equation import CONVENTIONS
from horoconv.radial.lift import radial_field
from horoconv.radial.profile import RadialProfile

FUNCTIONS: Dict[str, Callable[[np.ndarray], np.ndarray]] = {
    "exp": np.exp,
    "log": np.log,
    "sqrt": np.sqrt,
    "sin": np.sin,
    "cos": np.cos,
    "tan": np.tan,
    "sinh": np.sinh,
    "cosh": np.cosh,
    "tanh": np.tanh,
    "atan": np.arctan,
    "abs": np.abs,
}
CONSTANTS = {"pi": np.pi, "e": np.e}
KINDS = ("round", "constant", "catalog", "expr", "radial-profile")
BINARY = (ast.Add, ast.Sub, ast.Mult, ast.Div, ast.Pow)


def _powers(text: str):
    """
    Replace ^ by ** and map every column of the result back to the input.
    """
    source, columns = [], []
    for column, char in enumerate(text):
        if char == "^":
            source.append("**")
            columns += [column, column]
        else:
            source.append(char)
            columns.append(column)
    columns.append(len(text))
    return "".join(source), columns


class Expression(ast.NodeVisitor):
    """
    A vectorized arithmetic expression in the chart coordinates, restricted to
    numbers, coordinate names, the four operations, powers and FUNCTIONS.
    """

    def __init__(self, text: str, n: int):
        """
        Parse the expression.
        :param str text: The formula, with ^ or ** for powers.
        :param int n: The number of chart coordinates.
        """
        self.text = text
        self.n = n
        self.source, self.columns = _powers(text)
        self.names = {f"x{i}" for i in range(1, n + 1)} | {"r"}
        if not text.strip():
            raise ExpressionError("empty expression", text, 0)
        try:
            self.tree = ast.parse(self.source, mode="eval")
        except SyntaxError as error:
            column = self._column(max((error.offset or 1) - 1, 0))
            raise ExpressionError(f"invalid syntax: {error.msg}", text, column)
        self._values: Dict[str, np.ndarray] = {}
        self._check(self.tree.body)

    def _column(self, offset: int) -> int:
        return self.columns[min(offset, len(self.columns) - 1)]

    def _fail(self, message: str, node: ast.AST):
        column = self._column(getattr(node, "col_offset", 0))
        raise ExpressionError(message, self.text, column)

    def _check(self, node: ast.AST):
        if isinstance(node, ast.Constant):
            if isinstance(node.value, bool) or not isinstance(node.value, (int, float)):
                self._fail(f"unsupported literal {node.value!r}", node)
        elif isinstance(node, ast.Name):
            if node.id not in self.names and node.id not in CONSTANTS:
                self._fail(f"unknown name {node.id!r}", node)
        elif isinstance(node, ast.BinOp):
            if not isinstance(node.op, BINARY):
                self._fail(f"unsupported operator {type(node.op).__name__}", node)
            self._check(node.left)
            self._check(node.right)
        elif isinstance(node, ast.UnaryOp):
            if not isinstance(node.op, (ast.UAdd, ast.USub)):
                self._fail(f"unsupported operator {type(node.op).__name__}", node)
            self._check(node.operand)
        elif isinstance(node, ast.Call):
            if not isinstance(node.func, ast.Name) or node.func.id not in FUNCTIONS:
                self._fail("unknown function", node)
            if len(node.args) != 1 or node.keywords:
                self._fail(f"{node.func.id} takes exactly one argument", node)
            self._check(node.args[0])
        else:
            self._fail(f"unsupported syntax {type(node).__name__}", node)

    def visit_Constant(self, node: ast.Constant):
        return float(node.value)

    def visit_Name(self, node: ast.Name):
        if node.id in CONSTANTS:
            return CONSTANTS[node.id]
        return self._values[node.id]

    def visit_BinOp(self, node: ast.BinOp):
        left, right = self.visit(node.left), self.visit(node.right)
        if isinstance(node.op, ast.Add):
            return left + right
        if isinstance(node.op, ast.Sub):
            return left - right
        if isinstance(node.op, ast.Mult):
            return left * right
        if isinstance(node.op, ast.Div):
            return left / right
        return np.power(left, right)

    def visit_UnaryOp(self, node: ast.UnaryOp):
        value = self.visit(node.operand)
        return -value if isinstance(node.op, ast.USub) else value

    def visit_Call(self, node: ast.Call):
        return FUNCTIONS[node.func.id](self.visit(node.args[0]))

    def __call__(self, coords: np.ndarray) -> np.ndarray:
        """
        Evaluate at chart coordinates of shape (m, n).
        """
        coords = np.atleast_2d(coords)
        self._values = {f"x{i + 1}": coords[:, i] for i in range(self.n)}
        self._values["r"] = np.linalg.norm(coords, axis=1)
        with np.errstate(all="ignore"):
            result = self.visit(self.tree.body)
        return np.broadcast_to(np.asarray(result, dtype=float), (coords.shape[0],)).copy()


def expression_field(
    text: str, n: int, pole: Optional[np.ndarray] = None
) -> ConformalMetricField:
    """
    The field of e^{2w(x)} |dx|^2 for a formula w in stereographic coordinates.
    :param str text: The formula.
    :param int n: The sphere dimension.
    :param Optional[np.ndarray] pole: The pole of the chart, e_{n+1} if omitted.
    :return ConformalMetricField: A field with finite-difference derivatives whose
    domain is the set of finite values away from the pole.
    """
    expression = Expression(text, n)
    chart = StereoChart(basis_vector(n, n + 1) if pole is None else pole, aligned=True)

    def rho(points):
        coords = chart.to_chart_array(points)
        square = np.sum(coords**2, axis=1)
        return expression(coords) + np.log((1 + square) / 2)

    def domain(points):
        away = 1 - points @ chart.pole > 1e-8
        mask = np.zeros(points.shape[0], dtype=bool)
        if np.any(away):
            mask[away] = np.isfinite(rho(points[away]))
        return mask

    return ConformalMetricField(n, rho, domain=domain, name=f"expr({text})")


def parse_params(text: str, kind: str) -> Dict[str, object]:
    """
    Parse ``key=value,...`` with float values; vectors use ``;`` between entries.
    """
    params: Dict[str, object] = {}
    if not text:
        return params
    for item in text.split(","):
        if "=" not in item:
            raise SpecError(f"{kind}: expected key=value, got {item!r}")
        key, value = (part.strip() for part in item.split("=", 1))
        try:
            if ";" in value:
                params[key] = np.array([float(v) for v in value.split(";")])
            else:
                params[key] = float(value)
        except ValueError:
            raise SpecError(f"{kind}: parameter {key} is not a number: {value!r}")
    return params


def parse_pole(text: Optional[str], n: int) -> Optional[np.ndarray]:
    """
    Parse a pole given as ``north``, ``south``, ``e<j>`` or comma separated
    coordinates.
    """
    if text is None:
        return None
    text = text.strip()
    if text == "north":
        return basis_vector(n, n + 1)
    if text == "south":
        return -basis_vector(n, n + 1)
    if text.startswith("e") and text[1:].isdigit():
        index = int(text[1:])
        if not 1 <= index <= n + 1:
            raise SpecError(f"pole e{index} does not exist on S^{n}")
        return basis_vector(n, index)
    try:
        coords = np.array([float(v) for v in text.split(",")])
    except ValueError:
        raise SpecError(f"cannot parse pole {text!r}")
    if coords.size != n + 1 or np.linalg.norm(coords) == 0:
        raise SpecError(f"pole must have {n + 1} coordinates and be nonzero")
    return coords / np.linalg.norm(coords)


def sample_domain(
    f: ConformalMetricField, count: int, rng: np.random.Generator
) -> np.ndarray:
    """
    Uniform points of S^n inside the domain of a field, by rejection.
    """
    if count < 1:
        raise SpecError(f"sample count must be positive, got {count}")
    accepted, total = [], 0
    for _ in range(MAX_REJECTION_ROUNDS):
        batch = rng.standard_normal((2 * count, f.n + 1))
        batch /= np.linalg.norm(batch, axis=1)[:, None]
        batch = batch[f.contains_array(batch)]
        accepted.append(batch)
        total += batch.shape[0]
        if total >= count:
            return np.vstack(accepted)[:count]
    raise NoAdmissibleSamplesError(
        f"rejection sampling in the domain of {f.name} found {total} points"
    )


class MetricSpec:
    """
    A parsed metric specification.
    """

    def __init__(
        self,
        kind: str,
        n: int,
        params: Optional[Dict[str, object]] = None,
        text: str = "",
        entry: Optional[str] = None,
        pole: Optional[np.ndarray] = None,
        convention: str = "raw",
    ):
        if kind not in KINDS:
            raise SpecError(f"unknown metric kind {kind!r}, expected one of {KINDS}")
        if n < 3:
            raise SpecError(f"metrics live on S^n with n >= 3, got n={n}")
        if convention not in CONVENTIONS:
            raise SpecError(f"unknown sigma convention {convention!r}")
        self.kind = kind
        self.n = n
        self.params = dict(params or {})
        self.text = text
        self.entry = entry
        self.pole = pole
        self.convention = convention

    def catalog_entry(self) -> CatalogEntry:
        if self.kind != "catalog":
            raise SpecError(f"a {self.kind} specification has no catalog entry")
        return make_entry(self.entry, self.n, **self.params)

    def sample(
        self, f: ConformalMetricField, count: int, rng: np.random.Generator
    ) -> np.ndarray:
        """
        Seeded sample points inside the domain of the field of this specification:
        Gauss images of parameter samples for catalog entries, uniform points of
        the domain otherwise.
        """
        if self.kind == "catalog":
            entry = self.catalog_entry()
            if not entry.degenerate:
                return entry.gauss_closed(entry.sample_chart(count, rng))
        return sample_domain(f, count, rng)

    def build(self, analytic: bool = True) -> ConformalMetricField:
        """
        The conformal metric field of the specification.
        :param bool analytic: Use closed-form derivatives when available.
        :return ConformalMetricField: The field.
        """
        if self.kind == "round":
            return ConformalMetricField.constant(self.n)
        if self.kind == "constant":
            return ConformalMetricField.constant(self.n, float(self.params["t"]))
        if self.kind == "catalog":
            return self.catalog_entry().metric_field(analytic)
        if self.kind == "expr":
            return expression_field(self.text, self.n, self.pole)
        profile = RadialProfile.read_csv(self.text)
        if profile.n != self.n:
            raise SpecError(f"profile {self.text} has n={profile.n}, expected {self.n}")
        return radial_field(profile)

    def to_dict(self) -> Dict[str, object]:
        document: Dict[str, object] = {
            "kind": self.kind,
            "n": self.n,
            "convention": self.convention,
        }
        if self.entry:
            document["entry"] = self.entry
        if self.params:
            document["params"] = self.params
        if self.text:
            document["text"] = self.text
        if self.pole is not None:
            document["pole"] = self.pole
        return document

    def __repr__(self):
        return f"MetricSpec({self.kind}, n={self.n}, {self.entry or self.text or self.params})"


def parse_metric_spec(
    text: str, n: int, pole: Optional[str] = None, convention: str = "raw"
) -> MetricSpec:
    """
    Parse a metric specification.
    :param str text: The specification.
    :param int n: The sphere dimension.
    :param Optional[str] pole: The chart pole of expression specifications.
    :param str convention: The sigma_k convention reported with the metric.
    :return MetricSpec: The parsed specification.
    """
    kind, _, rest = text.strip().partition(":")
    if kind == "round":
        if rest:
            raise SpecError("round takes no parameters")
        return MetricSpec("round", n, convention=convention)
    if kind == "constant":
        params = parse_params(rest, kind)
        if set(params) != {"t"}:
            raise SpecError("constant needs exactly the parameter t")
        return MetricSpec("constant", n, params, convention=convention)
    if kind == "expr":
        Expression(rest, n)
        return MetricSpec(
            "expr", n, text=rest, pole=parse_pole(pole, n), convention=convention
        )
    if kind == "radial-profile":
        if not rest:
            raise SpecError("radial-profile needs a path")
        return MetricSpec("radial-profile", n, text=str(Path(rest)), convention=convention)
    if kind == "catalog":
        kind, _, rest = rest.partition(":")
    if kind not in ENTRIES:
        raise SpecError(
            f"unknown metric specification {text!r}; kinds are {', '.join(KINDS)} "
            f"and entries {', '.join(sorted(ENTRIES))}"
        )
    spec = MetricSpec("catalog", n, parse_params(rest, kind), entry=kind, convention=convention)
    spec.catalog_entry()
    return spec


def parse_samples(text: str, n: int) -> Sequence[np.ndarray]:
    """
    Parse sphere points separated by ``/`` with comma separated coordinates.
    """
    points = []
    for item in text.split("/"):
        try:
            coords = np.array([float(v) for v in item.split(",")])
        except ValueError:
            raise SpecError(f"cannot parse point {item!r}")
        if coords.size != n + 1 or np.linalg.norm(coords) == 0:
            raise SpecError(f"points of S^{n} need {n + 1} nonzero coordinates")
        points.append(coords / np.linalg.norm(coords))
    return points


__all__ = [
    "FUNCTIONS",
    "CONSTANTS",
    "KINDS",
    "Expression",
    "expression_field",
    "parse_params",
    "parse_pole",
    "sample_domain",
    "MetricSpec",
    "parse_metric_spec",
    "parse_samples",
]
