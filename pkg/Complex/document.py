import json
import logging
from dataclasses import dataclass, field

import pandas as pd

from Complex.realization import PLMap
from Complex.simplicial import AbstractSimplex, SimplicialComplex, sorted_simplices
from Geometry.affine import PointSet
from Geometry.errors import MissingVertexValue, ParseError
from Geometry.linalg import RATIONAL_PATTERN, Vector, format_scalar, parse_scalar

logger = logging.getLogger(__name__)

SCX_SUFFIX = ".scx"
TOP_LEVEL_KEYS = ("ambient_dim", "vertices", "simplices", "values")
REQUIRED_KEYS = ("ambient_dim", "vertices", "simplices")


# --- Documents ---
@dataclass(frozen=True)
class ComplexDocument:
    """
    In-memory form of a .scx file: vertex coordinates, the simplex list and
    optional PL map values. Simplices are kept in canonical order.
    """
    ambient_dim: int
    vertices: dict
    simplices: tuple
    values: dict = field(default=None)

    def __post_init__(self):
        object.__setattr__(self, "simplices", tuple(sorted_simplices(self.simplices)))


# --- JSON decoding ---
class _Members(dict):
    """
    JSON object that remembers keys given more than once.
    """

    def __init__(self, pairs):
        super().__init__()
        self.duplicates = []
        for key, value in pairs:
            if key in self and key not in self.duplicates:
                self.duplicates.append(key)
            self[key] = value


def _check_duplicates(obj, path=None):
    duplicates = getattr(obj, "duplicates", ())
    if duplicates:
        key = duplicates[0]
        raise ParseError(f"{path}.{key}" if path else key, f"duplicate key {key!r}")


def _decode(data):
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as e:
        prefix = data[:e.start]
        line = prefix.count(b"\n") + 1
        column = e.start - (prefix.rfind(b"\n") + 1) + 1
        raise ParseError((line, column), f"invalid UTF-8 byte 0x{data[e.start]:02x}") from None


# --- Parsing ---
def _rational_list(items, path, length=None):
    if not isinstance(items, list) or not items:
        raise ParseError(path, "expected a nonempty list of rational literals")
    if length is not None and len(items) != length:
        raise ParseError(path, f"expected {length} coordinates, got {len(items)}")
    return Vector(parse_scalar(item, f"{path}[{i}]") for i, item in enumerate(items))


def _parse_vertices(raw, ambient_dim):
    if not isinstance(raw, dict) or not raw:
        raise ParseError("vertices", "expected a nonempty object of label -> coordinates")
    _check_duplicates(raw, "vertices")
    vertices = {}
    for label, coords in raw.items():
        if not label:
            raise ParseError("vertices", "empty vertex label")
        vertices[label] = _rational_list(coords, f"vertices.{label}", ambient_dim)
    return vertices


def _parse_simplices(raw, vertices):
    if not isinstance(raw, list):
        raise ParseError("simplices", "expected a list of label lists")
    if not raw:
        raise ParseError("simplices", "a simplicial complex needs at least one simplex")
    simplices = []
    for i, entry in enumerate(raw):
        path = f"simplices[{i}]"
        if not isinstance(entry, list) or not entry:
            raise ParseError(path, "expected a nonempty list of vertex labels")
        for j, label in enumerate(entry):
            if not isinstance(label, str):
                raise ParseError(f"{path}[{j}]", f"expected a vertex label, got {label!r}")
            if label not in vertices:
                raise ParseError(f"{path}[{j}]", f"unknown vertex {label!r}")
        if len(set(entry)) != len(entry):
            raise ParseError(path, "repeated vertex label")
        simplex = AbstractSimplex(tuple(entry))
        if simplex in simplices:
            raise ParseError(path, f"duplicate simplex {simplex}")
        simplices.append(simplex)
    return simplices


def _parse_values(raw, vertices):
    if not isinstance(raw, dict):
        raise ParseError("values", "expected an object of label -> value")
    _check_duplicates(raw, "values")
    values = {}
    lengths = set()
    for label, value in raw.items():
        path = f"values.{label}"
        if label not in vertices:
            raise ParseError(path, f"value given for unknown vertex {label!r}")
        if isinstance(value, list):
            values[label] = _rational_list(value, path)
            lengths.add(len(value))
        else:
            values[label] = parse_scalar(value, path)
            lengths.add(None)
    if len(lengths) > 1:
        raise ParseError("values", "values mix scalars and vectors of different lengths")
    return values


def parse_document(text):
    """
    Strict parse of .scx text (JSON syntax with rational-string literals).
    Syntax errors carry (line, column); structural errors a dotted path.
    Args:
        text: Document text, or raw bytes that must be valid UTF-8.
    """
    if isinstance(text, bytes):
        text = _decode(text)
    try:
        raw = json.loads(text, object_pairs_hook=_Members)
    except json.JSONDecodeError as e:
        raise ParseError((e.lineno, e.colno), e.msg) from None
    if not isinstance(raw, dict):
        raise ParseError((1, 1), "expected a JSON object at the top level")
    _check_duplicates(raw)
    for key in raw:
        if key not in TOP_LEVEL_KEYS:
            raise ParseError(key, f"unknown key {key!r}")
    for key in REQUIRED_KEYS:
        if key not in raw:
            raise ParseError(key, "required key is missing")
    ambient_dim = raw["ambient_dim"]
    if isinstance(ambient_dim, bool) or not isinstance(ambient_dim, int) or ambient_dim < 1:
        raise ParseError("ambient_dim", f"expected a positive integer, got {ambient_dim!r}")
    vertices = _parse_vertices(raw["vertices"], ambient_dim)
    simplices = _parse_simplices(raw["simplices"], vertices)
    values = _parse_values(raw["values"], vertices) if "values" in raw else None
    logger.debug("parsed document: %d vertices, %d simplices", len(vertices), len(simplices))
    return ComplexDocument(ambient_dim, vertices, tuple(simplices), values)


# --- Serialization ---
def _literal(value):
    if isinstance(value, Vector):
        return [format_scalar(x) for x in value]
    return format_scalar(value)


def serialize_document(doc):
    """
    Canonical text: sorted keys, simplices in canonical order, two-space
    indent and a trailing newline.
    """
    raw = {
        "ambient_dim": doc.ambient_dim,
        "vertices": {label: _literal(p) for label, p in doc.vertices.items()},
        "simplices": [list(s.labels) for s in doc.simplices],
    }
    if doc.values is not None:
        raw["values"] = {label: _literal(v) for label, v in doc.values.items()}
    return json.dumps(raw, sort_keys=True, indent=2) + "\n"


def load_document(path):
    with open(path, "rb") as handle:
        return parse_document(handle.read())


# --- Conversion to and from complexes ---
def to_complex(doc):
    return SimplicialComplex(doc.vertices, frozenset(doc.simplices))


def from_complex(k, values=None):
    """
    Document for a complex, keeping only the vertices its simplices use.
    """
    used = {label for s in k.simplices for label in s}
    vertices = {label: p for label, p in k.vertex_table.items() if label in used}
    if values is not None:
        values = {label: v for label, v in values.items() if label in used}
    return ComplexDocument(k.ambient_dim, vertices, tuple(k.simplices), values)


def pl_map(doc):
    if doc.values is None:
        raise MissingVertexValue("the document has no values block")
    return PLMap(doc.values)


# --- Tabular point data ---
def read_points_file(path):
    """
    Read a CSV table whose rows are points. A header row is optional and is
    recognised by any cell that is not a rational literal.
    """
    try:
        frame = pd.read_csv(path, header=None, dtype=str, skipinitialspace=True, keep_default_na=False)
    except pd.errors.EmptyDataError:
        raise ParseError(str(path), "no rows in points file") from None
    if frame.empty:
        raise ParseError(str(path), "no rows in points file")
    first = frame.iloc[0].tolist()
    start = 0 if all(isinstance(cell, str) and RATIONAL_PATTERN.match(cell) for cell in first) else 1
    points = []
    for row in range(start, len(frame)):
        cells = frame.iloc[row].tolist()
        points.append(Vector(
            parse_scalar(cell, f"{path}: row {row + 1}, column {col + 1}") for col, cell in enumerate(cells)
        ))
    if not points:
        raise ParseError(str(path), "points file has a header but no rows")
    logger.debug("read %d points from %s", len(points), path)
    return PointSet(tuple(points))
