import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

from Complex.simplicial import AbstractSimplex, label_key, simplex_key
from Geometry.affine import BarycentricCoords
from Geometry.errors import DimensionMismatch, EmptyComplex, MissingVertexValue, NotInRealization, NotInSimplex, UnknownVertex
from Geometry.linalg import Vector, combine
from Geometry.simplex import GeometricSimplex, Position, classify_point

logger = logging.getLogger(__name__)


# --- Result and value types ---
@dataclass(frozen=True)
class Carrier:
    """
    The unique simplex of K whose open interior contains a point, with the
    point's strictly positive barycentric coordinates in it.
    """
    simplex: AbstractSimplex
    coords: BarycentricCoords

    def coefficient(self, label):
        if label not in self.simplex:
            return Fraction(0)
        return self.coords[self.simplex.labels.index(label)]


@dataclass(frozen=True)
class PLMap:
    """
    Vertex values of a piecewise-linear map, extended affinely over each
    simplex. Values are all scalars or all vectors of one length.
    """
    values: dict

    def __post_init__(self):
        values = {}
        for label, value in dict(self.values).items():
            if isinstance(value, (Vector, list, tuple)):
                values[label] = value if isinstance(value, Vector) else Vector(value)
            else:
                values[label] = Fraction(value)
        kinds = {v.dim if isinstance(v, Vector) else None for v in values.values()}
        if len(kinds) > 1:
            raise DimensionMismatch("PL map values mix scalars and vectors of different lengths")
        object.__setattr__(self, "values", values)

    @property
    def is_vector_valued(self):
        return any(isinstance(v, Vector) for v in self.values.values())

    def require(self, labels):
        """
        Raise MissingVertexValue naming every label without a value.
        """
        missing = sorted((label for label in labels if label not in self.values), key=label_key)
        if missing:
            raise MissingVertexValue(f"no value given for vertices {', '.join(missing)}")

    def __getitem__(self, label):
        try:
            return self.values[label]
        except KeyError:
            raise MissingVertexValue(f"no value given for vertex {label!r}") from None


@dataclass(frozen=True)
class Summary:
    lower: Vector
    upper: Vector
    counts: dict
    is_compact: bool = True


# --- Point location ---
@lru_cache(maxsize=4096)
def _simplex_for(points):
    return GeometricSimplex(points)


def _geometric(k, s):
    return _simplex_for(k.points(s))


def locate(k, x):
    """
    Linear scan in decreasing dimension for the simplex whose open interior
    contains x. Returns None when x is not in |K|.
    Args:
        k: The complex to search; it is assumed to be valid.
        x: Point of the complex's ambient space.
    """
    if k.ambient_dim is not None and x.dim != k.ambient_dim:
        raise DimensionMismatch(f"point of R^{x.dim} in a complex in R^{k.ambient_dim}")
    for s in sorted(k.simplices, key=lambda s: (-s.dim, simplex_key(s)[1])):
        found = classify_point(_geometric(k, s), x)
        if found.position is Position.INTERIOR:
            logger.debug("carrier of %s is %s", x, s)
            return Carrier(s, found.coords)
    return None


def carrier_of(k, x):
    carrier = locate(k, x)
    if carrier is None:
        raise NotInRealization(f"{x} is not in the realization")
    return carrier


# --- Barycentric coordinate functions ---
def _require_vertex(k, label):
    if AbstractSimplex.of(label) not in k.simplices:
        raise UnknownVertex(f"{label!r} is not a vertex of the complex")


def lambda_(k, label, x):
    """
    Barycentric coordinate function of vertex `label` at x: its coefficient in
    the carrier of x, or 0 when the carrier does not contain the vertex.
    """
    _require_vertex(k, label)
    return carrier_of(k, x).coefficient(label)


def barycentric_functions(k, x):
    carrier = carrier_of(k, x)
    labels = sorted({s.labels[0] for s in k.simplices if s.dim == 0}, key=label_key)
    return {label: carrier.coefficient(label) for label in labels}


# --- Piecewise-linear maps ---
def _interpolate(f, labels, coords):
    values = [f[label] for label in labels]
    if isinstance(values[0], Vector):
        return combine(coords, values)
    return sum((c * v for c, v in zip(coords, values)), Fraction(0))


def _used_labels(k):
    return {label for s in k.simplices for label in s}


def eval_pl_in(k, f, s, x):
    """
    Evaluate f at x through the closed simplex s. Any closed simplex of a valid
    complex that contains x gives the same value.
    """
    f.require(_used_labels(k))
    found = classify_point(_geometric(k, s), x)
    if found.position is Position.OUTSIDE:
        raise NotInSimplex(f"{x} is not in {s}")
    return _interpolate(f, s.labels, found.coords)


def eval_pl(k, f, x):
    """
    Value of the PL map at x, interpolated over the carrier of x.
    Args:
        k: Valid complex the map is defined on.
        f: PLMap with a value for every vertex of k.
        x: Point of |k|.
    """
    f.require(_used_labels(k))
    carrier = carrier_of(k, x)
    return _interpolate(f, carrier.simplex.labels, carrier.coords)


# --- Bounding box and counts ---
def realization_summary(k):
    if not k.simplices:
        raise EmptyComplex("a simplicial complex needs at least one simplex")
    labels = sorted(_used_labels(k), key=label_key)
    coords = np.array([list(k.vertex_table[label]) for label in labels], dtype=object)
    lower = Vector(coords.min(axis=0))
    upper = Vector(coords.max(axis=0))
    dims, counts = np.unique(np.array([s.dim for s in k.simplices]), return_counts=True)
    return Summary(lower, upper, {int(d): int(c) for d, c in zip(dims, counts)})
