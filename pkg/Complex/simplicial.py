import logging
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from Complex.feasibility import common_interior_point
from Geometry.affine import PointSet, is_geometrically_independent
from Geometry.errors import DimensionMismatch, EmptyComplex, UnknownVertex
from Geometry.linalg import Vector

logger = logging.getLogger(__name__)

DEFINITIONAL = "definitional"
DISJOINT_INTERIORS = "disjoint-interiors"


# --- Vertex labels and abstract simplices ---
def label_key(label):
    """
    Natural sort key so that "a2" sorts before "a10". Labels that differ only
    in leading zeros ("a1", "a01") fall back to plain string order.
    """
    parts = tuple(int(part) if part.isdigit() else part for part in re.split(r"(\d+)", label))
    return parts, label


@dataclass(frozen=True)
class AbstractSimplex:
    """
    A simplex named by its vertex labels. Labels are kept sorted and distinct;
    the dimension is one less than the number of labels.
    """
    labels: tuple

    def __post_init__(self):
        labels = tuple(self.labels)
        if not labels:
            raise ValueError("a simplex needs at least one vertex")
        if len(set(labels)) != len(labels):
            raise ValueError(f"repeated vertex label in {labels}")
        object.__setattr__(self, "labels", tuple(sorted(labels, key=label_key)))

    @classmethod
    def of(cls, *labels):
        return cls(labels)

    @property
    def dim(self):
        return len(self.labels) - 1

    def __len__(self):
        return len(self.labels)

    def __iter__(self):
        return iter(self.labels)

    def __contains__(self, label):
        return label in self.labels

    def issubset(self, other):
        return set(self.labels) <= set(other.labels)

    def faces(self):
        """
        Every nonempty subset of the labels, the simplex itself included.
        """
        return [AbstractSimplex(c) for k in range(1, len(self.labels) + 1) for c in combinations(self.labels, k)]

    def proper_faces(self):
        return [f for f in self.faces() if len(f) < len(self)]

    def __str__(self):
        return "{" + ",".join(self.labels) + "}"


def simplex_key(s):
    return (len(s.labels), tuple(label_key(label) for label in s.labels))


def sorted_simplices(simplices):
    return sorted(simplices, key=simplex_key)


# --- Complexes ---
@dataclass(frozen=True)
class SimplicialComplex:
    """
    A finite collection of abstract simplices over a table of vertex
    coordinates. Construction only checks that labels resolve; the
    validators decide whether the collection really is a complex.
    """
    vertex_table: dict
    simplices: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        table = {label: p if isinstance(p, Vector) else Vector(p) for label, p in dict(self.vertex_table).items()}
        dims = {p.dim for p in table.values()}
        if len(dims) > 1:
            raise DimensionMismatch(f"vertex coordinates of mixed dimension {sorted(dims)}")
        simplices = frozenset(s if isinstance(s, AbstractSimplex) else AbstractSimplex(tuple(s)) for s in self.simplices)
        for s in simplices:
            for label in s:
                if label not in table:
                    raise UnknownVertex(f"simplex {s} uses unknown vertex {label!r}")
        object.__setattr__(self, "vertex_table", table)
        object.__setattr__(self, "simplices", simplices)

    @property
    def ambient_dim(self):
        return next(iter(self.vertex_table.values())).dim if self.vertex_table else None

    def __len__(self):
        return len(self.simplices)

    def __iter__(self):
        return iter(sorted_simplices(self.simplices))

    def __contains__(self, s):
        return s in self.simplices

    def points(self, s):
        return PointSet(tuple(self.vertex_table[label] for label in s))

    def with_simplices(self, simplices):
        return SimplicialComplex(self.vertex_table, frozenset(simplices))


# --- Validation results ---
@dataclass(frozen=True)
class BadIntersection:
    """
    Two simplices that do not meet in a common face. `witness` is a point in
    both open interiors (or in the overlap outside the shared face) when one
    was computed; `reason` says which condition failed.
    """
    first: AbstractSimplex
    second: AbstractSimplex
    reason: str
    witness: Vector = None


@dataclass(frozen=True)
class ValidationReport:
    method: str
    missing_faces: tuple = ()
    dependent_simplices: tuple = ()
    bad_intersections: tuple = ()

    @property
    def ok(self):
        return not (self.missing_faces or self.dependent_simplices or self.bad_intersections)

    def __bool__(self):
        return self.ok


@dataclass(frozen=True)
class LocalFiniteness:
    locally_finite: bool
    star_sizes: dict

    def __bool__(self):
        return self.locally_finite


# --- Checks shared by both validators ---
def _require_nonempty(k):
    if not k.simplices:
        raise EmptyComplex("a simplicial complex needs at least one simplex")


def missing_faces(k):
    found = set()
    for s in k.simplices:
        for f in s.proper_faces():
            if f not in k.simplices:
                found.add((s, f))
    return tuple(sorted(found, key=lambda pair: (simplex_key(pair[0]), simplex_key(pair[1]))))


def dependent_simplices(k):
    return tuple(s for s in sorted_simplices(k.simplices) if not is_geometrically_independent(k.points(s)))


# --- Pairwise interior intersections ---
@lru_cache(maxsize=8192)
def _common_interior(first_points, second_points):
    return common_interior_point(first_points, second_points)


def _ordered(s, t):
    return (s, t) if simplex_key(s) <= simplex_key(t) else (t, s)


def _interiors_meet(k, s, t):
    """
    A common open-interior point of s and t, or None. Results are shared
    across calls and validators through the cache on vertex coordinates.
    """
    first, second = _ordered(s, t)
    return _common_interior(k.points(first), k.points(second))


def _finish(method, k, missing, dependent, bad):
    bad = tuple(sorted(bad, key=lambda b: (simplex_key(b.first), simplex_key(b.second))))
    report = ValidationReport(method, missing, dependent, bad)
    logger.debug("%s validation of %d simplices: ok=%s", method, len(k), report.ok)
    return report


# --- Validators ---
def validate_definitional(k):
    """
    Check the defining conditions directly: closure under faces, independent
    vertex sets, and that any two simplices meet exactly in the face spanned
    by their shared vertices, which must itself belong to the complex.
    """
    _require_nonempty(k)
    missing = missing_faces(k)
    dependent = dependent_simplices(k)
    independent = [s for s in sorted_simplices(k.simplices) if s not in dependent]
    bad = []
    for s, t in combinations(independent, 2):
        if s.issubset(t) or t.issubset(s):
            continue
        shared = set(s.labels) & set(t.labels)
        first, second = _ordered(s, t)
        if shared and AbstractSimplex(tuple(shared)) not in k.simplices:
            bad.append(BadIntersection(first, second, f"shared face {AbstractSimplex(tuple(shared))} is not in the complex"))
            continue
        # the intersection equals the shared face iff no two distinct faces
        # of s and t have a common interior point
        for f in s.faces():
            witness = next((p for g in t.faces() if g != f for p in [_interiors_meet(k, f, g)] if p is not None), None)
            if witness is not None:
                reason = "meet outside their common face" if shared else "intersect without a common vertex"
                bad.append(BadIntersection(first, second, reason, witness))
                break
    return _finish(DEFINITIONAL, k, missing, dependent, bad)


def validate_disjoint_interiors(k):
    """
    Equivalent criterion: closure under faces plus pairwise disjoint open
    interiors, decided exactly for each pair by strict feasibility.
    """
    _require_nonempty(k)
    missing = missing_faces(k)
    dependent = dependent_simplices(k)
    independent = [s for s in sorted_simplices(k.simplices) if s not in dependent]
    bad = []
    for s, t in combinations(independent, 2):
        # distinct faces of one independent simplex never share interior points
        if s.issubset(t) or t.issubset(s):
            continue
        witness = _interiors_meet(k, s, t)
        if witness is not None:
            first, second = _ordered(s, t)
            bad.append(BadIntersection(first, second, "open interiors intersect", witness))
    return _finish(DISJOINT_INTERIORS, k, missing, dependent, bad)


def validate(k, method=DISJOINT_INTERIORS):
    """
    Run one validator and return its ValidationReport.
    Args:
        k: The candidate complex.
        method: DEFINITIONAL or DISJOINT_INTERIORS.
    """
    if method == DEFINITIONAL:
        return validate_definitional(k)
    if method == DISJOINT_INTERIORS:
        return validate_disjoint_interiors(k)
    raise ValueError(f"unknown validation method {method!r}")


# --- Structure queries ---
def dimension(k):
    _require_nonempty(k)
    return max(s.dim for s in k.simplices)


def vertices(k):
    return sorted((s.labels[0] for s in k.simplices if s.dim == 0), key=label_key)


def skeleton(k, p):
    """
    Subcomplex of all simplices of dimension at most p.
    Args:
        k: Source complex.
        p: Largest dimension kept; p >= dimension(k) returns k unchanged.
    """
    if p < 0:
        raise ValueError(f"skeleton dimension must be >= 0, got {p}")
    return k.with_simplices(s for s in k.simplices if s.dim <= p)


def is_subcomplex(l, k):
    """
    True when every simplex of l is in k over the same coordinates and l is
    itself a valid complex.
    """
    if not l.simplices or not l.simplices <= k.simplices:
        return False
    used = {label for s in l.simplices for label in s}
    if any(l.vertex_table[label] != k.vertex_table[label] for label in used):
        return False
    return validate_disjoint_interiors(l).ok


# --- Stars and links ---
def _require_vertex(k, v):
    if AbstractSimplex.of(v) not in k.simplices:
        raise UnknownVertex(f"{v!r} is not a vertex of the complex")


def star(k, v):
    _require_vertex(k, v)
    return frozenset(s for s in k.simplices if v in s)


def generated_subcomplex(k, simplices):
    """
    The given simplices together with all of their faces.
    """
    closed = set()
    for s in simplices:
        closed.update(s.faces())
    return k.with_simplices(closed)


def closed_star(k, v):
    return generated_subcomplex(k, star(k, v))


def link(k, v):
    return frozenset(s for s in closed_star(k, v).simplices if v not in s)


# --- Finiteness ---
def maximal_faces(simplices):
    simplices = set(simplices)
    return frozenset(s for s in simplices if not any(s != t and s.issubset(t) for t in simplices))


def star_sizes(k):
    return {v: len(star(k, v)) for v in vertices(k)}


def is_locally_finite(k):
    # a finite complex is always locally finite; the star sizes are the certificate
    return LocalFiniteness(True, star_sizes(k))
