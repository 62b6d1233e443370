import logging
from dataclasses import dataclass
from fractions import Fraction

from Geometry.errors import DependentVertices, DimensionMismatch
from Geometry.linalg import (
    Inconsistent,
    Infinite,
    Matrix,
    Unique,
    Vector,
    combine,
    is_invertible,
    nullspace,
    rank,
    solve,
)

logger = logging.getLogger(__name__)


# --- Point sets and coordinates ---
@dataclass(frozen=True)
class PointSet:
    """
    Finite ordered list of points a_0, ..., a_n of R^N, all of the same dimension.
    The first point is the base point for relative vectors.
    """
    points: tuple

    def __post_init__(self):
        points = tuple(p if isinstance(p, Vector) else Vector(p) for p in self.points)
        if not points:
            raise DimensionMismatch("a point set needs at least one point")
        dims = {p.dim for p in points}
        if len(dims) != 1:
            raise DimensionMismatch(f"points of mixed ambient dimension {sorted(dims)}")
        object.__setattr__(self, "points", points)

    @classmethod
    def of(cls, *points):
        return cls(tuple(Vector(p) for p in points))

    @property
    def ambient_dim(self):
        return self.points[0].dim

    def __len__(self):
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, index):
        return self.points[index]


@dataclass(frozen=True)
class BarycentricCoords:
    """
    Affine coefficients (t_0, ..., t_n) of a point with respect to a_0, ..., a_n.
    The coefficients always sum to exactly 1; they may be negative when the
    point lies in the plane but outside the simplex.
    """
    coeffs: tuple

    def __post_init__(self):
        coeffs = tuple(Fraction(c) for c in self.coeffs)
        if sum(coeffs) != 1:
            raise ValueError(f"barycentric coefficients must sum to 1, got {sum(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    @classmethod
    def vertex(cls, size, index):
        return cls(tuple(1 if i == index else 0 for i in range(size)))

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __getitem__(self, index):
        return self.coeffs[index]

    def positive_indices(self):
        return tuple(i for i, c in enumerate(self.coeffs) if c > 0)

    def is_strictly_positive(self):
        return all(c > 0 for c in self.coeffs)

    def is_nonnegative(self):
        return all(c >= 0 for c in self.coeffs)


@dataclass(frozen=True)
class IndependenceWitness:
    """
    Result of the rank test. `dependence` holds a nontrivial affine dependence
    (t_0, ..., t_n) with sum t_i = 0 and sum t_i a_i = 0 when the set is dependent.
    """
    independent: bool
    rank: int
    matrix: Matrix
    dependence: tuple = None

    def __bool__(self):
        return self.independent


# --- Planes and affine maps ---
@dataclass(frozen=True)
class AffinePlane:
    """
    The n-plane through `base` spanned by independent `directions` v_i = a_i - a_0.
    A 0-plane has no directions and is the single point `base`.
    """
    base: Vector
    directions: tuple

    def __post_init__(self):
        directions = tuple(self.directions)
        if any(v.dim != self.base.dim for v in directions):
            raise DimensionMismatch("plane directions and base point differ in dimension")
        object.__setattr__(self, "directions", directions)
        matrix = self.direction_matrix()
        found = rank(matrix)
        if found != len(directions):
            raise DependentVertices(found, matrix, "plane directions are linearly dependent")

    @property
    def ambient_dim(self):
        return self.base.dim

    @property
    def dim(self):
        return len(self.directions)

    def direction_matrix(self):
        return Matrix.from_columns(self.directions, rows=self.base.dim)

    def spanning_points(self):
        return PointSet((self.base,) + tuple(self.base + v for v in self.directions))


@dataclass(frozen=True)
class AffineMap:
    """
    T(x) = matrix x + translation on R^N.
    """
    matrix: Matrix
    translation: Vector

    def __post_init__(self):
        if not self.matrix.is_square:
            raise DimensionMismatch(f"affine map needs a square matrix, got {self.matrix.rows}x{self.matrix.cols}")
        if self.translation.dim != self.matrix.rows:
            raise DimensionMismatch("translation length does not match the matrix")

    @classmethod
    def identity(cls, dim):
        return cls(Matrix.identity(dim), Vector.zeros(dim))

    @property
    def dim(self):
        return self.matrix.rows

    @property
    def is_invertible(self):
        return is_invertible(self.matrix)


# --- Membership and extension results ---
@dataclass(frozen=True)
class OnPlane:
    coords: BarycentricCoords


@dataclass(frozen=True)
class OffPlane:
    pass


@dataclass(frozen=True)
class Extended:
    rank_before: int
    rank_after: int


@dataclass(frozen=True)
class NotExtendable:
    rank_before: int
    rank_after: int


# --- Independence ---
def relative_vectors(a):
    """
    The relative vectors v_i = a_i - a_0, i = 1..n (empty for a single point).
    """
    base = a[0]
    return [p - base for p in a.points[1:]]


def relative_matrix(a):
    return Matrix.from_columns(relative_vectors(a), rows=a.ambient_dim)


def is_geometrically_independent(a):
    """
    Rank test: the set is geometrically independent iff the matrix whose columns
    are the relative vectors has rank equal to the number of points minus one.
    """
    matrix = relative_matrix(a)
    found = rank(matrix)
    independent = found == len(a) - 1
    logger.debug("rank %d for %d points in R^%d", found, len(a), a.ambient_dim)
    if independent:
        return IndependenceWitness(True, found, matrix)
    s = nullspace(matrix)[0]
    dependence = (-sum(s, Fraction(0)),) + tuple(s)
    return IndependenceWitness(False, found, matrix, dependence)


def is_linearly_independent(points):
    """
    Linear (not affine) independence: the points themselves, as columns, have full column rank.
    """
    matrix = Matrix.from_columns(points.points)
    return rank(matrix) == len(points)


# --- Plane membership ---
def plane_spanned_by(a):
    witness = is_geometrically_independent(a)
    if not witness:
        raise DependentVertices(witness.rank, witness.matrix)
    return AffinePlane(a[0], tuple(relative_vectors(a)))


def _check_dim(expected, vector):
    if vector.dim != expected:
        raise DimensionMismatch(f"expected a point of R^{expected}, got R^{vector.dim}")


def affine_coordinates(plane, w):
    """
    Coefficients (t_0, ..., t_n) with w = sum t_i a_i and sum t_i = 1, or None
    when w is off the plane. Solves u = M_V s for u = w - a_0 and sets t_0 = 1 - sum s_i.
    """
    _check_dim(plane.ambient_dim, w)
    u = w - plane.base
    if not plane.directions:
        return BarycentricCoords((1,)) if u.is_zero() else None
    result = solve(plane.direction_matrix(), u)
    if isinstance(result, Inconsistent):
        return None
    assert not isinstance(result, Infinite), "plane directions must be independent"
    s = result.solution
    coords = BarycentricCoords((1 - sum(s, Fraction(0)),) + tuple(s))
    # verify the affine condition
    assert combine(coords, plane.spanning_points()) == w
    return coords


def plane_membership(plane, w):
    """
    OnPlane with the affine coefficients of w, or OffPlane.
    Args:
        plane: AffinePlane spanned by independent points.
        w: Point of the same ambient space.
    """
    coords = affine_coordinates(plane, w)
    return OffPlane() if coords is None else OnPlane(coords)


# --- Extension ---
def extend_independent(a, w):
    """
    Decide whether a + {w} is still geometrically independent by comparing the
    rank of M_V with the rank of M_V augmented by w - a_0.
    """
    witness = is_geometrically_independent(a)
    if not witness:
        raise DependentVertices(witness.rank, witness.matrix)
    _check_dim(a.ambient_dim, w)
    before = witness.rank
    after = rank(Matrix.from_columns(relative_vectors(a) + [w - a[0]]))
    if after == before + 1:
        return Extended(before, after)
    return NotExtendable(before, after)


# --- Affine images ---
def apply_affine(t, x):
    if x.dim != t.dim:
        raise DimensionMismatch(f"affine map on R^{t.dim} applied to a point of R^{x.dim}")
    return t.matrix @ x + t.translation


def apply_affine_to_set(t, a):
    return PointSet(tuple(apply_affine(t, p) for p in a))


def apply_affine_to_plane(t, plane):
    """
    Image of a plane: base goes through T, directions through the linear part only.
    A singular map may collapse directions, in which case DependentVertices is raised.
    """
    if plane.ambient_dim != t.dim:
        raise DimensionMismatch(f"affine map on R^{t.dim} applied to a plane in R^{plane.ambient_dim}")
    return AffinePlane(apply_affine(t, plane.base), tuple(t.matrix @ v for v in plane.directions))
