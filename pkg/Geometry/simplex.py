import enum
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from Geometry.affine import (
    BarycentricCoords,
    OffPlane,
    PointSet,
    affine_coordinates,
    plane_spanned_by,
)
from Geometry.errors import (
    DegenerateSimplex,
    DimensionMismatch,
    NotInSimplex,
    OriginNotInterior,
)
from Geometry.linalg import Inconsistent, Vector, combine, solve

logger = logging.getLogger(__name__)


# --- Simplices ---
class GeometricSimplex:
    """
    The n-simplex spanned by n+1 geometrically independent points: the set of
    all convex combinations of its vertices. Independence is checked once, at
    construction, and the spanned plane is kept for barycentric solves.
    The simplex is closed, so its closure is itself.
    """

    __slots__ = ("vertices", "plane")

    def __init__(self, vertices):
        if not isinstance(vertices, PointSet):
            vertices = PointSet(tuple(vertices))
        self.vertices = vertices
        self.plane = plane_spanned_by(vertices)

    @property
    def dim(self):
        return len(self.vertices) - 1

    @property
    def ambient_dim(self):
        return self.vertices.ambient_dim

    def __eq__(self, other):
        return isinstance(other, GeometricSimplex) and self.vertices == other.vertices

    def __hash__(self):
        return hash(self.vertices)

    def __repr__(self):
        return "GeometricSimplex(" + ", ".join(str(v) for v in self.vertices) + ")"


# --- Query results ---
class Position(enum.Enum):
    INTERIOR = "interior"
    BOUNDARY = "boundary"
    OUTSIDE = "outside"


@dataclass(frozen=True)
class PointClassification:
    """
    Interior: every coordinate > 0. Boundary: all >= 0 with at least one zero;
    `carrier` lists the strictly positive indices. Outside: off the plane
    (coords is None) or some coordinate < 0.
    """
    position: Position
    coords: BarycentricCoords = None
    carrier: tuple = None


@dataclass(frozen=True)
class InPlane:
    coords: BarycentricCoords


@dataclass(frozen=True)
class ConeCoords:
    """
    x = t_0 a_0 + (1 - t_0) y with y on the face opposite a_0.
    `base_point` and `base_coords` are None for the apex itself (t_0 = 1).
    """
    apex_weight: Fraction
    base_point: Vector = None
    base_coords: BarycentricCoords = None


@dataclass(frozen=True)
class Ray:
    """
    The ray {origin + t * direction : t >= 0} emanating from `origin`.
    """
    origin: Vector
    direction: Vector

    def __post_init__(self):
        if self.origin.dim != self.direction.dim:
            raise DimensionMismatch("ray origin and direction differ in dimension")
        if self.direction.is_zero():
            raise ValueError("a ray needs a nonzero direction")


@dataclass(frozen=True)
class Hit:
    t_star: Fraction
    point: Vector
    face: tuple


@dataclass(frozen=True)
class LeavesPlane:
    pass


# --- Barycentric coordinates ---
def make_simplex(vertices):
    return GeometricSimplex(vertices)


def point_from_barycentric(s, coords):
    if len(coords) != len(s.vertices):
        raise DimensionMismatch(f"{len(coords)} coordinates for a simplex with {len(s.vertices)} vertices")
    return combine(coords, s.vertices)


def barycenter(s):
    size = len(s.vertices)
    return point_from_barycentric(s, [Fraction(1, size)] * size)


def closure(s):
    return s


def barycentric(s, x):
    coords = affine_coordinates(s.plane, x)
    return OffPlane() if coords is None else InPlane(coords)


def classify_point(s, x):
    coords = affine_coordinates(s.plane, x)
    if coords is None or not coords.is_nonnegative():
        return PointClassification(Position.OUTSIDE, coords)
    if coords.is_strictly_positive():
        return PointClassification(Position.INTERIOR, coords, tuple(range(len(coords))))
    return PointClassification(Position.BOUNDARY, coords, coords.positive_indices())


# --- Faces ---
def face_indices(n, k):
    """
    Index sets of the k-faces of an n-simplex, in lexicographic order.
    """
    if not 0 <= k <= n:
        raise ValueError(f"face dimension {k} out of range 0..{n}")
    return list(combinations(range(n + 1), k + 1))


def face(s, indices):
    return GeometricSimplex(PointSet(tuple(s.vertices[i] for i in indices)))


def faces(s, k):
    return [face(s, indices) for indices in face_indices(s.dim, k)]


def proper_faces(s):
    return [f for k in range(s.dim) for f in faces(s, k)]


def face_opposite(s, i):
    if s.dim == 0:
        raise DegenerateSimplex("a 0-simplex has no opposite face")
    if not 0 <= i <= s.dim:
        raise IndexError(f"vertex index {i} out of range 0..{s.dim}")
    return face(s, [j for j in range(s.dim + 1) if j != i])


# --- Cone structure ---
def cone_decompose(s, x):
    """
    Write x as a point on the segment from the apex a_0 to a point y of the
    opposite face: x = t_0 a_0 + (1 - t_0) y.
    """
    if s.dim == 0:
        raise DegenerateSimplex("cone decomposition needs a simplex of dimension >= 1")
    found = classify_point(s, x)
    if found.position is Position.OUTSIDE:
        raise NotInSimplex(f"{x} is not in the simplex")
    t0 = found.coords[0]
    if t0 == 1:
        return ConeCoords(Fraction(1))
    base_coords = BarycentricCoords(tuple(t / (1 - t0) for t in found.coords.coeffs[1:]))
    y = combine(base_coords, s.vertices.points[1:])
    assert s.vertices[0] * t0 + y * (1 - t0) == x
    return ConeCoords(t0, y, base_coords)


# --- Rays ---
def ray_point(r, t):
    return r.origin + r.direction * t


def ray_boundary_hit(s, r):
    """
    First parameter t* > 0 at which the ray from an interior point reaches the
    boundary. Along the ray each barycentric coordinate moves linearly; t* is
    the smallest positive value at which a decreasing coordinate reaches zero.
    Args:
        s: GeometricSimplex of dimension >= 1.
        r: Ray whose origin is interior to s.
    """
    start = classify_point(s, r.origin)
    if start.position is not Position.INTERIOR:
        raise OriginNotInterior(f"ray origin {r.origin} is not interior to the simplex")
    if s.dim == 0:
        return LeavesPlane()
    result = solve(s.plane.direction_matrix(), r.direction)
    if isinstance(result, Inconsistent):
        return LeavesPlane()
    delta = result.solution
    rates = (-sum(delta, Fraction(0)),) + tuple(delta)
    t_star = min(-c / rate for c, rate in zip(start.coords, rates) if rate < 0)
    at_hit = [c + t_star * rate for c, rate in zip(start.coords, rates)]
    face_set = tuple(i for i, c in enumerate(at_hit) if c > 0)
    logger.debug("ray hits boundary at t*=%s on face %s", t_star, face_set)
    return Hit(t_star, ray_point(r, t_star), face_set)


# --- Radial homeomorphism between the simplex and the unit ball ---
def rational_sqrt(q):
    """
    Exact square root of a non-negative rational, or None when it is irrational.
    """
    q = Fraction(q)
    if q < 0:
        return None
    num, den = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if num * num == q.numerator and den * den == q.denominator:
        return Fraction(num, den)
    return None


def _primitive(values):
    """
    Scale a nonzero rational direction to coprime integers, keeping its sign pattern.
    """
    values = [Fraction(v) for v in values]
    if all(v == 0 for v in values):
        return tuple(Fraction(0) for _ in values)
    scale = math.lcm(*(v.denominator for v in values))
    ints = [int(v * scale) for v in values]
    g = math.gcd(*ints)
    return tuple(Fraction(i // g) for i in ints)


@dataclass(frozen=True)
class BallPoint:
    """
    A point of the closed unit ball B^n stored exactly as radius * e / |e|.
    The direction e is kept in primitive integer form so equal points compare
    equal; only the squared norm, radius^2, is ever needed to tell interior
    (radius < 1) from the sphere (radius = 1).
    """
    radius: Fraction
    direction: tuple

    def __post_init__(self):
        radius = Fraction(self.radius)
        if not 0 <= radius <= 1:
            raise NotInSimplex(f"radius {radius} is outside the unit ball")
        direction = _primitive(self.direction)
        if radius == 0:
            direction = tuple(Fraction(0) for _ in direction)
        elif all(d == 0 for d in direction):
            raise ValueError("a point off the center needs a nonzero direction")
        object.__setattr__(self, "radius", radius)
        object.__setattr__(self, "direction", direction)

    @classmethod
    def from_vector(cls, u):
        length = rational_sqrt(u.squared_norm())
        if length is None:
            raise ValueError(f"|{u}| is irrational; pass a BallPoint instead")
        return cls(length, tuple(u))

    @property
    def dim(self):
        return len(self.direction)

    def squared_norm(self):
        return self.radius * self.radius

    def to_vector(self):
        """
        Rational coordinates when |direction| is rational, otherwise None.
        """
        if self.dim == 0:
            return None
        length = rational_sqrt(sum((d * d for d in self.direction), Fraction(0)))
        if length is None:
            return None
        if self.radius == 0:
            return Vector.zeros(self.dim)
        return Vector(self.radius * d / length for d in self.direction)

    def approx(self):
        length = math.sqrt(sum(float(d) ** 2 for d in self.direction)) or 1.0
        return tuple(float(self.radius) * float(d) / length for d in self.direction)


def ball_map(s, x):
    """
    Radial map about the barycenter c, in the plane's direction coordinates:
    c goes to 0 and the boundary point on the ray from c through x goes to the
    unit sphere.
    """
    found = classify_point(s, x)
    if found.position is Position.OUTSIDE:
        raise NotInSimplex(f"{x} is not in the simplex")
    center = barycenter(s)
    if x == center:
        return BallPoint(0, (0,) * s.dim)
    d = x - center
    hit = ray_boundary_hit(s, Ray(center, d))
    coords = solve(s.plane.direction_matrix(), d).solution
    return BallPoint(1 / hit.t_star, tuple(coords))


def ball_map_inverse(s, u):
    if not isinstance(u, BallPoint):
        if u.dim != s.dim:
            raise DimensionMismatch(f"expected a point of B^{s.dim}, got R^{u.dim}")
        u = BallPoint.from_vector(u)
    if u.dim != s.dim:
        raise DimensionMismatch(f"expected a point of B^{s.dim}, got B^{u.dim}")
    center = barycenter(s)
    if u.radius == 0:
        return center
    d = s.plane.direction_matrix() @ Vector(u.direction)
    hit = ray_boundary_hit(s, Ray(center, d))
    return center + d * (u.radius * hit.t_star)
