import logging
import re
from dataclasses import dataclass
from fractions import Fraction

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from Geometry.errors import DimensionMismatch, ParseError

logger = logging.getLogger(__name__)

# --- Rational literals: "p/q" or an integer "p" (no decimals, no exponents) ---
RATIONAL_PATTERN = re.compile(r"^\s*([+-]?\d+)(?:\s*/\s*(\d+))?\s*$")


def parse_scalar(text, position=None):
    """
    Parse a rational literal such as "1/2", "3" or "-7/4" into a Fraction.
    JSON integers are accepted as well. Floats, decimals and zero
    denominators are rejected with ParseError.
    """
    if isinstance(text, bool):
        raise ParseError(position, f"expected a rational literal, got {text!r}")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(position, f"expected a rational literal, got {text!r}")
    match = RATIONAL_PATTERN.match(text)
    if not match:
        raise ParseError(position, f"malformed rational literal {text!r}")
    numerator, denominator = match.group(1), match.group(2)
    if denominator is not None and int(denominator) == 0:
        raise ParseError(position, f"zero denominator in {text!r}")
    return Fraction(int(numerator), int(denominator) if denominator else 1)


def format_scalar(value):
    return str(Fraction(value))


def parse_point(text, position=None):
    """
    Parse a comma separated list of rational literals ("1/2,0,3") into a Vector.
    """
    parts = text.split(",")
    if any(not part.strip() for part in parts):
        raise ParseError(position, f"empty coordinate in point {text!r}")
    return Vector([parse_scalar(part, position) for part in parts])


def format_vector(vector):
    return "(" + ", ".join(format_scalar(x) for x in vector) + ")"


# --- Vectors ---
@dataclass(frozen=True)
class Vector:
    """
    Dense vector of exact rationals. Used both for points of R^N and for
    relative vectors a_i - a_0.
    """
    entries: tuple

    def __init__(self, entries):
        values = tuple(Fraction(x) for x in entries)
        if not values:
            raise DimensionMismatch("a vector needs at least one entry")
        object.__setattr__(self, "entries", values)

    @classmethod
    def zeros(cls, dim):
        return cls([0] * dim)

    @classmethod
    def basis(cls, dim, index):
        return cls([1 if i == index else 0 for i in range(dim)])

    @property
    def dim(self):
        return len(self.entries)

    def __len__(self):
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, index):
        return self.entries[index]

    def _check(self, other):
        if self.dim != other.dim:
            raise DimensionMismatch(f"vector dimensions differ: {self.dim} vs {other.dim}")

    def __add__(self, other):
        self._check(other)
        return Vector(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other):
        self._check(other)
        return Vector(a - b for a, b in zip(self.entries, other.entries))

    def __neg__(self):
        return Vector(-a for a in self.entries)

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return Vector(scalar * a for a in self.entries)

    __rmul__ = __mul__

    def dot(self, other):
        self._check(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def squared_norm(self):
        return self.dot(self)

    def is_zero(self):
        return all(a == 0 for a in self.entries)

    def __str__(self):
        return format_vector(self)


def combine(weights, vectors):
    """
    Exact linear combination sum(w_i * v_i). `vectors` must be nonempty.
    """
    vectors = list(vectors)
    total = Vector.zeros(vectors[0].dim)
    for weight, vector in zip(weights, vectors):
        total = total + vector * weight
    return total


# --- Matrices ---
@dataclass(frozen=True)
class Matrix:
    """
    Row-major matrix of exact rationals. A matrix may have zero columns
    (the relative-vector matrix of a single point), never zero rows.
    """
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if len(self.entries) != self.rows * self.cols:
            raise DimensionMismatch(
                f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries, got {len(self.entries)}"
            )
        object.__setattr__(self, "entries", tuple(Fraction(x) for x in self.entries))

    @classmethod
    def from_rows(cls, rows):
        rows = [list(row) for row in rows]
        if not rows:
            raise DimensionMismatch("a matrix needs at least one row")
        width = len(rows[0])
        if any(len(row) != width for row in rows):
            raise DimensionMismatch("ragged matrix rows")
        return cls(len(rows), width, tuple(x for row in rows for x in row))

    @classmethod
    def from_columns(cls, columns, rows=None):
        """
        Build a matrix whose columns are the given vectors. `rows` is required
        when `columns` is empty.
        """
        columns = list(columns)
        if not columns:
            if rows is None:
                raise DimensionMismatch("row count needed for a matrix without columns")
            return cls(rows, 0, ())
        height = columns[0].dim
        if any(column.dim != height for column in columns):
            raise DimensionMismatch("columns of different lengths")
        if rows is not None and rows != height:
            raise DimensionMismatch(f"expected columns of length {rows}, got {height}")
        return cls(height, len(columns), tuple(columns[j][i] for i in range(height) for j in range(len(columns))))

    @classmethod
    def identity(cls, size):
        return cls(size, size, tuple(1 if i == j else 0 for i in range(size) for j in range(size)))

    def entry(self, i, j):
        return self.entries[i * self.cols + j]

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j):
        return Vector(self.entry(i, j) for i in range(self.rows))

    def to_rows(self):
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self):
        if self.cols == 0:
            raise DimensionMismatch("cannot transpose a matrix without columns")
        return Matrix(self.cols, self.rows, tuple(self.entry(i, j) for j in range(self.cols) for i in range(self.rows)))

    def augment(self, vector):
        if vector.dim != self.rows:
            raise DimensionMismatch(f"right-hand side has {vector.dim} entries, matrix has {self.rows} rows")
        return Matrix.from_rows([list(self.row(i)) + [vector[i]] for i in range(self.rows)])

    def __matmul__(self, other):
        if isinstance(other, Vector):
            if other.dim != self.cols:
                raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} matrix by vector of length {other.dim}")
            return Vector(sum((a * b for a, b in zip(self.row(i), other)), Fraction(0)) for i in range(self.rows))
        if isinstance(other, Matrix):
            if other.rows != self.cols:
                raise DimensionMismatch(f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}")
            if self.cols == 0 or other.cols == 0:
                raise DimensionMismatch("cannot multiply matrices without columns")
            return from_domain(to_domain(self).matmul(to_domain(other)))
        return NotImplemented

    @property
    def is_square(self):
        return self.rows == self.cols

    def __str__(self):
        return "[" + ", ".join("[" + ", ".join(format_scalar(x) for x in self.row(i)) + "]" for i in range(self.rows)) + "]"


# --- Solution kinds returned by solve() ---
@dataclass(frozen=True)
class Unique:
    solution: Vector


@dataclass(frozen=True)
class Infinite:
    particular: Vector
    nullspace: tuple


@dataclass(frozen=True)
class Inconsistent:
    pass


# --- Bridge to sympy's DomainMatrix over QQ ---
def _to_qq(value):
    return QQ(value.numerator, value.denominator)


def _from_qq(value):
    return Fraction(int(value.numerator), int(value.denominator))


def to_domain(m):
    """
    Convert a Matrix with at least one column into a sympy DomainMatrix over QQ.
    """
    rows = [[_to_qq(x) for x in m.row(i)] for i in range(m.rows)]
    return DomainMatrix(rows, (m.rows, m.cols), QQ)


def from_domain(dm):
    rows, cols = dm.shape
    return Matrix(rows, cols, tuple(_from_qq(x) for row in dm.to_list() for x in row))


# --- Elimination ---
def rref(m):
    """
    Reduced row echelon form over the rationals, computed by sympy.
    Returns the reduced matrix and the strictly increasing list of pivot
    columns.
    Args:
        m: Matrix to reduce; a matrix without columns is returned unchanged.
    """
    if m.cols == 0:
        return m, []
    reduced, pivots = to_domain(m).rref()
    return from_domain(reduced), list(pivots)


def rank(m):
    if m.cols == 0:
        return 0
    return to_domain(m).rank()


def is_invertible(m):
    return m.is_square and rank(m) == m.rows


def nullspace(m):
    """
    Basis of {x : m x = 0}, one vector per free column of rref(m).
    """
    if m.cols == 0:
        return []
    reduced, pivots = rref(m)
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for f in free:
        values = [Fraction(0)] * m.cols
        values[f] = Fraction(1)
        for r, p in enumerate(pivots):
            values[p] = -reduced.entry(r, f)
        basis.append(Vector(values))
    return basis


def solve(m, rhs):
    """
    Solve m x = rhs exactly.
    Returns Unique(x), Infinite(particular, nullspace basis) or Inconsistent().
    Args:
        m: Coefficient matrix with at least one column.
        rhs: Vector with one entry per row of m.
    """
    if rhs.dim != m.rows:
        raise DimensionMismatch(f"right-hand side has {rhs.dim} entries, matrix has {m.rows} rows")
    if m.cols == 0:
        raise DimensionMismatch("cannot solve a system without unknowns")
    reduced, pivots = rref(m.augment(rhs))
    if pivots and pivots[-1] == m.cols:
        logger.debug("system %sx%s inconsistent", m.rows, m.cols)
        return Inconsistent()
    values = [Fraction(0)] * m.cols
    for r, p in enumerate(pivots):
        values[p] = reduced.entry(r, m.cols)
    particular = Vector(values)
    if len(pivots) == m.cols:
        return Unique(particular)
    return Infinite(particular, tuple(nullspace(m)))
