import itertools
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from Geometry.errors import DimensionMismatch, ParseError
from Geometry.linalg import (
    Inconsistent,
    Infinite,
    Matrix,
    Unique,
    Vector,
    format_vector,
    from_domain,
    nullspace,
    parse_point,
    parse_scalar,
    rank,
    rref,
    solve,
    to_domain,
)
from strategies import matrices, small_ints, vectors


@pytest.mark.parametrize("text, expected", [
    ("1/2", Fraction(1, 2)),
    ("-7/4", Fraction(-7, 4)),
    ("3", Fraction(3)),
    (" 2 / 6 ", Fraction(1, 3)),
    (5, Fraction(5)),
])
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


@pytest.mark.parametrize("text", ["1/0", "0.5", "1e3", "", "a/b", True, 1.5, None])
def test_parse_scalar_rejects(text):
    with pytest.raises(ParseError):
        parse_scalar(text)


def test_zero_denominator_message_names_position():
    with pytest.raises(ParseError) as info:
        parse_scalar("1/0", "vertices.a0[0]")
    assert info.value.position == "vertices.a0[0]"
    assert "zero denominator" in str(info.value)


def test_parse_point():
    assert parse_point("1,2/3") == Vector([1, Fraction(2, 3)])
    assert format_vector(parse_point("1/2,0,-3")) == "(1/2, 0, -3)"
    with pytest.raises(ParseError):
        parse_point("1,,2")


def test_vector_arithmetic():
    a, b = Vector([1, 2]), Vector([Fraction(1, 2), -1])
    assert a + b == Vector([Fraction(3, 2), 1])
    assert a - b == Vector([Fraction(1, 2), 3])
    assert 2 * b == Vector([1, -2])
    assert a.dot(b) == Fraction(-3, 2)
    assert Vector.zeros(3).is_zero()
    with pytest.raises(DimensionMismatch):
        a + Vector([1, 2, 3])


def test_rref_identity_and_proportional_rows():
    reduced, pivots = rref(Matrix.identity(2))
    assert reduced == Matrix.identity(2) and pivots == [0, 1]
    reduced, pivots = rref(Matrix.from_rows([[1, 2], [2, 4]]))
    assert reduced == Matrix.from_rows([[1, 2], [0, 0]]) and pivots == [0]


def test_rref_of_relative_vector_matrix():
    _, pivots = rref(Matrix.from_rows([[1, 2], [2, 1], [1, 2]]))
    assert pivots == [0, 1]


def test_rank_examples():
    columns = [Vector(c) for c in ((1, 2, 0, 3), (2, 4, 1, 0), (3, 5, 2, 6), (4, 8, 5, 2))]
    assert rank(Matrix.from_columns(columns)) == 4
    assert rank(Matrix.from_columns([Vector((1, 0, 0)), Vector((2, 0, 0))])) == 1
    assert rank(Matrix.from_rows([[0, 0], [0, 0]])) == 0


def test_solve_unique():
    m = Matrix.from_rows([[-1, -1], [1, 0], [0, 1]])
    assert solve(m, Vector([Fraction(-1, 2), Fraction(1, 2), 0])) == Unique(Vector([Fraction(1, 2), 0]))
    assert solve(Matrix.from_rows([[2, 0], [0, 2]]), Vector([1, 1])) == Unique(Vector([Fraction(1, 2), Fraction(1, 2)]))


def test_solve_inconsistent():
    assert isinstance(solve(Matrix.from_rows([[1, 0], [0, 0]]), Vector([0, 1])), Inconsistent)


def test_solve_infinite():
    result = solve(Matrix.from_rows([[1, 1]]), Vector([2]))
    assert isinstance(result, Infinite)
    assert result.particular == Vector([2, 0])
    assert result.nullspace == (Vector([-1, 1]),)


def test_solve_checks_shapes():
    with pytest.raises(DimensionMismatch):
        solve(Matrix.identity(2), Vector([1, 2, 3]))
    with pytest.raises(DimensionMismatch):
        solve(Matrix.from_columns([], rows=2), Vector([1, 2]))


def test_nullspace_without_columns():
    assert nullspace(Matrix.from_columns([], rows=3)) == []


@settings(max_examples=50)
@given(matrices())
def test_rank_of_transpose(m):
    assert rank(m) == rank(m.transpose())


@settings(max_examples=50)
@given(matrices())
def test_nullspace_vectors_are_annihilated(m):
    basis = nullspace(m)
    assert len(basis) == m.cols - rank(m)
    for v in basis:
        assert (m @ v).is_zero()


@settings(max_examples=100)
@given(st.data())
def test_solve_consistent_systems(data):
    m = data.draw(matrices())
    x = data.draw(vectors(m.cols, small_ints))
    rhs = m @ x
    result = solve(m, rhs)
    if rank(m) == m.cols:
        assert result == Unique(x)
    else:
        assert isinstance(result, Infinite)
        assert m @ result.particular == rhs
        assert all((m @ v).is_zero() for v in result.nullspace)


def test_domain_conversion_keeps_exact_entries():
    m = Matrix.from_rows([[Fraction(1, 3), -2], [0, Fraction(-7, 4)]])
    assert from_domain(to_domain(m)) == m


def test_matrix_product():
    a = Matrix.from_rows([[1, 2], [0, Fraction(1, 2)]])
    b = Matrix.from_rows([[2, 0], [-1, 4]])
    assert a @ b == Matrix.from_rows([[0, 8], [Fraction(-1, 2), 2]])
    with pytest.raises(DimensionMismatch):
        a @ Matrix.identity(3)


@settings(max_examples=50)
@given(matrices(elements=st.fractions(min_value=-3, max_value=3, max_denominator=4)))
def test_rref_shape(m):
    reduced, pivots = rref(m)
    assert pivots == sorted(set(pivots))
    for r, p in enumerate(pivots):
        assert reduced.entry(r, p) == 1
        assert all(reduced.entry(i, p) == 0 for i in range(m.rows) if i != r)
        assert all(reduced.entry(r, j) == 0 for j in range(p))
    for r in range(len(pivots), m.rows):
        assert all(x == 0 for x in reduced.row(r))


@settings(max_examples=50)
@given(matrices())
def test_rref_is_idempotent(m):
    reduced, pivots = rref(m)
    assert rref(reduced) == (reduced, pivots)


# --- Brute-force check of inconsistency on a half-integer grid ---
GRID = range(-6, 7)


@settings(max_examples=100)
@given(st.data())
def test_inconsistent_systems_have_no_grid_solution(data):
    m = data.draw(matrices())
    if data.draw(st.booleans()):
        doubled = data.draw(vectors(m.cols, st.sampled_from(GRID)))
        rhs = m @ (doubled * Fraction(1, 2))
    else:
        rhs = data.draw(vectors(m.rows))
    result = solve(m, rhs)
    grid = np.array(list(itertools.product(GRID, repeat=m.cols)), dtype=np.int64)
    coefficients = np.array([[int(x) for x in row] for row in m.to_rows()], dtype=np.int64)
    target = np.array([int(2 * b) for b in rhs], dtype=np.int64)
    grid_hit = bool(np.all(grid @ coefficients.T == target, axis=1).any())
    if isinstance(result, Inconsistent):
        assert not grid_hit
    else:
        assert m @ result.particular == rhs
