from fractions import Fraction
from itertools import product

import pytest
from hypothesis import assume, given, settings, strategies as st

from Complex.feasibility import (
    Constraint,
    common_interior_point,
    eliminate,
    feasible_point,
    strictly_positive_solution,
)
from Geometry.affine import PointSet, is_geometrically_independent
from Geometry.errors import DimensionMismatch
from Geometry.linalg import Matrix, Vector
from Geometry.simplex import Position, classify_point, make_simplex
from strategies import vectors


def _satisfies(constraints, values):
    return all(c.evaluate(values) > 0 if c.strict else c.evaluate(values) >= 0 for c in constraints)


def test_constraint_normalization():
    assert Constraint((2, -4), 6).normalized() == Constraint((Fraction(1, 2), -1), Fraction(3, 2))
    assert Constraint((0, 0), -3, strict=False).normalized() == Constraint((0, 0), -1, strict=False)


def test_eliminate_combines_opposite_bounds():
    # x > 0 and 1 - x > 0 project to 1 > 0
    projected = eliminate([Constraint((1,), 0), Constraint((-1,), 1)], 0)
    assert projected == [Constraint((0,), 1)]


@pytest.mark.parametrize("constraints, expected", [
    ([Constraint((1,), 0)], (1,)),
    ([Constraint((1,), 0), Constraint((-1,), 1)], (Fraction(1, 2),)),
    ([Constraint((1,), 0, strict=False), Constraint((-1,), 0, strict=False)], (0,)),
    ([], (0,)),
])
def test_feasible_point_one_variable(constraints, expected):
    assert feasible_point(constraints, 1) == expected


@pytest.mark.parametrize("constraints", [
    [Constraint((1,), 0), Constraint((-1,), 0)],
    [Constraint((1,), 0), Constraint((-1,), 0, strict=False)],
    [Constraint((0,), -1, strict=False)],
    [Constraint((1,), -2), Constraint((-1,), 1)],
])
def test_infeasible_one_variable(constraints):
    assert feasible_point(constraints, 1) is None


def test_feasible_point_in_open_triangle():
    constraints = [Constraint((1, 0), 0), Constraint((0, 1), 0), Constraint((-1, -1), 1)]
    witness = feasible_point(constraints, 2)
    assert witness is not None and _satisfies(constraints, witness)


def test_feasible_point_rejects_wrong_width():
    with pytest.raises(DimensionMismatch):
        feasible_point([Constraint((1, 0), 0)], 1)


def test_strictly_positive_solution():
    z = strictly_positive_solution(Matrix.from_rows([[1, 1]]), Vector([1]))
    assert z is not None and sum(z) == 1 and all(x > 0 for x in z)
    assert strictly_positive_solution(Matrix.from_rows([[1, 1]]), Vector([-1])) is None
    assert strictly_positive_solution(Matrix.identity(2), Vector([1, 2])) == Vector([1, 2])
    assert strictly_positive_solution(Matrix.identity(2), Vector([1, -2])) is None
    assert strictly_positive_solution(Matrix.from_rows([[1], [1]]), Vector([1, 2])) is None


def test_overlapping_triangles_share_interior():
    first = PointSet.of((0, 0), (2, 0), (0, 2))
    second = PointSet.of((Fraction(1, 2), Fraction(1, 2)), (3, 1), (1, 3))
    point = common_interior_point(first, second)
    assert point is not None
    assert classify_point(make_simplex(first), point).position is Position.INTERIOR
    assert classify_point(make_simplex(second), point).position is Position.INTERIOR


@pytest.mark.parametrize("first, second", [
    (((0, 0), (1, 0), (0, 1)), ((2, 2), (3, 2), (2, 3))),
    (((0, 0), (4, 0), (2, 3)), ((4, 0), (2, 3), (6, 3))),
    (((0, 0), (1, 0)), ((1, 0), (2, 0))),
    (((0, 0), (4, 0), (2, 3)), ((4, 0), (2, 3))),
])
def test_disjoint_interiors(first, second):
    assert common_interior_point(PointSet.of(*first), PointSet.of(*second)) is None


def test_crossing_edges_meet_at_one_point():
    point = common_interior_point(PointSet.of((0, 0), (6, 3)), PointSet.of((4, 0), (2, 3)))
    assert point == Vector((3, Fraction(3, 2)))


def test_vertex_inside_triangle():
    point = common_interior_point(PointSet.of((Fraction(1, 2), Fraction(1, 2))), PointSet.of((0, 0), (2, 0), (0, 2)))
    assert point == Vector((Fraction(1, 2), Fraction(1, 2)))


def test_collinear_overlap_and_self_overlap():
    assert common_interior_point(PointSet.of((0, 0), (2, 0)), PointSet.of((1, 0), (3, 0))) is not None
    triangle = PointSet.of((0, 0), (4, 0), (2, 3))
    assert common_interior_point(triangle, triangle) is not None


def test_common_interior_point_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        common_interior_point(PointSet.of((0, 0)), PointSet.of((0, 0, 0)))


# --- Properties ---
constraints_2d = st.builds(
    Constraint,
    st.tuples(st.integers(-2, 2), st.integers(-2, 2)),
    st.integers(-2, 2),
    st.booleans(),
)

GRID = [Fraction(k, 4) for k in range(-12, 13)]


@settings(max_examples=100)
@given(st.lists(constraints_2d, max_size=5))
def test_elimination_finds_what_a_grid_search_finds(constraints):
    witness = feasible_point(constraints, 2)
    if witness is not None:
        assert _satisfies(constraints, witness)
    else:
        assert not any(_satisfies(constraints, point) for point in product(GRID, repeat=2))


@st.composite
def planar_simplices(draw):
    size = draw(st.integers(1, 3))
    points = PointSet(tuple(draw(vectors(2, st.integers(-3, 3))) for _ in range(size)))
    assume(is_geometrically_independent(points))
    return points


@settings(max_examples=100)
@given(planar_simplices(), planar_simplices())
def test_common_interior_point_is_symmetric_and_interior(first, second):
    point = common_interior_point(first, second)
    assert (point is None) == (common_interior_point(second, first) is None)
    if point is not None:
        assert classify_point(make_simplex(first), point).position is Position.INTERIOR
        assert classify_point(make_simplex(second), point).position is Position.INTERIOR
