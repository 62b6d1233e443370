import logging
from dataclasses import dataclass
from fractions import Fraction

from Geometry.errors import DimensionMismatch
from Geometry.linalg import Inconsistent, Matrix, Unique, Vector, combine, solve

logger = logging.getLogger(__name__)


# --- Linear constraints over named variables ---
@dataclass(frozen=True)
class Constraint:
    """
    Linear inequality  coeffs . theta + constant > 0  (strict) or >= 0.
    """
    coeffs: tuple
    constant: Fraction
    strict: bool = True

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))
        object.__setattr__(self, "constant", Fraction(self.constant))

    def is_trivial(self):
        return all(c == 0 for c in self.coeffs)

    def holds_trivially(self):
        return self.constant > 0 if self.strict else self.constant >= 0

    def evaluate(self, values):
        return sum((c * v for c, v in zip(self.coeffs, values)), Fraction(0)) + self.constant

    def normalized(self):
        """
        Scale by a positive factor so that equal half-spaces compare equal.
        """
        scale = max((abs(c) for c in self.coeffs), default=Fraction(0))
        if scale == 0:
            scale = abs(self.constant) or Fraction(1)
        return Constraint(tuple(c / scale for c in self.coeffs), self.constant / scale, self.strict)


# --- Fourier-Motzkin elimination ---
def _combine_pair(upper, lower, var):
    """
    Cancel `var` between a constraint with a positive coefficient and one with
    a negative coefficient. The result is strict if either input is strict.
    """
    a_p, a_n = upper.coeffs[var], lower.coeffs[var]
    coeffs = tuple(-a_n * p + a_p * n for p, n in zip(upper.coeffs, lower.coeffs))
    constant = -a_n * upper.constant + a_p * lower.constant
    return Constraint(coeffs, constant, upper.strict or lower.strict).normalized()


def eliminate(constraints, var):
    """
    One Fourier-Motzkin step: the projection of the system onto the remaining
    variables. Constraints that became trivial stay in the list.
    """
    positive = [c for c in constraints if c.coeffs[var] > 0]
    negative = [c for c in constraints if c.coeffs[var] < 0]
    kept = {c for c in constraints if c.coeffs[var] == 0}
    for upper in positive:
        for lower in negative:
            kept.add(_combine_pair(upper, lower, var))
    logger.debug("eliminated theta_%d: %d+ %d- -> %d constraints", var, len(positive), len(negative), len(kept))
    return sorted(kept, key=lambda c: (c.coeffs, c.constant, c.strict))


# --- Back substitution ---
def _choose(constraints, var, fixed):
    """
    Pick a value for `var` inside the interval left by the constraints once the
    variables before it are fixed: the midpoint, or one unit past a single bound.
    """
    lowers, uppers = [], []
    for c in constraints:
        a = c.coeffs[var]
        if a == 0:
            continue
        rest = sum((c.coeffs[i] * fixed[i] for i in range(var)), Fraction(0)) + c.constant
        (lowers if a > 0 else uppers).append((-rest / a, c.strict))
    if not lowers and not uppers:
        return Fraction(0)
    if not uppers:
        return max(b for b, _ in lowers) + 1
    if not lowers:
        return min(b for b, _ in uppers) - 1
    lower = max(b for b, _ in lowers)
    upper = min(b for b, _ in uppers)
    if lower == upper:
        assert not any(s for b, s in lowers + uppers if b == lower), "elimination admitted an empty interval"
        return lower
    return (lower + upper) / 2


def feasible_point(constraints, variables):
    """
    Decide exactly whether the system of (possibly strict) linear inequalities
    in `variables` unknowns has a solution. Returns a witness tuple or None.
    """
    constraints = [c.normalized() for c in constraints]
    if any(len(c.coeffs) != variables for c in constraints):
        raise DimensionMismatch(f"constraints must have {variables} coefficients")
    stages = [constraints]
    for var in reversed(range(variables)):
        current = eliminate(stages[-1], var)
        if any(c.is_trivial() and not c.holds_trivially() for c in current):
            return None
        stages.append(current)
    if not all(c.holds_trivially() for c in stages[-1]):
        return None

    # stages[variables - 1 - j] only involves theta_0..theta_j
    values = []
    for var in range(variables):
        values.append(_choose(stages[variables - var - 1], var, values))
    values = tuple(values)
    assert all(c.evaluate(values) > 0 if c.strict else c.evaluate(values) >= 0 for c in constraints)
    return values


# --- Strict feasibility of simplex systems ---
def strictly_positive_solution(m, rhs):
    """
    A solution z of m z = rhs with every entry strictly positive, or None.
    The equality system is solved first; the strict inequalities are then
    posed over the free parameters of its solution set.
    """
    result = solve(m, rhs)
    if isinstance(result, Inconsistent):
        return None
    if isinstance(result, Unique):
        z = result.solution
        return z if all(x > 0 for x in z) else None
    base, basis = result.particular, result.nullspace
    constraints = [
        Constraint(tuple(v[i] for v in basis), base[i], strict=True)
        for i in range(m.cols)
    ]
    theta = feasible_point(constraints, len(basis))
    if theta is None:
        return None
    z = base + combine(theta, basis)
    assert m @ z == rhs
    return z


def common_interior_point(first, second):
    """
    A point with strictly positive barycentric coordinates in both simplices
    (given as vertex PointSets), or None when their open interiors are disjoint.
    Args:
        first: Vertices of the first simplex.
        second: Vertices of the second simplex, in the same ambient space.

    Unknowns are the two coordinate vectors (lambda, mu):
        sum(lambda) = 1, sum(mu) = 1, sum(lambda_i a_i) - sum(mu_j b_j) = 0.
    """
    if first.ambient_dim != second.ambient_dim:
        raise DimensionMismatch("simplices live in different ambient spaces")
    p, q = len(first), len(second)
    rows = [[1] * p + [0] * q, [0] * p + [1] * q]
    for axis in range(first.ambient_dim):
        rows.append([a[axis] for a in first] + [-b[axis] for b in second])
    rhs = Vector([1, 1] + [0] * first.ambient_dim)
    z = strictly_positive_solution(Matrix.from_rows(rows), rhs)
    if z is None:
        return None
    return combine(z.entries[:p], first)
