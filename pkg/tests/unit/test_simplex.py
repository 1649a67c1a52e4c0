"""Unit tests for the dense two-phase simplex."""

import numpy as np
import pytest
from scipy.optimize import linprog

from sepbayes.errors import LpError
from sepbayes.separation import LpProblem, LpStatus, solve_lp


def test_textbook_problem():
    problem = LpProblem(
        c=[1.0, 1.0],
        A=[[1.0, 2.0], [3.0, 1.0]],
        b=[4.0, 6.0],
        lower=[0.0, 0.0],
        upper=[10.0, 10.0],
    )
    sol = solve_lp(problem)
    assert sol.status is LpStatus.OPTIMAL
    assert sol.value == pytest.approx(2.8)
    np.testing.assert_allclose(sol.x, [1.6, 1.2], atol=1e-10)


def test_infeasible():
    # x >= 2 with x <= 1
    problem = LpProblem(c=[1.0], A=[[-1.0]], b=[-2.0], lower=[0.0], upper=[1.0])
    sol = solve_lp(problem)
    assert sol.status is LpStatus.INFEASIBLE
    assert not sol.optimal
    assert sol.x is None


def test_box_straddling_zero():
    problem = LpProblem(c=[1.0], A=[[1.0]], b=[-0.5], lower=[-1.0], upper=[1.0])
    sol = solve_lp(problem)
    assert sol.optimal
    assert sol.value == pytest.approx(-0.5)


def test_bounds_shifted_away_from_zero():
    # minimize x + y over [2, 5] x [-7, -3]
    problem = LpProblem(
        c=[-1.0, -1.0], A=np.zeros((0, 2)), b=[], lower=[2.0, -7.0], upper=[5.0, -3.0]
    )
    sol = solve_lp(problem)
    assert sol.optimal
    np.testing.assert_allclose(sol.x, [2.0, -7.0])


def test_degenerate_cycling_example():
    """A classic degenerate problem on which the largest-coefficient rule cycles."""
    problem = LpProblem(
        c=[0.75, -150.0, 0.02, -6.0],
        A=[
            [0.25, -60.0, -0.04, 9.0],
            [0.5, -90.0, -0.02, 3.0],
            [0.0, 0.0, 1.0, 0.0],
        ],
        b=[0.0, 0.0, 1.0],
        lower=np.zeros(4),
        upper=np.full(4, 100.0),
    )
    sol = solve_lp(problem)
    assert sol.optimal
    assert sol.value == pytest.approx(0.05, abs=1e-10)


@pytest.mark.parametrize("seed", range(25))
def test_agrees_with_highs(seed):
    rng = np.random.default_rng(seed)
    m, k = rng.integers(1, 7), rng.integers(1, 5)
    A = rng.normal(size=(m, k))
    lower = -rng.uniform(0.5, 3.0, size=k)
    upper = rng.uniform(0.5, 3.0, size=k)
    # Feasible by construction: x0 satisfies A x <= b
    x0 = rng.uniform(lower, upper)
    b = A @ x0 + rng.uniform(0.0, 2.0, size=m)
    c = rng.normal(size=k)

    sol = solve_lp(LpProblem(c=c, A=A, b=b, lower=lower, upper=upper))
    ref = linprog(-c, A_ub=A, b_ub=b, bounds=list(zip(lower, upper)), method="highs")
    assert ref.status == 0
    assert sol.optimal
    assert sol.value == pytest.approx(-ref.fun, abs=1e-7)
    assert np.all(A @ sol.x <= b + 1e-7)


def test_dimension_mismatch():
    with pytest.raises(LpError, match="Dimension mismatch"):
        LpProblem(c=[1.0, 2.0], A=[[1.0, 2.0, 3.0]], b=[1.0], lower=[0, 0], upper=[1, 1])


def test_lower_above_upper():
    with pytest.raises(LpError, match="Lower bound"):
        LpProblem(c=[1.0], A=[[1.0]], b=[1.0], lower=[2.0], upper=[1.0])


def test_pivot_limit():
    problem = LpProblem(
        c=[1.0, 1.0], A=[[1.0, 2.0], [3.0, 1.0]], b=[4.0, 6.0], lower=[0, 0], upper=[10, 10]
    )
    with pytest.raises(LpError, match="Pivot limit"):
        solve_lp(problem, max_pivots=0)
