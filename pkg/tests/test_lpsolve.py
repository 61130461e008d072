"""Bounded-variable simplex behavior, checked by hand and by oracle."""

import math

import numpy as np
import pytest

from mintplan import IterationCapExceeded, MintPlanError, Row, StandardFormProblem, VariableIndex, solve_lp

from oracles import lp_oracle, random_lp


def small_lp(objective, rows, lower, upper) -> StandardFormProblem:
    n = len(objective)
    return StandardFormProblem(
        columns=tuple(VariableIndex(kind="f", column=j, quarter=0, index=j) for j in range(n)),
        objective=tuple(float(v) for v in objective),
        rows=tuple(rows),
        lower=tuple(float(v) for v in lower),
        upper=tuple(float(v) for v in upper),
        binaries=(),
    )


def test_pure_bound_minimum():
    problem = small_lp([-1.0], [Row("r[0]", ((0, 1.0),), "<=", 5.0)], [0.0], [10.0])
    res = solve_lp(problem)
    assert res.status == "optimal"
    assert res.objective == pytest.approx(-5.0, abs=1e-9)
    assert res.x[0] == pytest.approx(5.0, abs=1e-9)


def test_two_variable_corner():
    # min -x - 2y subject to x + y <= 4, y <= 3
    rows = [
        Row("r[0]", ((0, 1.0), (1, 1.0)), "<=", 4.0),
        Row("r[1]", ((1, 1.0),), "<=", 3.0),
    ]
    res = solve_lp(small_lp([-1.0, -2.0], rows, [0.0, 0.0], [math.inf, math.inf]))
    assert res.status == "optimal"
    assert res.objective == pytest.approx(-7.0, abs=1e-9)
    assert res.x[0] == pytest.approx(1.0, abs=1e-8)
    assert res.x[1] == pytest.approx(3.0, abs=1e-8)


def test_equality_row_requires_phase1():
    rows = [Row("r[0]", ((0, 1.0), (1, 1.0)), "=", 6.0)]
    res = solve_lp(small_lp([2.0, 3.0], rows, [0.0, 0.0], [10.0, 10.0]))
    assert res.status == "optimal"
    assert res.objective == pytest.approx(12.0, abs=1e-9)  # all mass on the cheap column
    assert res.x[0] == pytest.approx(6.0, abs=1e-8)


def test_infeasible_and_unbounded_detection():
    rows = [
        Row("r[0]", ((0, 1.0),), ">=", 5.0),
        Row("r[1]", ((0, 1.0),), "<=", 2.0),
    ]
    res = solve_lp(small_lp([1.0], rows, [0.0], [10.0]))
    assert res.status == "infeasible"
    assert math.isnan(res.objective)
    assert res.x is None

    res = solve_lp(small_lp([-1.0], [], [0.0], [math.inf]))
    assert res.status == "unbounded"
    assert res.objective == -math.inf


def test_conflicting_bounds_are_infeasible():
    problem = small_lp([1.0], [], [3.0], [2.0])
    assert solve_lp(problem).status == "infeasible"


def test_negative_lower_bounds():
    res = solve_lp(small_lp([1.0], [Row("r[0]", ((0, 1.0),), ">=", -1.5)], [-4.0], [4.0]))
    assert res.status == "optimal"
    assert res.objective == pytest.approx(-1.5, abs=1e-9)


def test_free_columns_are_rejected():
    with pytest.raises(MintPlanError, match="unbounded in both directions"):
        solve_lp(small_lp([1.0], [], [-math.inf], [math.inf]))


def test_bounds_override_pins_columns():
    problem = small_lp([-1.0, -1.0], [Row("r[0]", ((0, 1.0), (1, 1.0)), "<=", 6.0)], [0.0, 0.0], [5.0, 5.0])
    res = solve_lp(problem, bounds_override={0: (2.0, 2.0)})
    assert res.status == "optimal"
    assert res.x[0] == pytest.approx(2.0, abs=1e-9)
    assert res.objective == pytest.approx(-6.0, abs=1e-9)


def test_iteration_cap_raises():
    rows = [
        Row("r[0]", ((0, 1.0), (1, 2.0)), "<=", 7.0),
        Row("r[1]", ((0, 2.0), (1, 1.0)), "<=", 8.0),
        Row("r[2]", ((0, 1.0), (1, -1.0)), ">=", -3.0),
    ]
    problem = small_lp([-3.0, -4.0], rows, [0.0, 0.0], [10.0, 10.0])
    with pytest.raises(IterationCapExceeded):
        solve_lp(problem, iteration_cap=1)


def test_degenerate_rows_do_not_cycle():
    # several redundant rows through the same corner; Bland's rule must
    # still terminate at the optimum
    rows = [
        Row("r[0]", ((0, 1.0), (1, 1.0)), "<=", 4.0),
        Row("r[1]", ((0, 2.0), (1, 2.0)), "<=", 8.0),
        Row("r[2]", ((0, 3.0), (1, 3.0)), "<=", 12.0),
        Row("r[3]", ((0, 1.0),), "<=", 4.0),
    ]
    res = solve_lp(small_lp([-1.0, -1.0], rows, [0.0, 0.0], [10.0, 10.0]))
    assert res.status == "optimal"
    assert res.objective == pytest.approx(-4.0, abs=1e-9)


def test_result_point_satisfies_all_rows():
    rng = np.random.default_rng(31)
    seen = 0
    while seen < 40:
        problem = random_lp(rng)
        res = solve_lp(problem)
        if res.status != "optimal":
            continue
        seen += 1
        for row in problem.rows:
            assert row.violation(res.x) <= 1e-7 * max(1.0, abs(row.rhs))
        for j in range(len(problem.columns)):
            assert res.x[j] >= problem.lower[j] - 1e-9
            assert res.x[j] <= problem.upper[j] + 1e-9


def test_agrees_with_vertex_oracle_on_random_lps():
    """Dense random LPs, including infeasible and unbounded draws."""
    rng = np.random.default_rng(123)
    statuses = {"optimal": 0, "infeasible": 0, "unbounded": 0}
    for _ in range(120):
        problem = random_lp(rng)
        want_status, want_objective = lp_oracle(problem)
        got = solve_lp(problem)
        assert got.status == want_status
        if want_status == "optimal":
            assert got.objective == pytest.approx(want_objective, abs=1e-7, rel=1e-7)
        statuses[want_status] += 1
    # the draw must actually exercise all three outcomes
    assert min(statuses.values()) >= 5
