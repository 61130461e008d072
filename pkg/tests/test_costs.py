"""Unit coverage for the resource measures and step-cost ladders."""

import numpy as np
import pytest

from mintplan import (
    BOUNDARY_TOL,
    CapacityExceededError,
    CoinSpec,
    Disruption,
    MintConfig,
    MintingPlan,
    ShiftSelection,
    annealing_cost,
    blanking_cost,
    minimal_shifts,
    plan_cost,
    shift_cost,
    striking_cost,
    usage,
    usage_cost,
    usage_levels,
)

CFG = MintConfig(
    blanking_breakpoints=(10.0, 14.0, 18.0),
    blanking_costs=(5.0, 9.0),
    annealing_base=30.0,
    annealing_max=45.0,
    annealing_cost=7.0,
    striking_breakpoints=(100.0, 120.0, 140.0),
    striking_costs=(11.0, 20.0),
)

SPECS = (
    CoinSpec("d1", alloy_weight=0.0, blanking_rate=0.1),
    CoinSpec("d2", alloy_weight=1.0, blanking_rate=0.05),
)


def test_usage_is_linear_in_orders():
    u = usage((10.0, 20.0), SPECS)
    assert u.blanking_days == 2.0
    assert u.annealing_tons == 20.0
    assert u.striking_count == 30.0

    doubled = usage((20.0, 40.0), SPECS)
    assert doubled.blanking_days == 2 * u.blanking_days
    assert doubled.annealing_tons == 2 * u.annealing_tons
    assert doubled.striking_count == 2 * u.striking_count

    a = usage((3.0, 7.0), SPECS)
    b = usage((5.0, 2.0), SPECS)
    both = usage((8.0, 9.0), SPECS)
    assert both.blanking_days == pytest.approx(a.blanking_days + b.blanking_days)
    assert both.annealing_tons == pytest.approx(a.annealing_tons + b.annealing_tons)
    assert both.striking_count == a.striking_count + b.striking_count


def test_zero_weight_coins_need_no_annealing():
    u = usage((100.0, 0.0), SPECS)
    assert u.annealing_tons == 0.0
    assert u.blanking_days == pytest.approx(10.0)


def test_blanking_steps():
    assert blanking_cost(0.0, CFG) == 0.0
    assert blanking_cost(9.0, CFG) == 0.0
    assert blanking_cost(10.0, CFG) == 0.0  # base interval is closed on the right
    assert blanking_cost(12.0, CFG) == 5.0
    assert blanking_cost(14.0, CFG) == 5.0
    assert blanking_cost(16.0, CFG) == 9.0
    assert blanking_cost(18.0, CFG) == 9.0


def test_annealing_steps():
    assert annealing_cost(30.0, CFG) == 0.0
    assert annealing_cost(31.0, CFG) == 7.0
    assert annealing_cost(45.0, CFG) == 7.0


def test_striking_steps():
    assert striking_cost(100.0, CFG) == 0.0
    assert striking_cost(120.0, CFG) == 11.0
    assert striking_cost(130.0, CFG) == 20.0
    assert striking_cost(140.0, CFG) == 20.0


def test_beyond_top_capacity_raises():
    with pytest.raises(CapacityExceededError) as info:
        blanking_cost(18.5, CFG)
    assert info.value.process == "blanking"
    assert info.value.usage == 18.5
    assert info.value.limit == 18.0

    with pytest.raises(CapacityExceededError):
        annealing_cost(46.0, CFG)
    with pytest.raises(CapacityExceededError):
        striking_cost(141.0, CFG)


def test_breakpoint_boundary_tolerance():
    # a hair beyond a breakpoint still counts as the cheaper level
    assert blanking_cost(10.0 + BOUNDARY_TOL / 2, CFG) == 0.0
    assert blanking_cost(14.0 + BOUNDARY_TOL / 2, CFG) == 5.0
    assert striking_cost(140.0 + BOUNDARY_TOL / 2, CFG) == 20.0
    # clearly beyond is the next level (or an error at the top)
    assert blanking_cost(10.0 + 1e-6, CFG) == 5.0
    with pytest.raises(CapacityExceededError):
        striking_cost(140.0 + 1e-6, CFG)


def test_step_costs_are_monotone():
    rng = np.random.default_rng(5)
    for fn, top in ((blanking_cost, 18.0), (annealing_cost, 45.0), (striking_cost, 140.0)):
        values = np.sort(rng.uniform(0.0, top, 40))
        costs = [fn(float(v), CFG) for v in values]
        assert all(hi >= lo for lo, hi in zip(costs, costs[1:]))


def test_usage_cost_composes_processes():
    u = usage((100.0, 30.0), SPECS)
    assert u.blanking_days == pytest.approx(11.5)
    assert u.annealing_tons == 30.0
    assert u.striking_count == 130.0
    # blanking level 1 + annealing base + striking level 2
    assert usage_cost(u, CFG) == 25.0
    assert usage_levels(u, CFG) == (1, 0, 2)


def test_disruptions_scale_breakpoints_multiplicatively():
    dis = (
        Disruption(quarter=2, process="striking", capacity_scale=0.5),
        Disruption(quarter=2, process="striking", capacity_scale=0.8),
    )
    u = usage((30.0, 9.0), SPECS)  # 39 million coins
    assert usage_cost(u, CFG, dis, quarter=2) == 0.0  # 39 <= 0.4 * 100
    u = usage((32.0, 9.0), SPECS)  # 41 million
    assert usage_cost(u, CFG, dis, quarter=2) == 11.0
    # other quarters keep the full ladder
    assert usage_cost(u, CFG, dis, quarter=1) == 0.0
    with pytest.raises(CapacityExceededError):
        usage_cost(usage((50.0, 9.0), SPECS), CFG, dis, quarter=2)  # 59 > 0.4 * 140


def test_plan_cost_and_minimal_shifts_agree():
    plan = MintingPlan(
        orders=[[100.0, 30.0], [50.0, 20.0]],
        inventory=[[0.0, 0.0], [0.0, 0.0]],
    )
    assert plan_cost(plan, SPECS, CFG) == 25.0
    shifts = minimal_shifts(plan, SPECS, CFG)
    assert shifts.blanking == (1, 0)
    assert shifts.annealing == (0, 0)
    assert shifts.striking == (2, 0)
    assert shift_cost(shifts, CFG) == plan_cost(plan, SPECS, CFG)


def test_plan_cost_random_equivalence():
    """plan_cost always equals the cost of the minimal covering shifts."""
    rng = np.random.default_rng(11)
    for _ in range(50):
        orders = rng.uniform(0.0, 60.0, (3, 2))
        plan = MintingPlan(orders=orders, inventory=np.zeros((3, 2)))
        try:
            total = plan_cost(plan, SPECS, CFG)
        except CapacityExceededError:
            continue
        assert total == shift_cost(minimal_shifts(plan, SPECS, CFG), CFG)


def test_shift_cost_rejects_levels_beyond_ladder():
    with pytest.raises(ValueError):
        shift_cost(ShiftSelection(blanking=(3,), annealing=(0,), striking=(0,)), CFG)
