"""Model assembly: rows, columns, bounds, and the LP text format."""

import numpy as np
import pytest

from mintplan import (
    CoinSpec,
    Disruption,
    InjectedConstraint,
    LpFormatError,
    MintConfig,
    Scenario,
    build,
    check_solution,
    choose_mode,
    export_lp_text,
    objective_value,
    parse_lp_text,
)

CFG1 = MintConfig(
    blanking_breakpoints=(20.0, 28.0),
    blanking_costs=(4.0,),
    annealing_base=300.0,
    annealing_max=400.0,
    annealing_cost=6.0,
    striking_breakpoints=(70.0, 90.0),
    striking_costs=(9.0,),
)

SPEC1 = (CoinSpec("penny", alloy_weight=2.5, blanking_rate=0.2),)


def one_quarter_scenario() -> Scenario:
    return Scenario(
        horizon=1,
        coin_specs=SPEC1,
        demand=[[50.0]],
        operating_floor=[[10.0]],
        vault_cap=100.0,
        safety_min=[5.0],
        initial_inventory=[20.0],
    )


def test_single_quarter_row_and_column_inventory():
    problem = build(one_quarter_scenario(), CFG1)
    assert len(problem.rows) == 9
    assert len(problem.columns) == 6
    labels = [row.label for row in problem.rows]
    assert labels == [
        "annealing_capacity[0]",
        "striking_capacity[0]",
        "striking_level_choice[0]",
        "blanking_capacity[0]",
        "blanking_level_choice[0]",
        "inventory_balance[0,0]",
        "terminal_stock[0]",
        "vault_capacity[0]",
        "operating_floor[0,0]",
    ]
    assert problem.names == ("f[0,0]", "E[0,0]", "c[0,1]", "h[0]", "a[0,1]", "K")


def test_single_quarter_coefficients_by_hand():
    problem = build(one_quarter_scenario(), CFG1)
    by_label = problem.row_by_label

    row = by_label["annealing_capacity[0]"]
    assert row.relation == "<=" and row.rhs == 300.0
    assert dict(row.coeffs) == {0: 2.5, 3: -100.0}

    row = by_label["striking_capacity[0]"]
    assert row.relation == "<=" and row.rhs == 70.0
    assert dict(row.coeffs) == {0: 1.0, 4: -20.0}

    row = by_label["blanking_capacity[0]"]
    assert row.relation == "<=" and row.rhs == 20.0
    assert dict(row.coeffs) == {0: 0.2, 2: -8.0}

    row = by_label["inventory_balance[0,0]"]
    assert row.relation == "=" and row.rhs == 20.0 - 50.0
    assert dict(row.coeffs) == {0: -1.0, 1: 1.0}

    row = by_label["terminal_stock[0]"]
    assert row.relation == ">=" and row.rhs == 0.0
    assert dict(row.coeffs) == {1: 1.0, 5: -5.0}

    assert dict(by_label["vault_capacity[0]"].coeffs) == {1: 1.0}
    assert by_label["vault_capacity[0]"].rhs == 100.0
    assert by_label["operating_floor[0,0]"].relation == ">="
    assert by_label["operating_floor[0,0]"].rhs == 10.0

    # objective: paid levels plus the -K reward
    assert problem.objective == (0.0, 0.0, 4.0, 6.0, 9.0, -1.0)
    assert problem.binaries == (2, 3, 4)
    assert problem.upper[0] == 90.0  # orders capped at the top striking breakpoint
    assert problem.upper[1] == 100.0  # stocks capped at the vault
    assert problem.k_max == 2.0


def test_row_count_scales_with_size():
    for T, D in ((1, 1), (2, 2), (3, 2), (2, 4)):
        scenario = Scenario(
            horizon=T,
            coin_specs=tuple(CoinSpec(f"d{i}", alloy_weight=1.0, blanking_rate=0.2) for i in range(D)),
            demand=np.full((T, D), 5.0),
            operating_floor=np.zeros((T, D)),
            vault_cap=500.0,
            safety_min=np.zeros(D),
            initial_inventory=np.full(D, 10.0),
        )
        problem = build(scenario, CFG1)
        assert len(problem.rows) == 6 * T + 2 * T * D + D
        nc = CFG1.n_blanking_levels
        na = CFG1.n_striking_levels
        assert len(problem.columns) == 2 * T * D + T * (nc + na + 1) + 1


def test_disruption_scales_capacity_rows():
    scenario = Scenario(
        horizon=1,
        coin_specs=SPEC1,
        demand=[[20.0]],
        operating_floor=[[0.0]],
        vault_cap=100.0,
        safety_min=[5.0],
        initial_inventory=[20.0],
        disruptions=(Disruption(quarter=0, process="striking", capacity_scale=0.5),),
    )
    problem = build(scenario, CFG1)
    row = problem.row_by_label["striking_capacity[0]"]
    assert row.rhs == 35.0
    assert dict(row.coeffs)[4] == -10.0  # level increment scales too
    assert problem.upper[0] == 45.0


def test_build_rejects_invalid_inputs():
    with pytest.raises(ValueError):
        build(one_quarter_scenario(), CFG1, k_max=-1.0)
    bad = Scenario(
        horizon=1,
        coin_specs=SPEC1,
        demand=[[-1.0]],
        operating_floor=[[0.0]],
        vault_cap=100.0,
        safety_min=[5.0],
        initial_inventory=[20.0],
    )
    with pytest.raises(ValueError, match="demand"):
        build(bad, CFG1)


def test_check_solution_flags_each_violation_kind():
    problem = build(one_quarter_scenario(), CFG1)
    good = np.array([60.0, 30.0, 0.0, 0.0, 0.0, 2.0])
    assert check_solution(problem, good) == []

    over_capacity = np.array([80.0, 50.0, 0.0, 0.0, 0.0, 0.0])
    assert "striking_capacity[0]" in check_solution(problem, over_capacity)

    broken_balance = np.array([60.0, 35.0, 0.0, 0.0, 0.0, 0.0])
    assert "inventory_balance[0,0]" in check_solution(problem, broken_balance)

    below_floor = np.array([35.0, 5.0, 0.0, 0.0, 0.0, 0.0])
    assert "operating_floor[0,0]" in check_solution(problem, below_floor)

    out_of_bounds = good.copy()
    out_of_bounds[5] = 3.0  # beyond k_max
    assert "bound[K]" in check_solution(problem, out_of_bounds)

    fractional = np.array([75.0, 45.0, 0.0, 0.0, 0.5, 0.0])
    assert "binary[a[0,1]]" in check_solution(problem, fractional)

    with pytest.raises(ValueError):
        check_solution(problem, [1.0, 2.0])


def test_objective_value_matches_hand_sum():
    problem = build(one_quarter_scenario(), CFG1)
    x = np.array([75.0, 45.0, 0.0, 0.0, 1.0, 1.5])
    assert objective_value(problem, x) == pytest.approx(9.0 - 1.5)


def test_injected_constraints_add_labeled_rows():
    scenario = one_quarter_scenario()
    problem = build(scenario, CFG1, injected=(InjectedConstraint("force_base_striking", 0),))
    labels = [row.label for row in problem.rows]
    assert "force_base_striking[0]" in labels
    row = problem.row_by_label["force_base_striking[0]"]
    assert row.relation == "=" and row.rhs == 70.0

    forbid_all = (
        InjectedConstraint("forbid_extra_striking", 0),
        InjectedConstraint("forbid_extra_blanking", 0),
        InjectedConstraint("forbid_extra_annealing", 0),
    )
    problem2 = build(scenario, CFG1, injected=forbid_all)
    row2 = problem2.row_by_label["forbid_extra_striking[0]"]
    assert row2.relation == "=" and row2.rhs == 0.0
    assert {col for col, _ in row2.coeffs} == {4}
    assert {col for col, _ in problem2.row_by_label["forbid_extra_blanking[0]"].coeffs} == {2}
    assert {col for col, _ in problem2.row_by_label["forbid_extra_annealing[0]"].coeffs} == {3}

    with pytest.raises(ValueError):
        InjectedConstraint("force_maximum_striking", 0)


def test_lp_text_round_trip_is_exact():
    scenario = Scenario(
        horizon=2,
        coin_specs=(
            CoinSpec("penny", alloy_weight=2.5, blanking_rate=0.2),
            CoinSpec("nickel", alloy_weight=5.0, blanking_rate=0.25),
        ),
        demand=[[40.0, 26.0], [48.0, 32.0]],
        operating_floor=[[13.0, 9.0], [16.0, 11.0]],
        vault_cap=120.0,
        safety_min=[8.0, 5.0],
        initial_inventory=[18.0, 12.0],
        disruptions=(Disruption(quarter=1, process="blanking", capacity_scale=0.7),),
    )
    cfg = MintConfig(
        blanking_breakpoints=(20.0, 28.0, 34.0),
        blanking_costs=(4.0, 7.0),
        annealing_base=300.0,
        annealing_max=400.0,
        annealing_cost=6.0,
        striking_breakpoints=(70.0, 90.0, 105.0),
        striking_costs=(9.0, 15.0),
    )
    problem = build(scenario, cfg, injected=(InjectedConstraint("force_base_striking", 0),))
    text = export_lp_text(problem)
    parsed = parse_lp_text(text)
    assert parsed.columns == problem.columns
    assert parsed.objective == problem.objective
    assert parsed.rows == problem.rows
    assert parsed.lower == problem.lower
    assert parsed.upper == problem.upper
    assert parsed.binaries == problem.binaries
    assert parsed.mode == problem.mode
    assert parsed.injected == problem.injected
    assert export_lp_text(parsed) == text


def test_lp_text_survives_awkward_floats():
    scenario = Scenario(
        horizon=1,
        coin_specs=(CoinSpec("d1", alloy_weight=1.0 / 3.0, blanking_rate=0.1 + 1e-14),),
        demand=[[7.0 / 3.0]],
        operating_floor=[[0.1 * 3]],
        vault_cap=1e3 + 1e-9,
        safety_min=[0.0],
        initial_inventory=[2.0 / 7.0],
    )
    problem = build(scenario, CFG1)
    parsed = parse_lp_text(export_lp_text(problem))
    assert parsed.rows == problem.rows
    assert parsed.upper == problem.upper


def test_parse_lp_text_rejects_malformed_documents():
    problem = build(one_quarter_scenario(), CFG1)
    text = export_lp_text(problem)

    with pytest.raises(LpFormatError):
        parse_lp_text("not an lp file\n")
    with pytest.raises(LpFormatError):
        parse_lp_text(text.replace("mintplan-lp v1", "mintplan-lp v2"))
    with pytest.raises(LpFormatError):
        parse_lp_text(text.replace("subject to\n", ""))
    with pytest.raises(LpFormatError):
        parse_lp_text(text.replace("K", "Q"))


def test_choose_mode_by_cost_gap():
    coarse = MintConfig(
        blanking_breakpoints=(20.0, 28.0),
        blanking_costs=(8.0,),
        annealing_base=300.0,
        annealing_max=400.0,
        annealing_cost=12.0,
        striking_breakpoints=(70.0, 90.0),
        striking_costs=(20.0,),
    )
    # achievable cost sums are multiples of 4 apart: K <= 2 can never
    # flip a cost comparison, so one pass settles both objective parts
    assert choose_mode(coarse, horizon=2, k_max=2.0) == "combined"
    # a ceiling above the gap forces the explicit two-pass ordering
    assert choose_mode(coarse, horizon=2, k_max=5.0) == "lexicographic"
    # CFG1 reaches sums 4 and 6 in two quarters: gap 2 is not above k_max=2
    assert choose_mode(CFG1, horizon=2, k_max=2.0) == "lexicographic"


def test_mode_recorded_on_problem():
    problem = build(one_quarter_scenario(), CFG1)
    assert problem.mode == choose_mode(CFG1, 1, 2.0)
