"""First-quarter refinement procedures layered on top of the solver.

Both procedures look only at the first quarter of a solved plan, try a
restricted variant of the model, and keep the restricted solution only
when it does not hurt:

* ``procedure1`` pushes slack out of the plan. If the first quarter
  leaves base striking (then blanking) capacity unused, it re-solves
  with that base capacity pinned to full use and accepts the new plan
  when the extra-shift bill is unchanged, banking free production as
  inventory.
* ``procedure2`` postpones paid capacity. If the first quarter uses an
  extra level of striking, blanking, or annealing, it re-solves with
  that level forbidden in the first quarter and accepts whenever the
  restricted model is still feasible, deferring the spend until the
  forecast firms up.

Accepted restrictions accumulate: each acceptance replaces the working
model, so later guards are evaluated against the already-restricted
plan, and the solution's ``injections`` field carries the final set.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import bnb as bnb_mod
from . import costs as costs_mod
from . import mip as mip_mod
from .bnb import DEFAULT_NODE_CAP, RepairInfeasibleError
from .mip import DEFAULT_K_MAX, InjectedConstraint
from .model import BOUNDARY_TOL, MintConfig, Scenario, Solution, scaled_breakpoints

#: Cost drift allowed when calling a restricted solution "no worse".
ACCEPT_TOL = 1e-6


@dataclass(frozen=True)
class HeuristicEvent:
    """One guard evaluation that fired: which procedure, which process,
    whether the restricted model was accepted, and the cost movement."""

    procedure: str
    process: str
    quarter: int
    accepted: bool
    cost_delta: float | None
    reason: str


def _blanking_tolerance(scenario: Scenario, granularity: float) -> float:
    max_rate = max(spec.blanking_rate for spec in scenario.coin_specs)
    return max(ACCEPT_TOL, granularity * max_rate + BOUNDARY_TOL)


def _injections_hold(solution: Solution, scenario: Scenario, config: MintConfig, granularity: float) -> bool:
    """Whether the integerized plan still honors every injected
    restriction. Pinned coin totals must hold tightly; pinned blanking
    loads get one granule of slack; forbidden extras mean the quarter's
    usage stays within base capacity."""
    for inj in solution.injections:
        q = inj.quarter
        use = costs_mod.usage(solution.plan.orders[q], scenario.coin_specs)
        if inj.kind == "force_base_striking":
            target = scaled_breakpoints(config, scenario.disruptions, q, "striking")[0]
            if abs(use.striking_count - target) > ACCEPT_TOL:
                return False
        elif inj.kind == "force_base_blanking":
            target = scaled_breakpoints(config, scenario.disruptions, q, "blanking")[0]
            if abs(use.blanking_days - target) > _blanking_tolerance(scenario, granularity):
                return False
        else:
            process = inj.kind.removeprefix("forbid_extra_")
            base = scaled_breakpoints(config, scenario.disruptions, q, process)[0]
            if use.for_process(process) > base + ACCEPT_TOL:
                return False
    return True


def _solve_restricted(
    scenario: Scenario,
    config: MintConfig,
    injections: tuple[InjectedConstraint, ...],
    *,
    granularity: float,
    k_max: float,
    node_cap: int,
) -> Solution | None:
    """Full pipeline under the given injections, or None when the
    restricted model is infeasible or cannot be repaired."""
    problem = mip_mod.build(scenario, config, injections, k_max=k_max)
    sol = bnb_mod.solve_mip(problem, node_cap=node_cap)
    if sol.status != "optimal":
        return None
    try:
        sol = bnb_mod.integerize(sol, scenario, config, granularity=granularity, k_max=k_max, node_cap=node_cap)
    except RepairInfeasibleError:
        return None
    if not _injections_hold(sol, scenario, config, granularity):
        return None
    return sol


def procedure1(
    scenario: Scenario,
    config: MintConfig,
    solution: Solution,
    *,
    strict_objective: bool = False,
    granularity: float = 1.0,
    k_max: float = DEFAULT_K_MAX,
    node_cap: int = DEFAULT_NODE_CAP,
    events: list | None = None,
) -> Solution:
    """Fill unused first-quarter base capacity when it costs nothing.

    Checks striking first, then blanking against the current plan. Each
    firing guard re-solves with the base capacity pinned to full use
    and accepts only when the extra-shift bill is unchanged (with
    ``strict_objective`` the whole objective, including the safety
    reward, must be unchanged). When neither guard fires the input
    solution is returned untouched.
    """
    if solution.status != "optimal":
        raise ValueError("procedure1 needs an optimal solution to refine")
    current = solution
    for process, kind in (("striking", "force_base_striking"), ("blanking", "force_base_blanking")):
        base = scaled_breakpoints(config, scenario.disruptions, 0, process)[0]
        use = costs_mod.usage(current.plan.orders[0], scenario.coin_specs).for_process(process)
        if not use < base - BOUNDARY_TOL:
            continue
        candidate = _solve_restricted(
            scenario,
            config,
            current.injections + (InjectedConstraint(kind=kind, quarter=0),),
            granularity=granularity,
            k_max=k_max,
            node_cap=node_cap,
        )
        if candidate is None:
            accepted = False
            delta = None
            reason = "restricted model infeasible"
        else:
            delta = candidate.cost - current.cost
            if strict_objective:
                accepted = abs(candidate.objective - current.objective) <= ACCEPT_TOL
                reason = "objective unchanged" if accepted else "objective moved"
            else:
                accepted = abs(delta) <= ACCEPT_TOL
                reason = "cost unchanged" if accepted else "cost moved"
        if events is not None:
            events.append(
                HeuristicEvent(
                    procedure="procedure1",
                    process=process,
                    quarter=0,
                    accepted=accepted,
                    cost_delta=delta,
                    reason=reason,
                )
            )
        if accepted:
            current = candidate
    return current


def procedure2(
    scenario: Scenario,
    config: MintConfig,
    solution: Solution,
    *,
    granularity: float = 1.0,
    k_max: float = DEFAULT_K_MAX,
    node_cap: int = DEFAULT_NODE_CAP,
    events: list | None = None,
) -> Solution:
    """Postpone paid first-quarter capacity when feasibility allows.

    For each process whose first quarter sits on a paid level, re-solve
    with that process restricted to base capacity in the first quarter
    and accept whenever the restricted model stays feasible. When no
    paid level is active the input solution is returned untouched.
    """
    if solution.status != "optimal":
        raise ValueError("procedure2 needs an optimal solution to refine")
    current = solution
    for process, kind in (
        ("striking", "forbid_extra_striking"),
        ("blanking", "forbid_extra_blanking"),
        ("annealing", "forbid_extra_annealing"),
    ):
        if current.shifts.levels(process)[0] == 0:
            continue
        candidate = _solve_restricted(
            scenario,
            config,
            current.injections + (InjectedConstraint(kind=kind, quarter=0),),
            granularity=granularity,
            k_max=k_max,
            node_cap=node_cap,
        )
        accepted = candidate is not None
        delta = candidate.cost - current.cost if candidate is not None else None
        if events is not None:
            events.append(
                HeuristicEvent(
                    procedure="procedure2",
                    process=process,
                    quarter=0,
                    accepted=accepted,
                    cost_delta=delta,
                    reason="restricted model feasible" if accepted else "restricted model infeasible",
                )
            )
        if accepted:
            current = candidate
    return current


def run_heuristics(
    scenario: Scenario,
    config: MintConfig,
    solution: Solution,
    *,
    use_proc1: bool = True,
    use_proc2: bool = True,
    order: str = "proc2-first",
    strict_objective: bool = False,
    granularity: float = 1.0,
    k_max: float = DEFAULT_K_MAX,
    node_cap: int = DEFAULT_NODE_CAP,
    events: list | None = None,
) -> Solution:
    """Apply the enabled procedures in the configured order.

    Postponing first can free base capacity that the fill step then
    uses, so ``proc2-first`` is the default.
    """
    if order not in ("proc2-first", "proc1-first"):
        raise ValueError(f"unknown heuristic order {order!r}")
    current = solution
    steps = ("proc2", "proc1") if order == "proc2-first" else ("proc1", "proc2")
    for step in steps:
        if step == "proc1" and use_proc1:
            current = procedure1(
                scenario,
                config,
                current,
                strict_objective=strict_objective,
                granularity=granularity,
                k_max=k_max,
                node_cap=node_cap,
                events=events,
            )
        elif step == "proc2" and use_proc2:
            current = procedure2(
                scenario,
                config,
                current,
                granularity=granularity,
                k_max=k_max,
                node_cap=node_cap,
                events=events,
            )
    return current


def solve_pipeline(
    scenario: Scenario,
    config: MintConfig,
    *,
    use_proc1: bool = False,
    use_proc2: bool = False,
    order: str = "proc2-first",
    strict_objective: bool = False,
    granularity: float = 1.0,
    k_max: float = DEFAULT_K_MAX,
    node_cap: int = DEFAULT_NODE_CAP,
    events: list | None = None,
) -> Solution:
    """Solve, integerize, and optionally refine one scenario.

    Returns an infeasible Solution when the model has no feasible
    point; raises RepairInfeasibleError when rounding cannot be
    repaired even with escalation.
    """
    problem = mip_mod.build(scenario, config, k_max=k_max)
    sol = bnb_mod.solve_mip(problem, node_cap=node_cap)
    if sol.status != "optimal":
        return sol
    sol = bnb_mod.integerize(sol, scenario, config, granularity=granularity, k_max=k_max, node_cap=node_cap)
    if use_proc1 or use_proc2:
        sol = run_heuristics(
            scenario,
            config,
            sol,
            use_proc1=use_proc1,
            use_proc2=use_proc2,
            order=order,
            strict_objective=strict_objective,
            granularity=granularity,
            k_max=k_max,
            node_cap=node_cap,
            events=events,
        )
    return sol
