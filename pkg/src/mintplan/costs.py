"""Resource measures and piecewise extra-shift costs.

A production order consumes three resources: blanking-line time in
working days, annealing throughput in tons, and striking-press count in
millions of coins. Each process charges nothing up to its base
breakpoint and a flat fee per additional shift level, with intervals
closed on the right.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .model import (
    BOUNDARY_TOL,
    CoinSpec,
    Disruption,
    MintConfig,
    MintingPlan,
    MintPlanError,
    ShiftSelection,
    scaled_breakpoints,
)


class CapacityExceededError(MintPlanError):
    """Usage lies beyond the last capacity breakpoint of a process."""

    def __init__(self, process: str, usage: float, limit: float, quarter: int | None = None):
        self.process = process
        self.usage = usage
        self.limit = limit
        self.quarter = quarter
        where = f" in quarter {quarter}" if quarter is not None else ""
        super().__init__(
            f"{process} usage {usage:g}{where} exceeds the top capacity {limit:g}"
        )


@dataclass(frozen=True)
class ResourceUsage:
    """Resource consumption of one quarter's order."""

    blanking_days: float
    annealing_tons: float
    striking_count: float

    def for_process(self, process: str) -> float:
        if process == "blanking":
            return self.blanking_days
        if process == "annealing":
            return self.annealing_tons
        if process == "striking":
            return self.striking_count
        raise ValueError(f"unknown process {process!r}")


def usage(order: Sequence[float], specs: Sequence[CoinSpec]) -> ResourceUsage:
    """Resource usage of a single quarter's order vector.

    All three measures are linear in the order: days are
    sum(blanking_rate * order), tons sum(alloy_weight * order), and the
    striking count is the plain coin total.
    """
    arr = np.asarray(order, dtype=float)
    if arr.shape != (len(specs),):
        raise ValueError(f"order must have one entry per denomination, got shape {arr.shape}")
    rates = np.array([s.blanking_rate for s in specs])
    weights = np.array([s.alloy_weight for s in specs])
    return ResourceUsage(
        blanking_days=float(rates @ arr),
        annealing_tons=float(weights @ arr),
        striking_count=float(np.sum(arr)),
    )


def _step_level(value: float, breaks: Sequence[float], process: str, quarter: int | None) -> int:
    # intervals are right-closed: value == breaks[i] still belongs to level i
    if value <= breaks[0] + BOUNDARY_TOL:
        return 0
    for lvl in range(1, len(breaks)):
        if value <= breaks[lvl] + BOUNDARY_TOL:
            return lvl
    raise CapacityExceededError(process, value, breaks[-1], quarter)


def _step_cost(value: float, breaks: Sequence[float], level_costs: Sequence[float], process: str, quarter: int | None) -> float:
    lvl = _step_level(value, breaks, process, quarter)
    return 0.0 if lvl == 0 else float(level_costs[lvl - 1])


def blanking_cost(days: float, config: MintConfig) -> float:
    """Extra-shift cost for a blanking load of ``days`` working days."""
    return _step_cost(days, config.blanking_breakpoints, config.blanking_costs, "blanking", None)


def annealing_cost(tons: float, config: MintConfig) -> float:
    """Extra-shift cost for an annealing load of ``tons`` tons."""
    return _step_cost(tons, (config.annealing_base, config.annealing_max), (config.annealing_cost,), "annealing", None)


def striking_cost(count: float, config: MintConfig) -> float:
    """Extra-shift cost for striking ``count`` million coins."""
    return _step_cost(count, config.striking_breakpoints, config.striking_costs, "striking", None)


def usage_cost(
    u: ResourceUsage,
    config: MintConfig,
    disruptions: Sequence[Disruption] = (),
    quarter: int = 0,
) -> float:
    """Total extra-shift cost of one quarter's usage, with the quarter's
    disruptions applied to the breakpoints."""
    total = 0.0
    for process in ("blanking", "annealing", "striking"):
        breaks = scaled_breakpoints(config, disruptions, quarter, process)
        total += _step_cost(u.for_process(process), breaks, config.level_costs(process), process, quarter)
    return total


def usage_levels(
    u: ResourceUsage,
    config: MintConfig,
    disruptions: Sequence[Disruption] = (),
    quarter: int = 0,
) -> tuple[int, int, int]:
    """Minimal covering (blanking, annealing, striking) levels for one
    quarter's usage under the quarter's effective breakpoints."""
    out = []
    for process in ("blanking", "annealing", "striking"):
        breaks = scaled_breakpoints(config, disruptions, quarter, process)
        out.append(_step_level(u.for_process(process), breaks, process, quarter))
    return tuple(out)


def plan_cost(
    plan: MintingPlan,
    specs: Sequence[CoinSpec],
    config: MintConfig,
    disruptions: Sequence[Disruption] = (),
) -> float:
    """Extra-shift bill of a whole plan: the sum over quarters of the
    three per-process step costs. Raises CapacityExceededError if any
    quarter's usage lies beyond the top breakpoint."""
    total = 0.0
    for t in range(plan.horizon):
        u = usage(plan.orders[t], specs)
        total += usage_cost(u, config, disruptions, t)
    return total


def minimal_shifts(
    plan: MintingPlan,
    specs: Sequence[CoinSpec],
    config: MintConfig,
    disruptions: Sequence[Disruption] = (),
) -> ShiftSelection:
    """Smallest shift level per quarter and process whose breakpoint
    covers the plan's usage. ``plan_cost`` equals the cost of exactly
    this selection."""
    blanking, annealing, striking = [], [], []
    for t in range(plan.horizon):
        u = usage(plan.orders[t], specs)
        b, a, s = usage_levels(u, config, disruptions, t)
        blanking.append(b)
        annealing.append(a)
        striking.append(s)
    return ShiftSelection(blanking=tuple(blanking), annealing=tuple(annealing), striking=tuple(striking))


def shift_cost(shifts: ShiftSelection, config: MintConfig) -> float:
    """Cost implied by an explicit shift selection."""
    total = 0.0
    for process in ("blanking", "annealing", "striking"):
        level_costs = config.level_costs(process)
        for lvl in shifts.levels(process):
            if lvl > len(level_costs):
                raise ValueError(f"{process} level {lvl} exceeds the ladder ({len(level_costs)} levels)")
            if lvl > 0:
                total += level_costs[lvl - 1]
    return total
