"""Branch-and-bound over the binary shift selections, plus the greedy
integerization step and a brute-force enumeration oracle.

The search is best-first on the LP relaxation bound. Each node fixes a
subset of the binaries through bound overrides; branching picks the
most fractional binary, breaking ties by process (striking, blanking,
annealing), then earliest quarter, then lowest level. Because the
heap always pops the smallest bound, the first integral node popped is
optimal and the search can stop there.

``lexicographic`` problems are solved in two passes: minimize the
extra-shift cost with the safety reward switched off, then pin the cost
at its optimum with one extra equality row and maximize K.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import replace
from itertools import product
from typing import Sequence

import numpy as np

from . import costs as costs_mod
from . import mip as mip_mod
from .lpsolve import solve_lp
from .mip import DEFAULT_K_MAX, InjectedConstraint, Row, StandardFormProblem
from .model import (
    BOUNDARY_TOL,
    CoinSpec,
    Disruption,
    MintConfig,
    MintingPlan,
    MintPlanError,
    Scenario,
    ShiftSelection,
    Solution,
)

#: Binary values within this of an integer count as integral.
INT_TOL = 1e-6

#: Default limit on LP relaxations solved per MIP solve.
DEFAULT_NODE_CAP = 1_000_000

_PROCESS_OF_KIND = {"c": "blanking", "h": "annealing", "a": "striking"}
_KIND_OF_PROCESS = {"blanking": "c", "annealing": "h", "striking": "a"}
_BRANCH_RANK = {"a": 0, "c": 1, "h": 2}


class NodeCapExceeded(MintPlanError):
    """Branch-and-bound hit its node budget before finishing."""


class RepairInfeasibleError(MintPlanError):
    """Greedy integerization could not restore all stock floors.

    ``partial_plan`` carries the best repaired plan reached before
    giving up, for inspection.
    """

    def __init__(self, message: str, partial_plan: MintingPlan | None = None):
        super().__init__(message)
        self.partial_plan = partial_plan


def _branch_column(problem: StandardFormProblem, x: np.ndarray) -> int | None:
    best_col = None
    best_key = None
    for col in problem.binaries:
        dist = min(x[col], 1.0 - x[col])
        if dist <= INT_TOL:
            continue
        var = problem.columns[col]
        key = (-dist, _BRANCH_RANK[var.kind], var.quarter, var.index or 0)
        if best_key is None or key < best_key:
            best_key, best_col = key, col
    return best_col


def _branch_and_bound(
    problem: StandardFormProblem,
    *,
    node_budget: list,
    pruning: bool,
    fixed: dict | None,
) -> np.ndarray | None:
    base_override = {col: (float(v), float(v)) for col, v in (fixed or {}).items()}

    def solve_node(override: dict):
        node_budget[0] -= 1
        if node_budget[0] < 0:
            raise NodeCapExceeded("branch-and-bound exceeded its node cap")
        return solve_lp(problem, bounds_override=override)

    root = solve_node(base_override)
    if root.status == "unbounded":
        raise MintPlanError("the relaxation is unbounded; every column should have finite bounds")
    if root.status != "optimal":
        return None

    heap = [(root.objective, 0, base_override, root.x)]
    seq = 1
    best_x: np.ndarray | None = None
    best_obj = math.inf
    while heap:
        bound, _, override, x = heapq.heappop(heap)
        if pruning and best_x is not None and bound >= best_obj - 1e-6:
            break
        col = _branch_column(problem, x)
        if col is None:
            if best_x is None or bound < best_obj - 1e-12:
                best_obj, best_x = bound, x
            if pruning:
                break  # best-first: nothing left can beat this bound
            continue
        for value in (0.0, 1.0):
            child = dict(override)
            child[col] = (value, value)
            res = solve_node(child)
            if res.status != "optimal":
                continue
            assert res.objective >= bound - 1e-6, "child bound fell below its parent"
            if pruning and best_x is not None and res.objective >= best_obj - 1e-6:
                continue
            heapq.heappush(heap, (res.objective, seq, child, res.x))
            seq += 1
    return best_x


def _shifts_from_binaries(problem: StandardFormProblem, x: np.ndarray) -> ShiftSelection:
    T = problem.horizon
    levels = {"blanking": [0] * T, "annealing": [0] * T, "striking": [0] * T}
    for col in problem.binaries:
        if x[col] > 0.5:
            var = problem.columns[col]
            process = _PROCESS_OF_KIND[var.kind]
            levels[process][var.quarter] = var.index if var.index is not None else 1
    return ShiftSelection(
        blanking=tuple(levels["blanking"]),
        annealing=tuple(levels["annealing"]),
        striking=tuple(levels["striking"]),
    )


def _extract_solution(problem: StandardFormProblem, x: np.ndarray) -> Solution:
    T, D = problem.horizon, problem.n_denoms
    orders = np.empty((T, D))
    inventory = np.empty((T, D))
    for t in range(T):
        for d in range(D):
            orders[t, d] = x[problem.column_index("f", t, d)]
            inventory[t, d] = x[problem.column_index("E", t, d)]
    np.maximum(orders, 0.0, out=orders)
    np.maximum(inventory, 0.0, out=inventory)
    plan = MintingPlan(orders=orders, inventory=inventory)
    k = float(x[problem.column_index("K")])
    cost = float(sum(problem.objective[col] * round(x[col]) for col in problem.binaries))

    shifts = None
    if problem.scenario is not None and problem.config is not None:
        try:
            shifts = costs_mod.minimal_shifts(
                plan, problem.scenario.coin_specs, problem.config, problem.scenario.disruptions
            )
        except costs_mod.CapacityExceededError:
            shifts = None  # boundary noise: fall back to the solver's own selection
    if shifts is None:
        shifts = _shifts_from_binaries(problem, x)

    return Solution(
        status="optimal",
        objective=cost - k,
        cost=cost,
        k=k,
        plan=plan,
        shifts=shifts,
        injections=problem.injected,
    )


def solve_mip(
    problem: StandardFormProblem,
    *,
    node_cap: int = DEFAULT_NODE_CAP,
    pruning: bool = True,
    fixed: dict | None = None,
) -> Solution:
    """Solve the model to optimality over its binaries.

    ``fixed`` maps binary columns to forced 0/1 values (used by the
    integerizer's shift escalation). ``pruning=False`` disables the
    incumbent bound test and explores the whole tree, which is only
    useful for validating the search itself.
    """
    budget = [node_cap]
    if problem.mode == "combined":
        x = _branch_and_bound(problem, node_budget=budget, pruning=pruning, fixed=fixed)
        if x is None:
            return Solution(status="infeasible", objective=math.nan, cost=math.nan, k=math.nan)
        return _extract_solution(problem, x)

    # lexicographic: cost first, then K with the cost pinned
    cost_objective = list(problem.objective)
    cost_objective[problem.column_index("K")] = 0.0
    phase1 = replace(problem, objective=tuple(cost_objective))
    x1 = _branch_and_bound(phase1, node_budget=budget, pruning=pruning, fixed=fixed)
    if x1 is None:
        return Solution(status="infeasible", objective=math.nan, cost=math.nan, k=math.nan)
    best_cost = float(sum(problem.objective[col] * round(x1[col]) for col in problem.binaries))

    k_objective = [0.0] * len(problem.columns)
    k_objective[problem.column_index("K")] = -1.0
    lock = Row(
        label="cost_lock[0]",
        coeffs=tuple(
            (col, problem.objective[col]) for col in problem.binaries if problem.objective[col] != 0.0
        ),
        relation="=",
        rhs=best_cost,
    )
    phase2 = replace(problem, objective=tuple(k_objective), rows=problem.rows + (lock,))
    x2 = _branch_and_bound(phase2, node_budget=budget, pruning=pruning, fixed=fixed)
    if x2 is None:  # the phase-1 point satisfies the lock, so this cannot happen
        raise MintPlanError("cost-locked second pass lost feasibility")
    return _extract_solution(problem, x2)


# ---------------------------------------------------------------------------
# integerization
# ---------------------------------------------------------------------------

def _row_capacity(breaks: Sequence[float], level: int) -> float:
    if level == 0:
        return breaks[0]
    return breaks[0] + (breaks[level] - breaks[level - 1])


def _audit_levels(solution: Solution, scenario: Scenario, config: MintConfig) -> dict:
    """Shift levels to audit against, per process and quarter: the
    solution's minimal levels, raised where a level's one-step row
    capacity cannot cover the usage its own breakpoint allows."""
    levels: dict[str, list[int]] = {}
    for process in ("blanking", "annealing", "striking"):
        n_levels = len(config.level_costs(process))
        out = []
        for t in range(scenario.horizon):
            breaks = costs_mod.scaled_breakpoints(config, scenario.disruptions, t, process)
            use = costs_mod.usage(solution.plan.orders[t], scenario.coin_specs).for_process(process)
            lvl = solution.shifts.levels(process)[t]
            while lvl < n_levels and use > _row_capacity(breaks, lvl) + BOUNDARY_TOL:
                lvl += 1
            out.append(lvl)
        levels[process] = out
    return levels


class _Repair:
    """Working state for the greedy plan repair."""

    def __init__(self, solution: Solution, scenario: Scenario, config: MintConfig, granularity: float):
        self.s = scenario
        self.cfg = config
        self.g = granularity
        self.rates = np.array([sp.blanking_rate for sp in scenario.coin_specs])
        self.weights = np.array([sp.alloy_weight for sp in scenario.coin_specs])
        self.relaxed = np.array(solution.plan.orders)
        self.k = solution.k
        self.notes: list[str] = []

        scaled = self.relaxed / granularity
        snapped = np.round(scaled)
        near = np.abs(scaled - snapped) <= 1e-7
        self.f = np.where(near, snapped, np.floor(scaled + 1e-12)) * granularity

        levels = _audit_levels(solution, scenario, config)
        self.caps = []  # per quarter: dict process -> usage ceiling at the kept selection
        self.levels = levels
        for t in range(scenario.horizon):
            per = {}
            for process in ("blanking", "annealing", "striking"):
                breaks = costs_mod.scaled_breakpoints(config, scenario.disruptions, t, process)
                lvl = levels[process][t]
                per[process] = min(_row_capacity(breaks, lvl), breaks[lvl])
            self.caps.append(per)

        self.pinned: dict[int, set[str]] = {}
        for inj in solution.injections:
            if inj.kind == "force_base_striking":
                self.pinned.setdefault(inj.quarter, set()).add("striking")
            elif inj.kind == "force_base_blanking":
                self.pinned.setdefault(inj.quarter, set()).add("blanking")

    def inventory(self) -> np.ndarray:
        flows = np.cumsum(self.f - self.s.demand, axis=0)
        return np.asarray(self.s.initial_inventory) + flows

    def quarter_usage(self, t: int, extra: np.ndarray | None = None) -> dict:
        order = self.f[t] if extra is None else self.f[t] + extra
        return {
            "blanking": float(self.rates @ order),
            "annealing": float(self.weights @ order),
            "striking": float(np.sum(order)),
        }

    def capacity_blocks(self, t: int, delta: np.ndarray) -> list[str]:
        use = self.quarter_usage(t, delta)
        return [p for p in ("blanking", "annealing", "striking") if use[p] > self.caps[t][p] + BOUNDARY_TOL]

    def vault_ok(self, t: int, added: float) -> bool:
        inv = self.inventory()
        totals = inv[t:].sum(axis=1) + added
        return bool(np.all(totals <= self.s.vault_cap + 1e-9))

    def delta_ok(self, t: int, delta: np.ndarray) -> bool:
        if np.any(self.f[t] + delta < -1e-12):
            return False
        if self.capacity_blocks(t, delta):
            return False
        return self.vault_ok(t, float(np.sum(delta)))

    def deficits(self) -> list[tuple[float, int, int]]:
        inv = self.inventory()
        T, D = self.f.shape
        out = []
        for t in range(T):
            for d in range(D):
                need = self.s.operating_floor[t, d] - inv[t, d]
                if t == T - 1:
                    need = max(need, self.s.safety_min[d] * self.k - inv[t, d])
                if need > 1e-9:
                    out.append((float(need), t, d))
        out.sort(key=lambda item: (-item[0], item[1], item[2]))
        return out

    # -- injected-equality restoration ------------------------------------

    def restore_equalities(self, injections) -> list[str]:
        """Rebuild the exact first-quarter totals that flooring broke.

        Striking targets are met with whole granules plus at most one
        fractional top-up; blanking targets get one fractional top-up
        (or granule swaps when the coin total is pinned too). Returns
        descriptions of targets that could not be restored.
        """
        unresolved = []
        by_quarter: dict[int, set] = {}
        for inj in injections:
            if inj.kind in ("force_base_striking", "force_base_blanking"):
                by_quarter.setdefault(inj.quarter, set()).add(inj.kind)
        for q in sorted(by_quarter):
            kinds = by_quarter[q]
            if "force_base_striking" in kinds:
                target = costs_mod.scaled_breakpoints(self.cfg, self.s.disruptions, q, "striking")[0]
                if not self._restore_total(q, target):
                    unresolved.append(f"force_base_striking[{q}]")
                    continue
            if "force_base_blanking" in kinds:
                target = costs_mod.scaled_breakpoints(self.cfg, self.s.disruptions, q, "blanking")[0]
                pinned_total = "force_base_striking" in kinds
                if not self._restore_weighted(q, target, pinned_total):
                    unresolved.append(f"force_base_blanking[{q}]")
        return unresolved

    def _denoms_by_remainder(self, q: int):
        remainder = self.relaxed[q] - self.f[q]
        return sorted(range(self.f.shape[1]), key=lambda d: (-remainder[d], d))

    def _restore_total(self, q: int, target: float) -> bool:
        gap = target - float(np.sum(self.f[q]))
        if gap < -1e-6:
            return False
        guard = 0
        while gap >= self.g - 1e-9:
            placed = False
            for d in self._denoms_by_remainder(q):
                delta = np.zeros(self.f.shape[1])
                delta[d] = self.g
                if self.delta_ok(q, delta):
                    self.f[q, d] += self.g
                    gap -= self.g
                    placed = True
                    break
            if not placed:
                return False
            guard += 1
            if guard > 100_000:
                return False
        if gap > 1e-9:
            for d in self._denoms_by_remainder(q):
                delta = np.zeros(self.f.shape[1])
                delta[d] = gap
                if self.delta_ok(q, delta):
                    self.f[q, d] += gap
                    self.notes.append(
                        f"fractional top-up of {gap:g} on denomination {d} in quarter {q} "
                        "to restore the pinned coin total"
                    )
                    return True
            return False
        return True

    def _restore_weighted(self, q: int, target: float, pinned_total: bool) -> bool:
        D = self.f.shape[1]
        gap = target - float(self.rates @ self.f[q])
        if abs(gap) <= 1e-9:
            return True
        if not pinned_total:
            if gap < -1e-6:
                return False
            for d in self._denoms_by_remainder(q):
                if self.rates[d] <= 0:
                    continue
                delta = np.zeros(D)
                delta[d] = gap / self.rates[d]
                if self.delta_ok(q, delta):
                    self.f[q] += delta
                    self.notes.append(
                        f"fractional top-up of {delta[d]:g} on denomination {d} in quarter {q} "
                        "to restore the pinned blanking load"
                    )
                    return True
            return False
        # the coin total is pinned too: move volume between two rates
        pairs = sorted(
            ((i, j) for i in range(D) for j in range(D) if self.rates[i] != self.rates[j]),
            key=lambda p: -abs(self.rates[p[0]] - self.rates[p[1]]),
        )
        for i, j in pairs:
            shift = gap / (self.rates[i] - self.rates[j])
            delta = np.zeros(D)
            delta[i] = shift
            delta[j] = -shift
            if self.delta_ok(q, delta):
                self.f[q] += delta
                self.notes.append(
                    f"moved {abs(shift):g} coins between denominations {j} and {i} in quarter {q} "
                    "to restore the pinned blanking load"
                )
                return True
        return False

    # -- floor repair -------------------------------------------------------

    def _donor_slack(self, t_add: int, d_from: int) -> float:
        """Stock the donor denomination can give up at ``t_add`` without
        dipping under its own floors (or terminal safety) later on."""
        inv = self.inventory()
        T = self.f.shape[0]
        slack = self.f[t_add, d_from]
        for t in range(t_add, T):
            need = self.s.operating_floor[t, d_from]
            if t == T - 1:
                need = max(need, self.s.safety_min[d_from] * self.k)
            slack = min(slack, inv[t, d_from] - need)
        return float(slack)

    def _swap_within(self, t_add: int, d: int, need: float) -> tuple[bool, list[tuple[int, str]]]:
        """Trade stock toward denomination ``d`` inside a quarter holding
        pinned totals, shaping the trade so every pinned quantity (coin
        count, blanking load, or both) stays exactly where it was.
        Trades may be fractional. Returns (made progress, capacity
        blocks seen)."""
        D = self.f.shape[1]
        kinds = self.pinned[t_add]
        blocks: list[tuple[int, str]] = []

        def attempt(delta: np.ndarray, moved: float) -> bool:
            if moved < 1e-9:
                return False
            if self.delta_ok(t_add, delta):
                self.f[t_add] += delta
                self.notes.append(
                    f"traded {moved:g} coins toward denomination {d} in quarter "
                    f"{t_add} to repair a stock floor under a pinned total"
                )
                return True
            for process in self.capacity_blocks(t_add, delta):
                blocks.append((t_add, process))
            return False

        donors = sorted(
            (df for df in range(D) if df != d),
            key=lambda df: -self._donor_slack(t_add, df),
        )

        if kinds == {"blanking"} and self.rates[d] <= 1e-12:
            # the target denomination consumes no blanking days, so
            # stock can simply be added without touching the pinned load
            delta = np.zeros(D)
            delta[d] = need
            if attempt(delta, need):
                return True, blocks
        elif kinds == {"blanking"}:
            # withdraw blanking-days-for-blanking-days, not coin-for-coin
            for d_from in donors:
                if self.rates[d_from] <= 1e-12:
                    continue
                slack = self._donor_slack(t_add, d_from)
                amount = min(need, slack * self.rates[d_from] / self.rates[d])
                delta = np.zeros(D)
                delta[d] = amount
                delta[d_from] = -amount * self.rates[d] / self.rates[d_from]
                if attempt(delta, amount):
                    return True, blocks
        elif kinds == {"striking"}:
            for d_from in donors:
                amount = min(need, self._donor_slack(t_add, d_from))
                delta = np.zeros(D)
                delta[d] = amount
                delta[d_from] = -amount
                if attempt(delta, amount):
                    return True, blocks
        else:
            # both totals pinned: an equal-rate donor swaps one for one;
            # otherwise two donors whose rates bracket the target's split
            # the withdrawal so count and load both stay put
            for d_from in donors:
                if abs(self.rates[d_from] - self.rates[d]) > 1e-12:
                    continue
                amount = min(need, self._donor_slack(t_add, d_from))
                delta = np.zeros(D)
                delta[d] = amount
                delta[d_from] = -amount
                if attempt(delta, amount):
                    return True, blocks
            for i in donors:
                for j in donors:
                    span = self.rates[i] - self.rates[j]
                    if span <= 1e-12:
                        continue
                    w_i = (self.rates[d] - self.rates[j]) / span
                    w_j = 1.0 - w_i
                    if w_i < -1e-12 or w_j < -1e-12:
                        continue
                    amount = need
                    if w_i > 1e-12:
                        amount = min(amount, self._donor_slack(t_add, i) / w_i)
                    if w_j > 1e-12:
                        amount = min(amount, self._donor_slack(t_add, j) / w_j)
                    delta = np.zeros(D)
                    delta[d] = amount
                    delta[i] -= amount * w_i
                    delta[j] -= amount * w_j
                    if attempt(delta, amount):
                        return True, blocks
        return False, blocks

    def repair_floors(self):
        """Greedy largest-deficit repair. Returns None when every floor
        holds, otherwise the capacity-blocked (quarter, process) pairs
        seen while failing to place any increment; an empty list means
        no higher shift level can buy a way out (the vault, or a pinned
        quarter with no redistributable stock, is what blocked)."""
        D = self.f.shape[1]
        while True:
            shortfalls = self.deficits()
            if not shortfalls:
                return None
            placed = False
            capacity_blocked: list[tuple[int, str]] = []
            for need, t, d in shortfalls:
                for t_add in range(t, -1, -1):
                    if t_add in self.pinned:
                        # the quarter's total is fixed: trade stock
                        # between denominations instead of adding any
                        placed, blocks = self._swap_within(t_add, d, need)
                        if placed:
                            break
                        capacity_blocked.extend(blocks)
                        continue
                    delta = np.zeros(D)
                    delta[d] = self.g
                    if self.delta_ok(t_add, delta):
                        self.f[t_add, d] += self.g
                        placed = True
                        break
                    for process in ("striking", "blanking", "annealing"):
                        if process in self.capacity_blocks(t_add, delta):
                            capacity_blocked.append((t_add, process))
                if placed:
                    break
            if placed:
                continue
            seen = []
            for pair in capacity_blocked:
                if pair not in seen:
                    seen.append(pair)
            return seen


def integerize(
    solution: Solution,
    scenario: Scenario,
    config: MintConfig,
    *,
    granularity: float = 1.0,
    k_max: float = DEFAULT_K_MAX,
    node_cap: int = DEFAULT_NODE_CAP,
    _depth: int = 0,
) -> Solution:
    """Round a relaxed plan to production granules and repair the damage.

    Orders are floored to multiples of ``granularity`` (values already
    on the grid are kept). Pinned first-quarter totals from injected
    restrictions are rebuilt first, then stock floors are repaired by
    greedily adding granules at the largest deficit, never crossing the
    kept shift selection's capacity; inside quarters whose total is
    pinned, granules are traded between denominations instead. When no
    increment can be placed within capacity, the smallest helpful
    higher shift level is forced, the model is re-solved, and the cost
    delta is reported in notes; a repair blocked by the vault alone (or
    by pinned stock with nothing to trade) raises RepairInfeasibleError.
    """
    if solution.status != "optimal":
        raise ValueError("only optimal solutions can be integerized")
    if not granularity > 0:
        raise ValueError(f"granularity must be positive, got {granularity}")

    work = _Repair(solution, scenario, config, granularity)
    unresolved = work.restore_equalities(solution.injections)
    for label in unresolved:
        work.notes.append(f"could not restore injected equality {label}")
    blocked = work.repair_floors()

    if blocked is not None:
        # an empty block list means nothing capacity-shaped stood in the
        # way (vault or pinned stock), so no higher shift level can help
        max_depth = 2 + scenario.horizon * (config.n_blanking_levels + config.n_striking_levels + 1)
        if blocked and _depth < max_depth:
            n_levels = {
                "blanking": config.n_blanking_levels,
                "annealing": 1,
                "striking": config.n_striking_levels,
            }
            ordered = sorted(
                blocked,
                key=lambda pair: (_BRANCH_RANK[_KIND_OF_PROCESS[pair[1]]], -pair[0]),
            )
            problem = mip_mod.build(scenario, config, solution.injections, k_max=k_max)
            for t_e, process in ordered:
                new_level = work.levels[process][t_e] + 1
                if new_level > n_levels[process]:
                    continue
                kind = _KIND_OF_PROCESS[process]
                col = problem.column_index(kind, t_e, None if kind == "h" else new_level)
                try:
                    escalated = solve_mip(problem, fixed={col: 1.0}, node_cap=node_cap)
                except NodeCapExceeded:
                    continue
                if escalated.status != "optimal":
                    continue
                delta = escalated.cost - solution.cost
                escalated = replace(
                    escalated,
                    notes=escalated.notes
                    + (
                        f"escalated {process} to level {new_level} in quarter {t_e}; "
                        f"cost delta {delta:+g}",
                    ),
                )
                return integerize(
                    escalated,
                    scenario,
                    config,
                    granularity=granularity,
                    k_max=k_max,
                    node_cap=node_cap,
                    _depth=_depth + 1,
                )
        partial = MintingPlan(orders=work.f, inventory=work.inventory())
        raise RepairInfeasibleError(
            "could not repair stock floors within the available capacity", partial_plan=partial
        )

    plan = MintingPlan(orders=work.f, inventory=work.inventory())
    return replace(
        solution,
        plan=plan,
        notes=solution.notes + tuple(work.notes),
    )


# ---------------------------------------------------------------------------
# enumeration oracle and random instances
# ---------------------------------------------------------------------------

def exhaustive_objective(problem: StandardFormProblem) -> tuple[str, float]:
    """Independent optimum by brute force: fix every admissible 0/1
    assignment of the shift binaries, solve the remaining LP, and keep
    the best feasible candidate under the problem's mode.

    Assignments switching two levels of the same ladder on in one
    quarter are skipped: the model's own choice rows make their LPs
    infeasible, so they can never carry the optimum. Exponential in the
    horizon; meant for validating the tree search on tiny instances.
    """
    families: dict = {}
    for col in problem.binaries:
        var = problem.columns[col]
        families.setdefault((var.kind, var.quarter), []).append(col)
    options = []
    for key in sorted(families):
        cols = sorted(families[key])
        options.append([None] + cols)  # switch no level on, or exactly one

    best_key = None
    best_objective = math.nan
    for combo in product(*options):
        override = {col: (0.0, 0.0) for col in problem.binaries}
        for col in combo:
            if col is not None:
                override[col] = (1.0, 1.0)
        res = solve_lp(problem, bounds_override=override)
        if res.status != "optimal":
            continue
        cost = float(sum(problem.objective[col] * hi for col, (_, hi) in override.items()))
        k = cost - res.objective  # the LP part of the objective is -K
        if problem.mode == "combined":
            key = (res.objective,)
        else:
            key = (round(cost, 9), -k)
        if best_key is None or key < best_key:
            best_key = key
            best_objective = cost - k
    if best_key is None:
        return ("infeasible", math.nan)
    return ("optimal", best_objective)


def random_instance(
    rng: np.random.Generator,
    *,
    horizon: int = 2,
    n_denoms: int = 2,
    n_blanking_levels: int = 2,
    n_striking_levels: int = 2,
) -> tuple[Scenario, MintConfig]:
    """Draw a small solvable-or-not instance for solver validation.

    Capacity ladders use non-increasing level increments (each extra
    shift adds at most as much as the previous one), demand runs from
    slack to beyond base capacity, and a quarter of the draws include a
    one-quarter disruption on a random process.
    """
    D, T = n_denoms, horizon
    rates = rng.uniform(0.08, 0.3, D)
    weights = np.where(rng.random(D) < 0.4, 0.0, rng.uniform(1.0, 6.0, D))
    specs = tuple(
        CoinSpec(denomination=f"d{i + 1}", alloy_weight=float(weights[i]), blanking_rate=float(rates[i]))
        for i in range(D)
    )

    def ladder(base: float, n_levels: int, rel_lo: float, rel_hi: float, cost_lo: float, cost_hi: float):
        gaps = np.sort(rng.uniform(rel_lo * base, rel_hi * base, n_levels))[::-1]
        breaks = base + np.concatenate([[0.0], np.cumsum(gaps)])
        level_costs = np.sort(rng.uniform(cost_lo, cost_hi, n_levels))
        return tuple(float(v) for v in breaks), tuple(float(v) for v in level_costs)

    z0 = float(rng.uniform(50, 150))
    striking_breaks, striking_costs = ladder(z0, n_striking_levels, 0.12, 0.35, 4.0, 25.0)
    x0 = float(np.mean(rates) * z0 * rng.uniform(0.7, 1.15))
    blanking_breaks, blanking_costs = ladder(x0, n_blanking_levels, 0.1, 0.3, 2.0, 20.0)
    y0 = max(float(np.mean(weights) * z0 * rng.uniform(0.7, 1.6)), 1.0)
    config = MintConfig(
        blanking_breakpoints=blanking_breaks,
        blanking_costs=blanking_costs,
        annealing_base=y0,
        annealing_max=y0 * float(rng.uniform(1.3, 1.9)),
        annealing_cost=float(rng.uniform(3.0, 20.0)),
        striking_breakpoints=striking_breaks,
        striking_costs=striking_costs,
    )

    pressure = rng.uniform(0.35, 1.15)  # mean quarterly demand as a share of base striking
    demand = rng.uniform(0.0, 2.0 * pressure * z0 / D, (T, D))
    floors = demand * rng.uniform(0.15, 0.45, (T, D))
    initial = floors[0] * rng.uniform(0.9, 1.6, D) + rng.uniform(0.0, z0 / (4 * D), D)
    safety = rng.uniform(0.0, 0.3, D) * np.maximum(demand.mean(axis=0), 0.5)
    vault = float(max(initial.sum(), floors.sum(axis=1).max()) * rng.uniform(1.15, 2.0) + rng.uniform(0.0, z0))

    disruptions = ()
    if rng.random() < 0.25:
        disruptions = (
            Disruption(
                quarter=int(rng.integers(0, T)),
                process=str(rng.choice(["blanking", "annealing", "striking"])),
                capacity_scale=float(rng.uniform(0.45, 0.95)),
            ),
        )

    scenario = Scenario(
        horizon=T,
        coin_specs=specs,
        demand=demand,
        operating_floor=floors,
        vault_cap=vault,
        safety_min=safety,
        initial_inventory=initial,
        disruptions=disruptions,
    )
    return scenario, config
