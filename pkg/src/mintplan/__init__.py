"""Minimum-cost quarterly coin production planning.

The package models a mint's quarterly ordering problem with piecewise
extra-shift costs on blanking, annealing, and striking, solves it with
a branch-and-bound search over linear relaxations, refines plans with
two production heuristics, and simulates the rolling quarterly planning
practice.
"""

from .bnb import (
    DEFAULT_NODE_CAP,
    NodeCapExceeded,
    RepairInfeasibleError,
    exhaustive_objective,
    integerize,
    random_instance,
    solve_mip,
)
from .costs import (
    CapacityExceededError,
    ResourceUsage,
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
from .heuristics import HeuristicEvent, procedure1, procedure2, run_heuristics, solve_pipeline
from .lpsolve import IterationCapExceeded, LpResult, solve_lp
from .mip import (
    DEFAULT_K_MAX,
    InjectedConstraint,
    LpFormatError,
    Row,
    StandardFormProblem,
    VariableIndex,
    assignment_from_solution,
    build,
    check_solution,
    choose_mode,
    export_lp_text,
    objective_value,
    parse_lp_text,
)
from .model import (
    BOUNDARY_TOL,
    PROCESSES,
    CoinSpec,
    Disruption,
    MintConfig,
    MintPlanError,
    MintingPlan,
    Scenario,
    ScenarioFormatError,
    ShiftSelection,
    Solution,
    dump_scenario,
    effective_capacity,
    load_scenario,
    scaled_breakpoints,
    scenario_from_dict,
    scenario_to_dict,
    validate_scenario,
)
from .rolling import (
    HORIZON_CYCLE,
    ComparisonSummary,
    EpochInput,
    SimulationReport,
    SimulationSettings,
    SyntheticScenario,
    compare,
    dump_simulation,
    epoch_horizon,
    generate_synthetic_scenario,
    load_simulation,
    report_csv,
    run_simulation,
)

__version__ = "0.1.0"

__all__ = [
    "BOUNDARY_TOL",
    "CapacityExceededError",
    "CoinSpec",
    "ComparisonSummary",
    "DEFAULT_K_MAX",
    "DEFAULT_NODE_CAP",
    "Disruption",
    "EpochInput",
    "HORIZON_CYCLE",
    "HeuristicEvent",
    "InjectedConstraint",
    "IterationCapExceeded",
    "LpFormatError",
    "LpResult",
    "MintConfig",
    "MintPlanError",
    "MintingPlan",
    "NodeCapExceeded",
    "PROCESSES",
    "RepairInfeasibleError",
    "ResourceUsage",
    "Row",
    "Scenario",
    "ScenarioFormatError",
    "ShiftSelection",
    "SimulationReport",
    "SimulationSettings",
    "Solution",
    "StandardFormProblem",
    "SyntheticScenario",
    "VariableIndex",
    "annealing_cost",
    "assignment_from_solution",
    "blanking_cost",
    "build",
    "check_solution",
    "choose_mode",
    "compare",
    "dump_scenario",
    "dump_simulation",
    "effective_capacity",
    "epoch_horizon",
    "exhaustive_objective",
    "export_lp_text",
    "generate_synthetic_scenario",
    "integerize",
    "load_scenario",
    "load_simulation",
    "minimal_shifts",
    "objective_value",
    "parse_lp_text",
    "plan_cost",
    "procedure1",
    "procedure2",
    "random_instance",
    "report_csv",
    "run_heuristics",
    "run_simulation",
    "scaled_breakpoints",
    "scenario_from_dict",
    "scenario_to_dict",
    "shift_cost",
    "solve_lp",
    "solve_mip",
    "solve_pipeline",
    "striking_cost",
    "usage",
    "usage_cost",
    "usage_levels",
    "validate_scenario",
]
