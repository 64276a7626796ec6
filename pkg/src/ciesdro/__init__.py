"""Data-driven distributionally robust day-ahead scheduling for a community
integrated energy system (electricity + heat) with integrated demand
response, building thermal comfort and a column-and-constraint-generation
solve loop."""

from .ambiguity import (
    AmbiguityBudget, WorstCaseDistribution, compute_budgets, fixed_budgets,
    worst_case_greedy, worst_case_lp,
)
from .ccg import CcgResult, MasterProblem, SolveMode, curtailment_rate, run, \
    solve_subproblem
from .comfort import ComfortParams, Envelope, comfort_band, heat_demand, \
    indoor_step, neutral_temperature, pmv
from .config import CiesConfig, load_config, save_config
from .scenarios import (
    Clustering, ScenarioSet, build_scenario_set, davies_bouldin, kmeans_cluster,
    load_samples_csv, load_scenarios_json, save_samples_csv, save_scenarios_json,
    select_cluster_count, silhouette,
)
from .stages import (
    CostBreakdown, FirstStageDecision, SecondStageDecision, audit_dispatch,
    build_first_stage, build_second_stage, cost_breakdown, first_stage_cost,
)

__version__ = "0.1.0"
