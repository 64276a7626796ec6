"""Column-and-constraint generation loop for the two-stage robust schedule.

Master: commitment binaries plus an auxiliary recourse-cost variable eta,
cut below by one full set of scenario dispatch copies per iteration, each
weighted by that iteration's worst-case distribution. Subproblem: exact
per-scenario recourse under the incumbent commitment, then the worst-case
distribution over the ambiguity set. Iterates until the bound gap closes.
"""

import time
from dataclasses import dataclass, field

import numpy as np

from .ambiguity import AmbiguityBudget, compute_budgets, fixed_budgets, worst_case_lp
from .scenarios import ScenarioSet
from .solver import STATUS_INFEASIBLE, STATUS_OPTIMAL, SolverError, solve
from .stages import (
    FirstStageDecision, InfeasibleError, RecourseInfeasibleError,
    SecondStageDecision, append_master_copy, build_first_stage,
    build_second_stage, cost_breakdown, first_stage_cost,
)

ETA_LOWER_BOUND = -1e7


@dataclass
class SolveMode:
    kind: str = "dro"              # dro | stochastic | robust | deterministic
    alpha1: float = 0.99
    alphainf: float = 0.99
    m_hist: int = 5000
    norm: str = "comprehensive"    # comprehensive | one | inf
    theta1: float = None           # explicit budget overrides
    thetainf: float = None
    box: float = None              # robust box variant: mean scenario scaled down

    def describe(self):
        d = {"kind": self.kind}
        if self.kind == "dro":
            d.update(alpha1=self.alpha1, alphainf=self.alphainf,
                     m_hist=self.m_hist, norm=self.norm)
        if self.box is not None:
            d["box"] = self.box
        return d


def _mean_scenario(scen, scale=1.0):
    pv = scale * (scen.p0 @ scen.pv)
    wt = scale * (scen.p0 @ scen.wt)
    return ScenarioSet(1, pv[None, :], wt[None, :], np.array([1.0]),
                       {"collapsed_from": scen.n_s}).validate()


def resolve_mode(mode, scenarios):
    """Materialize the ambiguity budget and effective scenario set for a mode."""
    kind = mode.kind.lower()
    if kind == "deterministic":
        return fixed_budgets(1, 0.0, 0.0), _mean_scenario(scenarios)
    if kind == "robust":
        if mode.box is not None:
            return fixed_budgets(1, 0.0, 0.0), _mean_scenario(scenarios, 1.0 - mode.box)
        return fixed_budgets(scenarios.n_s, 2.0, 1.0), scenarios
    if kind == "stochastic":
        return fixed_budgets(scenarios.n_s, 0.0, 0.0), scenarios
    if kind != "dro":
        raise ValueError(f"unknown solve mode {mode.kind!r}")
    base = compute_budgets(mode.m_hist, scenarios.n_s, mode.alpha1, mode.alphainf)
    theta1, thetainf = base.theta1, base.thetainf
    if mode.norm == "one":
        thetainf = 1.0
    elif mode.norm == "inf":
        theta1 = 2.0
    elif mode.norm != "comprehensive":
        raise ValueError(f"unknown norm variant {mode.norm!r}")
    if mode.theta1 is not None:
        theta1 = float(mode.theta1)
    if mode.thetainf is not None:
        thetainf = float(mode.thetainf)
    budget = AmbiguityBudget(mode.m_hist, scenarios.n_s, mode.alpha1,
                             mode.alphainf, theta1, thetainf)
    return budget, scenarios


@dataclass
class IterationRecord:
    iteration: int
    lb: float
    ub_candidate: float
    ub: float
    gap: float
    master_status: str
    scenario_costs: np.ndarray
    weights_used: np.ndarray
    worst_p: np.ndarray


@dataclass
class CcgResult:
    converged: bool
    iterations: int
    total_cost: float
    lb: float
    budget: AmbiguityBudget
    scenarios: ScenarioSet
    u: FirstStageDecision
    dispatches: list
    scenario_costs: np.ndarray
    worst_p: np.ndarray
    trace: list = field(default_factory=list)
    runtime_s: float = 0.0

    @property
    def gap(self):
        return self.total_cost - self.lb


def solve_subproblem(cfg, scen, u, budget, backend="auto"):
    """Exact recourse per scenario, then the worst-case distribution."""
    f = np.empty(scen.n_s)
    dispatches = []
    for s in range(scen.n_s):
        prob, lay = build_second_stage(cfg, scen.pv[s], scen.wt[s], u)
        sol = solve(prob, backend=backend)
        if sol.status == STATUS_INFEASIBLE:
            raise RecourseInfeasibleError(s)
        if sol.status != STATUS_OPTIMAL:
            raise SolverError(f"scenario {s} recourse ended with {sol.status}",
                              backend=sol.backend)
        f[s] = sol.objective
        dispatches.append(SecondStageDecision.from_vector(
            cfg, scen.pv[s], scen.wt[s], sol.x, base=lay.base))
    wc = worst_case_lp(scen.p0, f, budget)
    return wc, f, dispatches


class MasterProblem:
    """Commitment problem growing one weighted scenario-copy set per cut."""

    def __init__(self, cfg, scen, gap=1e-6, backend="auto"):
        self.cfg = cfg
        self.scen = scen
        self.gap = gap
        self.backend = backend
        self.problem, self.u_cols = build_first_stage(cfg)
        self.eta = self.problem.add_var(ETA_LOWER_BOUND, np.inf, 1.0, name="eta")
        self.cuts = 0
        self.lb = -np.inf

    def add_cut(self, weights):
        """Append a full copy set and bound eta by its weighted recourse cost."""
        self.cuts += 1
        cols = [self.eta]
        coefs = [1.0]
        rhs = 0.0
        for s in range(self.scen.n_s):
            lay = append_master_copy(self.problem, self.cfg, self.scen.pv[s],
                                     self.scen.wt[s], self.u_cols,
                                     tag=f"w{self.cuts}s{s}_")
            nz = np.nonzero(lay.obj)[0]
            cols.extend(int(lay.base + j) for j in nz)
            coefs.extend(-weights[s] * lay.obj[nz])
            rhs += weights[s] * lay.obj_offset
        for k in range(self.cfg.horizon):
            cols.append(int(self.u_cols["mtg_on"][k]))
            coefs.append(-self.cfg.mtg.cost_b)
        self.problem.add_row(cols, coefs, ">=", rhs, name=f"cut[{self.cuts}]")

    def solve(self):
        """Returns (u*, eta*, lower bound); raises on infeasibility."""
        sol = solve(self.problem, gap=self.gap, backend=self.backend)
        if sol.status == STATUS_INFEASIBLE:
            raise InfeasibleError(
                "master problem infeasible: the system cannot serve the load "
                "in some scenario")
        if sol.status != STATUS_OPTIMAL:
            raise SolverError(f"master ended with {sol.status}", backend=sol.backend)
        self.lb = max(self.lb, sol.objective)
        u = FirstStageDecision.from_master_x(self.cfg, sol.x).validate(self.cfg)
        return u, float(sol.x[self.eta]), self.lb, sol.status


def run(cfg, scenarios, mode=None, tol=0.01, max_iter=25, gap=1e-6,
        backend="auto", log_fn=None):
    """Run the full decomposition to bound closure; returns a CcgResult."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_iter < 1:
        raise ValueError("max_iter must be at least 1")
    mode = mode or SolveMode()
    scenarios.validate()
    budget, scen = resolve_mode(mode, scenarios)

    t0 = time.perf_counter()
    master = MasterProblem(cfg, scen, gap=gap, backend=backend)

    lb, ub = -np.inf, np.inf
    weights = scen.p0.copy()
    trace = []
    best = None
    converged = False

    for w in range(1, max_iter + 1):
        master.add_cut(weights)
        u, _, lb, master_status = master.solve()

        wc, f, dispatches = solve_subproblem(cfg, scen, u, budget, backend=backend)
        ub_candidate = first_stage_cost(cfg, u) + wc.objective
        if ub_candidate < ub:
            ub = ub_candidate
            best = (u, dispatches, f, wc)

        trace.append(IterationRecord(w, lb, ub_candidate, ub, ub - lb,
                                     master_status, f.copy(), weights.copy(),
                                     wc.p.copy()))
        if log_fn:
            log_fn(f"iter={w},LB={lb:.6f},UB={ub:.6f},gap={ub - lb:.6f}")
        if ub - lb <= tol:
            converged = True
            break
        weights = wc.p.copy()

    u, dispatches, f, wc = best
    return CcgResult(
        converged=converged,
        iterations=len(trace),
        total_cost=ub,
        lb=lb,
        budget=budget,
        scenarios=scen,
        u=u,
        dispatches=dispatches,
        scenario_costs=f,
        worst_p=wc.p,
        trace=trace,
        runtime_s=time.perf_counter() - t0,
    )


def scenario_cost_breakdowns(cfg, result):
    """Per-scenario objective terms plus the worst-case-weighted expectation."""
    rows = [cost_breakdown(cfg, result.u, v) for v in result.dispatches]
    weighted = {}
    for key in rows[0].as_dict():
        weighted[key] = float(sum(p * getattr(r, key)
                                  for p, r in zip(result.worst_p, rows)))
    return rows, weighted


def curtailment_rate(result):
    """Worst-case-weighted renewable curtailment share, in percent."""
    p = result.worst_p
    spilled = 0.0
    avail = 0.0
    for s, v in enumerate(result.dispatches):
        avail_s = float(v.pv_avail.sum() + v.wt_avail.sum())
        used_s = float(v["pv"].sum() + v["wt"].sum())
        spilled += p[s] * (avail_s - used_s)
        avail += p[s] * avail_s
    return 100.0 * spilled / avail if avail > 0 else 0.0
