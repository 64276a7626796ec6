"""Acceptance suite.

Each test exercises one acceptance criterion at its stated tolerance and
prints a single PASS line (visible with `pytest -s` or on failure). The
heavy criteria share the session-scoped solves from conftest.
"""

import time

import numpy as np
import pytest
from oracles import (
    dbi_brute, enumerate_vertices, exhaustive_binary_opt, random_binary_instance,
    random_lp_instance, silhouette_brute,
)

from ciesdro.ambiguity import compute_budgets, fixed_budgets, worst_case_greedy, \
    worst_case_lp
from ciesdro.ccg import SolveMode, run
from ciesdro.fixture import generate_pv_samples, generate_wt_samples
from ciesdro.report import audit_result
from ciesdro.scenarios import davies_bouldin, kmeans_cluster, select_cluster_count, \
    silhouette
from ciesdro.solver import (
    LE, GE, STATUS_INFEASIBLE, STATUS_OPTIMAL,
    SparseProblem, solve_lp, solve_milp,
)

BAL_TOL = 1e-6


def _announce(n, message):
    print(f"\nACCEPTANCE {n} PASS: {message}")


# -- 1: budget formulas -------------------------------------------------------

def test_acceptance_1_budget_formulas():
    compute_budgets(5000, 8, 0.99, 0.99)  # warm path before timing
    t0 = time.perf_counter()
    b = compute_budgets(5000, 8, 0.99, 0.99)
    elapsed = time.perf_counter() - t0
    assert b.theta1 == pytest.approx(5.9022e-3, abs=1e-7)
    assert b.thetainf == pytest.approx(7.3778e-4, abs=1e-8)
    assert elapsed < 1e-3
    _announce(1, f"theta1={b.theta1:.6e}, thetainf={b.thetainf:.6e}, "
                 f"runtime {elapsed * 1e6:.1f} us")


# -- 2: worst-case oracle equivalence ----------------------------------------

def test_acceptance_2_worst_case_oracle_equivalence():
    rng = np.random.default_rng(7777)
    cases = []
    for _ in range(200):
        n = int(rng.integers(2, 11))
        p0 = rng.dirichlet(np.ones(n) * rng.uniform(0.5, 3.0))
        f = rng.normal(0, 100, size=n).round(4)
        cases.append((p0, f, fixed_budgets(n, float(rng.uniform(0, 2.2)),
                                           float(rng.uniform(0, 1.1)))))
    worst_case_lp(*cases[0])  # warm the jitted solver before timing
    t0 = time.perf_counter()
    worst_gap = 0.0
    for p0, f, budget in cases:
        a = worst_case_lp(p0, f, budget)
        g = worst_case_greedy(p0, f, budget)
        worst_gap = max(worst_gap, abs(a.objective - g.objective))
        assert abs(a.objective - g.objective) <= 1e-8
    elapsed = time.perf_counter() - t0
    assert elapsed < 5.0
    _announce(2, f"200 instances, max objective gap {worst_gap:.2e}, "
                 f"{elapsed:.2f} s")


# -- 3: solver correctness ----------------------------------------------------

def test_acceptance_3_solver_against_enumeration_oracles():
    t0 = time.perf_counter()
    rng = np.random.default_rng(31337)
    lp_checked = 0
    for _ in range(100):
        c, a, senses, b, lb, ub = random_lp_instance(rng, max_vars=7, max_rows=9)
        p = SparseProblem()
        for j, cj in enumerate(c):
            p.add_var(lb[j], ub[j], cj)
        for i in range(len(b)):
            idx = list(range(len(c)))
            p.add_row(idx, a[i], "<=" if senses[i] == LE else ">=", b[i])
        sol = solve_lp(p)
        oracle, _ = enumerate_vertices(c, a, senses, b, lb, ub)
        if np.isfinite(oracle):
            assert sol.status == STATUS_OPTIMAL
            assert sol.objective == pytest.approx(oracle, abs=1e-7)
            lp_checked += 1
        else:
            assert sol.status == STATUS_INFEASIBLE

    milp_checked = 0
    for _ in range(50):
        c, a, senses, b = random_binary_instance(rng, max_bins=12)
        p = SparseProblem()
        for cj in c:
            p.add_var(0.0, 1.0, cj, binary=True)
        for i in range(len(b)):
            p.add_row(range(len(c)), a[i], "<=" if senses[i] == LE else ">=", b[i])
        sol = solve_milp(p, gap=0.0)
        oracle = exhaustive_binary_opt(c, a, senses, b)
        if np.isfinite(oracle):
            assert sol.status == STATUS_OPTIMAL
            assert sol.objective == pytest.approx(oracle, abs=1e-7)
            milp_checked += 1
        else:
            assert sol.status == STATUS_INFEASIBLE
    elapsed = time.perf_counter() - t0
    assert elapsed < 30.0
    _announce(3, f"{lp_checked}/100 LPs and {milp_checked}/50 binary programs "
                 f"matched enumeration, {elapsed:.1f} s")


# -- 4: CCG convergence on the fixture ---------------------------------------

def test_acceptance_4_ccg_convergence(dro_result):
    res = dro_result
    assert res.converged
    assert res.iterations <= 10
    assert res.gap <= 0.01 + 1e-9
    lbs = [r.lb for r in res.trace]
    ubs = [r.ub for r in res.trace]
    assert all(b >= a - 1e-9 for a, b in zip(lbs, lbs[1:])), "LB must not decrease"
    assert all(b <= a + 1e-9 for a, b in zip(ubs, ubs[1:])), "UB must not increase"
    assert res.runtime_s < 180.0
    _announce(4, f"converged in {res.iterations} iterations, "
                 f"gap {res.gap:.2e}, {res.runtime_s:.1f} s")


# -- 5: degenerate identity ----------------------------------------------------

def test_acceptance_5_zero_budget_equals_stochastic(cfg, scenarios_full,
                                                    stochastic_result):
    dro_zero = run(cfg, scenarios_full,
                   SolveMode(kind="dro", alpha1=0.99, alphainf=0.99,
                             m_hist=5000, theta1=0.0, thetainf=0.0),
                   tol=0.01, max_iter=10)
    diff = abs(dro_zero.total_cost - stochastic_result.total_cost)
    assert diff <= 1e-6
    _announce(5, f"|DRO(theta=0) - stochastic| = {diff:.2e}")


# -- 6: mode ordering -----------------------------------------------------------

def test_acceptance_6_mode_ordering(stochastic_result, dro_result, robust_result):
    s, d, r = (stochastic_result.total_cost, dro_result.total_cost,
               robust_result.total_cost)
    # sandwich consistency: reported totals are UBs, lb..ub brackets must nest
    assert dro_result.total_cost >= stochastic_result.lb - 1e-9
    assert robust_result.total_cost >= dro_result.lb - 1e-9
    assert s <= d + 0.01 + 1e-9
    assert d <= r + 0.01 + 1e-9
    assert r - s >= 0.01, "outer pair must be strictly separated"
    _announce(6, f"stochastic {s:.2f} <= dro {d:.2f} <= robust {r:.2f}")


# -- 7: sensitivity trends ------------------------------------------------------

SWEEP_TOL = 1e-4


@pytest.fixture(scope="session")
def sweep_results(cfg, scenarios_full):
    t0 = time.perf_counter()
    out = {}
    for m in (100, 1000, 5000, 20000):
        out[("m", m)] = run(cfg, scenarios_full,
                            SolveMode(kind="dro", alpha1=0.5, alphainf=0.99,
                                      m_hist=m),
                            tol=SWEEP_TOL, max_iter=12)
    for a1 in (0.5, 0.8, 0.99):
        out[("alpha1", a1)] = run(cfg, scenarios_full,
                                  SolveMode(kind="dro", alpha1=a1,
                                            alphainf=0.99, m_hist=5000),
                                  tol=SWEEP_TOL, max_iter=12)
    for ai in (0.5, 0.8, 0.99):
        out[("alphainf", ai)] = run(cfg, scenarios_full,
                                    SolveMode(kind="dro", alpha1=0.99,
                                              alphainf=ai, m_hist=5000),
                                    tol=SWEEP_TOL, max_iter=12)
    for norm in ("comprehensive", "one", "inf"):
        out[("norm", norm)] = run(cfg, scenarios_full,
                                  SolveMode(kind="dro", alpha1=0.99,
                                            alphainf=0.99, m_hist=5000,
                                            norm=norm),
                                  tol=SWEEP_TOL, max_iter=12)
    out["elapsed"] = time.perf_counter() - t0
    return out


def test_acceptance_7_sensitivity_trends(sweep_results):
    res = sweep_results
    assert res["elapsed"] < 1200.0

    m_vals = (100, 1000, 5000, 20000)
    m_totals = [res[("m", m)].total_cost for m in m_vals]
    for i in range(len(m_vals) - 1):
        hi, lo = res[("m", m_vals[i])], res[("m", m_vals[i + 1])]
        assert hi.total_cost >= lo.total_cost - 2 * SWEEP_TOL
        assert hi.total_cost >= lo.lb - 1e-9  # bracket consistency

    for axis in ("alpha1", "alphainf"):
        vals = (0.5, 0.8, 0.99)
        for i in range(len(vals) - 1):
            lo, hi = res[(axis, vals[i])], res[(axis, vals[i + 1])]
            assert hi.total_cost >= lo.total_cost - 2 * SWEEP_TOL, axis
            assert hi.total_cost >= lo.lb - 1e-9

    comp = res[("norm", "comprehensive")]
    one = res[("norm", "one")]
    inf = res[("norm", "inf")]
    assert comp.total_cost <= one.total_cost + 2 * SWEEP_TOL
    assert comp.total_cost <= inf.total_cost + 2 * SWEEP_TOL
    assert one.total_cost >= comp.lb - 1e-9
    assert inf.total_cost >= comp.lb - 1e-9

    a1_totals = [res[("alpha1", v)].total_cost for v in (0.5, 0.8, 0.99)]
    _announce(7, f"M sweep {['%.2f' % v for v in m_totals]}, "
                 f"alpha1 sweep {['%.2f' % v for v in a1_totals]}, "
                 f"comprehensive {comp.total_cost:.2f} <= "
                 f"one {one.total_cost:.2f} / inf {inf.total_cost:.2f}; "
                 f"{res['elapsed']:.0f} s total")


# -- 8: physical feasibility audit ----------------------------------------------

def test_acceptance_8_dispatch_audit(cfg, dro_result):
    problems = audit_result(cfg, dro_result, tol=BAL_TOL)
    assert problems == []
    for v in dro_result.dispatches:
        der = v.derived(cfg)
        assert np.allclose(der["mtg_heat"], cfg.mtg.heat_ratio * v["mtg_el"],
                           atol=0.0)
        assert abs((v["tse_pos"] - v["tse_neg"]).sum()) <= BAL_TOL
        assert np.all(v["eil"] <= 0.10 * cfg.base_eload + BAL_TOL)
        assert abs(der["c_ess"][-1] - cfg.ess.c_init) <= BAL_TOL
        lo, hi = cfg.comfort_bounds()
        assert np.all(v["t_in"] >= lo - BAL_TOL)
        assert np.all(v["t_in"] <= hi + BAL_TOL)
        assert np.all(np.minimum(v["grid_buy"], v["grid_sell"]) <= BAL_TOL)
    _announce(8, f"all {len(dro_result.dispatches)} scenario dispatches clean")


# -- 9: clustering indices + fixture selection -----------------------------------

def test_acceptance_9_clustering_indices_and_selection():
    rng = np.random.default_rng(424242)
    worst = 0.0
    for trial in range(8):
        n = int(rng.integers(8, 51))
        k = int(rng.integers(2, min(6, n)))
        samples = rng.uniform(0, 40, size=(n, 24))
        clus = kmeans_cluster(samples, k, seed=trial)
        d_impl = davies_bouldin(samples, clus)
        d_ref = dbi_brute(samples, clus)
        s_impl = silhouette(samples, clus)
        s_ref = silhouette_brute(samples, clus.labels)
        worst = max(worst, abs(d_impl - d_ref), abs(s_impl - s_ref))
        assert d_impl == pytest.approx(d_ref, abs=1e-10)
        assert s_impl == pytest.approx(s_ref, abs=1e-10)

    sel = select_cluster_count(generate_pv_samples(730, 0), 2, 6, seed=0)
    assert sel.k == 2
    _announce(9, f"indices match brute force (max dev {worst:.1e}); "
                 f"fixture PV selects k={sel.k}")
