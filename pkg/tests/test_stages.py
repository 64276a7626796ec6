"""First-stage fragment and second-stage dispatch LP builders."""

import numpy as np
import pytest

from ciesdro.config import CiesConfig
from ciesdro.fixture import fixture_config
from ciesdro.solver import STATUS_OPTIMAL, solve_lp, solve_milp
from ciesdro.stages import (
    FirstStageDecision, append_master_copy, audit_dispatch, build_first_stage,
    build_second_stage, cost_breakdown, first_stage_cost, SecondStageDecision,
)


@pytest.fixture(scope="module")
def cfg():
    return fixture_config()


@pytest.fixture(scope="module")
def u_on(cfg):
    return FirstStageDecision.always_on(cfg)


def test_first_stage_variable_count(cfg):
    prob, cols = build_first_stage(cfg)
    assert prob.n_vars == 7 * 24 == 168
    assert all(prob.is_binary)
    assert len(cols) == 7


def test_first_stage_objective_counts_transitions(cfg):
    t = cfg.horizon
    on = np.zeros(t, dtype=int)
    on[8:18] = 1
    start = np.zeros(t, dtype=int)
    stop = np.zeros(t, dtype=int)
    start[8] = 1
    stop[18] = 1
    z = np.zeros(t, dtype=int)
    u = FirstStageDecision(on, start, stop, z, z, z, z).validate(cfg)
    assert first_stage_cost(cfg, u) == pytest.approx(0.5)  # one start + one stop


def test_first_stage_all_off_costs_nothing(cfg):
    u = FirstStageDecision.all_off(cfg)
    assert first_stage_cost(cfg, u) == pytest.approx(0.0)


def test_first_stage_logic_rows_enforced(cfg):
    prob, cols = build_first_stage(cfg)
    # minimizing startup+shutdown with forced on at t=5 needs exactly one start
    prob.set_obj(cols["mtg_on"][5], -10.0)
    sol = solve_milp(prob, gap=0.0)
    assert sol.status == STATUS_OPTIMAL
    u = FirstStageDecision.from_master_x(cfg, sol.x)
    u.validate(cfg)
    assert u.on[5] == 1
    assert u.start.sum() == 1


def test_second_stage_variable_count(cfg, u_on):
    pv = np.zeros(24)
    wt = np.zeros(24)
    prob, lay = build_second_stage(cfg, pv, wt, u_on)
    assert prob.n_vars == 16 * 24 == 384


def test_master_copy_variable_count(cfg):
    master, cols = build_first_stage(cfg)
    n0 = master.n_vars
    lay = append_master_copy(master, cfg, np.zeros(24), np.ones(24), cols)
    assert master.n_vars - n0 == 384


def test_zero_system_costs_nothing():
    # no loads, no availability, outdoor pinned at the comfort setpoint:
    # the all-off dispatch is feasible at exactly zero cost
    cfg = fixture_config()
    t_star = cfg.neutral_setpoint()
    zero = CiesConfig(base_eload=np.zeros(24), t_out=np.full(24, t_star),
                      envelope=cfg.envelope)
    u = FirstStageDecision.all_off(zero)
    prob, lay = build_second_stage(zero, np.zeros(24), np.zeros(24), u)
    sol = solve_lp(prob)
    assert sol.status == STATUS_OPTIMAL
    assert sol.objective == pytest.approx(0.0, abs=1e-9)
    v = SecondStageDecision.from_vector(zero, np.zeros(24), np.zeros(24),
                                        sol.x, base=lay.base)
    for g in ("mtg_el", "eb_el", "grid_buy", "grid_sell", "wt", "pv", "ess_ch",
              "ess_dc", "hsd_ch", "hsd_dc", "tse_pos", "tse_neg", "eil", "hie"):
        assert np.abs(v[g]).max() <= 1e-9, g


def solved_dispatch(cfg, u, pv, wt):
    prob, lay = build_second_stage(cfg, pv, wt, u)
    sol = solve_lp(prob)
    assert sol.status == STATUS_OPTIMAL
    v = SecondStageDecision.from_vector(cfg, pv, wt, sol.x, base=lay.base)
    return sol, v


@pytest.fixture(scope="module")
def reference_solution(cfg, u_on):
    pv = np.zeros(24)
    pv[6:20] = 90.0
    wt = np.full(24, 60.0)
    sol, v = solved_dispatch(cfg, u_on, pv, wt)
    return pv, wt, sol, v


def test_solved_dispatch_passes_audit(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    assert audit_dispatch(cfg, pv, wt, u_on, v) == []


def test_balance_residuals_tight(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    der = v.derived(cfg)
    elec = (v["grid_buy"] + v["wt"] + v["pv"] + v["ess_dc"] + v["mtg_el"]
            - v["ess_ch"] - v["grid_sell"] - v["eb_el"]
            - (cfg.base_eload + v["tse_pos"] - v["tse_neg"] - v["eil"]))
    heat = (der["mtg_heat"] + der["eb_heat"] - v["hsd_ch"] + v["hsd_dc"]
            - der["heat_load"])
    assert np.abs(elec).max() <= 1e-6
    assert np.abs(heat).max() <= 1e-6


def test_objective_matches_cost_breakdown(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    bd = cost_breakdown(cfg, u_on, v, pv, wt, validate=True)
    assert bd.total == pytest.approx(sol.objective + first_stage_cost(cfg, u_on),
                                     abs=1e-6)


def test_heat_coupling_exact(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    der = v.derived(cfg)
    assert der["mtg_heat"] == pytest.approx(1.2 * v["mtg_el"], abs=0)


def test_ess_terminal_reset(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    der = v.derived(cfg)
    assert der["c_ess"][-1] == pytest.approx(cfg.ess.c_init, abs=1e-6)


def test_interruption_caps(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    assert np.all(v["eil"] <= 0.10 * cfg.base_eload + 1e-9)
    assert abs((v["tse_pos"] - v["tse_neg"]).sum()) <= 1e-6


def test_indoor_temperature_in_band(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    lo, hi = cfg.comfort_bounds()
    assert np.all(v["t_in"] >= lo - 1e-6)
    assert np.all(v["t_in"] <= hi + 1e-6)


def test_tightening_availability_never_cheapens(cfg, u_on):
    pv = np.zeros(24)
    pv[6:20] = 90.0
    wt = np.full(24, 60.0)
    base_obj = solved_dispatch(cfg, u_on, pv, wt)[0].objective
    rng = np.random.default_rng(2)
    prev = base_obj
    for frac in (0.8, 0.5, 0.2, 0.0):
        obj = solved_dispatch(cfg, u_on, frac * pv, frac * wt)[0].objective
        assert obj >= prev - 1e-7
        prev = obj


def test_gating_disables_equipment(cfg):
    # boiler capacity raised so heat stays feasible with the turbine off
    import dataclasses

    from ciesdro.config import EbParams
    big_eb = dataclasses.replace(cfg, eb=EbParams(eta=0.9, p_hl_rated=400.0))
    u = FirstStageDecision.all_off(big_eb)
    pv = np.zeros(24)
    wt = np.zeros(24)
    sol, v = solved_dispatch(big_eb, u, pv, wt)
    assert np.all(v["mtg_el"] == 0.0)
    assert np.all(v["ess_ch"] == 0.0)
    assert np.all(v["ess_dc"] == 0.0)
    assert np.all(v["hsd_ch"] == 0.0)
    assert np.all(v["hsd_dc"] == 0.0)


def test_cost_breakdown_reference_values(cfg):
    t = cfg.horizon
    u = FirstStageDecision.always_on(cfg)
    vals = {g: np.zeros(t) for g in
            ("mtg_el", "eb_el", "grid_buy", "grid_sell", "wt", "pv", "ess_ch",
             "ess_dc", "hsd_ch", "hsd_dc", "tse_pos", "tse_neg", "eil", "hie",
             "t_in", "c_hsd")}
    vals["mtg_el"][0] = 100.0
    v = SecondStageDecision(vals, np.zeros(t), np.zeros(t))
    bd = cost_breakdown(cfg, u, v)
    # one period at 100 kW: fuel term a*P + per-period constant b while on
    assert bd.c_mtg == pytest.approx(1.2 * 100 + 0.0015 * 24, abs=1e-12)

    avail = np.zeros(t)
    avail[0] = 50.0
    vals2 = {g: np.zeros(t) for g in vals}
    vals2["pv"][0] = 40.0
    v2 = SecondStageDecision(vals2, avail, np.zeros(t))
    bd2 = cost_breakdown(cfg, FirstStageDecision.all_off(cfg), v2)
    assert bd2.c_loss == pytest.approx(0.62 * 10.0, abs=1e-12)

    v3 = SecondStageDecision({g: np.zeros(t) for g in vals}, np.zeros(t), np.zeros(t))
    bd3 = cost_breakdown(cfg, FirstStageDecision.all_off(cfg), v3)
    assert bd3.total == pytest.approx(0.0, abs=1e-12)
    for key, val in bd3.as_dict().items():
        assert val == pytest.approx(0.0, abs=1e-12)


def test_breakdown_total_identity(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    bd = cost_breakdown(cfg, u_on, v, pv, wt)
    total = (bd.c_startstop + bd.c_mtg + bd.c_buy + bd.c_ess + bd.c_hsd
             + bd.c_loss + bd.c_co2 + bd.c_idr - bd.c_sell_profit)
    assert bd.total == pytest.approx(total, abs=1e-12)


def test_validate_flags_violations(cfg, u_on, reference_solution):
    pv, wt, sol, v = reference_solution
    broken = SecondStageDecision({g: v[g].copy() for g in v.values}, pv, wt)
    broken.values["grid_buy"] = broken["grid_buy"] + 5.0
    with pytest.raises(ValueError, match="electric balance"):
        cost_breakdown(cfg, u_on, broken, pv, wt, validate=True)
