"""Schedule report assembly and file emission (JSON report, dispatch and
cost CSVs)."""

import csv
import json
import os

import numpy as np

from .ccg import curtailment_rate, scenario_cost_breakdowns
from .stages import U_GROUPS, V_GROUPS, audit_dispatch


def build_report(cfg, result, mode):
    """Assemble the schedule report dictionary from a CCG result."""
    rows, weighted = scenario_cost_breakdowns(cfg, result)
    budget = result.budget
    report = {
        "mode": mode.describe(),
        "budgets": {
            "m_hist": budget.m_hist,
            "n_s": budget.n_s,
            "alpha1": None if np.isnan(budget.alpha1) else budget.alpha1,
            "alphainf": None if np.isnan(budget.alphainf) else budget.alphainf,
            "theta1": budget.theta1,
            "thetainf": budget.thetainf,
        },
        "converged": bool(result.converged),
        "iterations": int(result.iterations),
        "total_cost": float(result.total_cost),
        "lower_bound": float(result.lb),
        "gap": float(result.gap),
        "runtime_s": float(result.runtime_s),
        "trace": [
            {
                "iteration": rec.iteration,
                "lb": float(rec.lb),
                "ub_candidate": float(rec.ub_candidate),
                "ub": float(rec.ub),
                "gap": float(rec.gap),
                "master_status": rec.master_status,
                "scenario_costs": [float(v) for v in rec.scenario_costs],
                "weights_used": [float(v) for v in rec.weights_used],
                "worst_p": [float(v) for v in rec.worst_p],
            }
            for rec in result.trace
        ],
        "first_stage": {g: [int(v) for v in arr]
                        for g, arr in zip(U_GROUPS, result.u.arrays())},
        "worst_distribution": [float(v) for v in result.worst_p],
        "initial_distribution": [float(v) for v in result.scenarios.p0],
        "scenario_costs": [float(v) for v in result.scenario_costs],
        "cost_breakdown": {
            "per_scenario": [r.as_dict() for r in rows],
            "worst_case_weighted": weighted,
        },
        "curtailment_rate": float(curtailment_rate(result)),
    }
    return report


def dispatch_table(cfg, v):
    """24-row table of every dispatch column plus derived heat-side columns."""
    der = v.derived(cfg)
    elec = (v["grid_buy"] + v["wt"] + v["pv"] + v["ess_dc"] + v["mtg_el"]
            - v["ess_ch"] - v["grid_sell"] - v["eb_el"]
            - (cfg.base_eload + v["tse_pos"] - v["tse_neg"] - v["eil"]))
    heat = (der["mtg_heat"] + der["eb_heat"] - v["hsd_ch"] + v["hsd_dc"]
            - der["heat_load"])
    cols = {"hour": np.arange(cfg.horizon)}
    for g in V_GROUPS:
        cols[g] = v[g]
    cols["pv_avail"] = v.pv_avail
    cols["wt_avail"] = v.wt_avail
    cols["mtg_heat"] = der["mtg_heat"]
    cols["eb_heat"] = der["eb_heat"]
    cols["heat_load"] = der["heat_load"]
    cols["c_ess"] = der["c_ess"]
    cols["elec_residual"] = elec
    cols["heat_residual"] = heat
    return cols


def write_dispatch_csv(path, cfg, v):
    cols = dispatch_table(cfg, v)
    names = list(cols)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for t in range(cfg.horizon):
            writer.writerow([f"{cols[n][t]:.12g}" if n != "hour" else t
                             for n in names])


def read_dispatch_csv(path, cfg):
    """Reload a dispatch CSV into a {column: array} map."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        names = next(reader)
        data = {n: [] for n in names}
        for row in reader:
            for n, val in zip(names, row):
                data[n].append(float(val))
    return {n: np.asarray(vals) for n, vals in data.items()}


def write_costs_csv(path, result, rows):
    fields = list(rows[0].as_dict())
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["scenario", "p0", "worst_p"] + fields)
        for s, bd in enumerate(rows):
            d = bd.as_dict()
            writer.writerow([s, f"{result.scenarios.p0[s]:.9g}",
                             f"{result.worst_p[s]:.9g}"]
                            + [f"{d[k]:.9g}" for k in fields])


def write_report_files(out_dir, cfg, result, mode):
    """Write report.json, per-scenario dispatch CSVs and costs.csv."""
    os.makedirs(out_dir, exist_ok=True)
    report = build_report(cfg, result, mode)
    rows, _ = scenario_cost_breakdowns(cfg, result)
    dispatch_files = []
    for s, v in enumerate(result.dispatches):
        path = os.path.join(out_dir, f"dispatch_s{s}.csv")
        write_dispatch_csv(path, cfg, v)
        dispatch_files.append(os.path.basename(path))
    report["dispatch_files"] = dispatch_files
    write_costs_csv(os.path.join(out_dir, "costs.csv"), result, rows)
    with open(os.path.join(out_dir, "report.json"), "w") as fh:
        json.dump(report, fh, indent=1)
        fh.write("\n")
    return report


def audit_result(cfg, result, tol=1e-6):
    """Audit every scenario dispatch of a result; returns violations."""
    problems = []
    for s, v in enumerate(result.dispatches):
        for msg in audit_dispatch(cfg, v.pv_avail, v.wt_avail, result.u, v, tol=tol):
            problems.append(f"scenario {s}: {msg}")
    return problems
