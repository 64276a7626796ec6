"""Command-line entry point: fixture generation, scenario reduction, solve
runs, sensitivity sweeps and report auditing.

Exit codes: 0 success, 2 input error, 3 infeasible configuration,
4 not converged.
"""

import argparse
import json
import os
import sys
import tempfile
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import ccg, fixture, report
from .config import load_config
from .scenarios import (
    build_scenario_set, load_samples_csv, load_scenarios_json,
    save_scenarios_json, select_cluster_count,
)
from .solver import SolverError
from .stages import FirstStageDecision, InfeasibleError, SecondStageDecision, \
    U_GROUPS, V_GROUPS, audit_dispatch

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_INFEASIBLE = 3
EXIT_NOT_CONVERGED = 4


class InputError(Exception):
    pass


def _require_file(path, what):
    if path is None:
        raise InputError(f"missing required {what}")
    if not os.path.isfile(path):
        raise InputError(f"{what} not found: {path}")
    return path


def _load_scenarios(args):
    if args.scenarios:
        return load_scenarios_json(_require_file(args.scenarios, "scenario file"))
    if not (args.pv and args.wt):
        raise InputError("provide --scenarios or both --pv and --wt sample files")
    pv = load_samples_csv(_require_file(args.pv, "PV sample file"))
    wt = load_samples_csv(_require_file(args.wt, "WT sample file"))
    pv_sel = select_cluster_count(pv, args.k_min, args.k_max, args.seed)
    wt_sel = select_cluster_count(wt, args.k_min, args.k_max, args.seed)
    scen = build_scenario_set(pv_sel.clusterings[pv_sel.k],
                              wt_sel.clusterings[wt_sel.k])
    scen.meta = {"k_pv": pv_sel.k, "k_wt": wt_sel.k, "seed": args.seed}
    return scen


def _mode_from_args(args):
    return ccg.SolveMode(
        kind=args.mode,
        alpha1=args.alpha1,
        alphainf=args.alphainf,
        m_hist=args.m_hist,
        norm=args.norm,
        theta1=args.theta1,
        thetainf=args.thetainf,
        box=args.box,
    )


def cmd_fixture(args):
    paths = fixture.write_fixture(args.out, seed=args.seed, n_days=args.days)
    print(f"wrote {paths['pv']}, {paths['wt']}, {paths['config']}")
    return EXIT_OK


def cmd_reduce(args):
    pv = load_samples_csv(_require_file(args.pv, "PV sample file"))
    wt = load_samples_csv(_require_file(args.wt, "WT sample file"))
    pv_sel = select_cluster_count(pv, args.k_min, args.k_max, args.seed)
    wt_sel = select_cluster_count(wt, args.k_min, args.k_max, args.seed)
    scen = build_scenario_set(pv_sel.clusterings[pv_sel.k],
                              wt_sel.clusterings[wt_sel.k])
    scen.meta = {
        "seed": args.seed,
        "k_pv": pv_sel.k,
        "k_wt": wt_sel.k,
        "pv_table": [list(row) for row in pv_sel.table],
        "wt_table": [list(row) for row in wt_sel.table],
    }
    save_scenarios_json(args.out, scen)
    print(f"selected k_pv={pv_sel.k}, k_wt={wt_sel.k}; "
          f"wrote {scen.n_s} scenarios to {args.out}")
    return EXIT_OK


def cmd_run(args):
    cfg = load_config(_require_file(args.config, "config file"))
    scen = _load_scenarios(args)
    mode = _mode_from_args(args)
    result = ccg.run(cfg, scen, mode, tol=args.tol, max_iter=args.max_iter,
                     backend=args.backend,
                     log_fn=lambda line: print(line))
    rep = report.write_report_files(args.out, cfg, result, mode)
    problems = report.audit_result(cfg, result)
    if problems:
        print("dispatch audit FAILED:", file=sys.stderr)
        for msg in problems:
            print(f"  {msg}", file=sys.stderr)
        return EXIT_INFEASIBLE
    print(f"total={rep['total_cost']:.4f} curtailment={rep['curtailment_rate']:.2f}% "
          f"iterations={rep['iterations']} out={args.out}")
    if not result.converged:
        print(f"not converged after {result.iterations} iterations "
              f"(gap {result.gap:.4f})", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    return EXIT_OK


def _sweep_values(args):
    axis = args.axis
    if axis == "norm-variant":
        return ["comprehensive", "one", "inf"]
    if not args.values:
        raise InputError(f"--values required for axis {axis}")
    vals = []
    for v in args.values.split(","):
        v = v.strip()
        vals.append(int(v) if axis == "m" else float(v))
    return vals


def _sweep_cell(payload):
    (cfg_path, scen_path, mode_kwargs, tol, max_iter, backend) = payload
    cfg = load_config(cfg_path)
    scen = load_scenarios_json(scen_path)
    mode = ccg.SolveMode(**mode_kwargs)
    result = ccg.run(cfg, scen, mode, tol=tol, max_iter=max_iter, backend=backend)
    return {
        "total_cost": result.total_cost,
        "curtailment_rate": ccg.curtailment_rate(result),
        "iterations": result.iterations,
        "converged": result.converged,
    }


def cmd_sweep(args):
    cfg_path = _require_file(args.config, "config file")
    scen = _load_scenarios(args)
    values = _sweep_values(args)
    os.makedirs(args.out, exist_ok=True)
    scen_path = os.path.join(args.out, "scenarios_used.json")
    save_scenarios_json(scen_path, scen)

    payloads = []
    for v in values:
        kw = dict(kind=args.mode, alpha1=args.alpha1, alphainf=args.alphainf,
                  m_hist=args.m_hist, norm=args.norm, box=args.box)
        if args.axis == "m":
            kw["m_hist"] = int(v)
        elif args.axis == "alpha1":
            kw["alpha1"] = float(v)
        elif args.axis == "alphainf":
            kw["alphainf"] = float(v)
        elif args.axis == "norm-variant":
            kw["norm"] = v
        else:
            raise InputError(f"unknown sweep axis {args.axis!r}")
        payloads.append((cfg_path, scen_path, kw, args.tol, args.max_iter,
                         args.backend))

    cells = []
    if args.parallel > 1:
        with ProcessPoolExecutor(max_workers=args.parallel) as pool:
            futures = [pool.submit(_sweep_cell, p) for p in payloads]
            for v, fut in zip(values, futures):
                try:
                    cells.append((v, fut.result()))
                except Exception as exc:
                    print(f"cell {v} failed: {exc}", file=sys.stderr)
                    cells.append((v, None))
    else:
        for v, p in zip(values, payloads):
            try:
                cells.append((v, _sweep_cell(p)))
            except Exception as exc:
                print(f"cell {v} failed: {exc}", file=sys.stderr)
                cells.append((v, None))

    out_csv = os.path.join(args.out, "sweep.csv")
    fd, tmp = tempfile.mkstemp(dir=args.out, suffix=".csv")
    with os.fdopen(fd, "w") as fh:
        fh.write("value,total_cost,curtailment_rate,iterations,converged\n")
        for v, cell in cells:
            if cell is None:
                fh.write(f"{v},failed,failed,failed,failed\n")
            else:
                fh.write(f"{v},{cell['total_cost']:.6f},"
                         f"{cell['curtailment_rate']:.6f},{cell['iterations']},"
                         f"{int(cell['converged'])}\n")
    os.replace(tmp, out_csv)
    print(f"wrote {out_csv} ({len(cells)} cells)")
    return EXIT_OK


def cmd_audit(args):
    cfg = load_config(_require_file(args.config, "config file"))
    report_path = _require_file(os.path.join(args.dir, "report.json"), "report")
    with open(report_path) as fh:
        rep = json.load(fh)
    u = FirstStageDecision(*[np.asarray(rep["first_stage"][g], dtype=int)
                             for g in U_GROUPS]).validate(cfg)
    problems = []
    for s, name in enumerate(rep["dispatch_files"]):
        table = report.read_dispatch_csv(os.path.join(args.dir, name), cfg)
        values = {g: table[g] for g in V_GROUPS}
        v = SecondStageDecision(values, table["pv_avail"], table["wt_avail"])
        for msg in audit_dispatch(cfg, v.pv_avail, v.wt_avail, u, v):
            problems.append(f"{name}: {msg}")
    if problems:
        print("audit FAILED:")
        for msg in problems:
            print(f"  {msg}")
        return EXIT_INFEASIBLE
    print(f"audit OK: {len(rep['dispatch_files'])} dispatch tables clean")
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(
        prog="ciesdro",
        description="Distributionally robust day-ahead scheduling for a "
                    "community integrated energy system")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("fixture", help="generate the synthetic dataset")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--days", type=int, default=fixture.N_DAYS)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_fixture)

    p = sub.add_parser("reduce", help="cluster samples into a scenario set")
    p.add_argument("--pv", required=True)
    p.add_argument("--wt", required=True)
    p.add_argument("--k-min", type=int, default=2)
    p.add_argument("--k-max", type=int, default=6)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_reduce)

    def add_solve_args(p, tol_default):
        p.add_argument("--config", required=True)
        p.add_argument("--scenarios")
        p.add_argument("--pv")
        p.add_argument("--wt")
        p.add_argument("--k-min", type=int, default=2)
        p.add_argument("--k-max", type=int, default=6)
        p.add_argument("--mode", default="dro",
                       choices=["dro", "stochastic", "robust", "deterministic"])
        p.add_argument("--alpha1", type=float, default=0.99)
        p.add_argument("--alphainf", type=float, default=0.99)
        p.add_argument("--m-hist", type=int, default=5000)
        p.add_argument("--norm", default="comprehensive",
                       choices=["comprehensive", "one", "inf"])
        p.add_argument("--theta1", type=float, default=None)
        p.add_argument("--thetainf", type=float, default=None)
        p.add_argument("--box", type=float, default=None)
        p.add_argument("--tol", type=float, default=tol_default)
        p.add_argument("--max-iter", type=int, default=25)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--backend", default="auto")
        p.add_argument("--out", required=True)

    p = sub.add_parser("run", help="solve one schedule and write reports")
    add_solve_args(p, tol_default=0.01)
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("sweep", help="sensitivity sweep along one axis")
    add_solve_args(p, tol_default=1e-3)
    p.add_argument("--axis", required=True,
                   choices=["m", "alpha1", "alphainf", "norm-variant"])
    p.add_argument("--values", default=None,
                   help="comma-separated axis values (not used for norm-variant)")
    p.add_argument("--parallel", type=int, default=1)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("audit", help="re-validate emitted dispatch files")
    p.add_argument("--config", required=True)
    p.add_argument("--dir", required=True, help="directory with report.json")
    p.set_defaults(func=cmd_audit)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (OSError, ValueError, KeyError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except InfeasibleError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except SolverError as exc:
        print(f"solver failure: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
