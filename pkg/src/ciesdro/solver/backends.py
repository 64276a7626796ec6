"""Solver backend seam.

The built-in simplex/branch-and-bound is the default and the reference
implementation. Additional backends take a SparseProblem plus an absolute
MILP gap and return a Solution; they are selected per call or registered
under a name. ``auto`` keeps small problems on the built-in solver and
routes large ones to scipy's HiGHS wrapper.
"""

import numpy as np

from .branch_bound import solve_milp as _builtin_milp
from .problem import (
    EQ, GE, LE,
    STATUS_INFEASIBLE, STATUS_ITERATION_LIMIT, STATUS_OPTIMAL, STATUS_UNBOUNDED,
    Solution, SolverError,
)
from .simplex import solve_lp as _builtin_lp

AUTO_ROW_LIMIT = 300


def _builtin_backend(problem, gap):
    if problem.binary_mask().any():
        return _builtin_milp(problem, gap=gap)
    return _builtin_lp(problem)


_HIGHS_LP_STATUS = {0: STATUS_OPTIMAL, 1: STATUS_ITERATION_LIMIT,
                    2: STATUS_INFEASIBLE, 3: STATUS_UNBOUNDED}


def _highs_backend(problem, gap):
    try:
        from scipy import optimize, sparse
    except ImportError as exc:
        raise SolverError(f"scipy unavailable: {exc}", backend="highs")

    c = problem.obj_array()
    lb, ub = problem.bounds_arrays()
    senses = np.asarray(problem.row_sense)
    rhs = np.asarray(problem.rhs, dtype=float)
    mask = problem.binary_mask()

    try:
        if mask.any():
            a = problem.csc_matrix()
            lo = np.where(senses == LE, -np.inf, rhs)
            hi = np.where(senses == GE, np.inf, rhs)
            cons = optimize.LinearConstraint(a, lo, hi) if problem.n_rows else ()
            res = optimize.milp(
                c,
                constraints=cons,
                integrality=mask.astype(int),
                bounds=optimize.Bounds(lb, ub),
                options={"mip_rel_gap": 0.0},
            )
            status = _HIGHS_LP_STATUS.get(res.status)
            if status is None:
                raise SolverError(f"milp returned status {res.status}: {res.message}",
                                  backend="highs")
            if status != STATUS_OPTIMAL or res.x is None:
                return Solution(status, backend="highs")
            x = np.asarray(res.x, dtype=float)
            return Solution(STATUS_OPTIMAL, x=x,
                            objective=float(c @ x + problem.obj_offset),
                            backend="highs")

        a = problem.dense_matrix() if problem.n_rows else None
        a_ub, b_ub, ub_rows = [], [], []
        a_eq, b_eq, eq_rows = [], [], []
        for i in range(problem.n_rows):
            if senses[i] == EQ:
                a_eq.append(a[i])
                b_eq.append(rhs[i])
                eq_rows.append(i)
            elif senses[i] == LE:
                a_ub.append(a[i])
                b_ub.append(rhs[i])
                ub_rows.append((i, 1.0))
            else:
                a_ub.append(-a[i])
                b_ub.append(-rhs[i])
                ub_rows.append((i, -1.0))
        res = optimize.linprog(
            c,
            A_ub=sparse.csr_matrix(np.array(a_ub)) if a_ub else None,
            b_ub=np.array(b_ub) if b_ub else None,
            A_eq=sparse.csr_matrix(np.array(a_eq)) if a_eq else None,
            b_eq=np.array(b_eq) if b_eq else None,
            bounds=list(zip(lb, ub)),
            method="highs",
        )
        status = _HIGHS_LP_STATUS.get(res.status)
        if status is None:
            raise SolverError(f"linprog returned status {res.status}: {res.message}",
                              backend="highs")
        if status != STATUS_OPTIMAL:
            return Solution(status, backend="highs")
        x = np.asarray(res.x, dtype=float)
        duals = np.zeros(problem.n_rows)
        if eq_rows:
            duals[eq_rows] = res.eqlin.marginals
        for k, (i, sign) in enumerate(ub_rows):
            duals[i] = sign * res.ineqlin.marginals[k]
        return Solution(STATUS_OPTIMAL, x=x,
                        objective=float(c @ x + problem.obj_offset),
                        duals=duals, backend="highs")
    except SolverError:
        raise
    except Exception as exc:
        raise SolverError(str(exc), backend="highs")


_BACKENDS = {"builtin": _builtin_backend, "highs": _highs_backend}


def register_backend(name, fn):
    """Register ``fn(problem, gap) -> Solution`` under ``name``."""
    _BACKENDS[name] = fn


def available_backends():
    return sorted(_BACKENDS)


def solve(problem, gap=1e-6, backend="auto"):
    """Solve through the configured backend; ``auto`` picks by problem size."""
    if callable(backend):
        fn, tag = backend, getattr(backend, "__name__", "custom")
    else:
        name = backend or "auto"
        if name == "auto":
            name = "highs" if problem.n_rows > AUTO_ROW_LIMIT and "highs" in _BACKENDS \
                else "builtin"
        if name not in _BACKENDS:
            raise ValueError(f"unknown solver backend {name!r}; "
                             f"available: {available_backends()}")
        fn, tag = _BACKENDS[name], name
    try:
        return fn(problem, gap)
    except SolverError:
        raise
    except Exception as exc:
        raise SolverError(str(exc), backend=tag)
