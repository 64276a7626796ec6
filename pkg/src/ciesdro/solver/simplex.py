"""Built-in revised simplex for bounded-variable LPs.

Two-phase method on the equality standard form (slack column per inequality
row, one artificial per row). The basis inverse is kept explicitly and
updated by eta row operations, with a full refactorization every
``REFACTOR_EVERY`` pivots. Dantzig pricing switches to Bland's rule after
1000 degenerate pivots. The hot loop is numba-compiled (see accel module).
"""

import numpy as np

from ..accel import maybe_jit
from .problem import (
    EQ, GE, LE,
    STATUS_INFEASIBLE, STATUS_ITERATION_LIMIT, STATUS_OPTIMAL, STATUS_UNBOUNDED,
    Solution, SolverError,
)

FEAS_TOL = 1e-7
DUAL_TOL = 1e-9
PIVOT_TOL = 1e-9
REFACTOR_EVERY = 50
BLAND_AFTER = 1000

# phase return codes
_OPTIMAL, _UNBOUNDED, _ITER_LIMIT, _NUMERICAL = 0, 1, 2, 3

# nonbasic-at-lower / nonbasic-at-upper / basic / free-at-zero
_AT_LB, _AT_UB, _BASIC, _FREE = 0, 1, 2, 3


@maybe_jit
def _recompute_basics(A, b, basis, xval, binv):
    m, n = A.shape
    xn = xval.copy()
    for i in range(m):
        xn[basis[i]] = 0.0
    r = b - A @ xn
    xb = binv @ r
    for i in range(m):
        xval[basis[i]] = xb[i]


@maybe_jit
def _run_phase(A, b, c, lb, ub, basis, vstat, xval, binv, max_iter, allow_unbounded,
               start_bland):
    """One simplex phase; mutates basis/vstat/xval/binv in place."""
    m, n = A.shape
    degenerate = 0
    bland = start_bland
    since_refactor = 0
    iters = 0
    while iters < max_iter:
        iters += 1
        y = c[basis] @ binv
        d = c - y @ A

        # entering variable
        enter = -1
        sigma = 1.0
        if bland:
            for j in range(n):
                s = vstat[j]
                if s == _BASIC or ub[j] - lb[j] <= 0.0:
                    continue
                if (s == _AT_LB or s == _FREE) and d[j] < -DUAL_TOL:
                    enter = j
                    sigma = 1.0
                    break
                if (s == _AT_UB or s == _FREE) and d[j] > DUAL_TOL:
                    enter = j
                    sigma = -1.0
                    break
        else:
            best = DUAL_TOL
            for j in range(n):
                s = vstat[j]
                if s == _BASIC or ub[j] - lb[j] <= 0.0:
                    continue
                if (s == _AT_LB or s == _FREE) and -d[j] > best:
                    best = -d[j]
                    enter = j
                    sigma = 1.0
                if (s == _AT_UB or s == _FREE) and d[j] > best:
                    best = d[j]
                    enter = j
                    sigma = -1.0
        if enter < 0:
            return _OPTIMAL, iters

        w = binv @ A[:, enter].copy()

        # ratio test: step along sigma until the entering column's own span
        # or some basic variable hits a bound
        span = ub[enter] - lb[enter]
        t_best = span if np.isfinite(span) else np.inf
        leave = -1
        leave_to_ub = False
        piv_mag = 0.0
        for i in range(m):
            wi = sigma * w[i]
            bi = basis[i]
            if wi > PIVOT_TOL:
                room = xval[bi] - lb[bi]
                if room < 0.0:
                    room = 0.0
                ratio = room / wi
                hit_ub = False
            elif wi < -PIVOT_TOL:
                if not np.isfinite(ub[bi]):
                    continue
                room = ub[bi] - xval[bi]
                if room < 0.0:
                    room = 0.0
                ratio = room / (-wi)
                hit_ub = True
            else:
                continue
            take = False
            if ratio < t_best - 1e-10:
                take = True
            elif ratio < t_best + 1e-10 and leave >= 0:
                if bland:
                    take = bi < basis[leave]
                else:
                    take = abs(wi) > piv_mag
            if take:
                t_best = ratio
                leave = i
                leave_to_ub = hit_ub
                piv_mag = abs(wi)

        if not np.isfinite(t_best):
            if allow_unbounded:
                return _UNBOUNDED, iters
            return _NUMERICAL, iters

        if t_best <= 1e-12:
            degenerate += 1
            if degenerate > BLAND_AFTER:
                bland = True
        else:
            for i in range(m):
                xval[basis[i]] -= t_best * sigma * w[i]
            xval[enter] += sigma * t_best

        if leave < 0:
            # bound flip, basis unchanged
            vstat[enter] = _AT_UB if vstat[enter] == _AT_LB else _AT_LB
            continue

        lv = basis[leave]
        xval[lv] = ub[lv] if leave_to_ub else lb[lv]
        vstat[lv] = _AT_UB if leave_to_ub else _AT_LB
        basis[leave] = enter
        vstat[enter] = _BASIC

        piv = w[leave]
        if abs(piv) < PIVOT_TOL:
            return _NUMERICAL, iters
        binv[leave, :] /= piv
        for i in range(m):
            if i != leave and w[i] != 0.0:
                binv[i, :] -= w[i] * binv[leave, :]

        since_refactor += 1
        if since_refactor >= REFACTOR_EVERY:
            since_refactor = 0
            bmat = np.ascontiguousarray(A[:, basis])
            binv[:, :] = np.linalg.inv(bmat)
            _recompute_basics(A, b, basis, xval, binv)

    return _ITER_LIMIT, iters


def _standard_form(problem):
    """Equality form [A | slacks | artificials], with slack bounds by sense."""
    m, n = problem.n_rows, problem.n_vars
    a0 = problem.dense_matrix()
    senses = np.asarray(problem.row_sense)
    n_slack = int(np.sum(senses != EQ))
    n_tot = n + n_slack + m
    A = np.zeros((m, n_tot))
    A[:, :n] = a0
    lb = np.full(n_tot, 0.0)
    ub = np.full(n_tot, np.inf)
    plb, pub = problem.bounds_arrays()
    lb[:n], ub[:n] = plb, pub
    k = n
    for i in range(m):
        if senses[i] == LE:
            A[i, k] = 1.0
            lb[k], ub[k] = 0.0, np.inf
            k += 1
        elif senses[i] == GE:
            A[i, k] = 1.0
            lb[k], ub[k] = -np.inf, 0.0
            k += 1
    return A, lb, ub, n, n_slack


def _initial_point(A, b, lb, ub, n_real):
    """Nonbasic start at finite bounds; artificials absorb the residual."""
    m = A.shape[0]
    n_tot = A.shape[1]
    xval = np.zeros(n_tot)
    vstat = np.full(n_tot, _AT_LB, dtype=np.int64)
    for j in range(n_real):
        if np.isfinite(lb[j]):
            xval[j] = lb[j]
            vstat[j] = _AT_LB
        elif np.isfinite(ub[j]):
            xval[j] = ub[j]
            vstat[j] = _AT_UB
        else:
            xval[j] = 0.0
            vstat[j] = _FREE
    r = b - A[:, :n_real] @ xval[:n_real]
    basis = np.arange(n_real, n_real + m, dtype=np.int64)
    binv = np.zeros((m, m))
    for i in range(m):
        col = n_real + i
        sign = 1.0 if r[i] >= 0.0 else -1.0
        A[i, col] = sign
        xval[col] = abs(r[i])
        vstat[col] = _BASIC
        binv[i, i] = sign
    return basis, vstat, xval, binv


def _solve_once(problem, max_iter, start_bland):
    m, n = problem.n_rows, problem.n_vars
    plb, pub = problem.bounds_arrays()
    if np.any(plb > pub):
        return Solution(STATUS_INFEASIBLE), 0
    if m == 0:
        x = np.where(np.isfinite(plb), plb, np.where(np.isfinite(pub), pub, 0.0))
        c = problem.obj_array()
        # push each cost-bearing variable to its favorable bound
        for j in range(n):
            if c[j] < 0 and np.isfinite(pub[j]):
                x[j] = pub[j]
            elif c[j] < 0 and not np.isfinite(pub[j]):
                return Solution(STATUS_UNBOUNDED), 0
            elif c[j] > 0 and not np.isfinite(plb[j]):
                return Solution(STATUS_UNBOUNDED), 0
        return Solution(STATUS_OPTIMAL, x=x, objective=problem.objective_value(x),
                        duals=np.zeros(0)), 0

    b = np.asarray(problem.rhs, dtype=float)
    A, lb, ub, n_real_struct, n_slack = _standard_form(problem)
    n_real = n_real_struct + n_slack
    basis, vstat, xval, binv = _initial_point(A, b, lb, ub, n_real)

    c1 = np.zeros(A.shape[1])
    c1[n_real:] = 1.0
    code, it1 = _run_phase(A, b, c1, lb, ub, basis, vstat, xval, binv,
                           max_iter, False, start_bland)
    if code == _NUMERICAL:
        return None, it1
    if code == _ITER_LIMIT:
        return Solution(STATUS_ITERATION_LIMIT, iterations=it1), it1
    art_sum = float(np.sum(np.abs(xval[n_real:])))
    if art_sum > FEAS_TOL:
        return Solution(STATUS_INFEASIBLE, iterations=it1), it1

    # lock artificials at zero for phase 2
    lb[n_real:] = 0.0
    ub[n_real:] = 0.0
    xval[n_real:] = np.where(np.abs(xval[n_real:]) < FEAS_TOL, 0.0, xval[n_real:])
    c2 = np.zeros(A.shape[1])
    c2[:n] = problem.obj_array()
    code, it2 = _run_phase(A, b, c2, lb, ub, basis, vstat, xval, binv,
                           max_iter, True, start_bland)
    iters = it1 + it2
    if code == _NUMERICAL:
        return None, iters
    if code == _UNBOUNDED:
        return Solution(STATUS_UNBOUNDED, iterations=iters), iters
    if code == _ITER_LIMIT:
        return Solution(STATUS_ITERATION_LIMIT, iterations=iters), iters

    x = xval[:n].copy()
    duals = c2[basis] @ binv
    return Solution(STATUS_OPTIMAL, x=x, objective=problem.objective_value(x),
                    duals=duals, iterations=iters), iters


def solve_lp(problem, max_iter=None):
    """Solve the LP relaxation of ``problem`` (integrality mask ignored)."""
    if max_iter is None:
        max_iter = 50 * (problem.n_rows + problem.n_vars) + 2000
    try:
        sol, _ = _solve_once(problem, max_iter, start_bland=False)
    except np.linalg.LinAlgError:
        sol = None
    if sol is None:
        # retry on a fresh trajectory with Bland's rule throughout
        try:
            sol, _ = _solve_once(problem, max_iter, start_bland=True)
        except np.linalg.LinAlgError:
            sol = None
        if sol is None:
            raise SolverError("numerical breakdown persisted after refactorization retry "
                              f"(m={problem.n_rows}, n={problem.n_vars})")
    return sol


def dual_objective(problem, solution):
    """Bounded-LP dual objective for an optimal solution's duals."""
    y = solution.duals
    if y is None or problem.n_rows == 0:
        return problem.objective_value(solution.x)
    a = problem.dense_matrix()
    d = problem.obj_array() - y @ a
    lb, ub = problem.bounds_arrays()
    lo = np.where(np.isfinite(lb), lb, 0.0)
    hi = np.where(np.isfinite(ub), ub, 0.0)
    val = y @ np.asarray(problem.rhs)
    val += np.sum(np.where(d > 0, d * lo, 0.0)) + np.sum(np.where(d < 0, d * hi, 0.0))
    return float(val + problem.obj_offset)
