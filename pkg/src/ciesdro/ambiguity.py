"""Comprehensive-norm ambiguity set: budgets and worst-case distributions.

The probability confidence set around the empirical scenario distribution
p0 is bounded jointly by a 1-norm budget theta1 (total absolute deviation)
and an inf-norm budget thetainf (per-scenario deviation). The worst-case
expected cost over the set is solved both as an LP on offset variables and
by a greedy mass-transfer oracle; the two must agree.
"""

import math
from dataclasses import dataclass

import numpy as np

from .solver import SparseProblem, SolverError, solve_lp

SIMPLEX_TOL = 1e-9


@dataclass(frozen=True)
class AmbiguityBudget:
    m_hist: int
    n_s: int
    alpha1: float
    alphainf: float
    theta1: float
    thetainf: float


@dataclass
class WorstCaseDistribution:
    p: np.ndarray
    objective: float
    shift_pos: np.ndarray
    shift_neg: np.ndarray


def compute_budgets(m_hist, n_s, alpha1, alphainf):
    """Deviation budgets at confidence (alpha1, alphainf) from m_hist samples."""
    if m_hist < 1 or n_s < 1:
        raise ValueError("m_hist and n_s must be positive")
    for name, a in (("alpha1", alpha1), ("alphainf", alphainf)):
        if not 0.0 < a < 1.0:
            raise ValueError(f"{name} must lie in (0, 1), got {a}")
    arg1 = 2.0 * n_s / (1.0 - alpha1)
    arginf = 2.0 * n_s / (1.0 - alphainf)
    theta1 = max(0.0, n_s / (2.0 * m_hist) * math.log(arg1))
    thetainf = max(0.0, 1.0 / (2.0 * m_hist) * math.log(arginf))
    return AmbiguityBudget(int(m_hist), int(n_s), float(alpha1), float(alphainf),
                           theta1, thetainf)


def fixed_budgets(n_s, theta1, thetainf):
    """Budget container with directly prescribed deviation limits."""
    if theta1 < 0 or thetainf < 0:
        raise ValueError("budgets must be non-negative")
    return AmbiguityBudget(0, int(n_s), math.nan, math.nan, float(theta1), float(thetainf))


def _check_inputs(p0, f, budget):
    p0 = np.asarray(p0, dtype=float)
    f = np.asarray(f, dtype=float)
    if p0.shape != f.shape or p0.ndim != 1:
        raise ValueError("p0 and f must be 1-d arrays of equal length")
    if np.any(p0 < -SIMPLEX_TOL) or abs(p0.sum() - 1.0) > SIMPLEX_TOL:
        raise ValueError("p0 must lie on the probability simplex")
    if not np.all(np.isfinite(f)):
        raise ValueError("scenario costs must be finite")
    if budget.theta1 < 0 or budget.thetainf < 0:
        raise ValueError("budgets must be non-negative")
    return p0, f


def worst_case_lp(p0, f, budget):
    """Maximize sum(p_s f_s) over the confidence set, as an LP in the offsets.

    The 0-1 offset flags of the original linearization are unnecessary: with
    both offsets non-negative and sharing the per-scenario cap, some optimum
    always has one of them at zero, so the relaxation is exact (the greedy
    oracle enforces this equivalence in tests).
    """
    p0, f = _check_inputs(p0, f, budget)
    n = p0.size
    prob = SparseProblem()
    pos = prob.add_vars(n, 0.0, budget.thetainf, name="pos")
    neg = prob.add_vars(n, 0.0, budget.thetainf, name="neg")
    for s in range(n):
        prob.set_obj(pos[s], -f[s])
        prob.set_obj(neg[s], f[s])
    prob.add_row(pos + neg, [1.0] * (2 * n), "<=", budget.theta1, name="l1_budget")
    prob.add_row(pos + neg, [1.0] * n + [-1.0] * n, "=", 0.0, name="mass_balance")
    for s in range(n):
        prob.add_row([pos[s], neg[s]], [1.0, 1.0], "<=", budget.thetainf,
                     name=f"linf[{s}]")
        prob.add_row([neg[s], pos[s]], [1.0, -1.0], "<=", p0[s],
                     name=f"nonneg[{s}]")
    sol = solve_lp(prob)
    if not sol.optimal:
        raise SolverError(f"worst-case distribution LP ended with {sol.status}")
    sp = sol.x[:n]
    sn = sol.x[n:2 * n]
    p = np.clip(p0 + sp - sn, 0.0, None)
    return WorstCaseDistribution(p, float(f @ p), sp, sn)


def worst_case_greedy(p0, f, budget):
    """Independent oracle: shift mass from cheap to costly scenarios greedily."""
    p0, f = _check_inputs(p0, f, budget)
    n = p0.size
    p = p0.copy()
    used = np.zeros(n)  # per-scenario total offset magnitude
    mass_left = budget.theta1 / 2.0
    order_desc = np.lexsort((np.arange(n), -f))
    order_asc = np.lexsort((np.arange(n), f))
    ai = 0
    for r in order_desc:
        if mass_left <= 0:
            break
        take = min(budget.thetainf - used[r], mass_left)
        while take > SIMPLEX_TOL and ai < n:
            d = order_asc[ai]
            if d == r or f[d] >= f[r]:
                break
            give = min(take, p[d], budget.thetainf - used[d])
            if give <= SIMPLEX_TOL:
                ai += 1
                continue
            p[d] -= give
            p[r] += give
            used[d] += give
            used[r] += give
            mass_left -= give
            take -= give
        if ai >= n:
            break
    sp = np.clip(p - p0, 0.0, None)
    sn = np.clip(p0 - p, 0.0, None)
    return WorstCaseDistribution(p, float(f @ p), sp, sn)
