"""Best-first branch-and-bound over the binary variables of a SparseProblem."""

import heapq

import numpy as np

from .problem import (
    STATUS_INFEASIBLE, STATUS_ITERATION_LIMIT, STATUS_OPTIMAL, STATUS_UNBOUNDED,
    Solution,
)
from .simplex import solve_lp

INT_TOL = 1e-6
DEFAULT_NODE_LIMIT = 1_000_000


def _relaxation(problem, lb, ub, lp_solve):
    saved = problem.lb, problem.ub
    problem.lb, problem.ub = list(lb), list(ub)
    try:
        return lp_solve(problem)
    finally:
        problem.lb, problem.ub = saved


def solve_milp(problem, gap=1e-6, node_limit=DEFAULT_NODE_LIMIT, lp_solve=solve_lp):
    """Minimize with binary integrality; ``gap`` is the absolute bound gap."""
    if gap < 0:
        raise ValueError("gap must be non-negative")
    mask = problem.binary_mask()
    bin_idx = np.flatnonzero(mask)
    if bin_idx.size == 0:
        return solve_lp(problem)

    lb0, ub0 = problem.bounds_arrays()
    root = _relaxation(problem, lb0, ub0, lp_solve)
    if root.status == STATUS_UNBOUNDED:
        return Solution(STATUS_UNBOUNDED, backend="builtin")
    if root.status != STATUS_OPTIMAL:
        return Solution(STATUS_INFEASIBLE, backend="builtin")

    incumbent = None
    incumbent_obj = np.inf
    counter = 0
    heap = [(root.objective, counter, lb0, ub0, root)]
    nodes = 0

    def polish(node_sol, node_lb, node_ub):
        """Fix binaries at their rounded values and re-solve for a clean point."""
        flb, fub = node_lb.copy(), node_ub.copy()
        rounded = np.round(node_sol.x[bin_idx])
        flb[bin_idx] = rounded
        fub[bin_idx] = rounded
        fixed = _relaxation(problem, flb, fub, lp_solve)
        return fixed if fixed.status == STATUS_OPTIMAL else node_sol

    while heap:
        bound, _, lb, ub, sol = heapq.heappop(heap)
        best_bound = bound
        if incumbent is not None and incumbent_obj - best_bound <= gap + 1e-12:
            return Solution(STATUS_OPTIMAL, x=incumbent.x, objective=incumbent_obj,
                            iterations=incumbent.iterations, nodes=nodes)
        if sol is None:
            sol = _relaxation(problem, lb, ub, lp_solve)
            nodes += 1
            if nodes > node_limit:
                status = STATUS_ITERATION_LIMIT
                if incumbent is None:
                    return Solution(status, nodes=nodes)
                return Solution(status, x=incumbent.x, objective=incumbent_obj, nodes=nodes)
            if sol.status != STATUS_OPTIMAL:
                continue
            if sol.objective >= incumbent_obj - 1e-12:
                continue
            bound = sol.objective

        frac = np.abs(sol.x[bin_idx] - np.round(sol.x[bin_idx]))
        if frac.max(initial=0.0) <= INT_TOL:
            cand = polish(sol, lb, ub)
            if cand.objective < incumbent_obj - 1e-12:
                incumbent = cand
                incumbent_obj = cand.objective
            continue

        # most-fractional branching, ties by lowest variable index
        scores = np.abs(frac - 0.5)
        j = bin_idx[int(np.argmin(scores))]
        for val in (0.0, 1.0):
            clb, cub = lb.copy(), ub.copy()
            if clb[j] > val or cub[j] < val:
                continue
            clb[j] = val
            cub[j] = val
            counter += 1
            heapq.heappush(heap, (bound, counter, clb, cub, None))

    if incumbent is None:
        return Solution(STATUS_INFEASIBLE, nodes=nodes)
    return Solution(STATUS_OPTIMAL, x=incumbent.x, objective=incumbent_obj,
                    iterations=incumbent.iterations, nodes=nodes)
