from .problem import (
    EQ, GE, LE,
    STATUS_INFEASIBLE, STATUS_ITERATION_LIMIT, STATUS_OPTIMAL, STATUS_UNBOUNDED,
    Solution, SolverError, SparseProblem,
)
from .simplex import dual_objective, solve_lp
from .branch_bound import solve_milp
from .backends import available_backends, register_backend, solve

__all__ = [
    "EQ", "GE", "LE",
    "STATUS_INFEASIBLE", "STATUS_ITERATION_LIMIT", "STATUS_OPTIMAL", "STATUS_UNBOUNDED",
    "Solution", "SolverError", "SparseProblem",
    "solve_lp", "solve_milp", "solve", "dual_objective",
    "register_backend", "available_backends",
]
