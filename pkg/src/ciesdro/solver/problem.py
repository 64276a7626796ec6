"""Generic sparse LP/MILP container shared by all model builders and solvers."""

from dataclasses import dataclass

import numpy as np

LE, EQ, GE = 0, 1, 2
_SENSE_CHARS = {LE: "<=", EQ: "=", GE: ">="}
_SENSE_CODES = {"<": LE, "<=": LE, "=": EQ, "==": EQ, ">": GE, ">=": GE}

STATUS_OPTIMAL = "optimal"
STATUS_INFEASIBLE = "infeasible"
STATUS_UNBOUNDED = "unbounded"
STATUS_ITERATION_LIMIT = "iteration-limit"


class SolverError(RuntimeError):
    """Numerical breakdown or backend failure, with a backend tag."""

    def __init__(self, message, backend="builtin"):
        super().__init__(f"[{backend}] {message}")
        self.backend = backend


@dataclass
class Solution:
    status: str
    x: np.ndarray | None = None
    objective: float = np.nan
    duals: np.ndarray | None = None
    iterations: int = 0
    nodes: int = 0
    backend: str = "builtin"

    @property
    def optimal(self):
        return self.status == STATUS_OPTIMAL


class SparseProblem:
    """Minimization LP/MILP in sparse triplet form.

    Variables are added with bounds, objective coefficient and an optional
    binary flag; constraint rows reference existing variable indices. The
    container validates index ranges, binary bounds and RHS finiteness.
    """

    def __init__(self):
        self.lb = []
        self.ub = []
        self.obj = []
        self.is_binary = []
        self.var_names = []
        self.row_start = [0]
        self.row_cols = []
        self.row_coefs = []
        self.row_sense = []
        self.rhs = []
        self.row_names = []
        self.obj_offset = 0.0

    # -- construction -----------------------------------------------------

    @property
    def n_vars(self):
        return len(self.lb)

    @property
    def n_rows(self):
        return len(self.rhs)

    def add_var(self, lb=0.0, ub=np.inf, obj=0.0, binary=False, name=""):
        if binary and not (lb >= 0.0 and ub <= 1.0):
            raise ValueError(f"binary variable {name!r} must have bounds within [0, 1]")
        if lb > ub:
            raise ValueError(f"variable {name!r} has lb {lb} > ub {ub}")
        self.lb.append(float(lb))
        self.ub.append(float(ub))
        self.obj.append(float(obj))
        self.is_binary.append(bool(binary))
        self.var_names.append(name or f"x{len(self.lb) - 1}")
        return len(self.lb) - 1

    def add_vars(self, n, lb=0.0, ub=np.inf, obj=0.0, binary=False, name=""):
        return [self.add_var(lb, ub, obj, binary, f"{name}[{i}]" if name else "")
                for i in range(n)]

    def add_row(self, cols, coefs, sense, rhs, name=""):
        sense = _SENSE_CODES[sense] if isinstance(sense, str) else int(sense)
        if not np.isfinite(rhs):
            raise ValueError(f"row {name!r} has non-finite rhs {rhs}")
        n = self.n_vars
        for c in cols:
            if not 0 <= c < n:
                raise ValueError(f"row {name!r} references variable {c} out of range")
        self.row_cols.extend(int(c) for c in cols)
        self.row_coefs.extend(float(v) for v in coefs)
        self.row_start.append(len(self.row_cols))
        self.row_sense.append(sense)
        self.rhs.append(float(rhs))
        self.row_names.append(name or f"r{len(self.rhs) - 1}")
        return len(self.rhs) - 1

    def set_obj(self, col, coef):
        self.obj[col] = float(coef)

    # -- views -------------------------------------------------------------

    def obj_array(self):
        return np.asarray(self.obj, dtype=float)

    def bounds_arrays(self):
        return np.asarray(self.lb, dtype=float), np.asarray(self.ub, dtype=float)

    def binary_mask(self):
        return np.asarray(self.is_binary, dtype=bool)

    def triplets(self):
        rows = np.empty(len(self.row_cols), dtype=np.int64)
        for i in range(self.n_rows):
            rows[self.row_start[i]:self.row_start[i + 1]] = i
        return rows, np.asarray(self.row_cols, dtype=np.int64), np.asarray(self.row_coefs)

    def dense_matrix(self):
        a = np.zeros((self.n_rows, self.n_vars))
        rows, cols, coefs = self.triplets()
        np.add.at(a, (rows, cols), coefs)
        return a

    def csc_matrix(self):
        from scipy import sparse

        rows, cols, coefs = self.triplets()
        return sparse.csc_matrix((coefs, (rows, cols)), shape=(self.n_rows, self.n_vars))

    def row_residuals(self, x):
        """Signed violation per row (positive = violated) for a candidate x."""
        rows, cols, coefs = self.triplets()
        ax = np.zeros(self.n_rows)
        np.add.at(ax, rows, coefs * x[cols])
        rhs = np.asarray(self.rhs)
        sense = np.asarray(self.row_sense)
        out = np.zeros(self.n_rows)
        out[sense == LE] = (ax - rhs)[sense == LE]
        out[sense == GE] = (rhs - ax)[sense == GE]
        out[sense == EQ] = np.abs(ax - rhs)[sense == EQ]
        return out

    def objective_value(self, x):
        return float(self.obj_array() @ x + self.obj_offset)

    def dump(self):
        """Plain-text listing for debugging; not a compatibility promise."""
        lines = ["minimize"]
        terms = [f"{c:+g} {self.var_names[j]}" for j, c in enumerate(self.obj) if c]
        if self.obj_offset:
            terms.append(f"{self.obj_offset:+g}")
        lines.append("  " + (" ".join(terms) if terms else "0"))
        lines.append("subject to")
        for i in range(self.n_rows):
            lo, hi = self.row_start[i], self.row_start[i + 1]
            expr = " ".join(
                f"{self.row_coefs[k]:+g} {self.var_names[self.row_cols[k]]}"
                for k in range(lo, hi)
            )
            lines.append(f"  {self.row_names[i]}: {expr} {_SENSE_CHARS[self.row_sense[i]]} {self.rhs[i]:g}")
        lines.append("bounds")
        for j in range(self.n_vars):
            tag = " binary" if self.is_binary[j] else ""
            lines.append(f"  {self.lb[j]:g} <= {self.var_names[j]} <= {self.ub[j]:g}{tag}")
        return "\n".join(lines)
