"""Dense two-phase simplex for small box-bounded linear programs.

Problems have the form

    maximize    c @ x
    subject to  A @ x <= b,   lower <= x <= upper

with finite bounds, so every feasible problem has an optimum. Pivoting uses
Bland's rule (lowest-index entering column, lowest-index leaving basic
variable on ratio ties), which rules out cycling on degenerate vertices.
"""

import logging
from dataclasses import dataclass
from enum import Enum

import numpy as np

from sepbayes.config import get_separation_settings
from sepbayes.errors import LpError

logger = logging.getLogger(__name__)


class LpStatus(str, Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True, eq=False)
class LpProblem:
    """maximize c @ x subject to A @ x <= b and lower <= x <= upper."""

    c: np.ndarray
    A: np.ndarray
    b: np.ndarray
    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        c = np.atleast_1d(np.asarray(self.c, dtype=float))
        A = np.asarray(self.A, dtype=float)
        b = np.atleast_1d(np.asarray(self.b, dtype=float))
        lower = np.atleast_1d(np.asarray(self.lower, dtype=float))
        upper = np.atleast_1d(np.asarray(self.upper, dtype=float))
        nvar = c.shape[0]
        if A.ndim != 2:
            A = A.reshape(-1, nvar) if A.size else np.zeros((0, nvar))
        if A.shape[1] != nvar or b.shape != (A.shape[0],):
            raise LpError(f"Dimension mismatch: c {c.shape}, A {A.shape}, b {b.shape}")
        if lower.shape != (nvar,) or upper.shape != (nvar,):
            raise LpError(f"Bounds must have length {nvar}, got {lower.shape} and {upper.shape}")
        for label, arr in (("c", c), ("A", A), ("b", b), ("lower", lower), ("upper", upper)):
            if not np.all(np.isfinite(arr)):
                raise LpError(f"Non-finite entries in {label}")
        if np.any(lower > upper):
            raise LpError("Lower bound exceeds upper bound")
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "lower", lower)
        object.__setattr__(self, "upper", upper)

    @property
    def nvar(self) -> int:
        return self.c.shape[0]


@dataclass(frozen=True, eq=False)
class LpSolution:
    status: LpStatus
    value: float | None = None
    x: np.ndarray | None = None
    pivots: int = 0

    @property
    def optimal(self) -> bool:
        return self.status is LpStatus.OPTIMAL


@dataclass
class _Columns:
    """Map from original variables to nonnegative tableau columns."""

    var: np.ndarray
    sign: np.ndarray
    upper: np.ndarray
    offset: np.ndarray

    @classmethod
    def build(cls, lower: np.ndarray, upper: np.ndarray) -> "_Columns":
        var, sign, ub = [], [], []
        offset = np.zeros_like(lower)
        for j, (lo, hi) in enumerate(zip(lower, upper)):
            if lo <= 0.0 <= hi:
                # Split x = u - v; keeps the right-hand sides free of the box size
                if hi > 0.0:
                    var.append(j), sign.append(1.0), ub.append(hi)
                if lo < 0.0:
                    var.append(j), sign.append(-1.0), ub.append(-lo)
            else:
                offset[j] = lo
                var.append(j), sign.append(1.0), ub.append(hi - lo)
        return cls(
            var=np.array(var, dtype=int),
            sign=np.array(sign, dtype=float),
            upper=np.array(ub, dtype=float),
            offset=offset,
        )

    def recover(self, w: np.ndarray) -> np.ndarray:
        x = self.offset.copy()
        np.add.at(x, self.var, self.sign * w)
        return x


class _Tableau:
    def __init__(self, T: np.ndarray, basis: np.ndarray, tol: float, max_pivots: int):
        self.T = T
        self.basis = basis
        self.tol = tol
        self.max_pivots = max_pivots
        self.pivots = 0

    @property
    def m(self) -> int:
        return self.T.shape[0] - 1

    def pivot(self, row: int, col: int) -> None:
        T = self.T
        T[row] /= T[row, col]
        factors = T[:, col].copy()
        factors[row] = 0.0
        nz = np.flatnonzero(factors)
        if nz.size:
            T[nz] -= np.outer(factors[nz], T[row])
        self.basis[row] = col
        self.pivots += 1
        if self.pivots > self.max_pivots:
            raise LpError(f"Pivot limit {self.max_pivots} exceeded")

    def run(self, ncols: int) -> LpStatus:
        """Iterate to optimality over the first `ncols` columns."""
        T, tol = self.T, self.tol
        while True:
            reduced = T[-1, :ncols]
            entering = np.flatnonzero(reduced < -tol)
            if entering.size == 0:
                return LpStatus.OPTIMAL
            col = int(entering[0])

            column = T[: self.m, col]
            rows = np.flatnonzero(column > tol)
            if rows.size == 0:
                return LpStatus.UNBOUNDED
            ratios = T[rows, -1] / column[rows]
            best = ratios.min()
            ties = rows[ratios <= best + 1e-12 * max(1.0, abs(best))]
            row = int(ties[np.argmin(self.basis[ties])])
            self.pivot(row, col)

    def set_objective(self, costs: np.ndarray) -> None:
        """Load `maximize costs @ w` as the objective row and price out the basis."""
        T = self.T
        T[-1, :] = 0.0
        T[-1, : costs.shape[0]] = -costs
        for i, bv in enumerate(self.basis):
            factor = T[-1, bv]
            if factor != 0.0:
                T[-1] -= factor * T[i]


def solve_lp(
    problem: LpProblem,
    tol: float | None = None,
    max_pivots: int | None = None,
) -> LpSolution:
    """Solve a box-bounded LP with the two-phase simplex method.

    Args:
        problem: The LP
        tol: Feasibility/optimality tolerance (default from settings, 1e-9)
        max_pivots: Pivot budget (default from settings)

    Returns:
        LpSolution with status Optimal (certified primal) or Infeasible

    Raises:
        LpError: Pivot limit exceeded or certification failure
    """
    settings = get_separation_settings()
    tol = settings.lp_tolerance if tol is None else tol
    max_pivots = settings.max_pivots if max_pivots is None else max_pivots

    cols = _Columns.build(problem.lower, problem.upper)
    K = cols.var.shape[0]
    M = problem.A[:, cols.var] * cols.sign
    rhs = problem.b - problem.A @ cols.offset
    costs = problem.c[cols.var] * cols.sign

    # Structural rows followed by one upper-bound row per column
    rows = np.vstack([M, np.eye(K)]) if K else M.reshape(M.shape[0], 0)
    rhs = np.concatenate([rhs, cols.upper])
    m = rows.shape[0]

    flip = np.where(rhs < 0.0, -1.0, 1.0)
    needs_art = np.flatnonzero(flip < 0.0)
    n_art = needs_art.size
    width = K + m + n_art

    T = np.zeros((m + 1, width + 1))
    T[:m, :K] = rows * flip[:, None]
    T[np.arange(m), K + np.arange(m)] = flip
    T[needs_art, K + m + np.arange(n_art)] = 1.0
    T[:m, -1] = np.abs(rhs)

    basis = K + np.arange(m)
    basis[needs_art] = K + m + np.arange(n_art)
    tableau = _Tableau(T, basis, tol, max_pivots)

    if n_art:
        # Phase 1: maximize minus the sum of artificials
        phase1 = np.zeros(width)
        phase1[K + m :] = -1.0
        tableau.set_objective(phase1)
        tableau.run(width)
        scale = max(1.0, float(np.abs(rhs).max()))
        if tableau.T[-1, -1] < -tol * scale:
            logger.debug(f"LP infeasible after {tableau.pivots} pivots")
            return LpSolution(status=LpStatus.INFEASIBLE, pivots=tableau.pivots)
        _drive_out_artificials(tableau, K + m)

    tableau.set_objective(np.concatenate([costs, np.zeros(tableau.T.shape[1] - 1 - K)]))
    status = tableau.run(K + m)
    if status is LpStatus.UNBOUNDED:
        return LpSolution(status=status, pivots=tableau.pivots)

    w = np.zeros(K)
    for i, bv in enumerate(tableau.basis):
        if bv < K:
            w[bv] = tableau.T[i, -1]
    x = np.clip(cols.recover(w), problem.lower, problem.upper)
    _certify(problem, x, tol)

    value = float(problem.c @ x)
    logger.debug(f"LP optimal value {value:.6g} after {tableau.pivots} pivots")
    return LpSolution(status=LpStatus.OPTIMAL, value=value, x=x, pivots=tableau.pivots)


def _drive_out_artificials(tableau: _Tableau, n_real: int) -> None:
    """Pivot artificial variables out of the basis, dropping redundant rows."""
    keep = []
    for i in range(tableau.m):
        if tableau.basis[i] < n_real:
            keep.append(i)
            continue
        candidates = np.flatnonzero(np.abs(tableau.T[i, :n_real]) > tableau.tol)
        if candidates.size:
            tableau.pivot(i, int(candidates[0]))
            keep.append(i)
    rows = keep + [tableau.m]
    tableau.T = np.delete(tableau.T[rows], np.s_[n_real:-1], axis=1)
    tableau.basis = tableau.basis[keep]


def _certify(problem: LpProblem, x: np.ndarray, tol: float) -> None:
    residual = problem.A @ x - problem.b
    slack = 1e-7 * (1.0 + np.abs(problem.b) + np.abs(problem.A) @ np.abs(x)) + tol
    if np.any(residual > slack):
        worst = int(np.argmax(residual - slack))
        raise LpError(f"Primal certificate violates constraint {worst} by {residual[worst]:.3g}")
