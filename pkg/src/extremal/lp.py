"""Dense linear programs and their solutions.

The solver is backed by scipy's HiGHS interface behind the LinearProgram /
LPSolution contract used throughout the package.  Tolerances are pinned
tight (1e-10) because downstream convexity checks difference the optimal
values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np
from scipy.optimize import linprog

MAX_VARIABLES = 2000
MAX_CONSTRAINTS = 20000
MAX_PIVOTS = 10**6

_FEAS_TOL = 1e-8


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"
    STALLED = "stalled"


class LPError(RuntimeError):
    """Raised when an LP that must be solvable is not."""


@dataclass
class LinearProgram:
    """maximize objective . x subject to rows (<= or =) and variable bounds.

    Bounds default to free variables.
    """

    objective: np.ndarray
    rows_ub: np.ndarray | None = None
    rhs_ub: np.ndarray | None = None
    rows_eq: np.ndarray | None = None
    rhs_eq: np.ndarray | None = None
    bounds: list[tuple[float | None, float | None]] | None = None

    def __post_init__(self) -> None:
        self.objective = np.asarray(self.objective, dtype=float)
        nvar = len(self.objective)
        if nvar > MAX_VARIABLES:
            raise ValueError(f"too many variables: {nvar} > {MAX_VARIABLES}")
        ncons = 0
        for rows, rhs, name in (
            (self.rows_ub, self.rhs_ub, "ub"),
            (self.rows_eq, self.rhs_eq, "eq"),
        ):
            if rows is None:
                continue
            rows = np.asarray(rows, dtype=float)
            if rows.ndim != 2 or rows.shape[1] != nvar:
                raise ValueError(f"{name} rows must have {nvar} columns")
            if rhs is None or len(rhs) != rows.shape[0]:
                raise ValueError(f"{name} rhs length mismatch")
            ncons += rows.shape[0]
        if ncons > MAX_CONSTRAINTS:
            raise ValueError(f"too many constraints: {ncons} > {MAX_CONSTRAINTS}")


@dataclass
class LPSolution:
    status: LPStatus
    value: float
    point: np.ndarray = field(default_factory=lambda: np.zeros(0))
    iterations: int = 0


_HIGHS_OPTIONS = {
    "presolve": True,
    "primal_feasibility_tolerance": 1e-10,
    "dual_feasibility_tolerance": 1e-10,
    "maxiter": MAX_PIVOTS,
}


def solve_lp(lp: LinearProgram) -> LPSolution:
    """Solve a dense LP (maximization).  Optimal solutions are feasible
    within 1e-8 absolute; failures map onto the status enum."""
    nvar = len(lp.objective)
    bounds = lp.bounds if lp.bounds is not None else [(None, None)] * nvar
    res = linprog(
        -lp.objective,
        A_ub=lp.rows_ub,
        b_ub=lp.rhs_ub,
        A_eq=lp.rows_eq,
        b_eq=lp.rhs_eq,
        bounds=bounds,
        method="highs",
        options=dict(_HIGHS_OPTIONS),
    )
    iterations = int(getattr(res, "nit", 0) or 0)
    if res.status == 2:
        return LPSolution(LPStatus.INFEASIBLE, float("nan"), iterations=iterations)
    if res.status == 3:
        return LPSolution(LPStatus.UNBOUNDED, float("inf"), iterations=iterations)
    if res.status == 1:
        return LPSolution(LPStatus.STALLED, float("nan"), iterations=iterations)
    if res.status != 0:
        raise LPError(f"solver failure: {res.message}")
    x = np.asarray(res.x, dtype=float)
    _check_feasible(lp, x)
    return LPSolution(LPStatus.OPTIMAL, float(-res.fun), x, iterations)


def solve_lp_value(lp: LinearProgram) -> float:
    """Optimal value or an LPError for non-optimal statuses."""
    sol = solve_lp(lp)
    if sol.status is not LPStatus.OPTIMAL:
        raise LPError(f"expected optimal LP, got {sol.status.value}")
    return sol.value


def _check_feasible(lp: LinearProgram, x: np.ndarray) -> None:
    if lp.rows_ub is not None:
        viol = np.max(np.asarray(lp.rows_ub) @ x - np.asarray(lp.rhs_ub))
        if viol > _FEAS_TOL:
            raise LPError(f"primal infeasibility {viol:.2e} exceeds {_FEAS_TOL}")
    if lp.rows_eq is not None:
        viol = np.max(np.abs(np.asarray(lp.rows_eq) @ x - np.asarray(lp.rhs_eq)))
        if viol > _FEAS_TOL:
            raise LPError(f"equality violation {viol:.2e} exceeds {_FEAS_TOL}")
