"""Small dense linear-program solver (two-phase simplex, Bland's rule).

Handles real variables (unbounded by default), equality and inequality
constraints, and minimize/maximize objectives.  Bland's pivoting rule
guarantees termination on degenerate problems.  Sized for the pricing
problems in this package: O(m^2) constraints, O(m) variables.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

#: pivot / reduced-cost tolerance
PIVOT_TOL = 1e-9
#: relative feasibility tolerance reported to callers
FEAS_TOL = 1e-7

LESS, EQUAL, GREATER = "<=", "=", ">="


@dataclass(frozen=True)
class Constraint:
    coeffs: tuple[float, ...]
    relation: str  # one of <=, =, >=
    rhs: float


@dataclass
class LinearProgram:
    num_vars: int
    objective: Sequence[float]
    maximize: bool = False
    constraints: list[Constraint] = field(default_factory=list)
    # per-variable (lower, upper); None means unbounded on that side
    bounds: Optional[list[tuple[Optional[float], Optional[float]]]] = None

    def add(self, coeffs: Sequence[float], relation: str, rhs: float) -> None:
        coeffs = tuple(float(c) for c in coeffs)
        if len(coeffs) != self.num_vars:
            raise ValueError("coefficient vector has wrong length")
        if relation not in (LESS, EQUAL, GREATER):
            raise ValueError(f"unknown relation {relation!r}")
        self.constraints.append(Constraint(coeffs, relation, float(rhs)))


@dataclass(frozen=True)
class LpOutcome:
    status: str  # optimal | infeasible | unbounded
    x: Optional[np.ndarray]
    objective_value: Optional[float]


def _standardize(lp: LinearProgram):
    """Rewrite as min c.y, A y = b, y >= 0, b >= 0.

    Returns (c, A, b, recover) where recover maps a standard-form point
    back to the original variables.
    """
    nv = lp.num_vars
    bounds = lp.bounds if lp.bounds is not None else [(None, None)] * nv
    if len(bounds) != nv:
        raise ValueError("bounds length != num_vars")

    # column construction per original variable
    cols: list[list[tuple[int, float]]] = []  # var -> [(std col, coeff)]
    offsets = np.zeros(nv)
    extra_rows: list[tuple[np.ndarray, str, float]] = []
    ncols = 0
    for k, (lo, hi) in enumerate(bounds):
        if lo is not None:
            cols.append([(ncols, 1.0)])
            offsets[k] = lo
            ncols += 1
            if hi is not None:
                row = np.zeros(nv)
                row[k] = 1.0
                extra_rows.append((row, LESS, hi))
        elif hi is not None:
            cols.append([(ncols, -1.0)])
            offsets[k] = hi
            ncols += 1
        else:
            cols.append([(ncols, 1.0), (ncols + 1, -1.0)])
            ncols += 2

    rows: list[tuple[np.ndarray, str, float]] = [
        (np.asarray(c.coeffs, dtype=float), c.relation, c.rhs) for c in lp.constraints
    ] + extra_rows

    nrows = len(rows)
    nslack = sum(1 for _, rel, _ in rows if rel != EQUAL)
    A = np.zeros((nrows, ncols + nslack))
    b = np.zeros(nrows)
    slack = ncols
    for ridx, (coeffs, rel, rhs) in enumerate(rows):
        rhs = rhs - float(coeffs @ offsets)
        std = np.zeros(ncols)
        for k in range(nv):
            for col, sign in cols[k]:
                std[col] += sign * coeffs[k]
        if rel == GREATER:
            std, rhs, rel = -std, -rhs, LESS
        A[ridx, :ncols] = std
        b[ridx] = rhs
        if rel == LESS:
            A[ridx, slack] = 1.0
            slack += 1
        if b[ridx] < 0:
            A[ridx, :] = -A[ridx, :]
            b[ridx] = -b[ridx]

    c = np.zeros(ncols + nslack)
    obj = np.asarray(lp.objective, dtype=float)
    if obj.shape != (nv,):
        raise ValueError("objective has wrong length")
    sign = -1.0 if lp.maximize else 1.0
    for k in range(nv):
        for col, colsign in cols[k]:
            c[col] += sign * colsign * obj[k]
    const = sign * float(obj @ offsets)

    def recover(y: np.ndarray) -> np.ndarray:
        x = np.array(offsets)
        for k in range(nv):
            for col, colsign in cols[k]:
                x[k] += colsign * y[col]
        return x

    return c, A, b, recover, const, sign


def _pivot(T: np.ndarray, basis: list[int], row: int, col: int) -> None:
    T[row, :] /= T[row, col]
    for r in range(T.shape[0]):
        if r != row and abs(T[r, col]) > 0.0:
            T[r, :] -= T[r, col] * T[row, :]
    basis[row] = col


def _simplex_iterate(T: np.ndarray, basis: list[int], ncols: int) -> str:
    """Run Bland's-rule simplex on tableau T (last row = reduced costs,
    last column = rhs).  Returns 'optimal' or 'unbounded'."""
    nrows = T.shape[0] - 1
    while True:
        col = -1
        for j in range(ncols):
            if T[-1, j] < -PIVOT_TOL:
                col = j
                break
        if col < 0:
            return "optimal"
        row, best_ratio, best_basis = -1, np.inf, np.inf
        for r in range(nrows):
            if T[r, col] > PIVOT_TOL:
                ratio = T[r, -1] / T[r, col]
                # Bland: among minimal ratios, leave the smallest basis index
                if ratio < best_ratio - 1e-12 or (
                    ratio <= best_ratio + 1e-12 and basis[r] < best_basis
                ):
                    row, best_ratio, best_basis = r, ratio, basis[r]
        if row < 0:
            return "unbounded"
        _pivot(T, basis, row, col)


def _solve_standard(c: np.ndarray, A: np.ndarray, b: np.ndarray):
    """Two-phase simplex on min c.y, Ay=b, y>=0, b>=0."""
    nrows, ncols = A.shape
    # phase 1
    T = np.zeros((nrows + 1, ncols + nrows + 1))
    T[:nrows, :ncols] = A
    T[:nrows, ncols : ncols + nrows] = np.eye(nrows)
    T[:nrows, -1] = b
    basis = list(range(ncols, ncols + nrows))
    T[-1, :] = -T[:nrows, :].sum(axis=0)
    T[-1, ncols : ncols + nrows] = 0.0
    _simplex_iterate(T, basis, ncols + nrows)
    scale = max(1.0, float(np.max(np.abs(b))) if len(b) else 1.0)
    if T[-1, -1] < -FEAS_TOL * scale:
        return "infeasible", None
    # drive artificials out of the basis where possible
    for r in range(nrows):
        if basis[r] >= ncols:
            for j in range(ncols):
                if abs(T[r, j]) > PIVOT_TOL:
                    _pivot(T, basis, r, j)
                    break
    keep = [r for r in range(nrows) if basis[r] < ncols]
    # rows still basic in an artificial are redundant (zero rows)
    T2 = np.zeros((len(keep) + 1, ncols + 1))
    for new_r, r in enumerate(keep):
        T2[new_r, :ncols] = T[r, :ncols]
        T2[new_r, -1] = T[r, -1]
    basis2 = [basis[r] for r in keep]
    # phase 2 objective row
    T2[-1, :ncols] = c
    for new_r, col in enumerate(basis2):
        T2[-1, :] -= c[col] * T2[new_r, :]
    status = _simplex_iterate(T2, basis2, ncols)
    if status == "unbounded":
        return "unbounded", None
    y = np.zeros(ncols)
    for new_r, col in enumerate(basis2):
        y[col] = T2[new_r, -1]
    return "optimal", y


def solve_lp(lp: LinearProgram) -> LpOutcome:
    c, A, b, recover, const, sign = _standardize(lp)
    status, y = _solve_standard(c, A, b)
    if status != "optimal":
        return LpOutcome(status, None, None)
    x = recover(y)
    obj = float(np.asarray(lp.objective, dtype=float) @ x)
    return LpOutcome("optimal", x, obj)


def check_feasible(lp: LinearProgram) -> bool:
    """Phase-one feasibility check (objective ignored)."""
    neutral = LinearProgram(
        lp.num_vars, [0.0] * lp.num_vars, False, list(lp.constraints), lp.bounds
    )
    c, A, b, recover, const, sign = _standardize(neutral)
    status, _ = _solve_standard(c, A, b)
    return status == "optimal"


def feasible_point(lp: LinearProgram) -> Optional[np.ndarray]:
    """A feasible point (phase-one solution), or None."""
    neutral = LinearProgram(
        lp.num_vars, [0.0] * lp.num_vars, False, list(lp.constraints), lp.bounds
    )
    out = solve_lp(neutral)
    return out.x if out.status == "optimal" else None
