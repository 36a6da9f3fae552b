"""Greedy tuple-selection assignment and bipartite room rematching.

The greedy pass repeatedly picks the highest-value (i, j, room) tuple that
keeps the remaining instance feasible; the rematch pass keeps the rooming
groups and reassigns rooms by a maximum weight perfect matching.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import linear_sum_assignment

from .core import (
    Assignment,
    Instance,
    canonical_assignment,
    group_valuation,
    validate_instance,
)


@dataclass(frozen=True)
class CandidateTuple:
    i: int  # i <= j; i == j encodes a single
    j: int
    r: int
    value: float


def _all_tuples(inst: Instance) -> list[CandidateTuple]:
    v = inst.valuations
    out = []
    for i in range(inst.m):
        for j in range(i, inst.m):
            for r in range(inst.n):
                val = float(v[i, i, r]) if i == j else float(v[i, j, r] + v[j, i, r])
                out.append(CandidateTuple(i, j, r, val))
    return out


def greedy_picks(inst: Instance) -> list[CandidateTuple]:
    """Run the greedy loop and return the selected tuples in pick order.

    Ties on value break lexicographically by (i, j, r).  Feasibility
    guards: when everyone left must double up, singles are dropped; when
    everyone left must live alone, doubles are dropped; a single pick
    that would strand tenants is skipped (singles pruned, re-select).
    """
    err = validate_instance(inst)
    if err is not None:
        raise ValueError(err)
    tuples = _all_tuples(inst)
    picks: list[CandidateTuple] = []
    m_rem, n_rem = inst.m, inst.n
    while tuples:
        if m_rem == 2 * n_rem:
            tuples = [t for t in tuples if t.i != t.j]
        elif m_rem == n_rem:
            tuples = [t for t in tuples if t.i == t.j]
        best = min(tuples, key=lambda t: (-t.value, t.i, t.j, t.r))
        if best.i == best.j and m_rem - 1 > 2 * (n_rem - 1):
            tuples = [t for t in tuples if t.i != t.j]
            continue
        picks.append(best)
        used = {best.i, best.j}
        tuples = [
            t for t in tuples if t.i not in used and t.j not in used and t.r != best.r
        ]
        m_rem -= len(used)
        n_rem -= 1
    return picks


def greedy_assign(inst: Instance) -> Assignment:
    picks = greedy_picks(inst)
    groups = [frozenset({t.i, t.j}) for t in picks]
    rooms = [t.r for t in picks]
    used = set(rooms)
    for r in range(inst.n):  # unreachable for m >= n, kept for safety
        if r not in used:
            groups.append(frozenset())
            rooms.append(r)
    return canonical_assignment(Assignment(tuple(groups), tuple(rooms)))


def max_weight_perfect_matching(weights: np.ndarray) -> tuple[tuple[int, ...], float]:
    """Exact maximum weight perfect matching on a square matrix.

    Returns (permutation, total) where permutation[row] = column.  Among
    optimal permutations the lexicographically smallest is returned.
    """
    w = np.asarray(weights, dtype=float)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise ValueError("weight matrix must be square")
    n = w.shape[0]
    if n == 0:
        return (), 0.0

    def opt(sub: np.ndarray) -> float:
        if sub.size == 0:
            return 0.0
        rows, cols = linear_sum_assignment(sub, maximize=True)
        return float(sub[rows, cols].sum())

    target = opt(w)
    tol = 1e-9 * max(1.0, abs(target))
    perm: list[int] = []
    free_cols = list(range(n))
    fixed = 0.0
    for row in range(n):
        for c in free_cols:
            rest_cols = [x for x in free_cols if x != c]
            rest = opt(w[np.ix_(range(row + 1, n), rest_cols)])
            if fixed + w[row, c] + rest >= target - tol:
                perm.append(c)
                fixed += w[row, c]
                free_cols = rest_cols
                break
        else:  # pragma: no cover - defensive
            raise RuntimeError("matching reconstruction failed")
    return tuple(perm), target


def rematch_rooms(inst: Instance, a: Assignment) -> Assignment:
    """Keep the rooming groups, reassign rooms welfare-optimally."""
    w = np.array(
        [[group_valuation(inst, g, r) for r in range(inst.n)] for g in a.groups]
    )
    perm, _ = max_weight_perfect_matching(w)
    return Assignment(a.groups, perm)
