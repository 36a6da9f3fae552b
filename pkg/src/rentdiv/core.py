"""Core data model and evaluation for roommate rent division.

Tenant ids and room ids are 0-based everywhere.  An instance is
(m tenants, n rooms, total rent, valuation tensor) where
``valuations[i][j][r]`` is tenant i's value for living with roommate j in
room r, and ``valuations[i][i][r]`` is i's value for living alone in room
r.  All types here are immutable after construction and every operation
is a pure function.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

#: absolute tolerance for envy / price-sum comparisons
TOLERANCE = 1e-6


@dataclass(frozen=True)
class Instance:
    m: int
    n: int
    rent: float
    valuations: np.ndarray  # shape (m, m, n)

    def __post_init__(self) -> None:
        v = np.array(self.valuations, dtype=float)
        v.setflags(write=False)
        object.__setattr__(self, "valuations", v)


@dataclass(frozen=True)
class Assignment:
    """Rooming groups plus a group -> room permutation.

    ``groups`` always has exactly n entries; empty groups mark rooms that
    are left unoccupied.
    """

    groups: tuple[frozenset[int], ...]
    room_of_group: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "groups", tuple(frozenset(g) for g in self.groups))
        object.__setattr__(self, "room_of_group", tuple(int(r) for r in self.room_of_group))


@dataclass(frozen=True)
class EnvyReport:
    """Per-pair envy factors of a priced solution.

    Entry (i, j) is the smallest factor e >= 1 such that tenant i's own
    utility is at least 1/e of what i would get by taking j's placement
    and paying j's share.  Diagonal and roommate entries are fixed at 1.
    """

    pairwise_eps: np.ndarray  # (m, m), entries in [1, inf]
    realized_epsilon: float
    envious_tenant_count: int


@dataclass(frozen=True)
class RefCheck:
    ok: bool
    worst_pair: Optional[tuple[int, int]]  # (envious group, envied group)
    worst_slack: float  # most negative utility gap; >= 0 when ok


@dataclass(frozen=True)
class Solution:
    """A solved instance: assignment plus optional prices."""

    assignment: Assignment
    room_prices: Optional[tuple[float, ...]]
    tenant_prices: Optional[tuple[float, ...]]
    social_welfare: float
    epsilon: Optional[float]


def validate_instance(inst: Instance) -> Optional[str]:
    """Return None if the instance is well-formed, else a description of
    the first violated invariant."""
    if inst.n < 1:
        return "n < 1"
    if inst.m < inst.n:
        return "m < n"
    if inst.m > 2 * inst.n:
        return "m > 2n"
    v = inst.valuations
    if v.shape != (inst.m, inst.m, inst.n):
        return f"valuation tensor shape {v.shape} != ({inst.m}, {inst.m}, {inst.n})"
    if not np.all(np.isfinite(v)):
        return "non-finite valuation"
    if np.any(v < 0):
        return "negative valuation"
    if not (math.isfinite(inst.rent) and inst.rent >= 0):
        return "rent must be a nonnegative finite number"
    return None


def group_valuation(inst: Instance, group: Iterable[int], room: int) -> float:
    """Joint value of ``group`` living in ``room``: v_ijr + v_jir for a
    pair, v_iir for a single, 0 for an empty group."""
    members = sorted(group)
    if not 0 <= room < inst.n:
        raise ValueError(f"room {room} out of range")
    for i in members:
        if not 0 <= i < inst.m:
            raise ValueError(f"tenant {i} out of range")
    if len(members) == 0:
        return 0.0
    if len(members) == 1:
        i = members[0]
        return float(inst.valuations[i, i, room])
    if len(members) == 2:
        i, j = members
        return float(inst.valuations[i, j, room] + inst.valuations[j, i, room])
    raise ValueError("group larger than 2")


def assignment_valid(inst: Instance, a: Assignment) -> bool:
    if len(a.groups) != inst.n or len(a.room_of_group) != inst.n:
        return False
    if sorted(a.room_of_group) != list(range(inst.n)):
        return False
    seen: set[int] = set()
    total = 0
    for g in a.groups:
        if len(g) > 2:
            return False
        if any(not (0 <= i < inst.m) for i in g):
            return False
        seen |= g
        total += len(g)
    return total == inst.m and seen == set(range(inst.m))


def raw_valuation_sum(inst: Instance, a: Assignment) -> float:
    """Sum of group valuations over assigned rooms (no rent subtracted).

    Summed with ``math.fsum`` so the result does not depend on group
    order."""
    return math.fsum(
        group_valuation(inst, g, r) for g, r in zip(a.groups, a.room_of_group)
    )


def social_welfare(inst: Instance, a: Assignment) -> float:
    if not assignment_valid(inst, a):
        raise ValueError("invalid assignment")
    return raw_valuation_sum(inst, a) - inst.rent


def canonical_assignment(a: Assignment) -> Assignment:
    """Sort groups by smallest member (empty groups last, by room id)."""
    paired = list(zip(a.groups, a.room_of_group))
    paired.sort(key=lambda gr: (len(gr[0]) == 0, min(gr[0]) if gr[0] else gr[1]))
    groups, rooms = zip(*paired)
    return Assignment(groups, rooms)


def room_of_tenant(a: Assignment) -> dict[int, int]:
    out: dict[int, int] = {}
    for g, r in zip(a.groups, a.room_of_group):
        for i in g:
            out[i] = r
    return out


def roommate_of_tenant(a: Assignment) -> dict[int, int]:
    """Map each tenant to their roommate; singles map to themselves."""
    out: dict[int, int] = {}
    for g in a.groups:
        members = sorted(g)
        if len(members) == 1:
            out[members[0]] = members[0]
        elif len(members) == 2:
            i, j = members
            out[i], out[j] = j, i
    return out


def displaced_value_matrix(inst: Instance, a: Assignment) -> np.ndarray:
    """m x m matrix of "take j's place" values.

    Entry (i, j) for non-roommates is i's value of living with j's
    roommate in j's room (alone in j's room when j is single); roommate
    entries are 0; the diagonal holds each tenant's value of their own
    placement.
    """
    if not assignment_valid(inst, a):
        raise ValueError("invalid assignment")
    room = room_of_tenant(a)
    mate = roommate_of_tenant(a)
    v = inst.valuations
    out = np.zeros((inst.m, inst.m))
    for i in range(inst.m):
        out[i, i] = v[i, mate[i], room[i]]
        for j in range(inst.m):
            if j == i or mate[i] == j:
                continue
            partner = mate[j]
            if partner == j:  # j lives alone: i would too
                out[i, j] = v[i, i, room[j]]
            else:
                out[i, j] = v[i, partner, room[j]]
    return out


def is_room_envy_free(inst: Instance, a: Assignment, prices: Sequence[float]) -> RefCheck:
    """Check that every rooming group weakly prefers its own room at its
    own price (tolerance TOLERANCE)."""
    p = np.asarray(prices, dtype=float)
    if p.shape != (inst.n,):
        raise ValueError("price vector length != n")
    values = np.array(
        [[group_valuation(inst, g, r) for r in range(inst.n)] for g in a.groups]
    )
    worst: Optional[tuple[int, int]] = None
    worst_slack = math.inf
    for g, r in enumerate(a.room_of_group):
        own = values[g, r] - p[r]
        for g2, r2 in enumerate(a.room_of_group):
            if g2 == g:
                continue
            slack = own - (values[g, r2] - p[r2])
            if slack < worst_slack:
                worst_slack = slack
                worst = (g, g2)
    if worst_slack is math.inf:  # single group
        return RefCheck(True, None, 0.0)
    return RefCheck(worst_slack >= -TOLERANCE, worst, worst_slack)


def _pair_factor(own: float, other: float) -> float:
    """Minimal e >= 1 with own >= (1/e) * other, or inf if none exists."""
    if own >= other - TOLERANCE:
        return 1.0
    if own > 0:
        return other / own
    return math.inf


def envy_report(inst: Instance, a: Assignment, tenant_prices: Sequence[float]) -> EnvyReport:
    pt = np.asarray(tenant_prices, dtype=float)
    if pt.shape != (inst.m,):
        raise ValueError("tenant price vector length != m")
    vprime = displaced_value_matrix(inst, a)
    mate = roommate_of_tenant(a)
    eps = np.ones((inst.m, inst.m))
    for i in range(inst.m):
        own = vprime[i, i] - pt[i]
        for j in range(inst.m):
            if j == i or mate[i] == j:
                continue
            eps[i, j] = _pair_factor(own, vprime[i, j] - pt[j])
    realized = float(np.max(eps))
    envious = int(np.sum(np.any(eps > 1.0, axis=1)))
    return EnvyReport(eps, realized, envious)


def equal_split_shares(inst: Instance, a: Assignment, prices: Sequence[float]) -> tuple[float, ...]:
    """Per-tenant shares under equal room-price splitting: roommates pay
    half the room price each, singles pay the full price."""
    p = np.asarray(prices, dtype=float)
    shares = [0.0] * inst.m
    for g, r in zip(a.groups, a.room_of_group):
        members = sorted(g)
        for i in members:
            shares[i] = float(p[r]) / len(members)
    return tuple(shares)


def room_prices_from_shares(inst: Instance, a: Assignment, shares: Sequence[float]) -> tuple[float, ...]:
    """Room price vector implied by tenant shares (empty rooms cost 0)."""
    p = [0.0] * inst.n
    for g, r in zip(a.groups, a.room_of_group):
        p[r] = math.fsum(shares[i] for i in g)
    return tuple(p)


# ---------------------------------------------------------------------------
# JSON wire formats


def instance_to_dict(inst: Instance) -> dict:
    return {
        "m": inst.m,
        "n": inst.n,
        "rent": inst.rent,
        "valuations": inst.valuations.tolist(),
    }


def instance_from_dict(d: dict) -> Instance:
    return Instance(int(d["m"]), int(d["n"]), float(d["rent"]), np.array(d["valuations"], dtype=float))


def solution_to_dict(sol: Solution) -> dict:
    return {
        "groups": [sorted(g) for g in sol.assignment.groups],
        "room_of_group": list(sol.assignment.room_of_group),
        "room_prices": list(sol.room_prices) if sol.room_prices is not None else None,
        "tenant_prices": list(sol.tenant_prices) if sol.tenant_prices is not None else None,
        "social_welfare": sol.social_welfare,
        "epsilon": sol.epsilon,
    }


def solution_from_dict(d: dict) -> Solution:
    a = Assignment(tuple(frozenset(g) for g in d["groups"]), tuple(d["room_of_group"]))
    rp = d.get("room_prices")
    tp = d.get("tenant_prices")
    return Solution(
        assignment=a,
        room_prices=tuple(rp) if rp is not None else None,
        tenant_prices=tuple(tp) if tp is not None else None,
        social_welfare=float(d["social_welfare"]),
        epsilon=float(d["epsilon"]) if d.get("epsilon") is not None else None,
    )
