"""Welfare maximization via maximum weight independent set.

The instance is padded with "ghost" tenants up to 2n ids; each (i, j, r)
triple with i < j becomes a vertex weighted by the (extended) pair value,
and vertices conflict when they share a tenant or a room.  A maximum
weight independent set then decodes to a welfare-maximizing assignment.
The solver is an exact branch and bound.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .core import Assignment, Instance, canonical_assignment, validate_instance


@dataclass(frozen=True)
class MwisVertex:
    i: int  # i < j; ids may be ghosts (>= original m)
    j: int
    r: int
    weight: float


@dataclass
class MwisGraph:
    vertices: list[MwisVertex]
    neighbor_masks: list[int]  # bitmask over vertex indices, self excluded

    def edges(self) -> list[tuple[int, int]]:
        out = []
        for u, mask in enumerate(self.neighbor_masks):
            m = mask >> (u + 1)
            v = u + 1
            while m:
                if m & 1:
                    out.append((u, v))
                m >>= 1
                v += 1
        return out


@dataclass(frozen=True)
class GhostExtension:
    original_m: int
    extended_m: int  # always 2n
    ghost_ids: tuple[int, ...]
    valuations: np.ndarray  # (2n, 2n, n)


def extend_with_ghosts(inst: Instance) -> GhostExtension:
    """Pad the tensor to 2n tenants: a real/ghost pair carries half the
    real tenant's single valuation on each side, ghost/ghost pairs and
    ghosts alone are worth 0."""
    m, n = inst.m, inst.n
    ext = np.zeros((2 * n, 2 * n, n))
    ext[:m, :m, :] = inst.valuations
    for i in range(m):
        for g in range(m, 2 * n):
            half = inst.valuations[i, i, :] / 2.0
            ext[i, g, :] = half
            ext[g, i, :] = half
    return GhostExtension(m, 2 * n, tuple(range(m, 2 * n)), ext)


def build_graph(inst: Instance) -> tuple[MwisGraph, GhostExtension]:
    err = validate_instance(inst)
    if err is not None:
        raise ValueError(err)
    ext = extend_with_ghosts(inst)
    n, m2 = inst.n, ext.extended_m
    vertices: list[MwisVertex] = []
    for i in range(m2):
        for j in range(i + 1, m2):
            for r in range(n):
                w = float(ext.valuations[i, j, r] + ext.valuations[j, i, r])
                vertices.append(MwisVertex(i, j, r, w))
    person_mask = [0] * m2
    room_mask = [0] * n
    for idx, v in enumerate(vertices):
        bit = 1 << idx
        person_mask[v.i] |= bit
        person_mask[v.j] |= bit
        room_mask[v.r] |= bit
    neighbor_masks = [
        (person_mask[v.i] | person_mask[v.j] | room_mask[v.r]) & ~(1 << idx)
        for idx, v in enumerate(vertices)
    ]
    return MwisGraph(vertices, neighbor_masks), ext


def solve_mwis_exact(g: MwisGraph) -> tuple[list[int], float]:
    """Exact branch and bound.

    Branches on the heaviest remaining vertex (ties by index); bounds by
    summing, per room, the heaviest remaining vertex in that room (any
    independent set takes at most one vertex per room, since same-room
    vertices form a clique).  Deterministic.
    """
    nv = len(g.vertices)
    if nv == 0:
        return [], 0.0
    weights = [v.weight for v in g.vertices]
    order = sorted(range(nv), key=lambda idx: (-weights[idx], idx))
    rooms = sorted({v.r for v in g.vertices})
    by_room = {r: [idx for idx in order if g.vertices[idx].r == r] for r in rooms}
    neigh = g.neighbor_masks
    full = (1 << nv) - 1

    # greedy incumbent
    best_set: list[int] = []
    mask = full
    for idx in order:
        if mask & (1 << idx):
            best_set.append(idx)
            mask &= ~(neigh[idx] | (1 << idx))
    best_w = sum(weights[idx] for idx in best_set)

    def room_bound(mask: int) -> float:
        total = 0.0
        for r in rooms:
            for idx in by_room[r]:
                if mask & (1 << idx):
                    total += weights[idx]
                    break
        return total

    stack: list[tuple[int, float, tuple[int, ...]]] = [(full, 0.0, ())]
    while stack:
        mask, cur_w, cur_set = stack.pop()
        if mask == 0:
            if cur_w > best_w:
                best_w, best_set = cur_w, list(cur_set)
            continue
        if cur_w + room_bound(mask) <= best_w:
            continue
        for idx in order:
            if mask & (1 << idx):
                break
        # exclude branch pushed first so the include branch is explored first
        stack.append((mask & ~(1 << idx), cur_w, cur_set))
        stack.append(
            (mask & ~(neigh[idx] | (1 << idx)), cur_w + weights[idx], cur_set + (idx,))
        )

    best_set = sorted(best_set)
    return best_set, math.fsum(weights[idx] for idx in best_set)


def canonicalize_independent_set(g: MwisGraph, chosen: Sequence[int]) -> list[int]:
    """Extend an independent set to a maximal one (weight-0 vertices may be
    missing from an optimum) by adding compatible vertices in index order."""
    taken = 0
    out = list(chosen)
    for idx in chosen:
        if g.neighbor_masks[idx] & taken:
            raise ValueError("input set is not independent")
        taken |= 1 << idx
    for idx in range(len(g.vertices)):
        bit = 1 << idx
        if not (taken & bit) and not (g.neighbor_masks[idx] & taken):
            out.append(idx)
            taken |= bit
    return sorted(out)


def decode_assignment(inst: Instance, ext: GhostExtension, chosen: Sequence[int], g: MwisGraph) -> Assignment:
    """Turn a maximal independent set into an assignment: real/real
    vertices are pairs, real/ghost are singles, ghost/ghost are empty
    rooms."""
    chosen = canonicalize_independent_set(g, chosen)
    if len(chosen) != inst.n:
        raise ValueError(f"maximal set has {len(chosen)} vertices, expected {inst.n}")
    m = ext.original_m
    groups: list[frozenset[int]] = []
    rooms: list[int] = []
    for idx in chosen:
        v = g.vertices[idx]
        members = frozenset(x for x in (v.i, v.j) if x < m)
        groups.append(members)
        rooms.append(v.r)
    return canonical_assignment(Assignment(tuple(groups), tuple(rooms)))


def mwis_assign(inst: Instance) -> Assignment:
    """build_graph -> solve_mwis_exact -> decode_assignment."""
    g, ext = build_graph(inst)
    chosen, _ = solve_mwis_exact(g)
    return decode_assignment(inst, ext, chosen, g)


def check_claw_free(g: MwisGraph, d: int = 4) -> tuple[bool, Optional[tuple[int, list[int]]]]:
    """True iff no vertex has d pairwise-nonadjacent neighbors; otherwise
    returns (center, talons) as a witness."""
    nv = len(g.vertices)
    neigh = g.neighbor_masks
    for center in range(nv):
        cand = [u for u in range(nv) if neigh[center] & (1 << u)]
        talons = _independent_subset(neigh, cand, d)
        if talons is not None:
            return False, (center, talons)
    return True, None


def _greedy_clique_cover_size(neigh: list[int], cand: list[int]) -> int:
    cliques: list[tuple[int, int]] = []  # (mask of members, common-neighbor mask)
    for u in cand:
        for k, (members, common) in enumerate(cliques):
            if common & (1 << u):
                cliques[k] = (members | (1 << u), common & neigh[u])
                break
        else:
            cliques.append((1 << u, neigh[u]))
    return len(cliques)


def _independent_subset(neigh: list[int], cand: list[int], d: int) -> Optional[list[int]]:
    """Find d pairwise-nonadjacent vertices among cand, or None."""

    def rec(cand: list[int], need: int, acc: list[int]) -> Optional[list[int]]:
        if need == 0:
            return list(acc)
        if len(cand) < need:
            return None
        if _greedy_clique_cover_size(neigh, cand) < need:
            return None
        u = cand[0]
        # include u
        rest = [x for x in cand[1:] if not (neigh[u] & (1 << x))]
        acc.append(u)
        found = rec(rest, need - 1, acc)
        if found is not None:
            return found
        acc.pop()
        # exclude u
        return rec(cand[1:], need, acc)

    return rec(cand, d, [])


def graph_to_dict(g: MwisGraph) -> dict:
    """Diagnostic JSON dump of the conflict graph."""
    return {
        "vertices": [{"i": v.i, "j": v.j, "r": v.r, "w": v.weight} for v in g.vertices],
        "edges": [[u, w] for u, w in g.edges()],
    }
