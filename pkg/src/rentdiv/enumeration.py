"""Brute-force enumeration of assignments and closed-form counting.

This is the ground-truth oracle for every other solver at small scale.
Enumeration order is deterministic: partitions are generated by always
branching on the smallest unassigned tenant (single first, then pairs in
partner order), and room arrangements follow ``itertools.permutations``
order; this order is the documented tie-break for ``brute_force_max_welfare``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Iterator

import numpy as np

from .core import Assignment, Instance, validate_instance

DEFAULT_CAP = 10**7


@dataclass(frozen=True)
class EnumerationMode:
    allow_empty_rooms: bool = False


class EnumerationCapExceeded(RuntimeError):
    pass


def count_assignments(m: int, n: int) -> int:
    """Exact number of assignments with no empty rooms:
    C(m, 2n-m) * (2m-2n)! * n! / ((m-n)! * 2^(m-n))."""
    if not (1 <= n <= m <= 2 * n):
        raise ValueError(f"need 1 <= n <= m <= 2n, got m={m}, n={n}")
    return (
        math.comb(m, 2 * n - m)
        * math.factorial(2 * m - 2 * n)
        * math.factorial(n)
        // (math.factorial(m - n) * 2 ** (m - n))
    )


def _partition_count(m: int, k: int) -> int:
    """Partitions of m tenants into exactly k nonempty groups of size <= 2."""
    d = m - k  # doubles
    s = 2 * k - m  # singles
    if d < 0 or s < 0:
        return 0
    return math.factorial(m) // (math.factorial(s) * math.factorial(d) * 2**d)


def count_assignments_mode(m: int, n: int, mode: EnumerationMode) -> int:
    """Cardinality of the enumerated space under ``mode``."""
    if not mode.allow_empty_rooms:
        return count_assignments(m, n)
    total = 0
    for k in range(-(-m // 2), min(n, m) + 1):
        total += _partition_count(m, k) * math.perm(n, k)
    return total


def _partitions(tenants: tuple[int, ...], k: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    """All partitions of ``tenants`` into exactly k groups of size 1 or 2,
    in deterministic order.  Groups come out sorted by smallest member."""
    m = len(tenants)
    if m == 0:
        if k == 0:
            yield ()
        return
    if k <= 0 or m > 2 * k or k > m:
        return
    first, rest = tenants[0], tenants[1:]
    # first lives alone
    if m - 1 <= 2 * (k - 1):
        for tail in _partitions(rest, k - 1):
            yield ((first,),) + tail
    # first pairs with a later tenant
    if k - 1 <= m - 2:
        for idx, partner in enumerate(rest):
            remaining = rest[:idx] + rest[idx + 1 :]
            for tail in _partitions(remaining, k - 1):
                yield ((first, partner),) + tail


@lru_cache(maxsize=None)
def _assignment_table(m: int, n: int, allow_empty: bool) -> tuple[tuple[tuple[int, int, int], ...], ...]:
    """All assignments for shape (m, n) as tuples of (i, j, room) triples
    (j == i for singles; empty rooms omitted).  Cached: the structure does
    not depend on valuations."""
    ks = [n] if not allow_empty else list(range(-(-m // 2), min(n, m) + 1))
    out: list[tuple[tuple[int, int, int], ...]] = []
    tenants = tuple(range(m))
    for k in ks:
        if not (k <= m <= 2 * k):
            continue
        for part in _partitions(tenants, k):
            for rooms in permutations(range(n), k):
                out.append(
                    tuple((g[0], g[-1], r) for g, r in zip(part, rooms))
                )
    return tuple(out)


def _structure_to_assignment(struct: tuple[tuple[int, int, int], ...], n: int) -> Assignment:
    groups = [frozenset({i, j}) for i, j, _ in struct]
    rooms = [r for _, _, r in struct]
    used = set(rooms)
    for r in range(n):
        if r not in used:
            groups.append(frozenset())
            rooms.append(r)
    return Assignment(tuple(groups), tuple(rooms))


def enumerate_assignments(
    inst: Instance,
    mode: EnumerationMode = EnumerationMode(),
    cap: int = DEFAULT_CAP,
) -> Iterator[Assignment]:
    """Yield every valid assignment exactly once."""
    err = validate_instance(inst)
    if err is not None:
        raise ValueError(err)
    total = count_assignments_mode(inst.m, inst.n, mode)
    if total > cap:
        raise EnumerationCapExceeded(f"{total} assignments exceeds cap {cap}")
    for struct in _assignment_table(inst.m, inst.n, mode.allow_empty_rooms):
        yield _structure_to_assignment(struct, inst.n)


def brute_force_max_welfare(
    inst: Instance,
    mode: EnumerationMode = EnumerationMode(),
    cap: int = DEFAULT_CAP,
) -> tuple[Assignment, float]:
    """Exhaustively maximize social welfare; ties broken by the first
    maximum in enumeration order."""
    err = validate_instance(inst)
    if err is not None:
        raise ValueError(err)
    total = count_assignments_mode(inst.m, inst.n, mode)
    if total > cap:
        raise EnumerationCapExceeded(f"{total} assignments exceeds cap {cap}")
    table = _assignment_table(inst.m, inst.n, mode.allow_empty_rooms)

    # vectorized scoring: pad every assignment to n triples (zeros are
    # masked out) and index the pairwise valuation table
    v = inst.valuations
    pairval = v + np.transpose(v, (1, 0, 2))  # value of pair {i, j} in room r
    idx = np.arange(inst.m)
    pairval[idx, idx, :] = v[idx, idx, :]  # singles: no doubling

    rows = len(table)
    width = max(len(s) for s in table)
    ii = np.zeros((rows, width), dtype=np.intp)
    jj = np.zeros((rows, width), dtype=np.intp)
    rr = np.zeros((rows, width), dtype=np.intp)
    mask = np.zeros((rows, width))
    for a, struct in enumerate(table):
        for b, (i, j, r) in enumerate(struct):
            ii[a, b], jj[a, b], rr[a, b] = i, j, r
            mask[a, b] = 1.0
    scores = (pairval[ii, jj, rr] * mask).sum(axis=1)
    best = int(np.argmax(scores))
    assignment = _structure_to_assignment(table[best], inst.n)
    from .core import social_welfare

    return assignment, social_welfare(inst, assignment)
