import numpy as np
import pytest

from rentdiv.core import Instance, assignment_valid, canonical_assignment, social_welfare
from rentdiv.enumeration import (
    EnumerationCapExceeded,
    EnumerationMode,
    brute_force_max_welfare,
    count_assignments,
    count_assignments_mode,
    enumerate_assignments,
)

from instances import random_instance

NO_EMPTY = EnumerationMode(allow_empty_rooms=False)
ALLOW_EMPTY = EnumerationMode(allow_empty_rooms=True)

ALL_SMALL_CELLS = [(m, n) for n in range(1, 5) for m in range(n, 2 * n + 1)]


def test_count_assignments_golden():
    assert count_assignments(4, 3) == 36
    assert count_assignments(12, 9) > 5 * 10**9
    assert count_assignments(2, 1) == 1
    assert count_assignments(1, 1) == 1
    assert count_assignments(4, 2) == 6


def test_count_assignments_rejects_bad_shapes():
    with pytest.raises(ValueError):
        count_assignments(5, 2)
    with pytest.raises(ValueError):
        count_assignments(2, 3)
    with pytest.raises(ValueError):
        count_assignments(3, 0)


@pytest.mark.parametrize("m,n", ALL_SMALL_CELLS)
@pytest.mark.parametrize("mode", [NO_EMPTY, ALLOW_EMPTY], ids=["no-empty", "allow-empty"])
def test_enumerator_matches_formula_and_is_valid(m, n, mode):
    inst = random_instance(np.random.default_rng(0), m, n)
    seen = set()
    count = 0
    for a in enumerate_assignments(inst, mode):
        assert assignment_valid(inst, a)
        if not mode.allow_empty_rooms:
            assert all(len(g) > 0 for g in a.groups)
        key = frozenset((g, r) for g, r in zip(a.groups, a.room_of_group) if g)
        assert key not in seen  # each assignment exactly once
        seen.add(key)
        count += 1
    assert count == count_assignments_mode(m, n, mode)


def test_allow_empty_superset_of_no_empty():
    for m, n in [(3, 2), (4, 3), (5, 3)]:
        assert count_assignments_mode(m, n, ALLOW_EMPTY) >= count_assignments_mode(m, n, NO_EMPTY)
    # with m == 2n nothing can be left empty
    assert count_assignments_mode(4, 2, ALLOW_EMPTY) == count_assignments_mode(4, 2, NO_EMPTY)


def test_cap_exceeded():
    inst = random_instance(np.random.default_rng(0), 4, 3)
    with pytest.raises(EnumerationCapExceeded):
        list(enumerate_assignments(inst, NO_EMPTY, cap=5))
    with pytest.raises(EnumerationCapExceeded):
        brute_force_max_welfare(inst, NO_EMPTY, cap=5)


def test_brute_force_matches_naive_scan():
    # independent oracle for the vectorized scorer: plain python max
    rng = np.random.default_rng(7)
    for _ in range(25):
        n = int(rng.integers(1, 4))
        m = int(rng.integers(n, 2 * n + 1))
        inst = random_instance(rng, m, n, rent=float(rng.random()))
        for mode in (NO_EMPTY, ALLOW_EMPTY):
            best_a, best_w = brute_force_max_welfare(inst, mode)
            naive = max(social_welfare(inst, a) for a in enumerate_assignments(inst, mode))
            assert best_w == naive
            assert social_welfare(inst, best_a) == best_w


def test_brute_force_tie_break_is_first_in_order():
    # constant valuations: every assignment ties, the first one wins
    inst = random_instance(np.random.default_rng(0), 3, 2)
    flat = Instance(3, 2, 0.0, np.ones((3, 3, 2)))
    first = next(enumerate_assignments(flat, NO_EMPTY))
    best, _ = brute_force_max_welfare(flat, NO_EMPTY)
    assert canonical_assignment(best) == canonical_assignment(first)


def test_brute_force_rejects_invalid_instance():
    bad = Instance(5, 2, 0.0, np.zeros((5, 5, 2)))
    with pytest.raises(ValueError):
        brute_force_max_welfare(bad)
    with pytest.raises(ValueError):
        list(enumerate_assignments(bad))


def test_allow_empty_can_strictly_improve():
    # two tenants, two rooms, pairing dominates: only allow-empty finds it
    v = np.zeros((2, 2, 2))
    v[0, 1, 0] = 10.0
    v[1, 0, 0] = 10.0
    inst = Instance(2, 2, 0.0, v)
    _, w_no = brute_force_max_welfare(inst, NO_EMPTY)
    a_yes, w_yes = brute_force_max_welfare(inst, ALLOW_EMPTY)
    assert w_no == 0.0
    assert w_yes == 20.0
    assert any(len(g) == 0 for g in a_yes.groups)
