from fractions import Fraction as F
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cachecast.combinatorics import (
    binom,
    cumulative_group_count,
    enumerate_groups,
    is_convex_sequence,
    lower_convex_envelope,
    multicast_load_sequence,
    partition_by_min,
)


def envelope_oracle(values, x):
    """Independent envelope: minimum over all chords of stored points.

    In 2-D the lower convex envelope at x is the cheapest convex combination
    of two points whose abscissae bracket x.
    """
    pts = [(F(n), F(v)) for n, v in enumerate(values)]
    x = F(x)
    best = None
    for (xi, yi), (xj, yj) in combinations(pts, 2):
        if xi <= x <= xj:
            val = yi + (yj - yi) * (x - xi) / (xj - xi)
            best = val if best is None else min(best, val)
    for xi, yi in pts:
        if xi == x:
            best = yi if best is None else min(best, yi)
    return best


class TestBinom:
    def test_standard(self):
        assert binom(4, 2) == 6
        assert binom(12, 6) == 924

    def test_zero_convention_above_n(self):
        assert binom(3, 4) == 0

    def test_rejects_negative(self):
        with pytest.raises(ValueError):
            binom(-1, 2)
        with pytest.raises(ValueError):
            binom(3, -2)


class TestGroups:
    def test_all_pairs_of_three(self):
        assert enumerate_groups(3, 2) == [(1, 2), (1, 3), (2, 3)]

    def test_single_full_group(self):
        assert enumerate_groups(3, 3) == [(1, 2, 3)]

    def test_lexicographic_extremes(self):
        groups = enumerate_groups(4, 2)
        assert len(groups) == 6
        assert groups[0] == (1, 2)
        assert groups[-1] == (3, 4)

    def test_out_of_range_size(self):
        with pytest.raises(ValueError):
            enumerate_groups(3, 0)
        with pytest.raises(ValueError):
            enumerate_groups(3, 4)


class TestPartition:
    def test_three_users_pairs(self):
        part = partition_by_min(3, 2)
        assert part.classes[0] == ((1, 2), (1, 3))
        assert part.classes[1] == ((2, 3),)
        assert part.classes[2] == ()

    def test_four_users_triples(self):
        part = partition_by_min(4, 3)
        assert len(part.classes[0]) == 3
        assert len(part.classes[1]) == 1

    def test_full_group(self):
        part = partition_by_min(5, 5)
        assert part.classes[0] == ((1, 2, 3, 4, 5),)
        assert all(cls == () for cls in part.classes[1:])

    @pytest.mark.parametrize("num_users", range(2, 9))
    def test_partition_property(self, num_users):
        for sigma in range(2, num_users + 1):
            part = partition_by_min(num_users, sigma)
            seen = [g for cls in part.classes for g in cls]
            assert len(seen) == len(set(seen)) == binom(num_users, sigma)
            assert set(seen) == set(enumerate_groups(num_users, sigma))
            # bucket criterion: each group sits in the class of its minimum
            for i, cls in enumerate(part.classes, start=1):
                assert all(min(g) == i for g in cls)
            # classes beyond K - sigma + 1 stay empty
            assert all(
                cls == () for cls in part.classes[num_users - sigma + 1 :]
            )


class TestCumulativeCount:
    def test_small_cases(self):
        assert cumulative_group_count(3, 2, 1) == 2
        assert cumulative_group_count(3, 2, 2) == 3
        assert cumulative_group_count(6, 3, 0) == 0

    @pytest.mark.parametrize("num_users", range(2, 9))
    def test_matches_enumeration(self, num_users):
        for sigma in range(2, num_users + 1):
            part = partition_by_min(num_users, sigma)
            for j in range(0, num_users + 1):
                enumerated = len(part.union_up_to(j))
                assert cumulative_group_count(num_users, sigma, j) == enumerated


class TestEnvelope:
    def test_convex_points_are_touched(self):
        values = [F(4), F(1), F(0)]  # convex
        for n, v in enumerate(values):
            assert lower_convex_envelope(values, n) == v

    def test_interpolation_between_convex_points(self):
        assert lower_convex_envelope([4, 1, 0], F(1, 2)) == F(5, 2)

    def test_hull_bypasses_interior_point(self):
        assert lower_convex_envelope([0, 3, 1], 1) == F(1, 2)

    def test_domain_error(self):
        with pytest.raises(ValueError):
            lower_convex_envelope([1, 2], F(5, 2))
        with pytest.raises(ValueError):
            lower_convex_envelope([1, 2], -1)

    @given(
        values=st.lists(st.integers(0, 40), min_size=2, max_size=9),
        num=st.integers(0, 200),
    )
    @settings(max_examples=200, deadline=None)
    def test_matches_chord_oracle(self, values, num):
        x = F(num * (len(values) - 1), 200)
        assert lower_convex_envelope(values, x) == envelope_oracle(values, x)

    @given(values=st.lists(st.integers(0, 40), min_size=2, max_size=9))
    @settings(max_examples=100, deadline=None)
    def test_soundness(self, values):
        # never above any bracketing chord, never below zero for f >= 0
        for num in range(0, 41):
            x = F(num * (len(values) - 1), 40)
            env = lower_convex_envelope(values, x)
            assert env >= 0
            assert env <= envelope_oracle(values, x)


class TestConvexSequence:
    def test_affine(self):
        assert is_convex_sequence([0, 1, 2, 3])

    def test_non_convex(self):
        assert not is_convex_sequence([0, 2, 1])

    def test_needs_three_points(self):
        with pytest.raises(ValueError):
            is_convex_sequence([1, 2])

    def test_load_sequence_small(self):
        # the coded load sequence is convex; spot case K = 4, all users served
        assert is_convex_sequence(multicast_load_sequence(4, 4))


class TestLoadSequence:
    def test_values_for_three_users(self):
        seq = multicast_load_sequence(3, 3)
        assert seq == [F(3), F(1), F(1, 3), F(0)]

    def test_served_prefix_only(self):
        # one served user: load counts only groups containing user 1
        seq = multicast_load_sequence(3, 1)
        assert seq[0] == F(1)  # C(3,1)-C(2,1) over C(3,0)
        assert seq[-1] == 0

    def test_rejects_bad_served(self):
        with pytest.raises(ValueError):
            multicast_load_sequence(3, 0)
        with pytest.raises(ValueError):
            multicast_load_sequence(3, 4)
