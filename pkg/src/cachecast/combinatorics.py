"""Exact combinatorial primitives shared by the caching and region machinery.

Users are indexed 1..K and a multicast group is a subset of users, held as a
sorted tuple.  Groups of a fixed size sigma are enumerated in lexicographic
order, which fixes the message indexing used everywhere else in the package.
The partition of the sigma-groups by their weakest (minimum) member, the
cumulative count identity

    |Sigma_1 u ... u Sigma_j| = C(K, sigma) - C(K - j, sigma),

and the per-subfile coded load sequence

    c_n = (C(K, n+1) - C(K - m, n+1)) / C(K, n),    n = 0..K,

are the combinatorial backbone of the delivery-time formulas.  All arithmetic
is exact (ints and fractions.Fraction); floats only ever appear at output
boundaries of the package.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

Group = tuple[int, ...]


def binom(n: int, k: int) -> int:
    """Binomial coefficient with the convention C(n, k) = 0 for n < k."""
    if not isinstance(n, int) or not isinstance(k, int):
        raise ValueError(f"binom expects integers, got ({n!r}, {k!r})")
    if n < 0 or k < 0:
        raise ValueError(f"binom expects nonnegative arguments, got ({n}, {k})")
    if n < k:
        return 0
    return math.comb(n, k)


def enumerate_groups(num_users: int, group_size: int) -> list[Group]:
    """All C(K, sigma) groups of `group_size` users out of 1..K, lexicographic."""
    if not 1 <= group_size <= num_users:
        raise ValueError(
            f"group size must lie in [1, {num_users}], got {group_size}"
        )
    return [tuple(g) for g in combinations(range(1, num_users + 1), group_size)]


@dataclass(frozen=True)
class GroupPartition:
    """Partition of all sigma-groups by weakest member.

    ``classes[i - 1]`` holds the groups whose minimum user is i; it is empty
    for i > K - sigma + 1 because smaller-minimum groups run out of room.
    """

    num_users: int
    group_size: int
    classes: tuple[tuple[Group, ...], ...]

    def union_up_to(self, j: int) -> list[Group]:
        """Groups whose weakest member is at most j (empty list for j = 0)."""
        out: list[Group] = []
        for cls in self.classes[:j]:
            out.extend(cls)
        return out


def partition_by_min(num_users: int, group_size: int) -> GroupPartition:
    """Bucket the sigma-groups by their minimum user index."""
    if not 2 <= group_size <= num_users:
        raise ValueError(
            f"group size must lie in [2, {num_users}], got {group_size}"
        )
    buckets: list[list[Group]] = [[] for _ in range(num_users)]
    for group in enumerate_groups(num_users, group_size):
        buckets[group[0] - 1].append(group)
    return GroupPartition(
        num_users=num_users,
        group_size=group_size,
        classes=tuple(tuple(b) for b in buckets),
    )


def cumulative_group_count(num_users: int, group_size: int, j: int) -> int:
    """Closed form for the number of sigma-groups with minimum member <= j."""
    if not 0 <= j <= num_users:
        raise ValueError(f"j must lie in [0, {num_users}], got {j}")
    return binom(num_users, group_size) - binom(num_users - j, group_size)


def multicast_load_sequence(num_users: int, served: int) -> list[Fraction]:
    """Coded load c_n, in subfile units, for n = 0..K cached subfiles per file.

    `served` is the number of users whose groups must be covered (the
    min{k, N} count in the delivery-time expressions); it must lie in [1, K].
    c_n counts the multicast messages useful to the first `served` users,
    normalized by the C(K, n) subfiles each file is split into.
    """
    if not 1 <= served <= num_users:
        raise ValueError(f"served must lie in [1, {num_users}], got {served}")
    seq = []
    for n in range(num_users + 1):
        num = binom(num_users, n + 1) - binom(num_users - served, n + 1)
        seq.append(Fraction(num, binom(num_users, n)))
    return seq


def _as_fraction(x) -> Fraction:
    if isinstance(x, float):
        # floats are accepted for convenience but converted exactly
        return Fraction(x).limit_denominator(10**12)
    return Fraction(x)


def lower_convex_envelope(values: Sequence, x) -> Fraction:
    """Lower convex envelope of {(n, values[n]) : n = 0..K}, evaluated at x.

    Built as a 2-D lower hull (monotone chain) so no convexity of the input
    sequence is assumed.  For a convex sequence the envelope touches every
    point and evaluation reduces to linear interpolation between floor(x)
    and ceil(x).
    """
    pts = [(Fraction(n), _as_fraction(v)) for n, v in enumerate(values)]
    xq = _as_fraction(x)
    if not pts:
        raise ValueError("envelope needs at least one point")
    if not pts[0][0] <= xq <= pts[-1][0]:
        raise ValueError(f"x = {x} outside the index range [0, {len(pts) - 1}]")

    # lower hull, left to right; keep right turns only
    hull: list[tuple[Fraction, Fraction]] = []
    for p in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above chord hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)

    for (x1, y1), (x2, y2) in zip(hull, hull[1:]):
        if x1 <= xq <= x2:
            return y1 + (y2 - y1) * (xq - x1) / (x2 - x1)
    return hull[-1][1]  # xq coincides with the last abscissa


def is_convex_sequence(values: Sequence) -> bool:
    """True iff successive differences of the sequence are nondecreasing."""
    if len(values) < 3:
        raise ValueError("convexity of a sequence needs at least 3 points")
    vals = [_as_fraction(v) for v in values]
    diffs = [b - a for a, b in zip(vals, vals[1:])]
    return all(d2 >= d1 for d1, d2 in zip(diffs, diffs[1:]))
