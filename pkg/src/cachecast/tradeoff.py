"""Delivery-time / unicast-GDoF trade-off formulas, exact over rationals.

The central quantity is the normalized delivery time achieved by splitting
each file for an aggregate cache budget of K*mu and pushing the coded
multicast payloads plus the unicast traffic through the layered broadcast
channel.  With c_n(k) the coded load useful to the weakest min(k, N) users
(see `combinatorics.multicast_load_sequence`) the achieved time is

    tau_ub(r) = max_k  env_k(K*mu) / (alpha_k - r_1 - ... - r_k)^+,

where env_k is the lower convex envelope of n -> c_n(k), evaluated at the
(possibly fractional) budget K*mu.  Three relatives matter and are kept as
separate code paths:

* the integer-budget form, with no envelope at all;
* naive memory sharing, which takes the envelope AFTER the max over k and is
  weaker at fractional budgets in asymmetric channels;
* the joint two-set delivery form, an explicit convex combination of the two
  neighbouring integer budgets, which matches tau_ub.

A division-free converse companion assembles the per-prefix information
bounds (each 1/2.01 of the corresponding achievability row), the bottleneck
user pins down which prefix constraint binds, and `topological_hole_region`
describes the unicast tuples that ride along at no delivery-time cost.

Delivery times are Fractions, with float('inf') when a positive load meets an
exhausted channel prefix.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .combinatorics import (
    binom,
    lower_convex_envelope,
    multicast_load_sequence,
)
from .polytope import Polytope, _frac
from .regions import ZERO, ONE, unicast_name, validate_strengths

INF = math.inf

#: converse constant: the information bounds give up this factor exactly
CONVERSE_FACTOR = Fraction(201, 100)
# (a sharper 2.00884 is known to hold; the round constant is used throughout)


@dataclass(frozen=True)
class SystemConfig:
    """Problem instance: K users, N files, cache fraction mu, strengths, power."""

    num_users: int
    num_files: int
    mu: Fraction
    alpha: tuple[Fraction, ...]
    power: float = 100.0

    def __post_init__(self):
        if self.num_users < 1 or self.num_files < 1:
            raise ValueError("need at least one user and one file")
        object.__setattr__(self, "mu", _frac(self.mu))
        object.__setattr__(self, "alpha", validate_strengths(self.alpha))
        if len(self.alpha) != self.num_users:
            raise ValueError("one channel strength per user is required")
        if not 0 <= self.mu <= 1:
            raise ValueError(f"mu must lie in [0, 1], got {self.mu}")
        if self.power <= 1:
            raise ValueError(f"nominal power must exceed 1, got {self.power}")

    @property
    def cache_budget(self) -> Fraction:
        """Aggregate normalized cache size K*mu."""
        return self.num_users * self.mu

    @property
    def integer_budget(self) -> bool:
        return self.cache_budget.denominator == 1


def _unicast(config: SystemConfig, r) -> tuple[Fraction, ...]:
    if r is None:
        return (ZERO,) * config.num_users
    rt = tuple(_frac(x) for x in r)
    if len(rt) != config.num_users:
        raise ValueError("one unicast GDoF per user is required")
    if any(x < 0 for x in rt):
        raise ValueError("unicast GDoF values must be nonnegative")
    return rt


def _gaps(config: SystemConfig, r) -> list[Fraction]:
    """(alpha_k - sum_{i<=k} r_i)^+ for every k."""
    rt = _unicast(config, r)
    gaps = []
    prefix = ZERO
    for k in range(config.num_users):
        prefix += rt[k]
        gaps.append(max(ZERO, config.alpha[k] - prefix))
    return gaps


def _ratio(load: Fraction, gap: Fraction):
    """load / gap with the conventions 0/anything = 0 and positive/0 = inf."""
    if load == 0:
        return ZERO
    if gap == 0:
        return INF
    return load / gap


def gndt_ub(config: SystemConfig, r: Sequence | None = None):
    """Achievable delivery time, envelope taken inside the max over users."""
    budget = config.cache_budget
    gaps = _gaps(config, r)
    best = ZERO
    for k in range(1, config.num_users + 1):
        served = min(k, config.num_files)
        load = lower_convex_envelope(
            multicast_load_sequence(config.num_users, served), budget
        )
        best = max(best, _ratio(load, gaps[k - 1]))
    return best


def gndt_ub_integer(config: SystemConfig, r: Sequence | None = None):
    """Integer-budget delivery time, straight from the load sequence."""
    if not config.integer_budget:
        raise ValueError(f"cache budget K*mu = {config.cache_budget} is not an integer")
    n = int(config.cache_budget)
    gaps = _gaps(config, r)
    best = ZERO
    for k in range(1, config.num_users + 1):
        served = min(k, config.num_files)
        load = multicast_load_sequence(config.num_users, served)[n]
        best = max(best, _ratio(load, gaps[k - 1]))
    return best


def gndt_memory_sharing(config: SystemConfig, r: Sequence | None = None):
    """Naive memory sharing: envelope of the max-over-users sequence.

    Splitting the system into two independent integer-budget runs time-shares
    the channel, so the max over users is applied per integer budget first and
    the envelope interpolates afterwards.  Coincides with `gndt_ub` at integer
    budgets and is never below it elsewhere.
    """
    budget = config.cache_budget
    gaps = _gaps(config, r)
    sequences = [
        multicast_load_sequence(config.num_users, min(k, config.num_files))
        for k in range(1, config.num_users + 1)
    ]
    maxed = []
    for n in range(config.num_users + 1):
        maxed.append(max(_ratio(seq[n], gap) for seq, gap in zip(sequences, gaps)))
    if any(v == INF for v in maxed):
        # some prefix is exhausted: only the zero-load full-cache point is finite
        if budget == config.num_users:
            return ZERO
        return INF
    return lower_convex_envelope(maxed, budget)


def gndt_joint_two_set(config: SystemConfig, r: Sequence | None = None):
    """Joint delivery of the two neighbouring integer-budget multicast sets.

    For a fractional budget the files are split between budgets floor(K*mu)
    and ceil(K*mu); delivering both coded sets simultaneously through the
    layered channel weights the two loads by the split fractions inside the
    max, which reproduces `gndt_ub` exactly.
    """
    budget = config.cache_budget
    if budget.denominator == 1:
        raise ValueError(f"cache budget K*mu = {budget} is an integer; no split needed")
    low = budget.numerator // budget.denominator  # floor
    lam = low + 1 - budget  # weight of the floor budget
    gaps = _gaps(config, r)
    best = ZERO
    for k in range(1, config.num_users + 1):
        served = min(k, config.num_files)
        seq = multicast_load_sequence(config.num_users, served)
        load = lam * seq[low] + (1 - lam) * seq[low + 1]
        best = max(best, _ratio(load, gaps[k - 1]))
    return best


def gndt_lower_bound(config: SystemConfig, r: Sequence | None = None):
    """Converse delivery time, assembled from the per-prefix bounds.

    For every user prefix [s] the information bound caps the unicast sum plus
    1/2.01 of the enveloped coded load by alpha_s; rearranged, each prefix
    yields a floor on the delivery time and the tightest one is returned.
    Structurally the max equals `gndt_ub` / 2.01, but the value is built from
    the per-prefix rows, not by dividing.
    """
    budget = config.cache_budget
    gaps = _gaps(config, r)
    best = ZERO
    for s in range(1, config.num_users + 1):
        served = min(s, config.num_files)
        load = lower_convex_envelope(
            multicast_load_sequence(config.num_users, served), budget
        )
        per_prefix = _ratio(load / CONVERSE_FACTOR, gaps[s - 1])
        best = max(best, per_prefix)
    return best


def bottleneck_user(config: SystemConfig) -> int:
    """Smallest user index whose load-to-strength ratio pins the delivery time.

    Defined for integer budgets with at least as many files as users.
    """
    if not config.integer_budget:
        raise ValueError("the bottleneck user is defined for integer cache budgets")
    if config.num_files < config.num_users:
        raise ValueError("the bottleneck user is defined for N >= K")
    n = int(config.cache_budget)
    K = config.num_users
    best_k, best_val = None, None
    for k in range(1, K + 1):
        num = binom(K, n + 1) - binom(K - k, n + 1)
        val = Fraction(num) / config.alpha[k - 1]
        if best_val is None or val > best_val:
            best_k, best_val = k, val
    return best_k


def topological_hole_region(config: SystemConfig) -> Polytope:
    """Unicast tuples that keep the no-unicast delivery time unchanged.

    Nothing can be granted to the bottleneck user or anyone weaker; stronger
    users share the slack between channel strengths, discounted by how much
    extra load their prefix constraint carries relative to the bottleneck:

        r_{k*+1} + ... + r_k <= alpha_{k*+1} - alpha_{k*} * (load_k / load_k*).
    """
    if not config.integer_budget:
        raise ValueError("hole analysis requires an integer cache budget")
    if config.num_files < config.num_users:
        raise ValueError("hole analysis requires N >= K")
    n = int(config.cache_budget)
    K = config.num_users
    if n >= K:
        raise ValueError("a full cache leaves no content traffic to protect")
    star = bottleneck_user(config)
    star_load = binom(K, n + 1) - binom(K - star, n + 1)
    names = [unicast_name(k) for k in range(1, K + 1)]
    rows = []
    for k in range(1, star + 1):
        coeffs = [ONE if i == k - 1 else ZERO for i in range(K)]
        rows.append((coeffs, ZERO))  # r_k <= 0, i.e. r_k = 0 on the orthant
    for k in range(star + 1, K + 1):
        load_k = binom(K, n + 1) - binom(K - k, n + 1)
        bound = config.alpha[star] - config.alpha[star - 1] * Fraction(load_k, star_load)
        coeffs = [ONE if star <= i < k else ZERO for i in range(K)]
        rows.append((coeffs, bound))
    return Polytope.build(names, rows)


def gdof_region_inner(tau, config: SystemConfig) -> Polytope:
    """Unicast region guaranteed at delivery time tau (inner description).

    Row k reserves 1/tau of the enveloped coded load inside strength alpha_k;
    the true region at tau sits between this and the same description at
    2.01 * tau.
    """
    tau = _frac(tau)
    if tau <= 0:
        raise ValueError(f"delivery time must be positive, got {tau}")
    budget = config.cache_budget
    K = config.num_users
    names = [unicast_name(k) for k in range(1, K + 1)]
    rows = []
    for k in range(1, K + 1):
        served = min(k, config.num_files)
        load = lower_convex_envelope(
            multicast_load_sequence(K, served), budget
        )
        coeffs = [ONE if i < k else ZERO for i in range(K)]
        rows.append((coeffs, config.alpha[k - 1] - load / tau))
    return Polytope.build(names, rows)
