"""GDoF regions of the degraded broadcast channel with unicast + multicast sets.

The channel serves K successively stronger users with strength exponents
0 < alpha_1 <= ... <= alpha_K = 1.  Alongside one unicast message per user it
carries multicast messages indexed by sigma-subsets of users.  Because the
channel is degraded, user k decodes everything intended to any group whose
weakest member is at most k, which makes the region description triangular:

    sum_{i<=k} r_i + sum_{S : min(S) <= k} r_S <= alpha_k,      k = 1..K.

This module builds that region and its relatives as exact `Polytope` objects:
the symmetric projection onto one shared multicast value, the two nested
multicast sets used for fractional cache budgets, the region with all-non-
leader messages silenced, and the power-exponent parameterized inner region
whose Fourier-Motzkin projection reproduces the triangular form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .combinatorics import Group, cumulative_group_count, enumerate_groups
from .polytope import Polytope, _frac

ZERO = Fraction(0)
ONE = Fraction(1)


def validate_strengths(alpha: Sequence) -> tuple[Fraction, ...]:
    """Check 0 < alpha_1 <= ... <= alpha_K = 1 and return exact values."""
    vals = tuple(_frac(a) for a in alpha)
    if not vals:
        raise ValueError("at least one channel strength is required")
    if vals[0] <= 0:
        raise ValueError(f"strengths must be positive, got alpha_1 = {vals[0]}")
    if any(a > b for a, b in zip(vals, vals[1:])):
        raise ValueError(f"strengths must be nondecreasing, got {vals}")
    if vals[-1] != 1:
        raise ValueError(
            f"strengths must be normalized with alpha_K = 1, got alpha_K = {vals[-1]}"
        )
    return vals


def unicast_name(user: int) -> str:
    return f"r_{user}"


def group_name(group: Group) -> str:
    return "r_" + "_".join(str(u) for u in group)


def validate_power_exponents(beta: Sequence, alpha: Sequence) -> tuple[Fraction, ...]:
    """Power exponents: beta_1 = 0, nondecreasing, beta_{k+1} <= alpha_k."""
    alphas = validate_strengths(alpha)
    betas = tuple(_frac(b) for b in beta)
    if len(betas) != len(alphas):
        raise ValueError("one power exponent per user is required")
    if betas[0] != 0:
        raise ValueError(f"the first power exponent must be 0, got {betas[0]}")
    if any(a > b for a, b in zip(betas, betas[1:])):
        raise ValueError(f"power exponents must be nondecreasing, got {betas}")
    if any(betas[k + 1] > alphas[k] for k in range(len(betas) - 1)):
        raise ValueError("power exponents must satisfy beta_{k+1} <= alpha_k")
    return betas


@dataclass(frozen=True)
class GdofPoint:
    """Unicast GDoF tuple plus per-group (or symmetric) multicast values."""

    unicast: tuple[Fraction, ...]
    multicast: dict[Group, Fraction] = field(default_factory=dict)
    symmetric: Fraction | None = None

    def as_mapping(self) -> dict[str, Fraction]:
        values = {unicast_name(k + 1): v for k, v in enumerate(self.unicast)}
        for group, v in self.multicast.items():
            values[group_name(group)] = v
        if self.symmetric is not None:
            values["r_sym"] = self.symmetric
        return values


def build_region(num_users: int, group_size: int, alpha: Sequence) -> Polytope:
    """Full unicast + sigma-multicast GDoF region (triangular rows)."""
    alphas = validate_strengths(alpha)
    if not 2 <= group_size <= num_users:
        raise ValueError(
            f"multicast group size must lie in [2, {num_users}], got {group_size}"
        )
    groups = enumerate_groups(num_users, group_size)
    names = [unicast_name(k) for k in range(1, num_users + 1)]
    names += [group_name(g) for g in groups]
    rows = []
    for k in range(1, num_users + 1):
        coeffs = [ONE if i < k else ZERO for i in range(num_users)]
        coeffs += [ONE if min(g) <= k else ZERO for g in groups]
        rows.append((coeffs, alphas[k - 1]))
    return Polytope.build(names, rows)


def multicast_only_region(num_users: int, group_size: int, alpha: Sequence) -> Polytope:
    """Content-only variant: unicast coordinates pinned to zero and dropped."""
    from .polytope import fix_variables

    full = build_region(num_users, group_size, alpha)
    zeros = {unicast_name(k): 0 for k in range(1, num_users + 1)}
    return fix_variables(full, zeros)


def symmetric_projection(
    num_users: int, group_size: int, alpha: Sequence, s: int
) -> Polytope:
    """Region over (r_1..r_K, r_sym) when the groups meeting [s] share one value.

    Groups whose weakest member exceeds s carry nothing; the projected row k
    counts the shared-value groups decoded by user k:

        sum_{i<=k} r_i + [C(K,sigma) - C(K-min(k,s),sigma)] r_sym <= alpha_k.
    """
    alphas = validate_strengths(alpha)
    if not 1 <= s <= num_users:
        raise ValueError(f"s must lie in [1, {num_users}], got {s}")
    names = [unicast_name(k) for k in range(1, num_users + 1)] + ["r_sym"]
    rows = []
    for k in range(1, num_users + 1):
        coeffs = [ONE if i < k else ZERO for i in range(num_users)]
        coeffs.append(Fraction(cumulative_group_count(num_users, group_size, min(k, s))))
        rows.append((coeffs, alphas[k - 1]))
    return Polytope.build(names, rows)


def max_symmetric_gdof(
    num_users: int, group_size: int, alpha: Sequence, s: int, r: Sequence
) -> Fraction:
    """Largest symmetric multicast GDoF on top of a fixed unicast tuple.

    Closed form: min_k (alpha_k - sum_{i<=k} r_i)^+ over the group count of
    row k.  Clamps to zero when some prefix of the unicast tuple already
    exhausts a channel strength.
    """
    alphas = validate_strengths(alpha)
    rt = tuple(_frac(x) for x in r)
    if len(rt) != num_users:
        raise ValueError("one unicast GDoF per user is required")
    best = None
    prefix = ZERO
    for k in range(1, num_users + 1):
        prefix += rt[k - 1]
        gap = max(ZERO, alphas[k - 1] - prefix)
        count = cumulative_group_count(num_users, group_size, min(k, s))
        value = gap / count
        best = value if best is None else min(best, value)
    return best


def build_two_multicast_symmetric(
    num_users: int, sigma: int, gamma: int, alpha: Sequence, s: int
) -> Polytope:
    """Symmetric region with two nested multicast sets of sizes sigma < gamma."""
    alphas = validate_strengths(alpha)
    if not 2 <= sigma < gamma <= num_users:
        raise ValueError(
            f"group sizes must satisfy 2 <= sigma < gamma <= {num_users}, "
            f"got sigma={sigma}, gamma={gamma}"
        )
    names = [unicast_name(k) for k in range(1, num_users + 1)]
    names += [f"r_sym_{sigma}", f"r_sym_{gamma}"]
    rows = []
    for k in range(1, num_users + 1):
        coeffs = [ONE if i < k else ZERO for i in range(num_users)]
        coeffs.append(Fraction(cumulative_group_count(num_users, sigma, min(k, s))))
        coeffs.append(Fraction(cumulative_group_count(num_users, gamma, min(k, s))))
        rows.append((coeffs, alphas[k - 1]))
    return Polytope.build(names, rows)


def build_missing_message_region(
    num_users: int, group_size: int, alpha: Sequence, leaders: Sequence[int]
) -> Polytope:
    """Symmetric region when only groups meeting the leader set are sent.

    With leaders u_1 < u_2 < ..., the groups carrying the shared value and
    decoded by user k are those containing some leader u_i <= k (each group
    is anchored at the first leader it contains).  Row k therefore has an
    r_sym coefficient of |{S : S meets {u_1..u_j}}| where u_j is the last
    leader not exceeding k.
    """
    alphas = validate_strengths(alpha)
    lead = tuple(sorted(leaders))
    if not lead or lead[0] != 1:
        raise ValueError(f"the weakest user must lead, got leaders {leaders}")
    groups = enumerate_groups(num_users, group_size)
    prefix_counts = [
        sum(1 for g in groups if set(g) & set(lead[: j + 1]))
        for j in range(len(lead))
    ]
    names = [unicast_name(k) for k in range(1, num_users + 1)] + ["r_sym"]
    rows = []
    for k in range(1, num_users + 1):
        j = sum(1 for u in lead if u <= k)
        count = prefix_counts[j - 1] if j else 0
        coeffs = [ONE if i < k else ZERO for i in range(num_users)]
        coeffs.append(Fraction(count))
        rows.append((coeffs, alphas[k - 1]))
    return Polytope.build(names, rows)


def beta_inner_region_membership(
    num_users: int,
    group_size: int,
    point: GdofPoint,
    beta: Sequence,
    alpha: Sequence,
) -> bool:
    """Does the point fit the superposition levels carved out by `beta`?

    Level k has width beta_{k+1} - beta_k (with beta_{K+1} = alpha_K) and must
    hold r_k plus, for k <= K - sigma + 1, the groups anchored at user k.
    """
    alphas = validate_strengths(alpha)
    betas = validate_power_exponents(beta, alphas)
    levels = list(betas) + [alphas[-1]]
    anchored: dict[int, Fraction] = {}
    for group, value in point.multicast.items():
        anchored[min(group)] = anchored.get(min(group), ZERO) + _frac(value)
    for k in range(1, num_users + 1):
        width = levels[k] - levels[k - 1]
        load = _frac(point.unicast[k - 1])
        if k <= num_users - group_size + 1:
            load += anchored.get(k, ZERO)
        if load > width:
            return False
    return True


def beta_parameterized_polytope(
    num_users: int, group_size: int, alpha: Sequence
) -> Polytope:
    """Joint region over (r, r_S, beta_2..beta_K) before eliminating the betas.

    Eliminating the power exponents by Fourier-Motzkin projection must give
    back `build_region` exactly; that equality is the certification that the
    superposition scheme achieves the whole triangular region.
    """
    alphas = validate_strengths(alpha)
    if not 2 <= group_size <= num_users:
        raise ValueError(
            f"multicast group size must lie in [2, {num_users}], got {group_size}"
        )
    groups = enumerate_groups(num_users, group_size)
    names = [unicast_name(k) for k in range(1, num_users + 1)]
    names += [group_name(g) for g in groups]
    names += beta_names(num_users)
    nvars = len(names)

    def beta_index(k: int) -> int:
        return num_users + len(groups) + (k - 2)

    rows = []
    for k in range(1, num_users + 1):
        coeffs = [ZERO] * nvars
        coeffs[k - 1] = ONE
        if k <= num_users - group_size + 1:
            for gi, g in enumerate(groups):
                if min(g) == k:
                    coeffs[num_users + gi] = ONE
        rhs = ZERO
        if k >= 2:
            coeffs[beta_index(k)] = ONE  # + beta_k   (beta_1 = 0)
        if k + 1 <= num_users:
            coeffs[beta_index(k + 1)] = -ONE  # - beta_{k+1}
        else:
            rhs = alphas[-1]  # beta_{K+1} = alpha_K
        rows.append((coeffs, rhs))
    for k in range(1, num_users):  # beta_{k+1} <= alpha_k
        coeffs = [ZERO] * nvars
        coeffs[beta_index(k + 1)] = ONE
        rows.append((coeffs, alphas[k - 1]))
    return Polytope.build(names, rows)


def beta_names(num_users: int) -> list[str]:
    return [f"beta_{k}" for k in range(2, num_users + 1)]


def rho_beta_polytope(num_users: int, alpha: Sequence) -> Polytope:
    """Aggregated-level variant over (rho_1..rho_K, beta_2..beta_K).

    rho_k stands for the total GDoF carried at level k.  Projecting out the
    betas yields the cumulative rows rho_1 + ... + rho_k <= alpha_k.
    """
    alphas = validate_strengths(alpha)
    names = [f"rho_{k}" for k in range(1, num_users + 1)]
    names += [f"beta_{k}" for k in range(2, num_users + 1)]
    nvars = len(names)

    def beta_index(k: int) -> int:
        return num_users + (k - 2)

    rows = []
    for k in range(1, num_users + 1):
        coeffs = [ZERO] * nvars
        coeffs[k - 1] = ONE
        rhs = ZERO
        if k >= 2:
            coeffs[beta_index(k)] = ONE
        if k + 1 <= num_users:
            coeffs[beta_index(k + 1)] = -ONE
        else:
            rhs = alphas[-1]
        rows.append((coeffs, rhs))
    for k in range(1, num_users):
        coeffs = [ZERO] * nvars
        coeffs[beta_index(k + 1)] = ONE
        rows.append((coeffs, alphas[k - 1]))
    return Polytope.build(names, rows)
