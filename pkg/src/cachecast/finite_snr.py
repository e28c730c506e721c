"""Finite-power rate regions and constant-gap certificates.

At finite nominal power P the layered transmission loses at most one bit per
decoding stage, so the cumulative rows of the GDoF region turn into

    sum_{i<=k} R_i + sum_{S: min(S)<=k} R_S <= (alpha_k log2 P - k)^+,

while the plain cut-set outer bound keeps the full log2(1 + P^alpha_k) on the
right.  The two descriptions pinch the capacity region to within 2 bits per
dimension, and the certificate implemented here checks exactly that statement
pointwise: push a boundary point of the inner region up by 2 bits in every
coordinate and it must fall outside the outer region.  The delay-rate variant
additionally divides the delivery time by the converse constant 2.01.

Rates are bits per channel use (all logs base 2).  Unlike the GDoF polytopes
everything here is double precision; comparisons use a 1e-9 tolerance.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import IO, Sequence

import numpy as np

from .combinatorics import enumerate_groups, lower_convex_envelope, multicast_load_sequence
from .regions import group_name, unicast_name, validate_power_exponents
from .tradeoff import SystemConfig

TOL = 1e-9
GAP_BITS = 2.0
DELAY_FACTOR = 2.01


@dataclass(frozen=True)
class RateRegion:
    """Float-valued row system <coeffs, R> <= rhs over named nonnegative rates."""

    variables: tuple[str, ...]
    coeffs: np.ndarray
    rhs: np.ndarray
    degenerate: bool = False  # flags the P <= 1 regime (zero region)

    def lhs(self, point: Sequence[float]) -> np.ndarray:
        return self.coeffs @ np.asarray(point, dtype=float)

    def contains(self, point: Sequence[float], tol: float = TOL) -> bool:
        p = np.asarray(point, dtype=float)
        return bool(np.all(p >= -tol) and np.all(self.lhs(p) <= self.rhs + tol))

    def tight_rows(self, point: Sequence[float], tol: float = TOL) -> list[int]:
        slack = self.rhs - self.lhs(point)
        return [i for i, s in enumerate(slack) if abs(s) <= tol]

    def violated_rows(self, point: Sequence[float], tol: float = TOL) -> list[int]:
        slack = self.rhs - self.lhs(point)
        return [i for i, s in enumerate(slack) if s < -tol]


def _strengths(alpha: Sequence) -> np.ndarray:
    vals = np.asarray([float(a) for a in alpha], dtype=float)
    if np.any(np.diff(vals) < 0) or vals[0] <= 0 or abs(vals[-1] - 1.0) > TOL:
        raise ValueError(f"channel strengths must satisfy 0 < a_1 <= ... <= a_K = 1, got {vals}")
    return vals


def _message_names(num_users: int, group_size: int) -> tuple[list[str], list]:
    groups = enumerate_groups(num_users, group_size)
    names = [unicast_name(k) for k in range(1, num_users + 1)]
    names += [group_name(g) for g in groups]
    return names, groups


def beta_rate_region_rows(
    num_users: int, group_size: int, power: float, beta: Sequence, alpha: Sequence
) -> RateRegion:
    """Per-level achievable rates for one power-exponent choice.

    Level k has rhs ((beta_{k+1} - beta_k) log2 P - 1)^+ and carries R_k plus,
    below the multicast cutoff, the groups anchored at user k.
    """
    betas = [float(b) for b in validate_power_exponents(beta, alpha)]
    alphas = _strengths(alpha)
    names, groups = _message_names(num_users, group_size)
    levels = betas + [float(alphas[-1])]
    degenerate = power <= 1
    log_p = math.log2(power) if not degenerate else 0.0
    coeffs = []
    rhs = []
    for k in range(1, num_users + 1):
        row = np.zeros(len(names))
        row[k - 1] = 1.0
        if k <= num_users - group_size + 1:
            for gi, g in enumerate(groups):
                if min(g) == k:
                    row[num_users + gi] = 1.0
        coeffs.append(row)
        rhs.append(max(0.0, (levels[k] - levels[k - 1]) * log_p - 1.0))
    return RateRegion(
        variables=tuple(names),
        coeffs=np.array(coeffs),
        rhs=np.array(rhs),
        degenerate=degenerate,
    )


def inner_rate_region(
    num_users: int, group_size: int, alpha: Sequence, power: float
) -> RateRegion:
    """Explicit achievable region: cumulative rows with rhs (a_k log2 P - k)^+."""
    alphas = _strengths(alpha)
    names, groups = _message_names(num_users, group_size)
    degenerate = power <= 1
    log_p = math.log2(power) if not degenerate else 0.0
    coeffs = []
    rhs = []
    for k in range(1, num_users + 1):
        row = np.zeros(len(names))
        row[:k] = 1.0
        for gi, g in enumerate(groups):
            if min(g) <= k:
                row[num_users + gi] = 1.0
        coeffs.append(row)
        rhs.append(max(0.0, alphas[k - 1] * log_p - k) if not degenerate else 0.0)
    return RateRegion(
        variables=tuple(names),
        coeffs=np.array(coeffs),
        rhs=np.array(rhs),
        degenerate=degenerate,
    )


def outer_rate_region(
    num_users: int, group_size: int, alpha: Sequence, power: float
) -> RateRegion:
    """Cut-set outer bound: same rows with rhs log2(1 + P^{a_k})."""
    alphas = _strengths(alpha)
    inner = inner_rate_region(num_users, group_size, alpha, power)
    rhs = np.array([math.log2(1.0 + power ** a) for a in alphas])
    return RateRegion(
        variables=inner.variables,
        coeffs=inner.coeffs,
        rhs=rhs,
        degenerate=power <= 1,
    )


def sample_boundary_point(region: RateRegion, rng: np.random.Generator) -> np.ndarray:
    """Scale a random nonnegative direction until the first row goes tight."""
    direction = rng.random(len(region.variables)) + 1e-3
    dots = region.coeffs @ direction
    scales = [r / d for r, d in zip(region.rhs, dots) if d > TOL]
    t = max(0.0, min(scales)) if scales else 0.0
    return t * direction


def constant_gap_certificate(
    num_users: int,
    group_size: int,
    alpha: Sequence,
    power: float,
    boundary: Sequence[float],
) -> bool:
    """Does boundary + 2 bits per dimension escape the outer region?

    `boundary` must lie on the boundary of the inner region (at least one row
    tight within 1e-9); anything else is a usage error, not a failed
    certificate.
    """
    inner = inner_rate_region(num_users, group_size, alpha, power)
    outer = outer_rate_region(num_users, group_size, alpha, power)
    point = np.asarray(boundary, dtype=float)
    if not inner.contains(point):
        raise ValueError("certificate point must lie inside the inner region")
    if not inner.tight_rows(point):
        raise ValueError("certificate point must lie on the inner boundary")
    shifted = point + GAP_BITS
    return bool(outer.violated_rows(shifted))


def delay_rate_inner_region(delay: float, config: SystemConfig) -> RateRegion:
    """Unicast rates achievable alongside content delivered in `delay`.

    Row k reserves 1/delay of the enveloped coded load inside the effective
    level budget (alpha_k log2 P - k)^+.
    """
    if delay <= 0:
        raise ValueError(f"delay must be positive, got {delay}")
    alphas = _strengths(config.alpha)
    degenerate = config.power <= 1
    log_p = math.log2(config.power) if not degenerate else 0.0
    K = config.num_users
    names = [unicast_name(k) for k in range(1, K + 1)]
    coeffs = []
    rhs = []
    for k in range(1, K + 1):
        served = min(k, config.num_files)
        load = float(
            lower_convex_envelope(multicast_load_sequence(K, served), config.cache_budget)
        )
        row = np.zeros(K)
        row[:k] = 1.0
        coeffs.append(row)
        base = max(0.0, alphas[k - 1] * log_p - k) if not degenerate else 0.0
        rhs.append(base - load / delay)
    return RateRegion(
        variables=tuple(names),
        coeffs=np.array(coeffs),
        rhs=np.array(rhs),
        degenerate=degenerate,
    )


def delay_rate_gap_certificate(
    delay: float, config: SystemConfig, boundary: Sequence[float]
) -> bool:
    """Rates + 2 bits with delay / 2.01 must break the converse rows.

    The converse keeps every achievable tuple below
    alpha_k log2 P + 1 - load_k / (2.01 * delay'') per prefix k; with
    delay'' = delay / 2.01 the reserved load term is load_k / delay again.
    """
    region = delay_rate_inner_region(delay, config)
    point = np.asarray(boundary, dtype=float)
    if not region.contains(point):
        raise ValueError("certificate point must lie inside the delay-rate region")
    if not region.tight_rows(point):
        raise ValueError("certificate point must lie on the delay-rate boundary")
    alphas = _strengths(config.alpha)
    log_p = math.log2(config.power)
    K = config.num_users
    shifted = point + GAP_BITS
    for k in range(1, K + 1):
        served = min(k, config.num_files)
        load = float(
            lower_convex_envelope(multicast_load_sequence(K, served), config.cache_budget)
        )
        lhs = float(np.sum(shifted[:k])) + load / delay
        if lhs > alphas[k - 1] * log_p + 1.0 - TOL:
            return True
    return False


def symmetric_delay(rates: Sequence[float], snr: float, mu: float, num_users: int) -> float:
    """Equal-SNR delivery delay per content bit with unicast rates running.

    K(1 - mu)/(1 + K mu) channel uses per bit at the full channel rate, slowed
    by whatever rate the unicast messages consume; infinite once the unicast
    sum meets log2(1 + SNR).
    """
    if snr <= 0:
        raise ValueError(f"SNR must be positive, got {snr}")
    if not 0 <= mu <= 1:
        raise ValueError(f"mu must lie in [0, 1], got {mu}")
    load = num_users * (1.0 - mu) / (1.0 + num_users * mu)
    if load == 0:
        return 0.0
    headroom = math.log2(1.0 + snr) - float(np.sum(np.asarray(rates, dtype=float)))
    if headroom <= 0:
        return math.inf
    return load / headroom


def two_user_exact_rates(q: float, alpha: Sequence, power: float) -> tuple[float, float]:
    """K = 2 exact superposition rates for one power split q in [0, 1].

    Returns (A, B): A caps R_12 + R_1, B caps R_2, for SNR_k = P^{alpha_k}.
    """
    if not 0 <= q <= 1:
        raise ValueError(f"power split must lie in [0, 1], got {q}")
    alphas = _strengths(alpha)
    snr1, snr2 = power ** alphas[0], power ** alphas[1]
    a = math.log2(1.0 + q * snr1 / (1.0 + (1.0 - q) * snr1))
    b = math.log2(1.0 + (1.0 - q) * snr2)
    return a, b


def write_region_csv(region: RateRegion, stream: IO[str]) -> None:
    """Rows as CSV: one line per inequality, coefficients then rhs."""
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(list(region.variables) + ["rhs"])
    for row, rhs in zip(region.coeffs, region.rhs):
        writer.writerow([f"{v:.12g}" for v in row] + [f"{rhs:.12g}"])
