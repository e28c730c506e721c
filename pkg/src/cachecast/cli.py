"""Command-line front end.

Subcommands
-----------
gndt          delivery-time curves (tau_ub, tau_ms, tau_lb) over a mu grid
sweep-memory  same sweep plus the joint two-set delivery column
holes         bottleneck user, hole inequalities and vertex invariance checks
region        dump a GDoF region as JSON (rational rows)
verify        end-to-end caching sweep + region-equality certification
finite-snr    finite-power region rows (CSV) and constant-gap certificates

Flags can come from a JSON config file (--config); explicit flags win.
Numbers print with 12 significant digits; --exact adds p/q columns.
Exit codes: 0 success, 1 verification failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from fractions import Fraction

import numpy as np

from . import caching, finite_snr, regions, tradeoff
from .polytope import regions_equal, eliminate, prune, vertices
from .tradeoff import SystemConfig

USAGE_ERROR = 2
VERIFY_ERROR = 1


def _fmt(x) -> str:
    if x == math.inf:
        return "inf"
    return f"{float(x):.12g}"


def _fmt_exact(x) -> str:
    if x == math.inf:
        return "inf"
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def _parse_fraction(text: str) -> Fraction:
    return Fraction(str(text))


def _parse_list(text) -> list[Fraction]:
    if isinstance(text, (list, tuple)):
        return [_parse_fraction(v) for v in text]
    return [_parse_fraction(tok) for tok in str(text).split(",") if tok]


def _parse_grid(text) -> list[Fraction]:
    start, end, step = (_parse_fraction(t) for t in str(text).split(":"))
    if step <= 0 or end < start:
        raise ValueError(f"bad grid specification {text!r}")
    grid = []
    value = start
    while value <= end:
        grid.append(value)
        value += step
    return grid


def _merge_config(args: argparse.Namespace) -> argparse.Namespace:
    """Fill unset flags from the JSON config file, if one was given."""
    if not getattr(args, "config", None):
        return args
    with open(args.config) as fh:
        stored = json.load(fh)
    for key, value in stored.items():
        attr = key.replace("-", "_")
        if getattr(args, attr, None) is None:
            setattr(args, attr, value)
    return args


def _system_config(args) -> SystemConfig:
    alpha = _parse_list(args.alpha)
    return SystemConfig(
        num_users=int(args.K),
        num_files=int(args.N),
        mu=_parse_fraction(args.mu if args.mu is not None else 0),
        alpha=tuple(alpha),
        power=float(args.P) if args.P is not None else 100.0,
    )


def _open_out(args):
    if getattr(args, "out", None):
        return open(args.out, "w", newline="")
    return sys.stdout


def _emit_table(args, header: list[str], rows: list[list[str]]) -> None:
    out = _open_out(args)
    try:
        if (args.format or "csv") == "json":
            records = [dict(zip(header, row)) for row in rows]
            out.write(json.dumps(records, indent=2, sort_keys=True) + "\n")
        else:
            writer = csv.writer(out, lineterminator="\n")
            writer.writerow(header)
            writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()


def _mu_values(args) -> list[Fraction]:
    if getattr(args, "mu_grid", None):
        return _parse_grid(args.mu_grid)
    if args.mu is not None:
        return [_parse_fraction(args.mu)]
    raise ValueError("either --mu or --mu-grid is required")


def _tradeoff_columns(config: SystemConfig, r, with_joint: bool):
    values = {
        "tau_ub": tradeoff.gndt_ub(config, r),
        "tau_ms": tradeoff.gndt_memory_sharing(config, r),
        "tau_lb": tradeoff.gndt_lower_bound(config, r),
    }
    if with_joint:
        values["tau_joint"] = (
            tradeoff.gndt_joint_two_set(config, r)
            if not config.integer_budget
            else values["tau_ub"]
        )
    return values


def cmd_gndt(args) -> int:
    r = _parse_list(args.r) if args.r else None
    base = _system_config(args)
    header = ["mu", "tau_ub", "tau_ms", "tau_lb"]
    if args.exact:
        header += ["tau_ub_exact", "tau_ms_exact", "tau_lb_exact"]
    rows = []
    for mu in _mu_values(args):
        config = SystemConfig(base.num_users, base.num_files, mu, base.alpha, base.power)
        vals = _tradeoff_columns(config, r, with_joint=False)
        row = [_fmt(mu), _fmt(vals["tau_ub"]), _fmt(vals["tau_ms"]), _fmt(vals["tau_lb"])]
        if args.exact:
            row += [_fmt_exact(vals["tau_ub"]), _fmt_exact(vals["tau_ms"]), _fmt_exact(vals["tau_lb"])]
        rows.append(row)
    _emit_table(args, header, rows)
    return 0


def cmd_sweep_memory(args) -> int:
    r = _parse_list(args.r) if args.r else None
    base = _system_config(args)
    header = ["mu", "tau_ub", "tau_joint", "tau_ms", "tau_lb"]
    rows = []
    for mu in _mu_values(args):
        config = SystemConfig(base.num_users, base.num_files, mu, base.alpha, base.power)
        vals = _tradeoff_columns(config, r, with_joint=True)
        rows.append(
            [_fmt(mu), _fmt(vals["tau_ub"]), _fmt(vals["tau_joint"]), _fmt(vals["tau_ms"]), _fmt(vals["tau_lb"])]
        )
    _emit_table(args, header, rows)
    return 0


def cmd_holes(args) -> int:
    config = _system_config(args)
    star = tradeoff.bottleneck_user(config)
    region = tradeoff.topological_hole_region(config)
    base_tau = tradeoff.gndt_ub(config)
    checks = []
    all_ok = True
    for vertex in vertices(region):
        tau = tradeoff.gndt_ub(config, vertex)
        ok = tau == base_tau
        all_ok &= ok
        checks.append(
            {
                "vertex": [_fmt(v) for v in vertex],
                "tau": _fmt(tau),
                "invariant": ok,
            }
        )
    doc = {
        "bottleneck_user": star,
        "tau_no_unicast": _fmt(base_tau),
        "region": json.loads(region.to_json()),
        "vertex_checks": checks,
        "all_invariant": all_ok,
    }
    out = _open_out(args)
    try:
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0 if all_ok else VERIFY_ERROR


def cmd_region(args) -> int:
    alpha = tuple(_parse_list(args.alpha))
    K = int(args.K)
    sigma = int(args.sigma)
    if args.kind == "full":
        poly = regions.build_region(K, sigma, alpha)
    elif args.kind == "symmetric":
        poly = regions.symmetric_projection(K, sigma, alpha, int(args.s or K))
    elif args.kind == "missing":
        if not args.leaders:
            raise ValueError("--leaders is required for --kind missing")
        leaders = [int(v) for v in str(args.leaders).split(",")]
        poly = regions.build_missing_message_region(K, sigma, alpha, leaders)
    elif args.kind == "two-multicast":
        if not args.gamma:
            raise ValueError("--gamma is required for --kind two-multicast")
        poly = regions.build_two_multicast_symmetric(
            K, sigma, int(args.gamma), alpha, int(args.s or K)
        )
    else:
        raise ValueError(f"unknown region kind {args.kind!r}")
    out = _open_out(args)
    try:
        out.write(poly.to_json() + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _verify_caching(args, records_out) -> tuple[int, int]:
    checked = failures = 0
    seed = int(args.seed or 0)
    file_bits = int(args.B) if getattr(args, "B", None) else None
    if getattr(args, "K", None) and getattr(args, "N", None):
        # one explicit configuration, optionally a single demand tuple
        K, N = int(args.K), int(args.N)
        if args.mu is not None:
            budget = int(K * Fraction(str(args.mu)))
            splits = [budget]
        else:
            splits = list(range(0, K + 1))
        demands = None
        if getattr(args, "d", None):
            demands = [tuple(int(v) for v in str(args.d).split(","))]
        sweeps = [
            caching.sweep_demands(K, N, split, file_bits, seed=seed, demands=demands)
            for split in splits
        ]
    else:
        max_k = int(args.max_K or 4)
        max_n = int(args.max_N or 4)
        sweeps = [
            caching.sweep_demands(K, N, split, file_bits, seed=seed)
            for K in range(1, max_k + 1)
            for N in range(1, max_n + 1)
            for split in range(0, K + 1)
        ]
    for records in sweeps:
        for record in records:
            checked += 1
            failures += 0 if record["pass"] else 1
            records_out.write(json.dumps(record, sort_keys=True) + "\n")
    if args.inject_fault:
        # one bit flipped in one payload: the sweep must report the failure
        ok = caching.end_to_end_verify(3, 3, 1, d=(1, 2, 3), seed=seed, corrupt_payload=0)
        checked += 1
        failures += 0 if ok else 1
        records_out.write(
            json.dumps(
                {"K": 3, "N": 3, "Kmu": 1, "d": [1, 2, 3], "fault": True, "pass": ok},
                sort_keys=True,
            )
            + "\n"
        )
    return checked, failures


def _verify_region_equality(args) -> tuple[int, int]:
    """Certify that eliminating the power exponents reproduces the region."""
    rng = np.random.default_rng(int(args.seed or 0))
    checked = failures = 0
    trials = int(args.region_trials or 3)
    for K in (2, 3, 4):
        for sigma in range(2, K + 1):
            for _ in range(trials):
                denom = int(rng.integers(8, 40))
                cuts = sorted(int(rng.integers(1, denom)) for _ in range(K - 1))
                alpha = tuple(Fraction(c, denom) for c in cuts) + (Fraction(1),)
                theorem = regions.build_region(K, sigma, alpha)
                system = regions.beta_parameterized_polytope(K, sigma, alpha)
                projected = prune(eliminate(system, regions.beta_names(K)))
                checked += 1
                if not regions_equal(projected, theorem):
                    failures += 1
    return checked, failures


def cmd_verify(args) -> int:
    out = _open_out(args)
    try:
        cache_checked, cache_failed = _verify_caching(args, out)
    finally:
        if out is not sys.stdout:
            out.close()
    region_checked, region_failed = _verify_region_equality(args)
    summary = {
        "caching": {"checked": cache_checked, "failed": cache_failed},
        "region_equality": {"checked": region_checked, "failed": region_failed},
        "pass": cache_failed == 0 and region_failed == 0,
    }
    print(json.dumps(summary, indent=2, sort_keys=True))
    return 0 if summary["pass"] else VERIFY_ERROR


def cmd_finite_snr(args) -> int:
    alpha = tuple(_parse_list(args.alpha))
    K = int(args.K)
    sigma = int(args.sigma)
    power = float(args.P if args.P is not None else 2**20)
    inner = finite_snr.inner_rate_region(K, sigma, alpha, power)
    outer = finite_snr.outer_rate_region(K, sigma, alpha, power)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["region"] + list(inner.variables) + ["rhs"])
    for name, reg in (("inner", inner), ("outer", outer)):
        for row, rhs in zip(reg.coeffs, reg.rhs):
            writer.writerow([name] + [f"{v:.12g}" for v in row] + [f"{rhs:.12g}"])

    rng = np.random.default_rng(int(args.seed or 0))
    count = int(args.certificates or 20)
    passed = 0
    cert_rows = []
    for i in range(count):
        point = finite_snr.sample_boundary_point(inner, rng)
        ok = finite_snr.constant_gap_certificate(K, sigma, alpha, power, point)
        passed += 1 if ok else 0
        cert_rows.append([f"certificate_{i}", "pass" if ok else "fail"])
    writer.writerow([])
    writer.writerow(["certificate", "outcome"])
    writer.writerows(cert_rows)

    out = _open_out(args)
    try:
        out.write(buf.getvalue())
    finally:
        if out is not sys.stdout:
            out.close()
    return 0 if passed == count else VERIFY_ERROR


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cachecast",
        description="coded caching delivery analysis for layered broadcast channels",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, need_files=True):
        p.add_argument("--config", help="JSON file with default flag values")
        p.add_argument("--K", type=int, help="number of users")
        if need_files:
            p.add_argument("--N", type=int, help="number of library files")
        p.add_argument("--alpha", help="channel strengths a1,a2,...,1")
        p.add_argument("--P", help="nominal power (> 1)")
        p.add_argument("--seed", type=int, help="RNG seed")
        p.add_argument("--out", help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), help="table format")

    p = sub.add_parser("gndt", help="delivery-time curves over a mu grid")
    common(p)
    p.add_argument("--mu", help="normalized cache size in [0, 1]")
    p.add_argument("--mu-grid", dest="mu_grid", help="grid start:end:step")
    p.add_argument("--r", help="unicast GDoF tuple r1,r2,...")
    p.add_argument("--exact", action="store_true", help="add exact p/q columns")
    p.set_defaults(func=cmd_gndt)

    p = sub.add_parser("sweep-memory", help="gndt sweep incl. joint two-set column")
    common(p)
    p.add_argument("--mu", help="normalized cache size in [0, 1]")
    p.add_argument("--mu-grid", dest="mu_grid", help="grid start:end:step")
    p.add_argument("--r", help="unicast GDoF tuple r1,r2,...")
    p.set_defaults(func=cmd_sweep_memory)

    p = sub.add_parser("holes", help="no-cost unicast region at minimum delivery time")
    common(p)
    p.add_argument("--mu", help="normalized cache size in [0, 1]")
    p.set_defaults(func=cmd_holes)

    p = sub.add_parser("region", help="dump a GDoF region as JSON")
    common(p, need_files=False)
    p.add_argument("--sigma", type=int, required=True, help="multicast group size")
    p.add_argument("--kind", default="full", choices=("full", "symmetric", "missing", "two-multicast"))
    p.add_argument("--s", type=int, help="coverage parameter for symmetric kinds")
    p.add_argument("--gamma", type=int, help="second group size for two-multicast")
    p.add_argument("--leaders", help="leader users u1,u2,... for kind=missing")
    p.set_defaults(func=cmd_region)

    p = sub.add_parser("verify", help="caching + region-equality verification suites")
    common(p)
    p.add_argument("--mu", help="restrict the caching sweep to one cache size")
    p.add_argument("--B", help="file size in bits (default 8 bits per subfile)")
    p.add_argument("--d", help="explicit demand tuple d1,d2,... (default: all tuples)")
    p.add_argument("--max-K", dest="max_K", type=int, help="largest user count (default 4)")
    p.add_argument("--max-N", dest="max_N", type=int, help="largest file count (default 4)")
    p.add_argument("--region-trials", dest="region_trials", type=int, help="random strengths per (K, sigma)")
    p.add_argument("--inject-fault", action="store_true", help="corrupt one payload; the run must fail")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("finite-snr", help="finite-power regions and gap certificates")
    common(p, need_files=False)
    p.add_argument("--sigma", type=int, required=True, help="multicast group size")
    p.add_argument("--certificates", type=int, help="boundary points to certify (default 20)")
    p.set_defaults(func=cmd_finite_snr)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        args = _merge_config(args)
        if args.command != "verify":
            if getattr(args, "K", None) is None:
                raise ValueError("--K is required (flag or config file)")
            if getattr(args, "alpha", None) is None:
                raise ValueError("--alpha is required (flag or config file)")
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
