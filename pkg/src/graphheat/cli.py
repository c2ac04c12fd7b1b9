"""Command-line harness: graph generation, verification suites, and kernel
dumps, all reproducible from (graph file, flags, seed).

Exit codes: 0 all checks pass, 1 a check failed, 2 usage/format/hypothesis
error.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
import zlib

import numpy as np

from . import estimates, reports, semigroup, walk
from .graph import (FAMILIES, MEASURE_MODES, GraphFormatError, generate,
                    load_graph, save_graph)
from .calculus import laplacian, sqrt_identity_residual

SUITES = ("gradient", "heat-gradient", "previous", "harnack",
          "kernel-bounds", "volume")

DEFAULT_TIMES = (0.1, 1.0, 10.0)
DEFAULT_N_FUNCS = 20


def _suite_rng(root_seed: int, suite: str) -> np.random.Generator:
    # per-suite sub-seed derived from the root seed and the suite name
    return np.random.default_rng((root_seed, zlib.crc32(suite.encode())))


def _parse_times(spec: str):
    try:
        times = tuple(float(s) for s in spec.split(","))
    except ValueError:
        raise SystemExit(f"error: bad time list {spec!r}")
    if not times:
        raise SystemExit("error: empty time list")
    return times


def _positive_times(times):
    return [t for t in times if t > 0]


# -- generate ------------------------------------------------------------------

def cmd_generate(args) -> int:
    try:
        g = generate(args.family, n=args.n, rows=args.rows, cols=args.cols,
                     p=args.p, w_lo=args.wmin, w_hi=args.wmax,
                     measure_mode=args.measure, seed=args.seed)
    except (ValueError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    save_graph(args.out, g)
    print(f"wrote {args.out}: {g.n} vertices, {g.num_edges} edges, "
          f"measure={g.measure_mode}")
    return 0


# -- verify --------------------------------------------------------------------

def _mu_is_deg(g) -> bool:
    return bool(np.allclose(g.mu, g.degrees, rtol=1e-12, atol=0.0))


def _run_suite(g, suite, times, seed, tol, n_funcs):
    rng = _suite_rng(seed, suite)
    out = []
    pos_times = _positive_times(times)
    if suite == "gradient":
        for _ in range(n_funcs):
            u = estimates.sample_positive_function(g, rng)
            out.extend(estimates.gradient_estimate(g, u))
            res = sqrt_identity_residual(g, u)
            scale = max(1.0, float(np.max(np.abs(laplacian(g, u)))))
            out.append(reports.BoundReport(
                "sqrt_identity", "max_residual",
                float(np.max(np.abs(res))), 1e-12 * scale,
                abs_tol=0.0, rel_tol=0.0))
    elif suite == "heat-gradient":
        for _ in range(n_funcs):
            u0 = estimates.sample_positive_function(g, rng)
            out.extend(estimates.heat_gradient_estimate(g, u0, pos_times))
    elif suite == "previous":
        for _ in range(n_funcs):
            u = estimates.sample_positive_function(g, rng)
            out.extend(estimates.prior_gradient_estimate(g, u))
    elif suite == "harnack":
        grid = pos_times if len(pos_times) >= 2 else (0.1, 1.0)
        for _ in range(n_funcs):
            u0 = estimates.sample_positive_function(g, rng)
            out.extend(estimates.verify_harnack(g, u0, grid,
                                                seed=int(rng.integers(2**32))))
    elif suite == "kernel-bounds":
        for t in pos_times:
            kernel = semigroup.heat_kernel(g, t, tol=tol)
            out.extend(estimates.verify_kernel_upper(g, t, kernel=kernel))
            out.extend(estimates.verify_kernel_lower(g, t, kernel=kernel))
            out.extend(estimates.verify_diagonal_lower(g, t, kernel=kernel))
    elif suite == "volume":
        out.extend(estimates.verify_volume_growth(g, pos_times))
    else:
        raise ValueError(f"unknown suite {suite!r}")
    return out


def cmd_verify(args) -> int:
    try:
        g = load_graph(args.graph)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    names = args.suite.split(",")
    if "all" in names:
        names = list(SUITES)
        skip_gated = True
    else:
        skip_gated = False
    bad = [s for s in names if s not in SUITES]
    if bad:
        print(f"error: unknown suite(s) {bad}", file=sys.stderr)
        return 2
    times = _parse_times(args.t)
    gated_ok = g.weights_symmetric and _mu_is_deg(g)
    all_reports = []
    skipped = []
    for suite in names:
        if suite in ("kernel-bounds", "volume") and not gated_ok:
            if skip_gated:
                skipped.append(suite)
                continue
            why = ("symmetric edge weights" if not g.weights_symmetric
                   else "mu(x) = deg(x)")
            print(f"error: suite {suite!r} requires {why}", file=sys.stderr)
            return 2
        try:
            all_reports.extend(_run_suite(g, suite, times, args.seed,
                                          args.tol, args.n_funcs))
        except estimates.HypothesisError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2

    config = {"graph": args.graph, "suites": names, "skipped": skipped,
              "times": list(times), "seed": args.seed, "tol": args.tol,
              "n_funcs": args.n_funcs}
    if args.out:
        if args.format == "json":
            reports.write_jsonl(args.out, all_reports, config=config)
        else:
            _write_reports_csv(args.out, all_reports)
    summary = reports.summarize(all_reports)
    ok = True
    for check, s in sorted(summary.items()):
        status = "pass" if s["n_pass"] == s["n"] else "FAIL"
        print(f"{check}: {s['n_pass']}/{s['n']} {status} "
              f"(min slack {s['min_slack']:.3e})")
        ok = ok and s["n_pass"] == s["n"]
    for suite in skipped:
        print(f"{suite}: skipped (hypotheses not met)")
    if not ok:
        failing = next(r for r in all_reports if not r.passed)
        print(f"first failure: {failing.check} at {failing.site}",
              file=sys.stderr)
        return 1
    return 0


def _write_reports_csv(path, all_reports) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(["check", "site", "lhs", "rhs", "slack", "pass",
                    "abs_tol", "rel_tol"])
        for r in all_reports:
            w.writerow([r.check, json.dumps(r.site), r.lhs, r.rhs, r.slack,
                        r.passed, r.abs_tol, r.rel_tol])


# -- kernel --------------------------------------------------------------------

def cmd_kernel(args) -> int:
    try:
        g = load_graph(args.graph)
    except (OSError, GraphFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    times = _parse_times(args.t)
    rows = []
    consistent = True
    for t in times:
        kernel = semigroup.heat_kernel(g, t, tol=args.tol)
        if args.mc:
            for i, x in enumerate(g.ids):
                sub_seed = args.seed ^ zlib.crc32(f"{t}:{x}".encode())
                est = walk.simulate(g, x, t, args.mc, seed=sub_seed)
                flags = est.consistent_with(kernel.matrix[i])
                consistent = consistent and bool(flags.all())
                p = est.p_hat
                hw = est.half_width
                for j, y in enumerate(g.ids):
                    rows.append([t, x, y, kernel.matrix[i, j],
                                 p[j], hw[j], args.mc, sub_seed])
        else:
            rows.extend(list(r) for r in semigroup.kernel_rows_csv(kernel))
    header = ["t", "x", "y", "p"]
    if args.mc:
        header += ["p_hat", "half_width", "n_walks", "seed"]
    out = open(args.out, "w", newline="", encoding="utf-8") if args.out else sys.stdout
    try:
        w = csv.writer(out)
        w.writerow(header)
        w.writerows(rows)
    finally:
        if args.out:
            out.close()
    if args.mc:
        verdict = "consistent" if consistent else "INCONSISTENT"
        print(f"monte-carlo vs series: {verdict} (3 sigma)",
              file=sys.stderr)
        return 0 if consistent else 1
    return 0


# -- entry point -----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="graphheat", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("generate", help="write a graph JSON file")
    p_gen.add_argument("--family", required=True, choices=FAMILIES)
    p_gen.add_argument("--n", type=int)
    p_gen.add_argument("--rows", type=int)
    p_gen.add_argument("--cols", type=int)
    p_gen.add_argument("--p", type=float)
    p_gen.add_argument("--wmin", type=float, default=1.0)
    p_gen.add_argument("--wmax", type=float, default=1.0)
    p_gen.add_argument("--measure", default="unit", choices=MEASURE_MODES)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)
    p_gen.set_defaults(func=cmd_generate)

    p_ver = sub.add_parser("verify", help="run verification suites")
    p_ver.add_argument("--graph", required=True)
    p_ver.add_argument("--suite", default="all",
                       help="comma list of " + ",".join(SUITES) + " or 'all'")
    p_ver.add_argument("--t", default=",".join(str(t) for t in DEFAULT_TIMES))
    p_ver.add_argument("--seed", type=int, default=0)
    p_ver.add_argument("--tol", type=float, default=1e-10)
    p_ver.add_argument("--n-funcs", type=int, default=DEFAULT_N_FUNCS)
    p_ver.add_argument("--out")
    p_ver.add_argument("--format", default="json", choices=("json", "csv"))
    p_ver.set_defaults(func=cmd_verify)

    p_ker = sub.add_parser("kernel", help="dump heat kernel values as CSV")
    p_ker.add_argument("--graph", required=True)
    p_ker.add_argument("--t", default="1.0")
    p_ker.add_argument("--tol", type=float, default=1e-10)
    p_ker.add_argument("--mc", type=int, default=0,
                       help="append Monte Carlo estimates with this many walks")
    p_ker.add_argument("--seed", type=int, default=0)
    p_ker.add_argument("--out")
    p_ker.set_defaults(func=cmd_kernel)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
