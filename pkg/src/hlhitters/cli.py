"""Command-line harness: verify, bench, demo, collision, generate."""

from __future__ import annotations

import argparse
import sys

from .collision import CollisionBoundParams, compute_collision_bound
from .core import HLHitters
from .verify import MUTANTS, verify_workload
from .window import SlidingWindow
from .workload import DISTRIBUTIONS, parse_workload, write_stream

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        values = [int(float(part)) if "e" in part.lower() else int(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty list")
    return values


def _count(text: str) -> int:
    # accepts 1000000 or 1e6
    try:
        value = float(text) if "e" in text.lower() else int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value != int(value):
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    return int(value)


def _dist_list(text: str) -> list[str]:
    # split on commas outside parentheses: "zipf(1.0),uniform"
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
            continue
        depth += ch == "("
        depth -= ch == ")"
        cur += ch
    out.append(cur.strip())
    return [d for d in out if d]


def _workloads(dists, flows, n, seed):
    seen = {}
    for dist in dists:
        for f in flows:
            try:
                spec = parse_workload(dist, flows=f, length=n, seed=seed)
            except ValueError as exc:
                raise UsageError(str(exc)) from None
            if spec.distribution in ("constant", "all-distinct"):
                spec = parse_workload(dist, flows=1, length=n, seed=seed)
            seen.setdefault(spec, None)
    return list(seen)


def cmd_verify(args) -> int:
    specs = _workloads(_dist_list(args.dist), args.flows, args.n, args.seed)
    factory = MUTANTS[args.mutant] if args.mutant else HLHitters
    failed = 0
    for q in args.q:
        if q < 1:
            raise UsageError(f"q must be >= 1, got {q}")
        for spec in specs:
            result = verify_workload(spec, q, hitters_factory=factory, shrink=not args.no_shrink)
            status = "PASS" if result.passed else "FAIL"
            print(f"{status} q={q} {result.workload} ops={result.ops}", flush=True)
            if not result.passed:
                failed += 1
                print(result.mismatch.describe(), flush=True)
    total = len(args.q) * len(specs)
    print(f"{total - failed}/{total} passed")
    return EXIT_MISMATCH if failed else EXIT_OK


def cmd_bench(args) -> int:
    from .bench import run_bench, write_csv

    dists = _dist_list(args.dist)
    if len(dists) != 1:
        raise UsageError("bench takes a single distribution")
    try:
        spec = parse_workload(dists[0])
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if min(args.q) < 1 or min(args.flows) < 1 or args.n < 1 or args.runs < 1:
        raise UsageError("--q, --flows, --n and --runs must all be >= 1")

    def progress(rec):
        if not args.quiet:
            print(
                f"{rec.algorithm:>10} q={rec.q} flows={rec.flows}: "
                f"{rec.mean_ns_per_item:.1f} +- {rec.std_ns_per_item:.1f} ns/item",
                file=sys.stderr,
                flush=True,
            )

    records = run_bench(
        args.q,
        args.flows,
        spec.distribution,
        args.n,
        args.runs,
        seed=args.seed,
        alpha=spec.alpha,
        algorithms=args.algorithms,
        engine=args.engine,
        progress=progress,
    )
    if args.out:
        with open(args.out, "w", newline="") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    return EXIT_OK


def _format_entries(entries) -> str:
    return ", ".join(f"{e.item_set} ({e.count})" for e in entries) or "-"


def cmd_demo(args, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    if args.q < 1 or args.k < 0 or args.report_every < 1:
        raise UsageError("--q and --report-every must be >= 1, --k must be >= 0")
    window = SlidingWindow(args.q)
    seen = 0
    for lineno, line in enumerate(stdin, 1):
        text = line.strip()
        if not text:
            continue
        if not text.isdigit():
            print(f"warning: line {lineno}: not a decimal itemset id: {text!r}", file=stderr)
            continue
        window.push(int(text))
        seen += 1
        if seen % args.report_every == 0:
            print(f"after {seen} items (window {len(window)}/{args.q}, {window.distinct_count} distinct)", file=stdout)
            print(f"top: {_format_entries(window.heaviest(args.k))}", file=stdout)
            print(f"bottom: {_format_entries(window.lightest(args.k))}", file=stdout, flush=True)
    return EXIT_OK


def cmd_collision(args) -> int:
    try:
        params = CollisionBoundParams(n=args.n, m=args.m, k=args.k, z=args.z)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    bound = compute_collision_bound(params)
    print(f"n={params.n} m={params.m} k={params.k} c={params.c:g}")
    print(f"rho <= {bound.rho:.3e}  (binomial bound)")
    print(f"rho <= {bound.rho_loose:.3e}  (n (e / (c (k+1)))^(k+1) bound)")
    if bound.rho_times_z is not None:
        print(f"rho * Z <= {bound.rho_times_z:.3e}  (Z = {params.z:.3e})")
    return EXIT_OK


def cmd_generate(args) -> int:
    try:
        spec = parse_workload(args.dist, flows=args.flows, length=args.n, seed=args.seed)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    from .workload import generate

    ids = generate(spec)
    if args.out:
        write_stream(args.out, ids)
    else:
        write_stream(sys.stdout, ids)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hlhitters",
        description="Exact sliding-window heaviest/lightest hitters: verification, benchmarks and tools.",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    fmt = argparse.ArgumentDefaultsHelpFormatter
    dist_help = f"distribution(s), comma-separated; one of {', '.join(DISTRIBUTIONS)}; zipf takes zipf(ALPHA)"

    p = sub.add_parser("verify", help="differential check against direct counting", formatter_class=fmt)
    p.add_argument("--q", type=_int_list, default=[1, 2, 7, 64], help="window sizes")
    p.add_argument("--dist", default=",".join(DISTRIBUTIONS), help=dist_help)
    p.add_argument("--flows", type=_int_list, default=[16], help="flow counts")
    p.add_argument("--n", type=_count, default=10_000, help="stream length per workload")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--mutant", choices=sorted(MUTANTS), help="verify a deliberately broken structure")
    p.add_argument("--no-shrink", action="store_true", help="report the raw failing prefix")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="time push + heaviest-1 query per item, CSV output", formatter_class=fmt)
    p.add_argument("--q", type=_int_list, default=[64, 256, 1024, 4096], help="window sizes")
    p.add_argument("--flows", type=_int_list, default=[1024], help="flow counts")
    p.add_argument("--dist", default="uniform", help=dist_help)
    p.add_argument("--n", type=_count, default=1_000_000, help="timed items per run")
    p.add_argument("--runs", type=int, default=10, help="repetitions per grid point")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument(
        "--algorithms", type=lambda s: s.split(","), default=["hl-hitters", "direct"], help="hl-hitters,direct"
    )
    p.add_argument("--engine", choices=["native", "python"], default="native", help="compiled kernels or the Python classes")
    p.add_argument("--out", help="CSV file (default: stdout)")
    p.add_argument("--quiet", action="store_true", help="no progress lines on stderr")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("demo", help="read ids from stdin, report hitters periodically", formatter_class=fmt)
    p.add_argument("--q", type=int, default=1000, help="window size")
    p.add_argument("--k", type=int, default=3, help="hitters per report")
    p.add_argument("--report-every", type=int, default=1000, help="report after every R items")
    p.set_defaults(func=cmd_demo)

    p = sub.add_parser("collision", help="bound on hash-table collision overflow", formatter_class=fmt)
    p.add_argument("--n", type=_count, default=10**6, help="hash table entries")
    p.add_argument("--m", type=_count, default=1000, help="keys stored")
    p.add_argument("--k", type=int, default=10, help="collision cap")
    p.add_argument("--z", type=float, help="lifetime packet count, to report rho * Z")
    p.set_defaults(func=cmd_collision)

    p = sub.add_parser("generate", help="write a synthetic stream, one id per line", formatter_class=fmt)
    p.add_argument("--dist", default="uniform", help=dist_help)
    p.add_argument("--flows", type=int, default=16)
    p.add_argument("--n", type=_count, default=1000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="output file (default: stdout)")
    p.set_defaults(func=cmd_generate)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "algorithms", None):
        bad = [a for a in args.algorithms if a not in ("hl-hitters", "direct")]
        if bad:
            parser.error(f"unknown algorithm(s): {', '.join(bad)}")
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"{parser.prog} {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
