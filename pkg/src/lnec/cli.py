"""Command-line front end: ``lnec construct|verify|rank|distance|simulate|bounds``.

Exit status is 0 when the requested property holds, 1 when it does not, and
2 on bad input (unparsable files, unknown channels, exceeded budgets).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import __version__
from .analysis import field_bounds, min_distance, rank_of_pattern, verdicts
from .construct import ConstructionError, construct_multicast_mds, construct_random
from .errors import LNECError
from .gf import parse_field
from .kernels import format_code, load_code
from .network import load_network
from .sim import Decoder, capability_sweep, encode, observe


def _csv(text: str) -> list[str]:
    return [tok for tok in text.replace(",", " ").split() if tok]


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def cmd_construct(args) -> int:
    net = load_network(args.network)
    F = parse_field(args.field)
    trace_lines: list[str] = []
    try:
        if args.method == "algorithm1":
            if args.target != "multicast":
                raise SystemExit("error: --method algorithm1 only builds multicast MDS codes")
            code = construct_multicast_mds(
                net,
                args.omega,
                F,
                candidate_budget=args.candidate_budget,
                pattern_budget=args.pattern_cap,
                seed=args.seed,
                check_invariants=args.check_invariants,
                trace=(lambda step: trace_lines.append(step.format())) if args.trace else None,
            )
        else:
            code, used = construct_random(
                net, args.omega, F, args.target, args.attempts, args.seed, args.collections_cap
            )
            trace_lines.append(f"random construction succeeded after {used} attempt(s)")
    except ConstructionError as exc:
        failure = {
            "tool": f"lnec {__version__}",
            "status": "construction-failed",
            "error": str(exc),
            "details": json.loads(json.dumps(exc.details, default=list)),
        }
        _write(json.dumps(failure, indent=2) + "\n", args.report)
        print(f"error: {exc}", file=sys.stderr)
        return 1
    if args.trace:
        _write("\n".join(trace_lines) + "\n", args.trace)
    _write(format_code(code), args.out)
    report = verdicts(code, args.collections_cap, pattern_budget=args.pattern_cap)
    report.notices.insert(0, f"method {args.method}, target {args.target}, seed {args.seed}")
    _write(report.format(), args.report)
    return 0 if report.verdict(f"{args.target}-mds") else 1


def cmd_verify(args) -> int:
    code = load_code(args.code)
    report = verdicts(code, args.collections_cap, with_bounds=args.bounds, pattern_budget=args.pattern_cap)
    _write(report.format(), args.report)
    if args.expect is None:
        return 0
    return 0 if report.verdict(args.expect) else 1


def cmd_rank(args) -> int:
    net = load_code(args.code).network if args.code else load_network(args.network)
    print(rank_of_pattern(net, _csv(args.pattern), _csv(args.collection)))
    return 0


def cmd_distance(args) -> int:
    code = load_code(args.code)
    print(min_distance(code, _csv(args.collection), args.search_cap))
    return 0


def cmd_simulate(args) -> int:
    code = load_code(args.code)
    T = _csv(args.collection)
    if args.sweep is not None:
        result = capability_sweep(code, T, args.sweep, args.budget)
        _write(result.format(), args.report)
        return 0 if result.passed else 1
    if args.message is None:
        raise SystemExit("error: --message is required unless --sweep is given")
    X = [int(v) for v in _csv(args.message)]
    Z = [0] * len(code.network.channels)
    for item in _csv(args.error or ""):
        cid, _, value = item.partition("=")
        Z[code.network.index[code.network.channel(cid).id]] = int(value or 1)
    outputs = encode(code, X, Z)
    y = observe(outputs, T)
    result = Decoder(code, T, args.tau).decode(y)
    text = outputs.trace() if args.trace else ""
    text += f"received {' '.join(map(str, y))}\n" + result.format()
    _write(text, args.report)
    return 0 if result.status == "unique" and list(result.message) == X else 1


def cmd_bounds(args) -> int:
    net = load_network(args.network)
    bounds = field_bounds(net, args.omega, args.pattern_cap)
    _write(json.dumps(bounds.to_dict(), indent=2) + "\n", args.report)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lnec", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"lnec {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def budgets(p):
        p.add_argument("--pattern-cap", type=int, default=200_000, help="max candidate patterns per enumeration")
        p.add_argument("--collections-cap", type=int, default=None, help="max node collections analyzed")

    p = sub.add_parser("construct", help="build a code and report its verdicts")
    p.add_argument("--network", required=True)
    p.add_argument("--field", default="2^8", help="field as 'p^m' (default 2^8)")
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--method", choices=("algorithm1", "random"), default="algorithm1")
    p.add_argument("--target", choices=("multicast", "broadcast", "dispersion"), default="multicast")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--attempts", type=int, default=50)
    p.add_argument("--candidate-budget", type=int, default=1 << 20)
    p.add_argument("--check-invariants", action="store_true")
    p.add_argument("--trace", metavar="PATH", help="write a per-channel construction log")
    p.add_argument("--out", default="-", help="code file to write (default stdout)")
    p.add_argument("--report", default=None, help="report path (default stdout)")
    budgets(p)
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="full report for an existing code")
    p.add_argument("--code", required=True)
    p.add_argument(
        "--expect",
        choices=(
            "multicast-mds",
            "broadcast-mds",
            "dispersion-mds",
            "regular",
            "strongly-regular",
            "sup-regular",
            "strongly-sup-regular",
        ),
    )
    p.add_argument("--bounds", action="store_true", help="include field-size bounds")
    p.add_argument("--report", default=None)
    budgets(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("rank", help="rank of an error pattern at a collection")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--network")
    src.add_argument("--code")
    p.add_argument("--pattern", required=True, help="comma-separated channel ids")
    p.add_argument("--collection", required=True, help="comma-separated node ids")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("distance", help="minimum distance at a collection")
    p.add_argument("--code", required=True)
    p.add_argument("--collection", required=True)
    p.add_argument("--search-cap", type=int, default=None)
    p.set_defaults(func=cmd_distance)

    p = sub.add_parser("simulate", help="encode, inject errors, decode")
    p.add_argument("--code", required=True)
    p.add_argument("--collection", required=True)
    p.add_argument("--message", help="comma-separated source symbols")
    p.add_argument("--error", help="comma-separated channel=value entries")
    p.add_argument("--tau", type=int, default=0, help="largest error weight the decoder tries")
    p.add_argument("--sweep", type=int, default=None, metavar="TAU", help="exhaustive capability sweep")
    p.add_argument("--budget", type=int, default=10 ** 6)
    p.add_argument("--trace", action="store_true", help="print per-channel symbols")
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("bounds", help="field-size bounds for a network and rate")
    p.add_argument("--network", required=True)
    p.add_argument("--omega", type=int, required=True)
    p.add_argument("--pattern-cap", type=int, default=200_000)
    p.add_argument("--report", default=None)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (LNECError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
