# main.py
# The `pg` command line: build groups, compute sets and structure, certify tower measures, verify claims

from __future__ import annotations

import argparse
import logging
import sys
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from claims import CLAIMS, Status, dump_reports, fmt, run_all, run_claim
from config import Settings, load_settings
from errors import CapExceeded, GroupError, SpecSyntaxError
from families import family, f_set, lambda_nil_set, lambda_p_set, tau_stats
from groups import FiniteGroup, center, evaluate_word, parse_word, set_cache_budget
from specs import build_group, parse_element_literal
from structure import chief_series, fitting, hypercenter, is_nilpotent, is_solvable, o_p, solvable_radical, sylow
from towers import f_epsilon_membership, measure_interval, tower

log = logging.getLogger("pg")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


def _element(G: FiniteGroup, text: str) -> int:
    return evaluate_word(G, parse_word(text))


def cmd_build(args: argparse.Namespace, settings: Settings) -> int:
    G = build_group(args.spec, settings.cap)
    print(f"group: {G.name}")
    print(f"order: {G.order}")
    print(f"degree: {G.degree}")
    if args.info:
        full = G.full()
        print(f"center: {center(G).card}")
        print(f"solvable: {fmt(is_solvable(full))}")
        print(f"nilpotent: {fmt(is_nilpotent(full))}")
    return EXIT_OK


def cmd_set(args: argparse.Namespace, settings: Settings) -> int:
    G = build_group(args.spec, settings.cap)
    x = _element(G, args.element)
    if args.family is not None:
        S, label = f_set(G, x, family(args.family)), f"F[{args.family}]"
    elif args.lam is not None:
        S, label = lambda_p_set(G, x, args.lam), f"Lambda[{args.lam}]"
    else:
        S, label = lambda_nil_set(G, x), "Lambda[nil]"
    print(f"set: {label}")
    print(f"size: {S.card}")
    print(f"measure: {fmt(Fraction(S.card, G.order))}")
    return EXIT_OK


def cmd_struct(args: argparse.Namespace, settings: Settings) -> int:
    G = build_group(args.spec, settings.cap)
    what, _, arg = args.compute.partition(":")
    match what:
        case "chief":
            series = chief_series(G)
            print(f"length: {len(series)}")
            for i, f in enumerate(series.factors):
                kind = f"abelian p={f.prime}" if f.abelian else "nonabelian"
                print(f"factor {i}: order={f.order} {kind}")
            return EXIT_OK
        case "sylow" | "op" if arg.isdigit():
            S = sylow(G, int(arg)) if what == "sylow" else o_p(G, int(arg))
        case "fitting":
            S = fitting(G)
        case "radical":
            S = solvable_radical(G)
        case "hypercenter":
            S = hypercenter(G)
        case _:
            raise SpecSyntaxError(f"unknown computation {args.compute!r}")
    print(f"{args.compute}: {S.card}")
    return EXIT_OK


def cmd_tau(args: argparse.Namespace, settings: Settings) -> int:
    G = build_group(args.spec, settings.cap)
    report = tau_stats(G, _element(G, args.element), chief_series(G))
    print(f"tau_nonab: {report.tau_nonab}")
    for p, n in report.tau_ab.items():
        print(f"tau_ab[{p}]: {n}")
    print(f"tau: {report.total}")
    print("ratios: " + " ".join(fmt(r) for r in report.ratios))
    return EXIT_OK


def cmd_measure(args: argparse.Namespace, settings: Settings) -> int:
    T = tower(args.tower, settings.cap)
    e = parse_element_literal(args.element)
    F = family(args.family)
    interval = measure_interval(T, e, F, args.depth)
    print(f"lo: {fmt(interval.lo)}")
    print(f"hi: {fmt(interval.hi)}")
    print(f"depth: {interval.depth}")
    if args.epsilon is not None:
        verdict = f_epsilon_membership(T, e, F, args.epsilon, args.depth)
        print(f"verdict: {verdict.value}")
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, settings: Settings) -> int:
    if args.claim == "all":
        reports = run_all(settings, progress=sys.stderr.isatty())
    else:
        reports = [run_claim(args.claim, settings)]
    for r in reports:
        print(f"{r.status.value.upper():7} {r.id}: computed={r.computed} expected={r.expected} ({r.runtime_ms} ms)")
    if args.json is not None:
        args.json.write_text(dump_reports(reports))
        log.info("report written path=%s", args.json)
    if any(r.status is Status.FAIL for r in reports):
        return EXIT_FAIL
    if any(r.status is Status.SKIPPED for r in reports):
        return EXIT_CAP
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pg", description="Exact computations with family-sets of finite groups and towers.")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for info, -vv for debug logging")
    parser.add_argument("--config", type=Path, help="key=value settings file (default: ./pg.conf if present)")
    parser.add_argument("--cap", type=int, help="largest group order to enumerate")
    parser.add_argument("--threads", type=int, help="worker threads for `verify all`")
    parser.add_argument("--cache-bytes", type=int, dest="cache_bytes", help="pair-cache budget per group")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build", help="build a group and print its order")
    p.add_argument("spec")
    p.add_argument("--info", action="store_true", help="also print center size and solvable/nilpotent flags")
    p.set_defaults(run=cmd_build)

    p = sub.add_parser("set", help="size and measure of F(x), Lambda_p(x) or Lambda_nil(x)")
    p.add_argument("spec")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--family", help="family id: all, abelian, nilpotent, solvable, exp2, oddsolvable, pgroup:<p>")
    which.add_argument("--lambda", type=int, dest="lam", metavar="P")
    which.add_argument("--lambdanil", action="store_true")
    p.add_argument("--element", required=True, help="word such as g0*g1^-1, e or d")
    p.set_defaults(run=cmd_set)

    p = sub.add_parser("struct", help="structural subgroups and the chief series")
    p.add_argument("spec")
    p.add_argument("--compute", required=True, help="chief, sylow:<p>, op:<p>, fitting, radical or hypercenter")
    p.set_defaults(run=cmd_struct)

    p = sub.add_parser("tau", help="chief-factor statistics of an element")
    p.add_argument("spec")
    p.add_argument("--element", required=True)
    p.set_defaults(run=cmd_tau)

    p = sub.add_parser("measure", help="certified measure interval in a tower")
    p.add_argument("tower")
    p.add_argument("--element", default="tail=trivial", help="literal such as 1=d^2;tail=designated")
    p.add_argument("--family", required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--epsilon", type=Fraction)
    p.set_defaults(run=cmd_measure)

    p = sub.add_parser("verify", help="run registered claims")
    p.add_argument("claim", nargs="?", default="all", help=f"claim id or all ({len(CLAIMS)} registered)")
    p.add_argument("--json", type=Path, help="write the JSON report here")
    p.set_defaults(run=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose, 2)]
    logging.basicConfig(level=level, format="%(asctime)s %(levelname)s %(name)s: %(message)s")
    try:
        settings = load_settings(
            args.config,
            overrides={"cap": args.cap, "threads": args.threads, "cache_bytes": args.cache_bytes},
        )
        set_cache_budget(settings.cache_bytes)
        return args.run(args, settings)
    except CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (GroupError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
