"""Command-line interface.

Subcommands: cohomology, homology, ring, duality, sweep, verify.  Output goes
to stdout in json (the stable contract), csv or markdown.  Exit codes: 0 on
success with all embedded checks passing, 1 if any check fails, 2 on usage
errors.  The only environment knob is TRUNCPOISSON_THREADS (sweep row
parallelism); output is byte-identical regardless of the thread count.
"""

from __future__ import annotations

import argparse
import os
import sys
from fractions import Fraction
from typing import Optional

from .algebra import TruncParams
from .chain import TwistParams
from .reporting import (
    ReportBundle,
    cohomology_bundle,
    duality_bundle,
    homology_bundle,
    render,
    ring_bundle,
    sweep_bundle,
    verify_bundle,
)

SWEEP_MAX = 32


def ab_value(s: str) -> int:
    try:
        v = int(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {s!r}")
    if v < 2:
        raise argparse.ArgumentTypeError(f"need two integers a,b ≥ 2; got {v}")
    return v


def range_value(s: str) -> tuple[int, int]:
    lo, sep, hi = s.partition("..")
    try:
        lo_i = int(lo)
        hi_i = int(hi) if sep else lo_i
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer range: {s!r} (use N or LO..HI)")
    if lo_i < 2 or hi_i < lo_i:
        raise argparse.ArgumentTypeError(f"need two integers a,b ≥ 2 and LO ≤ HI; got {s!r}")
    if hi_i > SWEEP_MAX:
        raise argparse.ArgumentTypeError(
            f"resource limit: sweep range bounds are capped at {SWEEP_MAX}; got {hi_i}"
        )
    return (lo_i, hi_i)


def twist_value(s: str) -> tuple[str, Optional[TwistParams]]:
    if s == "trivial":
        return ("trivial", None)
    if s == "nakayama":
        return ("nakayama", None)
    parts = s.split(",")
    if len(parts) == 2:
        try:
            return ("explicit", TwistParams(Fraction(parts[0].strip()), Fraction(parts[1].strip())))
        except (ValueError, ZeroDivisionError):
            pass
    raise argparse.ArgumentTypeError(
        f"twist must be 'trivial', 'nakayama' or 'ALPHA,BETA' with rational entries like -1,3/2; got {s!r}"
    )


def _add_instance_args(sub: argparse.ArgumentParser):
    sub.add_argument("-a", type=ab_value, required=True, help="X-exponent bound (at least 2)")
    sub.add_argument("-b", type=ab_value, required=True, help="Y-exponent bound (at least 2)")


def _add_format_arg(sub: argparse.ArgumentParser):
    sub.add_argument(
        "--format", choices=("json", "csv", "markdown"), default="json", help="output format"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="truncpoisson",
        description="Exact Poisson (co)homology of truncated polynomial algebras in two variables.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_coh = sub.add_parser("cohomology", help="cohomology dimensions and representatives")
    _add_instance_args(p_coh)
    _add_format_arg(p_coh)
    p_coh.add_argument(
        "--no-representatives", action="store_true", help="omit representative labels"
    )

    p_hom = sub.add_parser("homology", help="twisted homology dimensions and representatives")
    _add_instance_args(p_hom)
    _add_format_arg(p_hom)
    p_hom.add_argument(
        "--twist", type=twist_value, default=("trivial", None),
        help="trivial | nakayama | ALPHA,BETA (rationals)",
    )
    p_hom.add_argument(
        "--no-representatives", action="store_true", help="omit representative labels"
    )

    p_ring = sub.add_parser("ring", help="cup-product table of the five basis classes")
    _add_instance_args(p_ring)
    _add_format_arg(p_ring)

    p_dual = sub.add_parser("duality", help="degreewise duality comparisons")
    _add_instance_args(p_dual)
    _add_format_arg(p_dual)

    p_sweep = sub.add_parser("sweep", help="tabulate dimensions over parameter ranges")
    p_sweep.add_argument("-a", type=range_value, required=True, help="a range: N or LO..HI")
    p_sweep.add_argument("-b", type=range_value, required=True, help="b range: N or LO..HI")
    p_sweep.add_argument(
        "--kind", choices=("cohomology", "homology"), default="cohomology", help="what to sweep"
    )
    p_sweep.add_argument(
        "--twist", type=twist_value, default=("trivial", None),
        help="twist for homology sweeps",
    )
    _add_format_arg(p_sweep)

    p_ver = sub.add_parser("verify", help="run every structural and theorem check")
    _add_instance_args(p_ver)
    _add_format_arg(p_ver)

    return parser


def _threads_from_env() -> int:
    raw = os.environ.get("TRUNCPOISSON_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise SystemExit(2)
    return max(1, n)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    try:
        threads = _threads_from_env()
    except SystemExit:
        sys.stderr.write("TRUNCPOISSON_THREADS must be an integer\n")
        return 2

    if args.command == "cohomology":
        p = TruncParams(args.a, args.b)
        bundle = cohomology_bundle(p, include_reps=not args.no_representatives)
    elif args.command == "homology":
        p = TruncParams(args.a, args.b)
        kind, explicit = args.twist
        bundle = homology_bundle(p, kind, explicit, include_reps=not args.no_representatives)
    elif args.command == "ring":
        bundle = ring_bundle(TruncParams(args.a, args.b))
    elif args.command == "duality":
        bundle = duality_bundle(TruncParams(args.a, args.b))
    elif args.command == "sweep":
        kind, explicit = args.twist
        bundle = sweep_bundle(args.kind, args.a, args.b, kind, explicit, threads=threads)
    else:
        bundle = verify_bundle(TruncParams(args.a, args.b))

    sys.stdout.write(render(bundle, args.format))
    return bundle.exit_code


if __name__ == "__main__":
    raise SystemExit(main())
