"""Command-line front door.

Exit codes: 0 for success (including PASS/MATCH verdicts), 2 for FAIL or
MISMATCH verdicts, 1 for usage errors or numerical failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from .codes import CodeParseError, HomoclinicCode, parse_code
from .disks import (
    UnsupportedDiskError,
    check_pruning_conditions,
    disk_from_homoclinic_pair,
    disk_from_params,
)
from .henon import ContinuationConfig, HenonParams, find_periodic_orbits
from .oracle import oracle_check
from .sft import CountTable, PruningParams, sft_build
from .slices import SliceConfig, unstable_slice
from .verify import census_vs_sft, preset_suite


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="henon-pruning", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sft = sub.add_parser("sft", help="periodic-point counts of a pruned subshift")
    p_sft.add_argument("--N", type=int, required=True)
    p_sft.add_argument("--M", type=int, required=True)
    p_sft.add_argument("--N2", type=int)
    p_sft.add_argument("--M2", type=int)
    p_sft.add_argument("--max-period", type=int, default=10)
    p_sft.add_argument("--format", choices=("table", "json"), default="table")

    p_disk = sub.add_parser("disk", help="check the disk conditions exactly")
    p_disk.add_argument("--N", type=int)
    p_disk.add_argument("--M", type=int)
    p_disk.add_argument("--p0", type=str)
    p_disk.add_argument("--p1", type=str)
    p_disk.add_argument("--oracle", action="store_true",
                        help="also run the floating-point plane cross-check")

    p_cls = sub.add_parser("classify", help="parameter-region flags")
    p_cls.add_argument("--a", type=float, required=True)
    p_cls.add_argument("--b", type=float, required=True)

    p_census = sub.add_parser("census", help="periodic-orbit census by continuation")
    p_census.add_argument("--a", type=float, required=True)
    p_census.add_argument("--b", type=float, required=True)
    p_census.add_argument("--max-period", type=int, default=6)
    p_census.add_argument("--a-start", type=float)
    p_census.add_argument("--steps", type=int, default=160)

    p_verify = sub.add_parser("verify", help="census vs subshift prediction")
    p_verify.add_argument("--preset", choices=("theorem", "section5", "all"))
    p_verify.add_argument("--a", type=float)
    p_verify.add_argument("--b", type=float)
    p_verify.add_argument("--N", type=int)
    p_verify.add_argument("--M", type=int)
    p_verify.add_argument("--max-period", type=int, default=8)

    p_slice = sub.add_parser("slice", help="render an unstable-manifold slice")
    p_slice.add_argument("--are", type=float, required=True)
    p_slice.add_argument("--aim", type=float, default=0.0)
    p_slice.add_argument("--b", type=float, required=True)
    p_slice.add_argument("--res", type=int, default=512)
    p_slice.add_argument("--radius", type=float, default=2.0)
    p_slice.add_argument("--out", type=str, required=True)

    p_serve = sub.add_parser("serve", help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--static-dir", type=str)

    return parser


def _emit(payload) -> None:
    print(json.dumps(payload, indent=2))


def _cmd_sft(args) -> int:
    disks = [PruningParams(args.N, args.M)]
    if (args.N2 is None) != (args.M2 is None):
        raise _UsageError("--N2 and --M2 must be given together")
    if args.N2 is not None:
        disks.append(PruningParams(args.N2, args.M2))
    table = CountTable.for_sft(sft_build(disks), args.max_period)
    if args.format == "json":
        _emit({"disks": [{"N": p.N, "M": p.M} for p in disks], "rows": table.rows()})
    else:
        print(f"{'n':>3} {'points':>8} {'exact orbits':>13}")
        for row in table.rows():
            print(f"{row['n']:>3} {row['points']:>8} {row['exact_orbits']:>13}")
    return 0


def _cmd_disk(args) -> int:
    if args.p0 is not None or args.p1 is not None:
        if args.p0 is None or args.p1 is None:
            raise _UsageError("--p0 and --p1 must be given together")
        p0, p1 = parse_code(args.p0), parse_code(args.p1)
        if not (isinstance(p0, HomoclinicCode) and isinstance(p1, HomoclinicCode)):
            raise _UsageError("disk corners must be homoclinic codes of the form L.R")
        disk = disk_from_homoclinic_pair(p0, p1)
    elif args.N is not None and args.M is not None:
        disk = disk_from_params(PruningParams(args.N, args.M))
    else:
        raise _UsageError("give either --N/--M or --p0/--p1")
    certificate = check_pruning_conditions(disk)
    payload = {"disk": disk.label(), "certificate": certificate.to_json()}
    if args.oracle:
        report = oracle_check(disk)
        payload["oracle"] = {
            "verdict": report.verdict,
            "truncated": report.truncated,
            "steps": [
                {"direction": s.direction, "n": s.step, "min_distance": s.min_distance}
                for s in report.steps
            ],
        }
    _emit(payload)
    return 0 if certificate.verdict == "PASS" else 2


def _cmd_classify(args) -> int:
    _emit({"a": args.a, "b": args.b, **HenonParams(args.a, args.b).flags()})
    return 0


def _cmd_census(args) -> int:
    params = HenonParams(args.a, args.b)
    cont = ContinuationConfig(a_start=args.a_start, steps=args.steps)
    rows = []
    for n in range(1, args.max_period + 1):
        rows.extend(r.to_json() for r in find_periodic_orbits(params, n, cont))
    _emit({"a": args.a, "b": args.b, "orbits": rows})
    return 0


def _cmd_verify(args) -> int:
    if args.preset:
        reports = preset_suite(args.preset, n_max=args.max_period)
    else:
        if None in (args.a, args.b, args.N, args.M):
            raise _UsageError("give --preset or all of --a/--b/--N/--M")
        reports = [
            census_vs_sft(args.a, args.b, [PruningParams(args.N, args.M)], args.max_period)
        ]
    _emit([r.to_json() for r in reports])
    if any(r.verdict == "MISMATCH" for r in reports):
        return 2
    if any(r.verdict == "UNVERIFIED" for r in reports):
        return 1
    return 0


def _cmd_slice(args) -> int:
    image = unstable_slice(
        complex(args.are, args.aim),
        args.b,
        SliceConfig(resolution=args.res, radius=args.radius),
    )
    with open(args.out, "wb") as fh:
        fh.write(image.to_pgm())
    print(f"wrote {args.out} ({image.width}x{image.height})")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(static_dir=args.static_dir), host="127.0.0.1", port=args.port)
    return 0


_COMMANDS = {
    "sft": _cmd_sft,
    "disk": _cmd_disk,
    "classify": _cmd_classify,
    "census": _cmd_census,
    "verify": _cmd_verify,
    "slice": _cmd_slice,
    "serve": _cmd_serve,
}


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (CodeParseError, UnsupportedDiskError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
