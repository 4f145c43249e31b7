"""This file contains the diagforge command line: family listing, point generation, identity audit, point checks,
search and sixth power chains.

Every command writes JSON lines (or PASS/FAIL lines) to stdout or to --out; log records go to stderr. Integers
and rationals are always written as decimal strings. Exit codes: 0 success, 1 rejected point or failed
fixture, 2 usage or parameter error.
"""

import argparse
import contextlib
import json
import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Iterator, List, Optional, Sequence, TextIO, Tuple

from diagforge.algebra.field import FieldElem, format_rational, parse_rational
from diagforge.config import Settings, configure_logging
from diagforge.errors import (
    FixtureFormatError,
    IndeterminateError,
    InadmissibleParameterError,
    NotOnCurveError,
    UnknownFamilyError,
    UnknownFixtureError,
)
from diagforge.families import (
    DiagonalSurface,
    ProjPoint,
    SurfaceInstance,
    equalized_chain,
    generate_points,
    instantiate,
    list_families,
    sixth_power_chain,
)
from diagforge.families.solutions import CHAIN_FAMILY
from diagforge.families.surface import height
from diagforge.genus1.scalars import is_rational, to_fraction
from diagforge.verify import brute_search, check_point, run_identity_suite

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_REJECTED = 1
EXIT_USAGE = 2

_MULTIPLES_PATTERN = re.compile(r"^(-?\d+)(?:\.\.(-?\d+))?$")

# errors reported as usage or parameter problems
_USAGE_ERRORS = (
    InadmissibleParameterError,
    UnknownFamilyError,
    UnknownFixtureError,
    FixtureFormatError,
    IndeterminateError,
    FileNotFoundError,
    ValueError,
)


@dataclass(frozen=True)
class PointRecord:
    """One generated point as written by `gen`."""

    family: str
    # parameter values as rational strings
    params: Dict[str, str]
    # index of the point on the fibre curve
    m: int
    point: ProjPoint
    surface: DiagonalSurface
    # set only after check_point accepted the point
    verified: bool

    def to_json(self) -> Dict[str, Any]:
        """JSON object with every integer as a decimal string."""
        return {
            "family": self.family,
            "params": dict(self.params),
            "m": self.m,
            "point": _integer_strings(self.point),
            "surface": _surface_json(self.surface),
            "verified": self.verified,
        }


def _integer_strings(values: Sequence[int]) -> List[str]:
    return [str(int(v)) for v in values]


def _scalar_string(value: Any) -> str:
    return format_rational(to_fraction(value)) if is_rational(value) else str(value)


def _surface_json(surface: DiagonalSurface) -> Dict[str, Any]:
    return {
        "coefficients": [_scalar_string(c) for c in surface.coefficients],
        "exponents": list(surface.exponents),
    }


def _dumps(payload: Dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


@contextlib.contextmanager
def _output(path: Optional[Path]) -> Iterator[TextIO]:
    """The --out file, or stdout when no file is given."""
    if path is None or str(path) == "-":
        yield sys.stdout
        return
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        yield handle


def parse_rationals(text: str, count: int = 4) -> Tuple[FieldElem, ...]:
    """Comma separated rationals, exactly `count` of them."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ValueError(f"expected {count} comma separated values, got {text!r}")
    return tuple(FieldElem(parse_rational(p)) for p in parts)


def parse_integers(text: str, count: int = 4) -> Tuple[int, ...]:
    """Comma separated integers, exactly `count` of them."""
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ValueError(f"expected {count} comma separated integers, got {text!r}")
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ValueError(f"expected integers, got {text!r}") from None


def parse_multiples(text: str) -> List[int]:
    """A single index "m" or an inclusive range "A..B"; m = 0 (the origin) is left out."""
    match = _MULTIPLES_PATTERN.match(text.strip())
    if match is None:
        raise ValueError(f"multiples must look like 3 or 1..5, got {text!r}")
    low = int(match.group(1))
    high = int(match.group(2)) if match.group(2) is not None else low
    if high < low:
        raise ValueError(f"empty range of multiples {text!r}")
    return [m for m in range(low, high + 1) if m != 0]


def parse_params(items: Optional[Sequence[str]]) -> Dict[str, str]:
    """Repeated name=value options."""
    params: Dict[str, str] = {}
    for item in items or ():
        name, sep, value = item.partition("=")
        if not sep or not name.strip() or not value.strip():
            raise ValueError(f"parameters are given as name=value, got {item!r}")
        if name.strip() in params:
            raise ValueError(f"parameter {name.strip()} given twice")
        params[name.strip()] = value.strip()
    return params


def _surface_from_args(args: argparse.Namespace) -> DiagonalSurface:
    return DiagonalSurface(parse_rationals(args.surface), parse_integers(args.exponents))


def cmd_families(args: argparse.Namespace) -> int:
    """Lists the registered families."""
    with _output(args.out) as out:
        for spec in list_families():
            out.write(_dumps(spec.describe()) + "\n")
    return EXIT_OK


def cmd_verify_identities(args: argparse.Namespace) -> int:
    """Runs the identity suite and prints one PASS/FAIL line per fixture."""
    reports = run_identity_suite(args.id, args.fixtures, args.threads)
    for report in reports:
        print(report.line())
    failed = [r.fixture_id for r in reports if not r.passed]
    if failed:
        print(f"{len(failed)} of {len(reports)} fixtures failed: {', '.join(failed)}", file=sys.stderr)
        return EXIT_REJECTED
    return EXIT_OK


def _records(instance: SurfaceInstance, multiples: Sequence[int], threads: int) -> Iterator[PointRecord]:
    params = instance.parameter_strings()
    for m, point in generate_points(instance, multiples, threads):
        if not isinstance(point, ProjPoint):
            continue
        result = check_point(instance.surface, point)
        if not result.accepted:
            raise NotOnCurveError(f"{instance.spec.family_id}: multiple {m} gives {point}, {result.reason}")
        yield PointRecord(instance.spec.family_id, params, m, point, instance.surface, verified=True)


def cmd_gen(args: argparse.Namespace) -> int:
    """Generates points of a family and writes one PointRecord per line."""
    instance = instantiate(args.family, parse_params(args.param), use_sample=args.sample)
    multiples = parse_multiples(args.multiples)
    records = list(_records(instance, multiples, args.threads))
    with _output(args.out) as out:
        for record in records:
            out.write(_dumps(record.to_json()) + "\n")
    logger.info("%s: wrote %d of %d multiples", args.family, len(records), len(multiples))
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    """Checks one point exactly."""
    surface = _surface_from_args(args)
    point = ProjPoint(parse_integers(args.point))
    result = check_point(surface, point)
    if result.accepted:
        print(f"ACCEPTED {point}")
        return EXIT_OK
    print(f"REJECTED {point}: value {format_rational(result.value)}, {result.zero_count} zero coordinates")
    return EXIT_REJECTED


def cmd_search(args: argparse.Namespace) -> int:
    """Exhaustive search; the output does not depend on --threads."""
    surface = _surface_from_args(args)
    result = brute_search(surface, args.height, args.threads)
    with _output(args.out) as out:
        for point in result.points:
            out.write(_dumps({"point": _integer_strings(point), "height": str(height(surface, point))}) + "\n")
    print(f"{len(result.points)} points up to height {args.height}", file=sys.stderr)
    return EXIT_OK


def cmd_chain(args: argparse.Namespace) -> int:
    """Points on 2X^6 - 2Y^6 + Z^6 = f(t0)^3 W^6 from multiples of one seed."""
    if args.length < 1:
        raise ValueError(f"the chain length must be positive, got {args.length}")
    surface = instantiate(CHAIN_FAMILY, {"t0": args.t0}).surface
    rhs = -to_fraction(surface.coefficients[3])
    if args.equalize:
        value, members = equalized_chain(args.t0, args.length)
    else:
        value, members = None, sixth_power_chain(args.t0, args.length)
    with _output(args.out) as out:
        for index, member in enumerate(members, start=1):
            result = check_point(surface, member)
            if not result.accepted:
                raise NotOnCurveError(f"chain member {index} {member} is rejected: {result.reason}")
            record = {
                "t0": args.t0,
                "m": index,
                "point": _integer_strings(member),
                "rhs": format_rational(rhs),
                "verified": True,
            }
            if value is not None:
                record["value"] = str(value)
            out.write(_dumps(record) + "\n")
    return EXIT_OK


def _add_surface_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--surface", required=True, help="coefficients a,b,c,d (rationals p/q allowed)")
    parser.add_argument("--exponents", default="4,4,4,4", help="exponents e1,e2,e3,e4 (default 4,4,4,4)")


def build_parser(settings: Settings) -> argparse.ArgumentParser:
    """The argument parser; defaults come from the environment settings."""
    parser = argparse.ArgumentParser(prog="diagforge", description="Rational points on diagonal surfaces.")
    parser.add_argument("--log-level", default=settings.log_level, help="logging level (default from env)")
    parser.add_argument("--fixtures", type=Path, default=None, help="fixture directory for verify-identities")
    commands = parser.add_subparsers(dest="command", required=True)

    families = commands.add_parser("families", help="list registered families as JSON lines")
    families.add_argument("--out", type=Path, default=None)
    families.set_defaults(handler=cmd_families)

    verify = commands.add_parser("verify-identities", help="check the identity fixtures")
    verify.add_argument("--id", action="append", default=None, help="fixture id, repeatable")
    verify.add_argument("--threads", type=int, default=settings.threads)
    verify.set_defaults(handler=cmd_verify_identities)

    gen = commands.add_parser("gen", help="generate points of a family")
    gen.add_argument("--family", required=True)
    gen.add_argument("--param", action="append", default=None, help="name=value, repeatable")
    gen.add_argument("--multiples", default="1..5", help="m or A..B (default 1..5)")
    gen.add_argument("--sample", action="store_true", help="use sample values for missing parameters")
    gen.add_argument("--threads", type=int, default=settings.threads)
    gen.add_argument("--out", type=Path, default=None)
    gen.set_defaults(handler=cmd_gen)

    check = commands.add_parser("check", help="check one point exactly")
    _add_surface_options(check)
    check.add_argument("--point", required=True, help="integers x,y,z,w")
    check.set_defaults(handler=cmd_check)

    search = commands.add_parser("search", help="exhaustive height bounded search")
    _add_surface_options(search)
    search.add_argument("--height", type=int, required=True)
    search.add_argument("--threads", type=int, default=settings.threads)
    search.add_argument("--out", type=Path, default=None)
    search.set_defaults(handler=cmd_search)

    chain = commands.add_parser("chain", help="chain of sixth powers sharing one right-hand side")
    chain.add_argument("--t0", required=True, help="rational parameter")
    chain.add_argument("--length", type=int, required=True)
    chain.add_argument("--equalize", action="store_true", help="rescale members to a common integer value")
    chain.add_argument("--out", type=Path, default=None)
    chain.set_defaults(handler=cmd_chain)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Entry point; returns the exit code."""
    try:
        settings = Settings.from_env()
    except ValueError as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser(settings)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exit_request:
        return int(exit_request.code or 0)
    try:
        configure_logging(args.log_level)
    except ValueError:
        print(f"error: unknown log level {args.log_level!r}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except NotOnCurveError as error:
        logger.error("%s", error)
        return EXIT_REJECTED
    except _USAGE_ERRORS as error:
        print(f"error: {error}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
