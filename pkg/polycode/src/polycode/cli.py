"""Command line front end.

Exit codes: 2 for unreadable expressions or documents, 3 when the polytope
does not fit the field's box, 4 when a search budget is exceeded (bounds
are still printed), 5 for unsupported field orders, 1 for anything else and
for failed reproductions.
"""

import argparse
import csv
import io
import logging
import os
import sys
from fractions import Fraction
from pathlib import Path
from typing import List, Optional, Sequence

from polycode.decomp import full_minkowski_length, hypercube_dimension
from polycode.errors import (
    BudgetExceeded,
    FieldError,
    InputError,
    OutOfBox,
    PolycodeError,
)
from polycode.expressions import PolytopeExpr
from polycode.families import family, family_custom, family_spec, family_to_csv
from polycode.ff import field_new
from polycode.models import CodeParams, DecompReport
from polycode.probe import ProbeSpec, conjecture_probe
from polycode.reproduce import EXAMPLES, run_reproduction
from polycode.syntax import parse_expression
from polycode.toric import (
    METHODS,
    compute_params,
    generator_matrix,
    params_by_bounds,
)

logger = logging.getLogger(__name__)

EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_OUT_OF_BOX = 3
EXIT_BUDGET = 4
EXIT_FIELD = 5

PARAMS_COLUMNS = (
    "q",
    "n",
    "N",
    "k",
    "d_lo",
    "d_hi",
    "delta_num",
    "delta_den",
    "rate_num",
    "rate_den",
    "method",
    "budget_exceeded",
)


def _expression(text: str) -> PolytopeExpr:
    if text.startswith("@"):
        text = f"atom({text})"
    return parse_expression(text, Path.cwd())


def _integers(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(
            f"expected comma separated integers, got {text!r}"
        ) from e


def params_to_csv(params: CodeParams) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(PARAMS_COLUMNS)
    writer.writerow(
        [
            params.q,
            params.n,
            params.block_length,
            params.k,
            params.d_lo,
            params.d_hi,
            params.delta_lo.numerator,
            params.delta_lo.denominator,
            params.rate.numerator,
            params.rate.denominator,
            params.method,
            int(params.budget_exceeded),
        ]
    )
    return buffer.getvalue()


def _print_params(params: CodeParams, args: argparse.Namespace) -> None:
    if args.json:
        print(params.json())
    elif args.csv:
        sys.stdout.write(params_to_csv(params))
    else:
        print(params.summary())
        for note in params.notes:
            print(f"note: {note}")


def cmd_params(args: argparse.Namespace) -> int:
    e = _expression(args.expression)
    field = field_new(args.q)
    try:
        params = compute_params(e, field, args.method, args.budget, args.parallel)
    except BudgetExceeded as error:
        logger.warning("%s", error)
        params = params_by_bounds(e, field)
        params.budget_exceeded = True
    _print_params(params, args)
    return EXIT_BUDGET if params.budget_exceeded else 0


def cmd_genmatrix(args: argparse.Namespace) -> int:
    G = generator_matrix(_expression(args.expression), field_new(args.q))
    sys.stdout.write(G.dump())
    return 0


def cmd_decomp(args: argparse.Namespace) -> int:
    P = _expression(args.expression).polytope
    report = DecompReport()
    if args.what in ("L", "both"):
        report.L = full_minkowski_length(P, args.budget)
    if args.what in ("M", "both"):
        report.M = hypercube_dimension(P, args.budget)
    print(report.json(exclude_none=True))
    return 0


def cmd_family(args: argparse.Namespace) -> int:
    spec = family_spec(
        kind=args.kind,
        q=args.q,
        lengths=args.schedule,
        depth=args.depth,
        seed=args.seed,
        expressions=args.expressions or [],
        budget=args.budget,
        workers=args.parallel,
    )
    field_new(spec.q)
    if spec.kind == "custom":
        rows = family_custom(spec, map(_expression, spec.expressions))
    else:
        rows = family(spec)
    if args.csv:
        sys.stdout.write(family_to_csv(rows))
    else:
        for row in rows:
            print(row.json())
    return 0


def cmd_reproduce(args: argparse.Namespace) -> int:
    names = None if args.all else args.example
    report = run_reproduction(names)
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(
            f"{status} {check.example}: {check.name} "
            f"expected={check.expected} actual={check.actual}"
        )
    failed = sum(1 for check in report.checks if not check.passed)
    print(f"{len(report.checks) - failed} passed, {failed} failed")
    return 0 if report.passed else EXIT_FAILED


def cmd_probe(args: argparse.Namespace) -> int:
    spec = ProbeSpec(
        q=args.q,
        samples=args.samples,
        dims=args.dims,
        seed=args.seed,
        kind=args.kind,
        budget=args.budget,
        rate_threshold=args.rate_threshold,
        length_threshold=args.length_threshold,
        workers=args.parallel,
    )
    field_new(spec.q)
    report = conjecture_probe(spec)
    print(report.json())
    return 0 if report.violations == 0 else EXIT_FAILED


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polycode", description="Toric codes from lattice polytopes."
    )
    parser.add_argument(
        "-v",
        "--verbose",
        action="count",
        default=0,
        help="More logging on stderr, repeat for debug output.",
    )
    parser.add_argument(
        "--parallel",
        type=int,
        default=os.cpu_count() or 1,
        help="Worker processes for exhaustive searches.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    params = commands.add_parser("params", help="Code parameters.")
    params.add_argument("expression")
    params.add_argument("--q", type=int, required=True)
    params.add_argument("--method", choices=METHODS, default="auto")
    params.add_argument("--budget", type=int)
    formats = params.add_mutually_exclusive_group()
    formats.add_argument("--json", action="store_true")
    formats.add_argument("--csv", action="store_true")
    params.set_defaults(handler=cmd_params)

    genmatrix = commands.add_parser("genmatrix", help="Generator matrix dump.")
    genmatrix.add_argument("expression")
    genmatrix.add_argument("--q", type=int, required=True)
    genmatrix.set_defaults(handler=cmd_genmatrix)

    decomp = commands.add_parser(
        "decomp", help="Full Minkowski length and hypercube dimension."
    )
    decomp.add_argument("expression")
    decomp.add_argument("--what", choices=("L", "M", "both"), default="both")
    decomp.add_argument("--budget", type=int)
    decomp.set_defaults(handler=cmd_decomp)

    fam = commands.add_parser("family", help="Family trajectories.")
    fam.add_argument(
        "--kind",
        choices=("boxes", "simplices", "self_join", "custom"),
        required=True,
    )
    fam.add_argument("--q", type=int, required=True)
    fam.add_argument("--schedule", type=_integers, default=[1])
    fam.add_argument("--depth", type=int, default=5)
    fam.add_argument("--seed", help="Seed expression of a self-join family.")
    fam.add_argument(
        "--expression",
        action="append",
        dest="expressions",
        help="Member of a custom family, repeated in order of dimension.",
    )
    fam.add_argument("--budget", type=int)
    fam.add_argument("--csv", action="store_true")
    fam.set_defaults(handler=cmd_family)

    reproduce = commands.add_parser("reproduce", help="Worked examples.")
    which = reproduce.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument(
        "--example", action="append", choices=sorted(EXAMPLES)
    )
    reproduce.set_defaults(handler=cmd_reproduce)

    probe = commands.add_parser("probe", help="Randomized bound checks.")
    probe.add_argument("--q", type=int, default=5)
    probe.add_argument("--samples", type=int, default=100)
    probe.add_argument("--dims", type=_integers, default=[2, 3])
    probe.add_argument("--seed", type=int, default=0)
    probe.add_argument(
        "--kind", choices=("vertices", "simplex-sums"), default="vertices"
    )
    probe.add_argument("--budget", type=int, default=10**6)
    probe.add_argument("--rate-threshold", type=Fraction, default=Fraction(1, 2))
    probe.add_argument("--length-threshold", type=int, default=1)
    probe.set_defaults(handler=cmd_probe)
    return parser


def _configure_logging(verbosity: int) -> None:
    level = {0: logging.WARNING, 1: logging.INFO}.get(verbosity, logging.DEBUG)
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except InputError as e:
        logger.error("%s", e)
        return EXIT_INPUT
    except OutOfBox as e:
        logger.error("%s", e)
        return EXIT_OUT_OF_BOX
    except BudgetExceeded as e:
        logger.error("%s", e)
        return EXIT_BUDGET
    except FieldError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_FIELD
    except PolycodeError as e:
        logger.error("%s: %s", type(e).__name__, e)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
