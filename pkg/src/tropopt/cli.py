"""Command-line front end.

::

    tropopt solve FILE
    tropopt verify FILE [--samples N] [--grid-step a/b] [--seed S] [--inject-fault]
    tropopt algebra {star,plus,eigen,spectral-radius} FILE
    tropopt scalar {add,mul,leq} A B [--semifield ID]

Reports go to stdout as JSON; logs and load errors go to stderr. Exit codes:
0 success, 2 unreadable or invalid input, 3 a solver precondition failed,
4 verification failed. On exit 3 and 4 stdout holds
``{"error": <class name>, "condition": <text>}``.
"""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from dataclasses import replace
from fractions import Fraction
from typing import Any

from tropopt import __version__
from tropopt.codec import (
    decode_scalar,
    dumps,
    encode_matrix,
    encode_scalar,
    encode_vector,
    load_json,
    parse_instance,
    parse_matrix_document,
    parse_rational,
    report_to_dict,
)
from tropopt.config import Settings
from tropopt.errors import (
    AlgebraError,
    PreconditionError,
    SchemaError,
    VerificationFailure,
)
from tropopt.model import OptimumReport
from tropopt.oracle import check_solution_set, default_grid
from tropopt.semifield import Semifield, SemifieldId
from tropopt.solvers import solve
from tropopt.spectral import eigenvectors, spectral_radius
from tropopt.tropalg import solve_fixpoint_equation, solve_order_inequality

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PRECONDITION = 3
EXIT_VERIFICATION = 4

DEFAULT_SAMPLES = 50


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tropopt", description="Closed-form tropical optimization with verification."
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument(
        "-v", "--verbose", action="count", default=0, help="log to stderr (-vv for debug)"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    solve_cmd = commands.add_parser("solve", help="solve an instance file")
    solve_cmd.add_argument("path", help="instance JSON file")
    solve_cmd.set_defaults(handler=cmd_solve)

    verify_cmd = commands.add_parser("verify", help="solve and check against the oracle")
    verify_cmd.add_argument("path", help="instance JSON file")
    verify_cmd.add_argument("--samples", type=_positive_int, default=None)
    verify_cmd.add_argument("--grid-step", type=_step, default=None, metavar="A/B")
    verify_cmd.add_argument("--seed", type=int, default=0)
    verify_cmd.add_argument(
        "--inject-fault",
        action="store_true",
        help="perturb the reported optimum before checking (exercises exit 4)",
    )
    verify_cmd.set_defaults(handler=cmd_verify)

    algebra_cmd = commands.add_parser("algebra", help="matrix closures and spectra")
    algebra_cmd.add_argument("operation", choices=["star", "plus", "eigen", "spectral-radius"])
    algebra_cmd.add_argument("path", help="matrix JSON file")
    algebra_cmd.set_defaults(handler=cmd_algebra)

    scalar_cmd = commands.add_parser("scalar", help="add, multiply or compare two scalars")
    scalar_cmd.add_argument("operation", choices=["add", "mul", "leq"])
    scalar_cmd.add_argument("a", help="a rational such as 3 or 5/2, or null for zero")
    scalar_cmd.add_argument("b", help="second operand, same format")
    scalar_cmd.add_argument(
        "--semifield",
        choices=[sid.value for sid in SemifieldId],
        default=SemifieldId.MAX_PLUS.value,
    )
    scalar_cmd.set_defaults(handler=cmd_scalar)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except (SchemaError, AlgebraError) as exc:
        print(f"tropopt: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PreconditionError as exc:
        logger.info("precondition failed: %s", exc)
        _emit({"error": type(exc).__name__, "condition": exc.condition})
        return EXIT_PRECONDITION
    except VerificationFailure as exc:
        logger.warning("verification failed: %s", exc)
        _emit({"error": type(exc).__name__, "condition": exc.condition, "detail": str(exc)})
        return EXIT_VERIFICATION


def cmd_solve(args: argparse.Namespace) -> int:
    loaded = parse_instance(load_json(args.path))
    report = solve(loaded.instance, loaded.settings)
    instance = loaded.instance
    _emit(report_to_dict(report, instance.sf, instance.form))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace) -> int:
    loaded = parse_instance(load_json(args.path))
    instance = loaded.instance
    report = solve(instance, loaded.settings)
    if args.inject_fault:
        report = _perturb(instance.sf, report)
        logger.info("injected fault: optimum set to %s", report.value)

    grid = loaded.grid
    step = args.grid_step or loaded.grid_step
    if step is not None:
        grid = replace(grid or default_grid(instance), step=step)
    samples = args.samples or loaded.samples or DEFAULT_SAMPLES
    record = check_solution_set(instance, report, samples=samples, grid=grid, seed=args.seed)

    oracle = {
        "best": encode_scalar(record.oracle.best_value),
        "argbest": [encode_vector(x) for x in record.oracle.argbest],
        "evaluated": record.oracle.evaluated_count,
        "feasible": record.oracle.feasible_count,
    }
    _emit(
        {
            "semifield": instance.sf.id.value,
            "problem": instance.form.value,
            "optimum": encode_scalar(report.value),
            "status": "pass",
            "checks": list(record.checks),
            "samples": record.samples,
            "oracle": oracle,
        }
    )
    return EXIT_OK


def cmd_algebra(args: argparse.Namespace) -> int:
    a = parse_matrix_document(load_json(args.path))
    doc: dict[str, Any] = {"operation": args.operation, "semifield": a.sf.id.value}
    if args.operation == "star":
        doc["matrix"] = encode_matrix(solve_order_inequality(a))
    elif args.operation == "plus":
        doc["matrix"] = encode_matrix(solve_fixpoint_equation(a))
    elif args.operation == "eigen":
        spectrum = eigenvectors(a)
        doc["lambda"] = encode_scalar(spectrum.radius)
        doc["generator"] = encode_matrix(spectrum.eigen_generator)
    else:
        doc["lambda"] = encode_scalar(spectral_radius(a))
    _emit(doc)
    return EXIT_OK


def cmd_scalar(args: argparse.Namespace) -> int:
    sf = Semifield.create(args.semifield, Settings.from_env())
    a, b = (
        decode_scalar(sf, None if raw == "null" else raw, name)
        for raw, name in ((args.a, "a"), (args.b, "b"))
    )
    result = sf.scalar_arith(a, b, args.operation)
    _emit(
        {
            "operation": args.operation,
            "semifield": sf.id.value,
            "result": result if isinstance(result, bool) else encode_scalar(result),
        }
    )
    return EXIT_OK


def _perturb(sf: Semifield, report: OptimumReport) -> OptimumReport:
    """The report with its optimum moved one unit (1 in max-plus, a factor 2 in max-times)."""
    unit = sf.scalar(1 if sf.id.is_additive else 2)
    value = unit if report.value.is_bottom else sf.mul(report.value, unit)
    return replace(report, value=value)


def _emit(doc: Any) -> None:
    sys.stdout.write(dumps(doc) + "\n")


def _configure_logging(verbosity: int) -> None:
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s"
    )


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from exc
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _step(text: str) -> Fraction:
    try:
        value = parse_rational(text, "grid step")
    except SchemaError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc
    if value <= 0:
        raise argparse.ArgumentTypeError("grid step must be positive")
    return value
