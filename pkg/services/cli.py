"""Command-line front end: parse a problem file, run a pipeline, print the report.

Exit codes: 0 when no check failed, 1 on a failed check, 2 on an input error.
"""

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from config.logger import get_logger
from config.settings import settings
from services.pipeline import PIPELINES, CommandOptions
from services.report import VERSION
from services.schema import ProblemFileError, load_problem
from services.serialization import parse_field_flag

logger = get_logger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _nonnegative(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from e
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {value}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("file", help="problem file (JSON, schema gdual/1)")
    common.add_argument("--field", help="override the scalar field: Q, Fp:p or QCyclo:n")
    common.add_argument("--seed", type=_nonnegative, help="seed for randomized checks")
    common.add_argument("--output", choices=("json", "text"), default="json")
    common.add_argument("--emit", metavar="PATH", help="write the artifacts to a separate JSON file")

    parser = _ArgumentParser(prog="gdual", description="Duality checks for color algebras and bialgebras")
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    commands.add_parser("validate", parents=[common], help="grading and axiom checks")
    commands.add_parser("dualize", parents=[common], help="duals of finite-dimensional objects")

    finite = commands.add_parser("finite-dual", parents=[common], help="finite dual of a presented algebra")
    finite.add_argument("--truncate", type=_nonnegative, help="truncation bound N")
    finite.add_argument("--window", type=_nonnegative, help="stabilization window W")
    finite.add_argument("--codim-bound", type=_nonnegative, help="codimension bound for ideal enumeration")

    tambara = commands.add_parser("tambara", parents=[common], help="lifted left adjoint of S (x) -")
    tambara.add_argument("--s", dest="s_path", metavar="FILE", help="problem file holding S")
    tambara.add_argument("--b", dest="b_path", metavar="FILE", help="problem file holding B")
    tambara.add_argument("--truncate", type=_nonnegative, help="word-length window N")

    adjunction = commands.add_parser("adjunction-check", parents=[common], help="randomized adjunction identities")
    adjunction.add_argument("--cases", type=_nonnegative, help="number of random cases")
    return parser


def _options(args: argparse.Namespace) -> CommandOptions:
    return CommandOptions(
        field=parse_field_flag(args.field) if args.field else None,
        seed=args.seed,
        truncate=getattr(args, "truncate", None),
        window=getattr(args, "window", None),
        codim_bound=getattr(args, "codim_bound", None),
        cases=getattr(args, "cases", None),
        s_path=getattr(args, "s_path", None),
        b_path=getattr(args, "b_path", None),
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    args = build_parser().parse_args(argv)
    settings.reload()
    try:
        problem, raw = load_problem(args.file)
        options = _options(args)
        report = asyncio.run(PIPELINES[args.command](problem, raw, options))
    except ProblemFileError as e:
        logger.error(f"Input error: {e}")
        print(f"gdual: input error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValueError as e:
        logger.error(f"Input error in {args.file}: {e}")
        print(f"gdual: input error: {args.file}: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    if args.emit:
        Path(args.emit).write_text(
            json.dumps(report.artifacts, indent=2, ensure_ascii=False) + "\n", encoding="utf-8"
        )
        logger.info(f"Wrote artifacts to {args.emit}")
    if args.output == "text":
        sys.stdout.write(report.to_text())
    else:
        sys.stdout.write(report.to_json(include_artifacts=not args.emit))
    return EXIT_CHECK_FAILED if report.exit_code else EXIT_OK
