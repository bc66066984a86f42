"""
Command line front end.

Exit codes: 0 ok, 1 input error, 2 violation or missing witness, 3 budget skip.
"""

import sys
from typing import Optional, Sequence

from pydantic import ValidationError

from ringlab import __version__
from ringlab.cli import catalog, classify, decompose, modules, search, verify
from ringlab.cli.common import Parser, common_options
from ringlab.config import settings
from ringlab.errors import BudgetExceeded, NoDecomposition, NotAbelian, NotRickartAt, RingLabError, SizeBudgetExceeded
from ringlab.models import ErrorResponse
from ringlab.utils.logging_config import get_logger, setup_logging
from ringlab.utils.metrics import export_metrics

logger = get_logger(__name__)

COMMANDS = (classify, decompose, modules, verify, search, catalog)


def build_parser() -> Parser:
    parser = Parser(prog="ringlab", description="Finite-ring laboratory for clean, almost clean and Rickart structure")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)
    common = common_options()
    for command in COMMANDS:
        command.register(subparsers, common)
    return parser


def _fail(error: Exception, code: int, as_json: bool) -> int:
    if as_json:
        print(ErrorResponse(error=type(error).__name__, detail=str(error)).model_dump_json(indent=2))
    else:
        print(f"error: {error}", file=sys.stderr)
    return code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
    except RingLabError as e:
        return _fail(e, 1, as_json)

    setup_logging(args.log_level, args.log_format)
    try:
        code = args.handler(args)
    except (NotRickartAt, NotAbelian, NoDecomposition) as e:
        code = _fail(e, 2, as_json)
    except (BudgetExceeded, SizeBudgetExceeded) as e:
        logger.warning("budget exhausted", command=args.command, error=str(e))
        code = _fail(e, 3, as_json)
    except (RingLabError, ValidationError) as e:
        logger.error("command failed", command=args.command, error=str(e))
        code = _fail(e, 1, as_json)
    finally:
        export_metrics(args.metrics or settings.metrics_path)
    return code
