#!/usr/bin/env python3
"""
cuspforge main entry point.
Command-line surface for ball-quotient invariants of co-abelian compactifications.
"""

import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

if __package__ in (None, ""):
    sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from cuspforge.utils.command_registry import CommandRegistry  # noqa: E402
from cuspforge.utils.config import Config  # noqa: E402
from cuspforge.utils.errors import (  # noqa: E402
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL,
    CosetLimitError,
    CuspforgeError,
    DomainError,
    InputError,
    InternalConsistencyError,
    UnsupportedCaseError,
)

logger = logging.getLogger(__name__)


def setup_logging(level: Optional[str] = None):
    """Log to stderr and, when CUSPFORGE_LOG_FILE is set, to that file."""
    log_level = getattr(logging, (level or Config.LOG_LEVEL).upper(), logging.WARNING)

    handlers = [logging.StreamHandler(sys.stderr)]
    if Config.LOG_FILE:
        log_file = Path(Config.LOG_FILE)
        log_file.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_file))

    logging.basicConfig(
        level=log_level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that reports usage errors as InputError instead of exiting."""

    def error(self, message):
        raise InputError(message)


def build_parser(registry: CommandRegistry = None) -> argparse.ArgumentParser:
    parser = CliParser(
        prog="cuspforge",
        description="Exact invariants of co-abelian ball-quotient compactifications",
    )
    parser.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR (default: LOG_LEVEL)")
    subparsers = parser.add_subparsers(dest="command", help="Available commands")

    registry = registry or CommandRegistry()
    results = registry.register_all(subparsers)
    failed = [name for name, ok in results.items() if not ok]
    if failed:
        logger.warning(f"Commands failed to register: {', '.join(failed)}")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse arguments, run one subcommand and return its exit code."""
    errors = Config.validate()
    if errors:
        for error in errors:
            print(f"❌ {error}", file=sys.stderr)
        return EXIT_INPUT_ERROR

    try:
        parser = build_parser()
        args = parser.parse_args(argv)
        setup_logging(args.log_level)
        if not args.command:
            parser.print_help()
            return EXIT_INPUT_ERROR
        return args.handler(args)

    except InternalConsistencyError as e:
        logger.error(f"Internal consistency failure: {e}")
        print(f"❌ Internal consistency failure: {e}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, DomainError, CosetLimitError, UnsupportedCaseError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except OSError as e:
        print(f"❌ File error: {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except CuspforgeError as e:
        logger.error(f"Unhandled cuspforge error: {e}")
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
