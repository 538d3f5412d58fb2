# Command: export
# Version: 1.0.0
# Description: Write a catalog configuration in the JSON configuration schema

"""
Export Command - catalog fixtures as loadable configuration files.
"""

import logging
import sys
from pathlib import Path

from ..core import catalog
from ..utils.errors import EXIT_OK, InputError
from ..utils.serialization import dumps_configuration, write_configuration

logger = logging.getLogger(__name__)


class ExportCommand:
    def run(self, args) -> int:
        if args.format != "json":
            raise InputError("export only writes json")
        named = catalog.load(args.key)
        if args.output:
            write_configuration(named.configuration, Path(args.output))
            print(f"✅ Exported {named.key} to {args.output}", file=sys.stderr)
        else:
            sys.stdout.write(dumps_configuration(named.configuration))
        return EXIT_OK


def setup(subparsers):
    """Register the export subcommand."""
    parser = subparsers.add_parser("export", help="Export a catalog configuration as JSON")
    parser.add_argument("key", help="Catalog key (hirzebruch, d14, holzapfel)")
    parser.add_argument("--format", default="json", help="Only json is supported")
    parser.add_argument("--output", "-o", help="Output file (default: stdout)")
    parser.set_defaults(handler=ExportCommand().run)
