# Command: allvolumes
# Version: 1.0.0
# Description: Every volume m * 8pi^2/3 from the mixed-conductor Hirzebruch pull-backs

"""
AllVolumes Command - rows m = 1..M, each recomputed from its singular locus.
"""

import sys

from ..core.series import all_volumes_table
from ..utils.errors import EXIT_OK
from ..utils.formatting import SERIES_COLUMNS, OutputFormat, render_table, series_row


class AllVolumesCommand:
    def run(self, args) -> int:
        records = all_volumes_table(args.max)
        rows = [series_row(r, args.float) for r in records]
        sys.stdout.write(render_table(rows, SERIES_COLUMNS, OutputFormat.parse(args.format)))
        return EXIT_OK


def setup(subparsers):
    """Register the allvolumes subcommand."""
    parser = subparsers.add_parser("allvolumes", help="Volumes of E_-3 x E_-3,m pull-backs")
    parser.add_argument("--max", type=int, default=10, help="Largest conductor m")
    parser.add_argument("--format", default="csv", help="json, csv or markdown")
    parser.add_argument("--float", action="store_true", help="Print volumes as decimals")
    parser.set_defaults(handler=AllVolumesCommand().run)
