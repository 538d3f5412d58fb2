# Command: check
# Version: 1.0.0
# Description: Proportionality check of a configuration (catalog key or JSON file)

"""
Check Command - singular locus, proportionality verdict and Euler number.
"""

import logging
import sys

from ..core.geometry import euler_number, singular_locus
from ..utils.errors import EXIT_NON_PROPORTIONAL, EXIT_OK
from ..utils.formatting import OutputFormat, format_volume, render_document
from ..utils.serialization import resolve_configuration

logger = logging.getLogger(__name__)

POINT_COLUMNS = ("point", "incidence")


class CheckCommand:
    """Runs the abelian proportionality test on one configuration."""

    def build_report(self, source: str, as_float: bool = False) -> dict:
        label, config = resolve_configuration(source)
        report = singular_locus(config)
        e = euler_number(config, report)
        return {
            "configuration": label,
            "d": config.ambient.tag.d,
            "conductors": "{},{}".format(*config.ambient.conductors),
            "components": len(config),
            "singular_points": report.total,
            "incidence_sum": report.incidence_sum,
            "proportional": report.proportional,
            "vacuous": report.vacuous,
            "intersecting": report.intersecting,
            "e": e,
            "volume": format_volume(e, as_float),
            "points": [
                {"point": str(point), "incidence": incidence}
                for point, incidence in report.points
            ],
        }

    def run(self, args) -> int:
        document = self.build_report(args.source, args.float)
        fmt = OutputFormat.parse(args.format)
        sys.stdout.write(render_document(document, fmt, "points", POINT_COLUMNS))

        if document["proportional"] and document["intersecting"]:
            return EXIT_OK
        logger.info(f"{document['configuration']} is not a proportional intersecting configuration")
        return EXIT_NON_PROPORTIONAL


def setup(subparsers):
    """Register the check subcommand."""
    parser = subparsers.add_parser("check", help="Check proportionality of a configuration")
    parser.add_argument("source", help="Catalog key (hirzebruch, d14, holzapfel) or JSON file")
    parser.add_argument("--format", default="json", help="json, csv or markdown")
    parser.add_argument("--float", action="store_true", help="Print the volume as a decimal")
    parser.set_defaults(handler=CheckCommand().run)
