# Command: pullback
# Version: 1.0.0
# Description: Pull a configuration back along a diagonal isogeny diag(alpha, beta)

"""
Pullback Command - degree, per-curve component counts, cusps and Euler number of mu^-1(D).
"""

import logging
import sys

from ..core.isogeny import DiagonalIsogeny, pullback_report
from ..utils.errors import EXIT_OK, InputError
from ..utils.formatting import OutputFormat, format_volume, render_document, render_table
from ..utils.literals import QuadIntParser, format_quadint, format_rational
from ..utils.serialization import resolve_configuration

logger = logging.getLogger(__name__)

CURVE_COLUMNS = ("slope", "components", "closed_form", "case", "axis_count")
COMPONENT_COLUMNS = ("slope", "base")


class PullbackCommand:
    """Computes mu^-1(D) for a configuration on the maximal-order square."""

    def __init__(self):
        self.parser = QuadIntParser()

    def build_report(self, args) -> dict:
        label, config = resolve_configuration(args.source)
        tag = config.ambient.tag
        if args.m1 < 1 or args.m2 < 1:
            raise InputError("Conductors must be positive")
        mu = DiagonalIsogeny(
            tag,
            self.parser.parse(args.alpha, tag),
            self.parser.parse(args.beta, tag),
            (args.m1, args.m2),
        )
        report = pullback_report(mu, config)

        curves = []
        for decomposition in report.decompositions:
            closed = decomposition.closed_form
            curves.append(
                {
                    "slope": _slope_text(decomposition.curve.slope),
                    "components": decomposition.count,
                    "closed_form": closed.count if closed else None,
                    "case": closed.case if closed else None,
                    "axis_count": closed.axis_count if closed else None,
                }
            )
        document = {
            "configuration": label,
            "isogeny": f"diag({format_quadint(mu.alpha)}, {format_quadint(mu.beta)})",
            "source_conductors": f"{args.m1},{args.m2}",
            "degree": report.degree,
            "h": report.cusps,
            "e": report.euler,
            "volume": format_volume(report.euler, args.float),
            "proportional": report.locus.proportional,
            "curves": curves,
        }
        if args.list:
            document["components"] = [
                {
                    "slope": _slope_text(c.slope),
                    "base": " ".join(format_rational(v) for v in c.base.coords),
                }
                for c in report.configuration.curves
            ]
        return document

    def run(self, args) -> int:
        document = self.build_report(args)
        fmt = OutputFormat.parse(args.format)
        components = document.pop("components", None)
        if fmt == OutputFormat.JSON:
            if components is not None:
                document["components"] = components
            sys.stdout.write(render_document(document, fmt))
            return EXIT_OK

        sys.stdout.write(render_document(document, fmt, "curves", CURVE_COLUMNS))
        if components is not None:
            sys.stdout.write("\n" + render_table(components, COMPONENT_COLUMNS, fmt))
        return EXIT_OK


def _slope_text(slope) -> str:
    return f"({format_quadint(slope[0])}, {format_quadint(slope[1])})"


def setup(subparsers):
    """Register the pullback subcommand."""
    parser = subparsers.add_parser(
        "pullback", help="Pull back a configuration along diag(alpha, beta)"
    )
    parser.add_argument("source", help="Catalog key or JSON file on the maximal-order square")
    parser.add_argument("--alpha", default="1", help="QuadInt literal, e.g. 1+1w")
    parser.add_argument("--beta", default="1", help="QuadInt literal, e.g. -1+2w")
    parser.add_argument("--m1", type=int, default=1, help="Conductor of the first source factor")
    parser.add_argument("--m2", type=int, default=1, help="Conductor of the second source factor")
    parser.add_argument("--format", default="json", help="json, csv or markdown")
    parser.add_argument("--list", action="store_true", help="List every pulled-back component")
    parser.add_argument("--float", action="store_true", help="Print the volume as a decimal")
    parser.set_defaults(handler=PullbackCommand().run)
