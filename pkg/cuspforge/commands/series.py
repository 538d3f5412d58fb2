# Command: series
# Version: 1.0.0
# Description: Tables of the birational, four-cusp and non-birational isogeny series

"""
Series Command - one row per term, computed values next to the closed formula.
"""

import logging
import sys
from typing import List, Optional

from ..core import catalog
from ..core.series import (
    DEFAULT_BASES,
    KIND_BIRATIONAL,
    KIND_FOUR_CUSP,
    KIND_NON_BIRATIONAL,
    KINDS,
    SeriesTermRecord,
    cycle_terms,
    series_birational,
    series_four_cusp,
    series_nonbirational,
)
from ..utils.errors import EXIT_OK, InputError
from ..utils.formatting import SERIES_COLUMNS, OutputFormat, render_table, series_row
from ..utils.literals import QuadIntParser, parse_int_list

logger = logging.getLogger(__name__)


class SeriesCommand:
    """Builds series tables from a generator recipe."""

    def __init__(self):
        self.parser = QuadIntParser()

    def _terms(self, items: List, terms: Optional[int]) -> List:
        if terms is None:
            return items
        if terms < 1:
            raise InputError("--terms must be at least 1")
        return cycle_terms(items, terms)

    def compute(self, args) -> List[SeriesTermRecord]:
        kind = args.kind
        if kind not in KINDS:
            raise InputError(f"Unknown series kind '{kind}' (choose from {', '.join(KINDS)})")
        named = catalog.load(args.base or DEFAULT_BASES[kind])

        if kind == KIND_NON_BIRATIONAL:
            if not args.ks:
                raise InputError("The non-birational series needs --ks")
            ks = self._terms(parse_int_list(args.ks), args.terms)
            return series_nonbirational(ks, named)

        if not args.gammas:
            raise InputError(f"The {kind} series needs --gammas")
        tag = named.configuration.ambient.tag
        gammas = self._terms(self.parser.parse_list(args.gammas, tag), args.terms)
        if kind == KIND_BIRATIONAL:
            return series_birational(gammas, named)
        if kind == KIND_FOUR_CUSP:
            return series_four_cusp(gammas, named)
        raise InputError(f"Unknown series kind '{kind}'")

    def run(self, args) -> int:
        records = self.compute(args)
        if not args.include_base:
            records = [r for r in records if r.n >= 1]
        rows = [series_row(r, args.float) for r in records]
        for row in rows:
            if row["mismatch"]:
                logger.warning(
                    f"Term {row['n']}: computed h={row['h']}, formula {row['formula_h']}"
                )
        sys.stdout.write(render_table(rows, SERIES_COLUMNS, OutputFormat.parse(args.format)))
        return EXIT_OK


def setup(subparsers):
    """Register the series subcommand."""
    parser = subparsers.add_parser("series", help="Compute an isogeny series table")
    parser.add_argument("--kind", required=True, choices=KINDS, help="Series kind")
    parser.add_argument("--gammas", help="Comma separated QuadInt literals, e.g. 1+1w,2+1w")
    parser.add_argument("--ks", help="Comma separated conductor factors, e.g. 2,3,2")
    parser.add_argument("--terms", type=int, help="Number of terms; generators are cycled")
    parser.add_argument("--base", help="Catalog key of the base configuration")
    parser.add_argument("--include-base", action="store_true", help="Also print the n=0 row")
    parser.add_argument("--format", default="csv", help="json, csv or markdown")
    parser.add_argument("--float", action="store_true", help="Print volumes as decimals")
    parser.set_defaults(handler=SeriesCommand().run)
