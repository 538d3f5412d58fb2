"""
Rendering of reports and tables as JSON, CSV or markdown.
"""

import csv
import io
import json
import math
from enum import Enum
from typing import Any, Dict, List, Sequence

from .errors import InputError

VOLUME_UNIT = "8π²/3"


class OutputFormat(str, Enum):
    JSON = "json"
    CSV = "csv"
    MARKDOWN = "markdown"

    @classmethod
    def parse(cls, value: str) -> "OutputFormat":
        try:
            return cls(value.strip().lower())
        except ValueError:
            choices = ", ".join(f.value for f in cls)
            raise InputError(f"Unknown format '{value}' (choose from {choices})")


def format_volume(units: int, as_float: bool = False) -> str:
    """`e × 8π²/3`, or its decimal approximation for display."""
    if as_float:
        return f"{units * 8 * math.pi ** 2 / 3:.6f}"
    return f"{units} × {VOLUME_UNIT}"


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


def render_table(rows: List[Dict[str, Any]], columns: Sequence[str], fmt: OutputFormat) -> str:
    """Render rows (dicts keyed by column name) in the requested format."""
    if fmt == OutputFormat.JSON:
        return json.dumps([{c: row.get(c) for c in columns} for row in rows], indent=2) + "\n"
    if fmt == OutputFormat.CSV:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(c)) for c in columns])
        return buffer.getvalue()

    lines = [
        "| " + " | ".join(columns) + " |",
        "|" + "|".join("---" for _ in columns) + "|",
    ]
    for row in rows:
        lines.append("| " + " | ".join(_cell(row.get(c)) for c in columns) + " |")
    return "\n".join(lines) + "\n"


def render_document(document: Dict[str, Any], fmt: OutputFormat,
                    table_key: str = None, columns: Sequence[str] = ()) -> str:
    """
    Render a report: scalar fields as key/value pairs, plus an optional nested table.
    """
    if fmt == OutputFormat.JSON:
        return json.dumps(document, indent=2, ensure_ascii=False) + "\n"

    scalars = [
        {"field": key, "value": value}
        for key, value in document.items()
        if key != table_key and not isinstance(value, (list, dict))
    ]
    output = render_table(scalars, ("field", "value"), fmt)
    if table_key and document.get(table_key):
        output += "\n" + render_table(document[table_key], columns, fmt)
    return output


SERIES_COLUMNS = ("n", "degree", "e", "volume_units", "h", "conductor", "formula_h", "mismatch")


def series_row(record, as_float: bool = False) -> Dict[str, Any]:
    """One table row for a SeriesTermRecord."""
    return {
        "n": record.n,
        "degree": record.degree_total,
        "e": record.volume_units,
        "volume_units": format_volume(record.volume_units, as_float),
        "h": record.cusp_count,
        "conductor": record.source_conductor,
        "formula_h": record.formula_h,
        "mismatch": record.mismatch,
    }
