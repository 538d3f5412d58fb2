"""
JSON storage of configurations.

Schema:
    {"d": int, "conductors": [m1, m2],
     "curves": [{"slope": [QuadInt, QuadInt], "base": ["p/q", "p/q", "p/q", "p/q"]}]}

with QuadInt = {"d": int, "x": int, "y": int}. Output is canonical: curves sorted by
the (y, x) coordinates of their slope entries, bases in normal form.
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Tuple

from ..core import catalog
from ..core.geometry import Ambient, Configuration, configuration, curve_new, sorted_curves
from ..core.quad import FieldTag, QuadInt
from .errors import CuspforgeError, InputError
from .literals import format_rational, parse_rational

logger = logging.getLogger(__name__)


def configuration_to_dict(config: Configuration) -> Dict[str, Any]:
    return {
        "d": config.ambient.tag.d,
        "conductors": list(config.ambient.conductors),
        "curves": [
            {
                "slope": [curve.a.to_dict(), curve.b.to_dict()],
                "base": [format_rational(c) for c in curve.base.coords],
            }
            for curve in sorted_curves(config)
        ],
    }


def _is_int(value: Any) -> bool:
    # json booleans are ints in Python
    return isinstance(value, int) and not isinstance(value, bool)


def _quadint(data: Any, tag: FieldTag) -> QuadInt:
    if not isinstance(data, dict) or not {"d", "x", "y"} <= set(data):
        raise InputError(f"Expected a QuadInt object {{d, x, y}}, got {data!r}")
    if not all(_is_int(data[k]) for k in ("d", "x", "y")):
        raise InputError(f"QuadInt fields must be integers: {data!r}")
    if data["d"] != tag.d:
        raise InputError(f"QuadInt {data!r} does not match the configuration field d={tag.d}")
    return QuadInt(tag, data["x"], data["y"])


def configuration_from_dict(data: Dict[str, Any]) -> Configuration:
    """
    Build a configuration from its JSON form.

    Raises:
        InputError: If the document does not follow the schema or describes
            an invalid configuration
    """
    if not isinstance(data, dict):
        raise InputError("Configuration document must be a JSON object")
    for key in ("d", "curves"):
        if key not in data:
            raise InputError(f"Configuration is missing '{key}'")
    if not _is_int(data["d"]):
        raise InputError(f"'d' must be an integer, got {data['d']!r}")
    conductors = data.get("conductors", [1, 1])
    if (
        not isinstance(conductors, list)
        or len(conductors) != 2
        or not all(_is_int(m) for m in conductors)
    ):
        raise InputError(f"'conductors' must be a list of two integers, got {conductors!r}")
    if not isinstance(data["curves"], list) or not data["curves"]:
        raise InputError("'curves' must be a non-empty list")

    try:
        tag = FieldTag(int(data["d"]))
        ambient = Ambient(tag, tuple(conductors))
        curves = []
        for index, entry in enumerate(data["curves"]):
            if not isinstance(entry, dict) or "slope" not in entry:
                raise InputError(f"Curve {index} needs a 'slope'")
            slope = entry["slope"]
            if not isinstance(slope, list) or len(slope) != 2:
                raise InputError(f"Curve {index}: 'slope' must hold two QuadInt objects")
            base = entry.get("base", ["0", "0", "0", "0"])
            if not isinstance(base, list) or len(base) != 4:
                raise InputError(f"Curve {index}: 'base' must hold four rationals")
            curves.append(
                curve_new(
                    ambient,
                    (_quadint(slope[0], tag), _quadint(slope[1], tag)),
                    [parse_rational(c) for c in base],
                )
            )
        return configuration(ambient, curves)
    except InputError:
        raise
    except (CuspforgeError, TypeError, ValueError) as e:
        raise InputError(f"Invalid configuration: {e}") from e


def dumps_configuration(config: Configuration) -> str:
    return json.dumps(configuration_to_dict(config), indent=2) + "\n"


def read_configuration(path: Path) -> Configuration:
    try:
        with open(path, "r", encoding="utf-8") as f:
            data = json.load(f)
    except json.JSONDecodeError as e:
        raise InputError(f"{path} is not valid JSON: {e}") from e
    logger.info(f"Loaded configuration from {path}")
    return configuration_from_dict(data)


def write_configuration(config: Configuration, path: Path):
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps_configuration(config))
    logger.info(f"Wrote configuration to {path}")


def resolve_configuration(source: str) -> Tuple[str, Configuration]:
    """
    A catalog key or a path to a configuration file.

    Returns:
        (label, configuration)

    Raises:
        InputError: If the source is neither
    """
    if source.strip().lower() in catalog.CATALOG:
        named = catalog.load(source)
        return named.key, named.configuration
    path = Path(source)
    if not path.is_file():
        raise InputError(
            f"'{source}' is neither a catalog key ({', '.join(catalog.keys())}) nor a file"
        )
    return path.name, read_configuration(path)
