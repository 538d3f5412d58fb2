"""
Literal parsing for command-line values (QuadInt literals, rationals, integer lists).
"""

import re
from fractions import Fraction
from typing import List, Optional, Tuple

from ..core.quad import FieldTag, QuadInt
from .errors import InputError


class QuadIntParser:
    """Parse `[-]x[+|-]y*w` literals into QuadInt values.

    `w` stands for the generator ω of whatever ring the surrounding command works in,
    so the field is always supplied by the caller, never by the literal.
    """

    def __init__(self):
        # Regex patterns for the accepted literal shapes
        self.patterns = {
            "integer": re.compile(r"^([+-]?\d+)$"),
            "omega": re.compile(r"^([+-]?)(?:(\d+)\*?)?w$", re.IGNORECASE),
            "combined": re.compile(r"^([+-]?\d+)([+-])(?:(\d+)\*?)?w$", re.IGNORECASE),
        }

    def parse_coordinates(self, text: str) -> Tuple[int, int]:
        """
        Parse a literal and return its (x, y) coordinates in the basis (1, ω).

        Args:
            text: literal such as "1+1w", "-1+2*w", "w", "-3"

        Returns:
            the pair (x, y)

        Raises:
            InputError: If the literal does not follow the grammar
        """
        literal = re.sub(r"\s+", "", text or "")

        integer_match = self.patterns["integer"].match(literal)
        if integer_match:
            return int(integer_match.group(1)), 0

        omega_match = self.patterns["omega"].match(literal)
        if omega_match:
            sign, digits = omega_match.groups()
            return 0, self._signed(sign, digits)

        combined_match = self.patterns["combined"].match(literal)
        if combined_match:
            x, sign, digits = combined_match.groups()
            return int(x), self._signed(sign, digits)

        raise InputError(f"Could not parse QuadInt literal: '{text}'")

    def parse(self, text: str, tag: FieldTag) -> QuadInt:
        """Parse a literal into an element of the ring named by `tag`."""
        x, y = self.parse_coordinates(text)
        return QuadInt(tag, x, y)

    def parse_list(self, text: str, tag: FieldTag) -> List[QuadInt]:
        """Parse a comma separated list of literals."""
        items = [item for item in (text or "").split(",") if item.strip()]
        if not items:
            raise InputError("Expected at least one QuadInt literal")
        return [self.parse(item, tag) for item in items]

    @staticmethod
    def _signed(sign: str, digits: Optional[str]) -> int:
        value = int(digits) if digits else 1
        return -value if sign == "-" else value


def format_quadint(q: QuadInt) -> str:
    """Inverse of QuadIntParser.parse for display purposes."""
    if q.y == 0:
        return str(q.x)
    y_part = "w" if abs(q.y) == 1 else f"{abs(q.y)}*w"
    if q.x == 0:
        return f"-{y_part}" if q.y < 0 else y_part
    sign = "-" if q.y < 0 else "+"
    return f"{q.x}{sign}{y_part}"


def parse_rational(text: str) -> Fraction:
    """Parse a "p/q" rational string."""
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError) as e:
        raise InputError(f"Invalid rational '{text}': {e}") from e


def format_rational(value: Fraction) -> str:
    return str(Fraction(value))


def parse_int_list(text: str, minimum: int = 2) -> List[int]:
    """Parse a comma separated list of integers, each at least `minimum`."""
    values = []
    for item in (text or "").split(","):
        if not item.strip():
            continue
        try:
            value = int(item.strip())
        except ValueError:
            raise InputError(f"Invalid integer '{item.strip()}'")
        if value < minimum:
            raise InputError(f"Value {value} is below the minimum {minimum}")
        values.append(value)
    if not values:
        raise InputError("Expected at least one integer")
    return values
