"""
Configuration management for cuspforge.
"""

import logging
import os
from typing import List, Optional

from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> Optional[int]:
    """Read an integer environment variable; None marks an unparsable value."""
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw.strip().replace("_", ""))
    except ValueError:
        return None


class Config:
    """Configuration class that loads settings from environment variables."""

    # Lattice engine
    COSET_CAP = _int_env("CUSPFORGE_COSET_CAP", 1_000_000)

    # Pairwise intersections inside singular_locus
    WORKERS = _int_env("CUSPFORGE_WORKERS", 1)

    # Logging
    LOG_LEVEL = os.getenv("LOG_LEVEL", "WARNING").upper()
    LOG_FILE = os.getenv("CUSPFORGE_LOG_FILE")

    @classmethod
    def validate(cls) -> List[str]:
        """Validate configuration and return list of errors."""
        errors = []

        if cls.COSET_CAP is None or cls.COSET_CAP < 1:
            errors.append("CUSPFORGE_COSET_CAP must be a positive integer")

        if cls.WORKERS is None or cls.WORKERS < 1:
            errors.append("CUSPFORGE_WORKERS must be a positive integer")

        if not isinstance(getattr(logging, cls.LOG_LEVEL, None), int):
            errors.append(f"LOG_LEVEL '{cls.LOG_LEVEL}' is not a logging level")

        return errors

    @classmethod
    def is_valid(cls) -> bool:
        """Check if configuration is valid."""
        return len(cls.validate()) == 0
