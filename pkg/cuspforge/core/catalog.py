"""
Built-in proportional elliptic configurations, validated against a fresh
singular-locus computation whenever they are loaded.

Slopes written with e^{i*pi/3} and sqrt(-3)*e^{-i*pi/3} are stored as exact
coordinates in the basis (1, w):

    e^{i*pi/3}            = w        (d=3, w = (1 + sqrt(-3)) / 2)
    sqrt(-3)*e^{-i*pi/3}  = 1 + w

`check_transcription` re-derives both identities numerically.
"""

import cmath
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List

from ..utils.errors import InputError, InternalConsistencyError
from .geometry import Ambient, Configuration, apply_gl2, configuration, curve_new, singular_locus
from .quad import FieldTag, QuadInt, to_complex

logger = logging.getLogger(__name__)

TRANSCRIPTION_TOLERANCE = 1e-12

EISENSTEIN = FieldTag(3)
GAUSSIAN = FieldTag(1)


@dataclass(frozen=True)
class ExpectedInvariants:
    components: int
    singular_points: int
    proportional: bool
    e: int

    def to_dict(self) -> Dict:
        return {
            "components": self.components,
            "singular_points": self.singular_points,
            "proportional": self.proportional,
            "e": self.e,
        }


@dataclass(frozen=True)
class NamedConfiguration:
    key: str
    title: str
    configuration: Configuration
    expected: ExpectedInvariants

    def validate(self) -> "NamedConfiguration":
        """
        Recompute the invariants and compare them with the expected block.

        Raises:
            InternalConsistencyError: If anything differs
        """
        report = singular_locus(self.configuration)
        found = ExpectedInvariants(
            components=len(self.configuration),
            singular_points=report.total,
            proportional=report.proportional,
            e=report.total,
        )
        if found != self.expected:
            raise InternalConsistencyError(
                f"Catalog entry '{self.key}' failed self-validation: {found} != {self.expected}"
            )
        logger.debug(f"Catalog entry '{self.key}' validated")
        return self


def check_transcription():
    """
    Numerical cross-check of the transcendental slope constants.

    Raises:
        InternalConsistencyError: If an exact constant does not match its closed form
    """
    w = to_complex(QuadInt(EISENSTEIN, 0, 1))
    sqrt_minus_3 = complex(0, math.sqrt(3))
    checks = {
        "e^{i pi/3}": (w, cmath.exp(1j * math.pi / 3)),
        "sqrt(-3) e^{-i pi/3}": (
            to_complex(QuadInt(EISENSTEIN, 1, 1)),
            sqrt_minus_3 * cmath.exp(-1j * math.pi / 3),
        ),
        "sqrt(-3)": (to_complex(QuadInt(EISENSTEIN, -1, 2)), sqrt_minus_3),
    }
    for name, (exact, closed) in checks.items():
        if abs(exact - closed) > TRANSCRIPTION_TOLERANCE:
            raise InternalConsistencyError(
                f"Transcription of {name} is off by {abs(exact - closed)}"
            )


def _eisenstein(x: int, y: int = 0) -> QuadInt:
    return QuadInt(EISENSTEIN, x, y)


def _gaussian(x: int, y: int = 0) -> QuadInt:
    return QuadInt(GAUSSIAN, x, y)


def _build(ambient: Ambient, entries) -> Configuration:
    return configuration(ambient, [curve_new(ambient, slope, base) for slope, base in entries])


def _hirzebruch_configuration() -> Configuration:
    ambient = Ambient(EISENSTEIN)
    return _build(
        ambient,
        [
            ((_eisenstein(1), _eisenstein(0)), None),
            ((_eisenstein(0), _eisenstein(1)), None),
            ((_eisenstein(1), _eisenstein(1)), None),
            # E(1, e^{i pi/3})
            ((_eisenstein(1), _eisenstein(0, 1)), None),
        ],
    )


def hirzebruch() -> NamedConfiguration:
    check_transcription()
    return NamedConfiguration(
        key="hirzebruch",
        title="Hirzebruch configuration on E_-3 x E_-3",
        configuration=_hirzebruch_configuration(),
        expected=ExpectedInvariants(components=4, singular_points=1, proportional=True, e=1),
    ).validate()


D14_TRANSFORM = [[_eisenstein(1), _eisenstein(0, 1)], [_eisenstein(0), _eisenstein(1)]]


def d14() -> NamedConfiguration:
    """The image of the Hirzebruch configuration under [[1, w], [0, 1]]."""
    check_transcription()
    ambient = Ambient(EISENSTEIN)
    config = _build(
        ambient,
        [
            ((_eisenstein(1), _eisenstein(0)), None),
            # E(e^{i pi/3}, 1)
            ((_eisenstein(0, 1), _eisenstein(1)), None),
            # E(sqrt(-3) e^{-i pi/3}, 1)
            ((_eisenstein(1, 1), _eisenstein(1)), None),
            ((_eisenstein(1), _eisenstein(1)), None),
        ],
    )
    image = apply_gl2(D14_TRANSFORM, _hirzebruch_configuration())
    if not config.same_curves(image):
        raise InternalConsistencyError("d14 is not the image of the Hirzebruch configuration")
    return NamedConfiguration(
        key="d14",
        title="Four-cusp configuration D(1,4) on E_-3 x E_-3",
        configuration=config,
        expected=ExpectedInvariants(components=4, singular_points=1, proportional=True, e=1),
    ).validate()


HALF = Fraction(1, 2)
# Q03 = (0, (1+i)/2), Q30 = ((1+i)/2, 0)
Q00 = (0, 0, 0, 0)
Q03 = (0, 0, HALF, HALF)
Q30 = (HALF, HALF, 0, 0)


def holzapfel() -> NamedConfiguration:
    ambient = Ambient(GAUSSIAN)
    i = _gaussian(0, 1)
    config = _build(
        ambient,
        [
            ((_gaussian(1), _gaussian(0)), None),
            ((_gaussian(0), _gaussian(1)), None),
            ((_gaussian(-1), _gaussian(1)), Q03),
            ((_gaussian(-1, -1), _gaussian(1)), None),
            ((_gaussian(-1), _gaussian(1, -1)), None),
            ((-i, _gaussian(1)), Q03),
        ],
    )
    return NamedConfiguration(
        key="holzapfel",
        title="Holzapfel configuration on E_-1 x E_-1",
        configuration=config,
        expected=ExpectedInvariants(components=6, singular_points=3, proportional=True, e=3),
    ).validate()


CATALOG: Dict[str, Callable[[], NamedConfiguration]] = {
    "hirzebruch": hirzebruch,
    "d14": d14,
    "holzapfel": holzapfel,
}


def keys() -> List[str]:
    return sorted(CATALOG)


def load(key: str) -> NamedConfiguration:
    """
    Build and self-validate a catalog entry.

    Raises:
        InputError: If the key is unknown
    """
    factory = CATALOG.get(key.strip().lower())
    if factory is None:
        raise InputError(f"Unknown catalog key '{key}' (known: {', '.join(keys())})")
    return factory()
