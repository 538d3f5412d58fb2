"""
Elliptic curves E(a,b) + (P,Q) on products E_-d,m1 x E_-d,m2, their
intersections, elliptic configurations and the abelian proportionality test.

A point of the ambient surface is a 4-vector of rationals (u0, u1, v0, v1):
u = u0 + u1*w on the first factor, v = v0 + v1*w on the second.
"""

import logging
from functools import cached_property
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple, Union

from ..utils.config import Config
from ..utils.errors import DomainError, ParallelCurvesError
from . import lattice
from .lattice import Lattice2, Lattice4
from .quad import (
    FieldTag,
    OrderRef,
    QuadInt,
    div_coords,
    field_mul,
    gcd,
    is_unit,
    mul,
    mul_coords,
    mul_matrix,
    normalizing_unit,
    div_exact,
)

logger = logging.getLogger(__name__)

Rational = Union[int, Fraction]
PointCoords = Tuple[Fraction, Fraction, Fraction, Fraction]


@dataclass(frozen=True)
class Ambient:
    """The abelian surface E_-d,m1 x E_-d,m2."""

    tag: FieldTag
    conductors: Tuple[int, int] = (1, 1)

    def __post_init__(self):
        if len(self.conductors) != 2 or min(self.conductors) < 1:
            raise DomainError(f"Invalid conductors {self.conductors}")

    @property
    def is_maximal(self) -> bool:
        return self.conductors == (1, 1)

    def order(self, factor: int) -> OrderRef:
        return OrderRef(self.tag, self.conductors[factor])

    def factor_lattice(self, factor: int) -> Lattice2:
        return lattice.lattice_of_order(self.order(factor))

    @cached_property
    def lattice(self) -> Lattice4:
        return lattice.product_lattice(self.factor_lattice(0), self.factor_lattice(1))


@dataclass(frozen=True, order=True)
class TorsionPoint:
    """A torsion point, canonicalized modulo the ambient lattice."""

    coords: PointCoords
    ambient: Ambient = field(compare=False)

    @classmethod
    def of(cls, ambient: Ambient, coords: Sequence[Rational]) -> "TorsionPoint":
        if len(coords) != 4:
            raise DomainError(f"A point needs 4 coordinates, got {len(coords)}")
        return cls(coords=lattice.reduce(ambient.lattice, coords), ambient=ambient)

    @classmethod
    def origin(cls, ambient: Ambient) -> "TorsionPoint":
        return cls.of(ambient, (0, 0, 0, 0))

    @property
    def u(self) -> Tuple[Fraction, Fraction]:
        return self.coords[:2]

    @property
    def v(self) -> Tuple[Fraction, Fraction]:
        return self.coords[2:]

    def __add__(self, other: "TorsionPoint") -> "TorsionPoint":
        return TorsionPoint.of(self.ambient, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other: "TorsionPoint") -> "TorsionPoint":
        return TorsionPoint.of(self.ambient, [a - b for a, b in zip(self.coords, other.coords)])

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


@dataclass(frozen=True)
class CurveOnSquare:
    """
    The curve {(a*t, b*t) : t in C} + base on the ambient surface.

    `key` identifies the curve as a point set: slope direction in P^1 and the class
    of the base point in C / (r*L1 + L2) (or C / L1 for vertical curves).
    """

    ambient: Ambient
    slope: Tuple[QuadInt, QuadInt]
    base: TorsionPoint
    canonical: bool
    key: tuple = field(repr=False)

    @property
    def a(self) -> QuadInt:
        return self.slope[0]

    @property
    def b(self) -> QuadInt:
        return self.slope[1]

    def __str__(self) -> str:
        return f"E({self.a}, {self.b}) + {self.base}"


def _direction(a: QuadInt, b: QuadInt) -> Optional[Tuple[Fraction, Fraction]]:
    """b / a as field coordinates, or None for the vertical direction a == 0."""
    if not a:
        return None
    return div_coords(b.coords, a)


def _normal_lattice(ambient: Ambient, direction) -> Lattice2:
    """The lattice L with (u, v) -> r*u - v (or u when vertical) well defined modulo L."""
    first, second = ambient.factor_lattice(0), ambient.factor_lattice(1)
    if direction is None:
        return first
    if not any(direction):
        # horizontal: r*L1 collapses to 0
        return second
    return lattice.lattice_sum(lattice.scale(first, direction), second)


def _normal_value(ambient: Ambient, direction, coords: Sequence[Rational]):
    tag = ambient.tag
    u, v = coords[:2], coords[2:]
    if direction is None:
        return (Fraction(u[0]), Fraction(u[1]))
    ru = field_mul(direction, u, tag)
    return (ru[0] - v[0], ru[1] - v[1])


def _normalize_slope(a: QuadInt, b: QuadInt) -> Tuple[QuadInt, QuadInt]:
    g = gcd(a, b)
    a, b = div_exact(a, g), div_exact(b, g)
    u = normalizing_unit(a if a else b)
    return mul(u, a), mul(u, b)


def curve_new(
    ambient: Ambient,
    slope: Sequence[QuadInt],
    base: Union[TorsionPoint, Sequence[Rational], None] = None,
) -> CurveOnSquare:
    """
    Build a curve in normal form.

    On the maximal-order square the slope is divided by its gcd and unit-normalized;
    on other ambients it is stored as given. The base is replaced by the canonical
    point of its class.

    Raises:
        DomainError: If the slope is zero or lives in another field
    """
    a, b = slope
    if a.tag != ambient.tag or b.tag != ambient.tag:
        raise DomainError("Slope and ambient use different fields")
    if not a and not b:
        raise DomainError("Slope vector must be non-zero")
    if base is None:
        coords = (0, 0, 0, 0)
    elif isinstance(base, TorsionPoint):
        coords = base.coords
    else:
        coords = tuple(Fraction(c) for c in base)

    canonical = ambient.is_maximal
    if canonical:
        a, b = _normalize_slope(a, b)

    direction = _direction(a, b)
    normal_lattice = _normal_lattice(ambient, direction)
    w = lattice.reduce(normal_lattice, _normal_value(ambient, direction, coords))
    zero = Fraction(0)
    if direction is None:
        representative = (w[0], w[1], zero, zero)
        key = ("vertical", w)
    else:
        representative = (zero, zero, -w[0], -w[1])
        key = ("slope", direction, w)

    return CurveOnSquare(
        ambient=ambient,
        slope=(a, b),
        base=TorsionPoint.of(ambient, representative),
        canonical=canonical,
        key=key,
    )


def contains_point(curve: CurveOnSquare, point: Union[TorsionPoint, Sequence[Rational]]) -> bool:
    coords = point.coords if isinstance(point, TorsionPoint) else point
    direction = _direction(curve.a, curve.b)
    normal_lattice = _normal_lattice(curve.ambient, direction)
    difference = [
        p - q
        for p, q in zip(
            _normal_value(curve.ambient, direction, coords),
            _normal_value(curve.ambient, direction, curve.base.coords),
        )
    ]
    return lattice.contains(normal_lattice, difference)


def slopes_proportional(c1: CurveOnSquare, c2: CurveOnSquare) -> bool:
    return not (mul(c1.a, c2.b) - mul(c1.b, c2.a))


def curve_eq(c1: CurveOnSquare, c2: CurveOnSquare) -> bool:
    """True iff both describe the same point set."""
    if c1.ambient != c2.ambient:
        raise DomainError("Curves live on different ambients")
    return slopes_proportional(c1, c2) and contains_point(c1, c2.base)


def curve_fundamental_group(curve: CurveOnSquare) -> Lattice2:
    """The lattice of parameters t with (a*t, b*t) in L1 x L2."""
    ambient = curve.ambient
    pieces = []
    if curve.a:
        pieces.append(lattice.scale(ambient.factor_lattice(0), div_coords((1, 0), curve.a)))
    if curve.b:
        pieces.append(lattice.scale(ambient.factor_lattice(1), div_coords((1, 0), curve.b)))
    result = pieces[0]
    for piece in pieces[1:]:
        result = lattice.intersect(result, piece)
    return result


def _block_matrix(blocks: Sequence[Sequence[List[List[int]]]]) -> List[List[int]]:
    rows = []
    for block_row in blocks:
        for r in range(2):
            rows.append([v for block in block_row for v in block[r]])
    return rows


def intersect_curves(c1: CurveOnSquare, c2: CurveOnSquare) -> List[TorsionPoint]:
    """
    Common points of two curves with non-proportional slopes.

    Solves (b*u - a*v, d*u - c*v) = (b*p1 - a*p2, d*q1 - c*q2) modulo
    (b*L1 + a*L2) x (d*L1 + c*L2), with solutions reported modulo L1 x L2.

    Raises:
        ParallelCurvesError: If the slopes are proportional
    """
    if c1.ambient != c2.ambient:
        raise DomainError("Curves live on different ambients")
    if slopes_proportional(c1, c2):
        identical = curve_eq(c1, c2)
        raise ParallelCurvesError(
            f"{c1} and {c2} are {'identical' if identical else 'parallel and disjoint'}",
            identical=identical,
        )
    ambient = c1.ambient
    a, b = c1.slope
    c, d = c2.slope
    first, second = ambient.factor_lattice(0), ambient.factor_lattice(1)

    def target(x: QuadInt, y: QuadInt) -> Lattice2:
        # y*L1 + x*L2
        gens = [mul_coords(y, col) for col in first.columns()]
        gens += [mul_coords(x, col) for col in second.columns()]
        return lattice.lattice2(gens, ambient.tag)

    target_lattice = lattice.product_lattice(target(a, b), target(c, d))
    matrix = _block_matrix(
        [
            [mul_matrix(b), mul_matrix(-a)],
            [mul_matrix(d), mul_matrix(-c)],
        ]
    )
    p, q = c1.base.coords, c2.base.coords
    rhs = list(_difference(b, a, p)) + list(_difference(d, c, q))
    solutions = lattice.solve_mod(matrix, rhs, target_lattice, modulus=ambient.lattice)
    return sorted(TorsionPoint.of(ambient, s) for s in solutions)


def _difference(y: QuadInt, x: QuadInt, coords: Sequence[Fraction]):
    """y*u - x*v for the point (u, v)."""
    yu = mul_coords(y, coords[:2])
    xv = mul_coords(x, coords[2:])
    return (yu[0] - xv[0], yu[1] - xv[1])


@dataclass(frozen=True)
class Configuration:
    """An elliptic configuration: pairwise distinct curves on one ambient."""

    ambient: Ambient
    curves: Tuple[CurveOnSquare, ...]

    def __post_init__(self):
        seen = {}
        for index, curve in enumerate(self.curves):
            if curve.ambient != self.ambient:
                raise DomainError(f"Curve {index} lives on another ambient")
            if curve.key in seen:
                raise DomainError(f"Curves {seen[curve.key]} and {index} coincide")
            seen[curve.key] = index

    def __len__(self) -> int:
        return len(self.curves)

    def keys(self) -> frozenset:
        return frozenset(curve.key for curve in self.curves)

    def same_curves(self, other: "Configuration") -> bool:
        """Set equality of the curves under curve_eq."""
        return self.ambient == other.ambient and self.keys() == other.keys()


def configuration(ambient: Ambient, curves: Sequence[CurveOnSquare]) -> Configuration:
    return Configuration(ambient=ambient, curves=tuple(curves))


@dataclass(frozen=True)
class SingularLocusReport:
    points: Tuple[Tuple[TorsionPoint, int], ...]
    total: int
    incidence_sum: int
    proportional: bool
    vacuous: bool
    intersecting: bool

    def to_dict(self) -> Dict:
        return {
            "singular_points": self.total,
            "incidence_sum": self.incidence_sum,
            "proportional": self.proportional,
            "vacuous": self.vacuous,
            "intersecting": self.intersecting,
            "points": [
                {"coords": [str(c) for c in point.coords], "incidence": incidence}
                for point, incidence in self.points
            ],
        }


def _pair_intersection(pair: Tuple[int, int, CurveOnSquare, CurveOnSquare]):
    i, j, c1, c2 = pair
    try:
        return i, j, intersect_curves(c1, c2)
    except ParallelCurvesError as e:
        if e.identical:
            raise
        return i, j, []


def singular_locus(config: Configuration, workers: Optional[int] = None) -> SingularLocusReport:
    """
    Union of the pairwise intersections with incidence counts.

    Args:
        config: the configuration
        workers: worker processes for the pairwise intersections (default from Config)
    """
    workers = workers if workers is not None else Config.WORKERS
    pairs = [(i, j, c1, c2) for (i, c1), (j, c2) in combinations(enumerate(config.curves), 2)]
    if workers and workers > 1 and len(pairs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_pair_intersection, pairs, chunksize=16))
    else:
        results = [_pair_intersection(pair) for pair in pairs]

    incidences: Dict[TorsionPoint, set] = {}
    for i, j, points in sorted(results, key=lambda r: (r[0], r[1])):
        logger.debug(f"Curves {i} and {j} meet in {len(points)} points")
        for point in points:
            incidences.setdefault(point, set()).update((i, j))

    points = tuple((point, len(incidences[point])) for point in sorted(incidences))
    total = len(points)
    incidence_sum = sum(count for _, count in points)
    report = SingularLocusReport(
        points=points,
        total=total,
        incidence_sum=incidence_sum,
        proportional=incidence_sum == 4 * total,
        vacuous=total == 0,
        intersecting=total > 0,
    )
    logger.info(
        f"Singular locus: {total} points, incidence sum {incidence_sum}, "
        f"proportional={report.proportional}"
    )
    return report


def euler_number(config: Configuration, report: Optional[SingularLocusReport] = None) -> int:
    """|D^sing|; a warning is logged when D is not proportional."""
    report = report or singular_locus(config)
    if not report.proportional:
        logger.warning(
            f"Euler number requested for a non-proportional configuration "
            f"({report.incidence_sum} != 4 * {report.total})"
        )
    return report.total


def volume_units(config: Configuration, report: Optional[SingularLocusReport] = None) -> int:
    """Volume in units of 8*pi^2/3."""
    return euler_number(config, report)


def translate(
    config: Configuration, point: Union[TorsionPoint, Sequence[Rational]]
) -> Configuration:
    coords = point.coords if isinstance(point, TorsionPoint) else tuple(Fraction(c) for c in point)
    curves = [
        curve_new(
            config.ambient,
            curve.slope,
            [p + q for p, q in zip(curve.base.coords, coords)],
        )
        for curve in config.curves
    ]
    return configuration(config.ambient, curves)


def gl2_determinant(g: Sequence[Sequence[QuadInt]]) -> QuadInt:
    return mul(g[0][0], g[1][1]) - mul(g[0][1], g[1][0])


def apply_gl2(g: Sequence[Sequence[QuadInt]], config: Configuration) -> Configuration:
    """
    Image of a configuration under the automorphism (u, v) -> g (u, v).

    Raises:
        DomainError: If det(g) is not a unit or the ambient is not maximal
    """
    if not config.ambient.is_maximal:
        raise DomainError("apply_gl2 needs the maximal-order square")
    if not is_unit(gl2_determinant(g)):
        raise DomainError("det(g) is not a unit")
    tag = config.ambient.tag
    curves = []
    for curve in config.curves:
        a, b = curve.slope
        slope = (mul(g[0][0], a) + mul(g[0][1], b), mul(g[1][0], a) + mul(g[1][1], b))
        u, v = curve.base.u, curve.base.v
        new_u = [x + y for x, y in zip(field_mul(g[0][0].coords, u, tag),
                                       field_mul(g[0][1].coords, v, tag))]
        new_v = [x + y for x, y in zip(field_mul(g[1][0].coords, u, tag),
                                       field_mul(g[1][1].coords, v, tag))]
        curves.append(curve_new(config.ambient, slope, new_u + new_v))
    return configuration(config.ambient, curves)


def slope_sort_key(curve: CurveOnSquare):
    a, b = curve.slope
    return (a.y, a.x, b.y, b.x, curve.base.coords)


def sorted_curves(config: Configuration) -> List[CurveOnSquare]:
    return sorted(config.curves, key=slope_sort_key)

