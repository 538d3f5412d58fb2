"""
Exact arithmetic in the maximal order O_-d and its suborders O_-d,m of the
class-number-1 imaginary quadratic fields.

Elements are stored as x + y*w in the basis (1, w) with w = sqrt(-d) when
-d is not 1 mod 4 and w = (1 + sqrt(-d)) / 2 otherwise.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

from ..utils.errors import DomainError

logger = logging.getLogger(__name__)

CLASS_NUMBER_ONE = (1, 2, 3, 7, 11, 19, 43, 67, 163)
NORM_EUCLIDEAN = (1, 2, 3, 7, 11)

Rational = Union[int, Fraction]
Coords = Tuple[Fraction, Fraction]


@dataclass(frozen=True)
class FieldTag:
    """The imaginary quadratic field Q(sqrt(-d))."""

    d: int

    def __post_init__(self):
        if self.d not in CLASS_NUMBER_ONE:
            raise DomainError(f"d={self.d} is not a class-number-1 discriminant")

    @property
    def half_integral(self) -> bool:
        """True when w = (1 + sqrt(-d)) / 2."""
        return (-self.d) % 4 == 1

    @property
    def k(self) -> int:
        """The constant in w^2 = w - k for half-integral w."""
        return (1 + self.d) // 4

    @property
    def euclidean(self) -> bool:
        return self.d in NORM_EUCLIDEAN

    def omega_matrix(self) -> List[List[int]]:
        """Matrix of multiplication by w in the basis (1, w)."""
        if self.half_integral:
            return [[0, -self.k], [1, 1]]
        return [[0, -self.d], [1, 0]]

    def __str__(self) -> str:
        return f"Q(sqrt(-{self.d}))"


@dataclass(frozen=True)
class OrderRef:
    """The order O_-d,m = Z + m*w*Z of conductor m."""

    tag: FieldTag
    conductor: int = 1

    def __post_init__(self):
        if self.conductor < 1:
            raise DomainError(f"Conductor must be positive, got {self.conductor}")


@dataclass(frozen=True)
class QuadInt:
    """The element x + y*w of O_-d."""

    tag: FieldTag
    x: int
    y: int = 0

    def __add__(self, other):
        other = _coerce(self.tag, other)
        if other is None:
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(self.tag, other)
        if other is None:
            return NotImplemented
        return add(self, -other)

    def __rsub__(self, other):
        other = _coerce(self.tag, other)
        if other is None:
            return NotImplemented
        return add(other, -self)

    def __neg__(self):
        return QuadInt(self.tag, -self.x, -self.y)

    def __mul__(self, other):
        other = _coerce(self.tag, other)
        if other is None:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return self.x != 0 or self.y != 0

    @property
    def coords(self) -> Tuple[int, int]:
        return (self.x, self.y)

    @property
    def norm(self) -> int:
        return norm(self)

    def to_dict(self) -> dict:
        return {"d": self.tag.d, "x": self.x, "y": self.y}

    @classmethod
    def from_dict(cls, data: dict) -> "QuadInt":
        return cls(FieldTag(int(data["d"])), int(data["x"]), int(data["y"]))

    def __str__(self) -> str:
        if self.y == 0:
            return str(self.x)
        if self.x == 0:
            return f"{self.y}w"
        return f"{self.x}{self.y:+d}w"


def _coerce(tag: FieldTag, value) -> Optional[QuadInt]:
    if isinstance(value, QuadInt):
        return value
    if isinstance(value, int):
        return QuadInt(tag, value, 0)
    return None


def _check_tags(a: QuadInt, b: QuadInt):
    if a.tag != b.tag:
        raise DomainError(f"Tag mismatch: d={a.tag.d} and d={b.tag.d}")


def add(a: QuadInt, b: QuadInt) -> QuadInt:
    _check_tags(a, b)
    return QuadInt(a.tag, a.x + b.x, a.y + b.y)


def mul(a: QuadInt, b: QuadInt) -> QuadInt:
    _check_tags(a, b)
    tag = a.tag
    if tag.half_integral:
        # w^2 = w - k
        return QuadInt(
            tag,
            a.x * b.x - tag.k * a.y * b.y,
            a.x * b.y + a.y * b.x + a.y * b.y,
        )
    # w^2 = -d
    return QuadInt(tag, a.x * b.x - tag.d * a.y * b.y, a.x * b.y + a.y * b.x)


def norm(q: QuadInt) -> int:
    if q.tag.half_integral:
        return q.x * q.x + q.x * q.y + q.tag.k * q.y * q.y
    return q.x * q.x + q.tag.d * q.y * q.y


def conj(q: QuadInt) -> QuadInt:
    if q.tag.half_integral:
        # conj(w) = 1 - w
        return QuadInt(q.tag, q.x + q.y, -q.y)
    return QuadInt(q.tag, q.x, -q.y)


def x_map(q: QuadInt) -> int:
    return q.x


def y_map(q: QuadInt) -> int:
    return q.y


def div_exact(a: QuadInt, b: QuadInt) -> Optional[QuadInt]:
    """
    Exact quotient a / b.

    Returns:
        q with b*q == a, or None when a is not in b*O
    """
    _check_tags(a, b)
    if not b:
        raise DomainError("Division by zero")
    numerator = mul(a, conj(b))
    n = norm(b)
    if numerator.x % n or numerator.y % n:
        return None
    return QuadInt(a.tag, numerator.x // n, numerator.y // n)


def divides(b: QuadInt, a: QuadInt) -> bool:
    """True when b | a in O."""
    if not b:
        return not a
    return div_exact(a, b) is not None


def units(tag: FieldTag) -> List[QuadInt]:
    if tag.d == 1:
        return [QuadInt(tag, 1, 0), QuadInt(tag, -1, 0), QuadInt(tag, 0, 1), QuadInt(tag, 0, -1)]
    if tag.d == 3:
        return [
            QuadInt(tag, 1, 0),
            QuadInt(tag, -1, 0),
            QuadInt(tag, 0, 1),
            QuadInt(tag, 0, -1),
            QuadInt(tag, -1, 1),
            QuadInt(tag, 1, -1),
        ]
    return [QuadInt(tag, 1, 0), QuadInt(tag, -1, 0)]


def is_unit(q: QuadInt) -> bool:
    return norm(q) == 1


def _associate_key(q: QuadInt):
    return (q.y, 0 if q.x > 0 else 1, q.x)


def canonical_associate(q: QuadInt) -> QuadInt:
    """
    Normal form of q up to units: smallest y among the associates with y >= 0,
    then x > 0 preferred.
    """
    if not q:
        return q
    candidates = [mul(u, q) for u in units(q.tag)]
    return min((c for c in candidates if c.y >= 0), key=_associate_key)


def normalizing_unit(q: QuadInt) -> QuadInt:
    """The unit u with u*q == canonical_associate(q)."""
    if not q:
        return QuadInt(q.tag, 1, 0)
    target = canonical_associate(q)
    for u in units(q.tag):
        if mul(u, q) == target:
            return u
    raise DomainError(f"No normalizing unit for {q}")


def _nearest_quotient(a: QuadInt, b: QuadInt) -> QuadInt:
    """A q minimizing N(a - q*b), searched around the exact rational quotient."""
    numerator = mul(a, conj(b))
    n = norm(b)
    base_x = numerator.x // n
    base_y = numerator.y // n
    best = None
    best_norm = None
    for dx, dy in product((-1, 0, 1, 2), repeat=2):
        q = QuadInt(a.tag, base_x + dx, base_y + dy)
        remainder_norm = norm(add(a, -mul(q, b)))
        if best_norm is None or remainder_norm < best_norm:
            best, best_norm = q, remainder_norm
    return best


def _euclid(a: QuadInt, b: QuadInt) -> Tuple[QuadInt, QuadInt, QuadInt]:
    """Extended Euclid: returns (g, s, t) with a*s + b*t == g."""
    zero = QuadInt(a.tag, 0, 0)
    one = QuadInt(a.tag, 1, 0)
    old_r, r = a, b
    old_s, s = one, zero
    old_t, t = zero, one
    while r:
        q = _nearest_quotient(old_r, r)
        old_r, r = r, add(old_r, -mul(q, r))
        old_s, s = s, add(old_s, -mul(q, s))
        old_t, t = t, add(old_t, -mul(q, t))
    return old_r, old_s, old_t


def _ideal_generator(a: QuadInt, b: QuadInt) -> QuadInt:
    """Generator of aO + bO found by searching the ideal for an element of minimal norm."""
    from . import lattice

    ideal = lattice.span([a, b], OrderRef(a.tag))
    (h11, h12), (_, h22) = lattice.integer_basis(ideal)
    n = h11 * h22
    d = a.tag.d
    bound = math.isqrt(4 * n // d) + 1
    for j in range(-(bound // h22) - 1, bound // h22 + 2):
        y = j * h22
        if a.tag.half_integral:
            disc = 4 * n - d * y * y
            if disc < 0:
                continue
            s = math.isqrt(disc)
            if s * s != disc:
                continue
            roots = [(-y + s) // 2, (-y - s) // 2] if (s - y) % 2 == 0 else []
        else:
            rest = n - d * y * y
            if rest < 0:
                continue
            s = math.isqrt(rest)
            if s * s != rest:
                continue
            roots = [s, -s]
        for x in roots:
            if (x - j * h12) % h11 == 0:
                return QuadInt(a.tag, x, y)
    raise DomainError(f"Ideal ({a}, {b}) has no generator of norm {n}")


def gcd(a: QuadInt, b: QuadInt) -> QuadInt:
    """Canonical generator of the ideal aO + bO."""
    _check_tags(a, b)
    if not a and not b:
        raise DomainError("gcd(0, 0) is undefined")
    if not b:
        return canonical_associate(a)
    if not a:
        return canonical_associate(b)
    if a.tag.euclidean:
        g, _, _ = _euclid(a, b)
    else:
        g = _ideal_generator(a, b)
    return canonical_associate(g)


def bezout(a: QuadInt, b: QuadInt) -> Tuple[QuadInt, QuadInt]:
    """
    Coefficients (a0, b0) with a*a0 + b*b0 == 1.

    Raises:
        DomainError: If a and b are not coprime
    """
    _check_tags(a, b)
    if not a and not b:
        raise DomainError("bezout(0, 0) is undefined")
    if a.tag.euclidean:
        g, s, t = _euclid(a, b)
        if not is_unit(g):
            raise DomainError(f"{a} and {b} are not coprime")
        inverse = conj(g)
        return mul(s, inverse), mul(t, inverse)
    return _bezout_by_smith(a, b)


def _bezout_by_smith(a: QuadInt, b: QuadInt) -> Tuple[QuadInt, QuadInt]:
    from . import lattice

    w = QuadInt(a.tag, 0, 1)
    gens = [a, mul(a, w), b, mul(b, w)]
    matrix = [[g.x for g in gens], [g.y for g in gens]]
    smith = lattice.snf(matrix)
    if [smith.S[0][0], smith.S[1][1]] != [1, 1]:
        raise DomainError(f"{a} and {b} are not coprime")
    # M z = e1 with M = U S V: S (V z) = U^-1 e1
    target = [smith.U_inv[0][0], smith.U_inv[1][0]]
    w_vec = target + [0, 0]
    z = [sum(smith.V_inv[i][j] * w_vec[j] for j in range(4)) for i in range(4)]
    return QuadInt(a.tag, z[0], z[1]), QuadInt(a.tag, z[2], z[3])


def mul_matrix(q: QuadInt) -> List[List[int]]:
    """Matrix of multiplication by q in the basis (1, w)."""
    m_w = q.tag.omega_matrix()
    return [
        [q.x + q.y * m_w[0][0], q.y * m_w[0][1]],
        [q.y * m_w[1][0], q.x + q.y * m_w[1][1]],
    ]


def mul_coords(q: QuadInt, v: Sequence[Rational]) -> Coords:
    """q * v for a rational field element v given by its coordinates."""
    m = mul_matrix(q)
    return (
        Fraction(m[0][0] * v[0] + m[0][1] * v[1]),
        Fraction(m[1][0] * v[0] + m[1][1] * v[1]),
    )


def div_coords(v: Sequence[Rational], q: QuadInt) -> Coords:
    """v / q for a rational field element v given by its coordinates."""
    if not q:
        raise DomainError("Division by zero")
    n = norm(q)
    x, y = mul_coords(conj(q), v)
    return (x / n, y / n)


def field_mul(u: Sequence[Rational], v: Sequence[Rational], tag: FieldTag) -> Coords:
    """Product of two rational field elements given by coordinates."""
    m_w = tag.omega_matrix()
    # (u0 + u1 w) v = u0 v + u1 (w v)
    wv0 = m_w[0][0] * v[0] + m_w[0][1] * v[1]
    wv1 = m_w[1][0] * v[0] + m_w[1][1] * v[1]
    return (Fraction(u[0] * v[0] + u[1] * wv0), Fraction(u[0] * v[1] + u[1] * wv1))


def from_coords(tag: FieldTag, coords: Sequence[Rational]) -> QuadInt:
    """QuadInt with the given coordinates; they must be integers."""
    x, y = (Fraction(c) for c in coords)
    if x.denominator != 1 or y.denominator != 1:
        raise DomainError(f"Coordinates ({x}, {y}) are not integral")
    return QuadInt(tag, int(x), int(y))


def omega_complex(tag: FieldTag) -> complex:
    if tag.half_integral:
        return complex(0.5, math.sqrt(tag.d) / 2)
    return complex(0, math.sqrt(tag.d))


def to_complex(q: Union[QuadInt, Tuple[FieldTag, Sequence[Rational]]]) -> complex:
    """Floating-point embedding into C, for display and sanity checks only."""
    if isinstance(q, QuadInt):
        tag, coords = q.tag, q.coords
    else:
        tag, coords = q
    return float(coords[0]) + float(coords[1]) * omega_complex(tag)


def elements_up_to_norm(tag: FieldTag, bound: int, include_zero: bool = False) -> List[QuadInt]:
    """All elements of norm at most `bound`, sorted by (norm, y, x)."""
    y_bound = math.isqrt(4 * bound // tag.d) + 1
    x_bound = math.isqrt(bound) + y_bound + 1
    found = []
    for y in range(-y_bound, y_bound + 1):
        for x in range(-x_bound, x_bound + 1):
            q = QuadInt(tag, x, y)
            n = norm(q)
            if n > bound or (n == 0 and not include_zero):
                continue
            found.append(q)
    found.sort(key=lambda q: (norm(q), q.y, q.x))
    return found

