"""
Exact lattice arithmetic: Hermite and Smith normal forms, finite-index
sublattices of O_-d (rank 2) and O_-d x O_-d (rank 4), indices, sums,
intersections, membership, coset enumeration and congruence solving.

Matrices are row-major lists of lists; lattice generators are columns. The
normal forms and rational inverses come from sympy's DomainMatrix.
"""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from typing import List, Optional, Sequence, Tuple, Union

from sympy.polys.domains import QQ, ZZ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError
from sympy.polys.matrices.normalforms import hermite_normal_form, smith_normal_decomp

from ..utils.config import Config
from ..utils.errors import (
    CosetLimitError,
    DegenerateIntersectionError,
    DegenerateLatticeError,
    DomainError,
)
from .quad import FieldTag, OrderRef, QuadInt, field_mul, mul

logger = logging.getLogger(__name__)

Matrix = List[List[int]]
Rational = Union[int, Fraction]
Vector = Tuple[Fraction, ...]


def _to_domain(matrix: Sequence[Sequence[Rational]], domain=ZZ) -> DomainMatrix:
    """Convert a list-of-lists matrix to a DomainMatrix over ZZ or QQ."""
    if domain == ZZ:
        rows = [[ZZ(int(v)) for v in row] for row in matrix]
    else:
        rows = [[QQ(Fraction(v).numerator, Fraction(v).denominator) for v in row]
                for row in matrix]
    return DomainMatrix(rows, (len(rows), len(rows[0]) if rows else 0), domain)


def _to_ints(dm: DomainMatrix) -> Matrix:
    return [[int(v) for v in row] for row in dm.to_list()]


def _to_fractions(dm: DomainMatrix) -> List[List[Fraction]]:
    return [[Fraction(int(v.numerator), int(v.denominator)) for v in row] for row in dm.to_list()]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> List[List]:
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(row[k] * b[k][j] for k in range(inner)) for j in range(cols)] for row in a]


def matvec(a: Sequence[Sequence], v: Sequence) -> List:
    return [sum(row[k] * v[k] for k in range(len(v))) for row in a]


def inverse(matrix: Sequence[Sequence[Rational]]) -> List[List[Fraction]]:
    """Exact inverse over the rationals."""
    try:
        return _to_fractions(_to_domain(matrix, QQ).inv())
    except DMNonInvertibleMatrixError as e:
        raise DomainError("Matrix is singular") from e


def determinant(matrix: Sequence[Sequence[Rational]]) -> Fraction:
    det = _to_domain(matrix, QQ).det()
    return Fraction(int(det.numerator), int(det.denominator))


# -- Hermite normal form --------------------------------------------------------------


def hnf(matrix: Sequence[Sequence[int]]) -> Matrix:
    """
    Hermite normal form of the lattice spanned by the columns of `matrix`.

    The result is square upper triangular with positive diagonal and
    0 <= H[i][j] < H[i][i] for j > i.

    Raises:
        DegenerateLatticeError: If the columns do not span a full-rank lattice
    """
    n = len(matrix)
    h = hermite_normal_form(_to_domain(matrix))
    if h.shape != (n, n):
        raise DegenerateLatticeError(f"Generators have rank below {n}")
    return _to_ints(h)


# -- Smith normal form ----------------------------------------------------------------


@dataclass(frozen=True)
class SmithForm:
    """M = U * S * V with U, V unimodular; U_inv and V_inv are their inverses."""

    U: Matrix
    S: Matrix
    V: Matrix
    U_inv: Matrix
    V_inv: Matrix

    @property
    def diagonal(self) -> List[int]:
        return [self.S[i][i] for i in range(min(len(self.S), len(self.S[0])))]


def _unimodular_inverse(dm: DomainMatrix) -> Matrix:
    return [[int(v) for v in row] for row in _to_fractions(dm.convert_to(QQ).inv())]


def snf(matrix: Sequence[Sequence[int]]) -> SmithForm:
    """
    Smith normal form with both transforms.

    sympy returns S = P * M * Q; the stored factors are U = P^-1 and V = Q^-1.
    """
    s, p, q = smith_normal_decomp(_to_domain(matrix))
    return SmithForm(
        U=_unimodular_inverse(p),
        S=_to_ints(s),
        V=_unimodular_inverse(q),
        U_inv=_to_ints(p),
        V_inv=_to_ints(q),
    )


# -- Lattices -------------------------------------------------------------------------


@dataclass(frozen=True)
class Lattice:
    """
    A full-rank lattice in Q^n, stored as its (rational) Hermite normal form.
    Two values are equal iff they describe the same lattice.
    """

    basis: Tuple[Tuple[Fraction, ...], ...]

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def covolume(self) -> Fraction:
        return math.prod((self.basis[i][i] for i in range(self.rank)), start=Fraction(1))

    def columns(self) -> List[Vector]:
        return [tuple(row[j] for row in self.basis) for j in range(self.rank)]


@dataclass(frozen=True)
class Lattice2(Lattice):
    """A full-rank lattice in the field, coordinates in the basis (1, w)."""

    tag: Optional[FieldTag] = None


@dataclass(frozen=True)
class Lattice4(Lattice):
    """A full-rank lattice in the field squared, basis (1, w) x (1, w)."""

    tag: Optional[FieldTag] = None


def _from_generators(cls, generators: Sequence[Sequence[Rational]], rank: int, tag=None):
    gens = [tuple(Fraction(v) for v in g) for g in generators]
    if not gens:
        raise DegenerateLatticeError("No generators")
    denominator = math.lcm(*(v.denominator for g in gens for v in g))
    matrix = [[int(g[i] * denominator) for g in gens] for i in range(rank)]
    h = hnf(matrix)
    basis = tuple(tuple(Fraction(v, denominator) for v in row) for row in h)
    return cls(basis=basis, tag=tag)


def lattice2(generators: Sequence[Sequence[Rational]], tag: FieldTag) -> Lattice2:
    return _from_generators(Lattice2, generators, 2, tag)


def lattice4(generators: Sequence[Sequence[Rational]], tag: FieldTag) -> Lattice4:
    return _from_generators(Lattice4, generators, 4, tag)


def _rebuild(template: Lattice, generators: Sequence[Sequence[Rational]]) -> Lattice:
    return _from_generators(type(template), generators, template.rank, template.tag)


def integer_basis(lattice: Lattice) -> Matrix:
    """The HNF rows of an integral lattice."""
    rows = []
    for row in lattice.basis:
        if any(v.denominator != 1 for v in row):
            raise DomainError("Lattice is not integral")
        rows.append([int(v) for v in row])
    return rows


def lattice_of_order(order: OrderRef) -> Lattice2:
    return Lattice2(
        basis=((Fraction(1), Fraction(0)), (Fraction(0), Fraction(order.conductor))),
        tag=order.tag,
    )


def span(gens: Sequence[QuadInt], scale: OrderRef) -> Lattice2:
    """
    The lattice sum of g * O_-d,m over the generators.

    Raises:
        DegenerateLatticeError: If the generators are all zero
    """
    tag = scale.tag
    m_w = QuadInt(tag, 0, scale.conductor)
    columns = []
    for g in gens:
        columns.append(g.coords)
        columns.append(mul(g, m_w).coords)
    return lattice2(columns, tag)


def scale(lattice: Lattice2, factor: Sequence[Rational]) -> Lattice2:
    """The lattice factor * L for a non-zero field element given by coordinates."""
    if factor[0] == 0 and factor[1] == 0:
        raise DegenerateLatticeError("Scaling by zero")
    return lattice2([field_mul(factor, col, lattice.tag) for col in lattice.columns()], lattice.tag)


def product_lattice(first: Lattice2, second: Lattice2) -> Lattice4:
    """first x second as a rank-4 lattice; block-diagonal HNF is already normal."""
    zero = Fraction(0)
    basis = (
        (first.basis[0][0], first.basis[0][1], zero, zero),
        (zero, first.basis[1][1], zero, zero),
        (zero, zero, second.basis[0][0], second.basis[0][1]),
        (zero, zero, zero, second.basis[1][1]),
    )
    return Lattice4(basis=basis, tag=first.tag)


def reduce(lattice: Lattice, vector: Sequence[Rational]) -> Vector:
    """
    Canonical representative of vector + L: the unique point of the coset with
    0 <= x_i < H[i][i] in the Hermite basis.
    """
    x = [Fraction(v) for v in vector]
    columns = lattice.columns()
    for i in range(lattice.rank - 1, -1, -1):
        k = math.floor(x[i] / lattice.basis[i][i])
        if k:
            x = [a - k * b for a, b in zip(x, columns[i])]
    return tuple(x)


def contains(lattice: Lattice, element: Union[QuadInt, Sequence[Rational]]) -> bool:
    vector = element.coords if isinstance(element, QuadInt) else element
    return all(v == 0 for v in reduce(lattice, vector))


def contains_lattice(sup: Lattice, sub: Lattice) -> bool:
    return all(contains(sup, col) for col in sub.columns())


def index(sub: Lattice, sup: Lattice) -> int:
    """
    [sup : sub].

    Raises:
        DomainError: If sub is not contained in sup
    """
    if not contains_lattice(sup, sub):
        raise DomainError("Sublattice is not contained in the superlattice")
    ratio = sub.covolume / sup.covolume
    if ratio.denominator != 1:
        raise DomainError(f"Non-integral index {ratio}")
    return int(ratio)


def lattice_sum(a: Lattice, b: Lattice) -> Lattice:
    if a.rank != b.rank:
        raise DomainError("Rank mismatch")
    return _rebuild(a, a.columns() + b.columns())


def intersect(a: Lattice, b: Lattice) -> Lattice:
    """
    a intersected with b, from the kernel of the stacked system [A | -B].
    """
    if a.rank != b.rank:
        raise DomainError("Rank mismatch")
    n = a.rank
    denominator = math.lcm(*(v.denominator for row in a.basis + b.basis for v in row))
    stacked = [
        [int(v * denominator) for v in a.basis[i]] + [int(-v * denominator) for v in b.basis[i]]
        for i in range(n)
    ]
    smith = snf(stacked)
    rank = sum(1 for v in smith.diagonal if v != 0)
    # kernel of U S V is V^-1 applied to the kernel of S
    kernel = [[smith.V_inv[i][j] for i in range(2 * n)] for j in range(rank, 2 * n)]
    a_columns = a.columns()
    generators = []
    for z in kernel:
        generators.append(tuple(sum(z[k] * a_columns[k][i] for k in range(n)) for i in range(n)))
    return _rebuild(a, generators)


# -- Cosets and congruences -----------------------------------------------------------


def _cap(cap: Optional[int]) -> int:
    return cap if cap is not None else Config.COSET_CAP


def _coordinate_matrix(sub: Lattice, sup: Lattice) -> Matrix:
    """Integer matrix C with sub = sup * C."""
    relative = matmul(inverse(sup.basis), sub.basis)
    if any(v.denominator != 1 for row in relative for v in row):
        raise DomainError("Sublattice is not contained in the superlattice")
    return [[int(v) for v in row] for row in relative]


def _enumerate(offset: Sequence[Fraction], basis: Sequence[Sequence], smith: SmithForm,
               modulus: Lattice) -> List[Vector]:
    steps = matmul(basis, smith.U)
    n = len(offset)
    found = set()
    for k in product(*(range(s) for s in smith.diagonal)):
        point = [offset[i] + sum(steps[i][j] * k[j] for j in range(n)) for i in range(n)]
        found.add(reduce(modulus, point))
    return sorted(found)


def cosets(sub: Lattice, sup: Lattice, cap: Optional[int] = None) -> List[Vector]:
    """
    Canonical representatives of sup / sub, reduced modulo sub and sorted.

    Raises:
        DomainError: If sub is not contained in sup
        CosetLimitError: If the index exceeds the cap
    """
    relative = _coordinate_matrix(sub, sup)
    count = abs(int(determinant(relative)))
    limit = _cap(cap)
    if count > limit:
        raise CosetLimitError(count, limit)
    smith = snf(relative)
    zero = [Fraction(0)] * sup.rank
    representatives = _enumerate(zero, sup.basis, smith, sub)
    logger.debug(f"Enumerated {len(representatives)} cosets")
    return representatives


def solve_mod(
    matrix: Sequence[Sequence[int]],
    rhs: Sequence[Rational],
    target: Lattice,
    modulus: Optional[Lattice] = None,
    cap: Optional[int] = None,
) -> List[Vector]:
    """
    All solutions of A x = b (mod target), reported modulo `modulus`.

    The modulus defaults to the target lattice and must satisfy A * modulus <= target.

    Raises:
        DegenerateIntersectionError: If A is singular (infinitely many solutions)
        CosetLimitError: If the number of solutions exceeds the cap
    """
    modulus = modulus if modulus is not None else target
    if determinant(matrix) == 0:
        raise DegenerateIntersectionError("Congruence system has an infinite solution family")
    a_inv = inverse(matrix)
    particular = matvec(a_inv, [Fraction(v) for v in rhs])
    # solutions form particular + A^-1 target
    preimage = matmul(a_inv, target.basis)
    relative = matmul(matmul(inverse(target.basis), matrix), modulus.basis)
    if any(Fraction(v).denominator != 1 for row in relative for v in row):
        raise DomainError("Modulus is not mapped into the target lattice")
    relative = [[int(v) for v in row] for row in relative]
    count = abs(int(determinant(relative)))
    limit = _cap(cap)
    if count > limit:
        raise CosetLimitError(count, limit)
    smith = snf(relative)
    solutions = _enumerate(particular, preimage, smith, modulus)
    logger.debug(f"Congruence system has {len(solutions)} solutions")
    return solutions
