"""
Diagonal isogenies diag(alpha, beta): E_-d,m1 x E_-d,m2 -> E_-d x E_-d.

Pull-backs of curves and configurations, degrees, and the component count of
a pulled-back curve both from the lattice Lambda(F, mu) and in closed form.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from ..utils.errors import DomainError, InternalConsistencyError, UnsupportedCaseError
from . import lattice
from .geometry import (
    Ambient,
    Configuration,
    CurveOnSquare,
    SingularLocusReport,
    configuration,
    curve_new,
    singular_locus,
)
from .lattice import Lattice2
from .quad import (
    FieldTag,
    OrderRef,
    QuadInt,
    bezout,
    div_coords,
    div_exact,
    from_coords,
    gcd,
    is_unit,
    mul,
    mul_coords,
    norm,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class DiagonalIsogeny:
    """diag(alpha, beta) from E_-d,m1 x E_-d,m2 onto the maximal-order square."""

    tag: FieldTag
    alpha: QuadInt
    beta: QuadInt
    source_conductors: Tuple[int, int] = (1, 1)

    def __post_init__(self):
        if not self.alpha or not self.beta:
            raise DomainError("Isogeny entries must be non-zero")
        if self.alpha.tag != self.tag or self.beta.tag != self.tag:
            raise DomainError("Isogeny entries live in another field")

    @property
    def source(self) -> Ambient:
        return Ambient(self.tag, tuple(self.source_conductors))

    @property
    def target(self) -> Ambient:
        return Ambient(self.tag, (1, 1))

    @property
    def equal_conductors(self) -> bool:
        return self.source_conductors[0] == self.source_conductors[1]

    def __str__(self) -> str:
        m1, m2 = self.source_conductors
        return f"diag({self.alpha}, {self.beta}) on conductors ({m1}, {m2})"


@dataclass(frozen=True)
class ClosedFormCount:
    """
    Component count from the gcd formula.

    `count` uses the invariant factors of the coordinate matrix of (xi, eta);
    `axis_count` is the coordinate-wise form N(delta)*GCD(x0, m)*GCD(y0, m).
    """

    count: int
    case: str
    axis_count: int

    @property
    def axis_deviates(self) -> bool:
        return self.count != self.axis_count


@dataclass(frozen=True)
class PullbackDecomposition:
    curve: CurveOnSquare
    components: Tuple[CurveOnSquare, ...]
    count: int
    lambda_lattice: Lattice2
    closed_form: Optional[ClosedFormCount] = None

    def to_dict(self) -> Dict:
        data = {
            "slope": [self.curve.a.to_dict(), self.curve.b.to_dict()],
            "count": self.count,
            "lattice_index": self.count,
        }
        if self.closed_form is not None:
            data["closed_form"] = self.closed_form.count
            data["closed_form_case"] = self.closed_form.case
            data["axis_count"] = self.closed_form.axis_count
        return data


@dataclass(frozen=True)
class PullbackReport:
    """Everything the CLI prints about mu^-1(D)."""

    isogeny: DiagonalIsogeny
    degree: int
    decompositions: Tuple[PullbackDecomposition, ...]
    configuration: Configuration
    locus: SingularLocusReport
    base_locus: SingularLocusReport = field(repr=False)

    @property
    def cusps(self) -> int:
        return len(self.configuration)

    @property
    def euler(self) -> int:
        return self.locus.total


def degree(mu: DiagonalIsogeny) -> int:
    m1, m2 = mu.source_conductors
    return m1 * m2 * norm(mu.alpha) * norm(mu.beta)


def _require_target_curve(mu: DiagonalIsogeny, curve: CurveOnSquare):
    if curve.ambient != mu.target:
        raise DomainError("The curve does not live on the isogeny's target")
    if not is_unit(gcd(curve.a, curve.b)):
        raise DomainError(f"Slope ({curve.a}, {curve.b}) is not coprime")


def lambda_lattice(mu: DiagonalIsogeny, curve: CurveOnSquare) -> Lattice2:
    """
    Lambda(F, mu) = a*beta*O_m2 + b*alpha*O_m1.

    Raises:
        InternalConsistencyError: If the lattice escapes O_-d
    """
    _require_target_curve(mu, curve)
    m1, m2 = mu.source_conductors
    pieces = [
        lattice.span([mul(curve.a, mu.beta)], OrderRef(mu.tag, m2)) if curve.a else None,
        lattice.span([mul(curve.b, mu.alpha)], OrderRef(mu.tag, m1)) if curve.b else None,
    ]
    pieces = [p for p in pieces if p is not None]
    result = pieces[0] if len(pieces) == 1 else lattice.lattice_sum(*pieces)
    if not lattice.contains_lattice(lattice.lattice_of_order(OrderRef(mu.tag)), result):
        raise InternalConsistencyError("Lambda(F, mu) is not contained in O")
    return result


def component_count_lattice(mu: DiagonalIsogeny, curve: CurveOnSquare) -> int:
    """[O : Lambda(F, mu)], valid for every conductor combination."""
    sub = lambda_lattice(mu, curve)
    return lattice.index(sub, lattice.lattice_of_order(OrderRef(mu.tag)))


def component_count_closed_form(mu: DiagonalIsogeny, curve: CurveOnSquare) -> ClosedFormCount:
    """
    N(delta) * GCD(g1, m) * GCD(g2, m) with delta = GCD(a*beta, b*alpha),
    xi = a*beta/delta, eta = b*alpha/delta and g1 | g2 the invariant factors
    of [[x(xi), x(eta)], [y(xi), y(eta)]]. GCD(0, m) = m.

    Raises:
        UnsupportedCaseError: For unequal conductors or a non-coprime slope
    """
    if not mu.equal_conductors:
        raise UnsupportedCaseError("Closed form needs equal source conductors")
    if curve.ambient != mu.target or not is_unit(gcd(curve.a, curve.b)):
        raise UnsupportedCaseError("Closed form needs a coprime slope on the maximal square")
    m = mu.source_conductors[0]
    a_beta = mul(curve.a, mu.beta)
    b_alpha = mul(curve.b, mu.alpha)
    delta = gcd(a_beta, b_alpha)
    xi, eta = div_exact(a_beta, delta), div_exact(b_alpha, delta)

    g1 = math.gcd(xi.x, eta.x, xi.y, eta.y)
    g2 = abs(xi.x * eta.y - eta.x * xi.y) // g1
    count = norm(delta) * math.gcd(g1, m) * math.gcd(g2, m)

    x0 = math.gcd(xi.x, eta.x)
    y0 = math.gcd(xi.y, eta.y)
    if x0 and y0:
        case, axis = "xy", norm(delta) * math.gcd(x0, m) * math.gcd(y0, m)
    elif x0:
        case, axis = "x", m * norm(delta) * math.gcd(x0, m)
    else:
        case, axis = "y", m * norm(delta) * math.gcd(y0, m)
    return ClosedFormCount(count=count, case=case, axis_count=axis)


def pullback_curve(
    mu: DiagonalIsogeny,
    curve: CurveOnSquare,
    bezout_pair: Optional[Tuple[QuadInt, QuadInt]] = None,
) -> PullbackDecomposition:
    """
    mu^-1(F) as the disjoint union of the curves
    E(a*beta, b*alpha) + ((p + b0*l) / alpha, (q - a0*l) / beta)
    over l in O / Lambda(F, mu), where a*a0 + b*b0 = 1.

    Raises:
        InternalConsistencyError: If the components do not match the lattice count
    """
    _require_target_curve(mu, curve)
    a, b = curve.slope
    if bezout_pair is None:
        a0, b0 = bezout(a, b)
    else:
        a0, b0 = bezout_pair
        if mul(a, a0) + mul(b, b0) != QuadInt(mu.tag, 1, 0):
            raise DomainError("Not a Bezout pair for the slope")

    sub = lambda_lattice(mu, curve)
    whole = lattice.lattice_of_order(OrderRef(mu.tag))
    count = lattice.index(sub, whole)
    p, q = curve.base.u, curve.base.v
    slope = (mul(a, mu.beta), mul(b, mu.alpha))

    components = []
    seen = set()
    for rep in lattice.cosets(sub, whole):
        lam = from_coords(mu.tag, rep)
        shift_u = mul_coords(b0, lam.coords)
        shift_v = mul_coords(a0, lam.coords)
        u = div_coords((p[0] + shift_u[0], p[1] + shift_u[1]), mu.alpha)
        v = div_coords((q[0] - shift_v[0], q[1] - shift_v[1]), mu.beta)
        component = curve_new(mu.source, slope, list(u) + list(v))
        if component.key in seen:
            raise InternalConsistencyError(f"Duplicate component over {curve}")
        seen.add(component.key)
        components.append(component)

    if len(components) != count:
        raise InternalConsistencyError(
            f"{len(components)} components but lattice index {count} over {curve}"
        )

    closed_form = None
    if mu.equal_conductors:
        closed_form = component_count_closed_form(mu, curve)
        if closed_form.count != count:
            raise InternalConsistencyError(
                f"Closed form {closed_form.count} disagrees with lattice index {count}"
            )
    logger.debug(f"{curve} pulls back to {count} components")
    return PullbackDecomposition(
        curve=curve,
        components=tuple(components),
        count=count,
        lambda_lattice=sub,
        closed_form=closed_form,
    )


def pullback_components(mu: DiagonalIsogeny, config: Configuration) -> List[PullbackDecomposition]:
    if config.ambient != mu.target:
        raise DomainError("The configuration does not live on the isogeny's target")
    return [pullback_curve(mu, curve) for curve in config.curves]


def pullback_report(
    mu: DiagonalIsogeny,
    config: Configuration,
    base_locus: Optional[SingularLocusReport] = None,
) -> PullbackReport:
    """
    Pull back a proportional configuration and verify the result.

    Raises:
        DomainError: If the configuration is not proportional
        InternalConsistencyError: If the pull-back is not proportional or the
            number of singular points is not degree * |D^sing|
    """
    base_locus = base_locus or singular_locus(config)
    if not base_locus.proportional:
        raise DomainError("Only proportional configurations are pulled back")
    decompositions = pullback_components(mu, config)
    curves = [c for decomposition in decompositions for c in decomposition.components]
    pulled = configuration(mu.source, curves)
    locus = singular_locus(pulled)
    deg = degree(mu)
    if not locus.proportional:
        raise InternalConsistencyError(f"Pull-back along {mu} is not proportional")
    if locus.total != deg * base_locus.total:
        raise InternalConsistencyError(
            f"Pull-back has {locus.total} singular points, expected {deg} * {base_locus.total}"
        )
    logger.info(f"Pull-back along {mu}: degree {deg}, {len(curves)} cusps, e={locus.total}")
    return PullbackReport(
        isogeny=mu,
        degree=deg,
        decompositions=tuple(decompositions),
        configuration=pulled,
        locus=locus,
        base_locus=base_locus,
    )


def pullback_configuration(mu: DiagonalIsogeny, config: Configuration) -> Configuration:
    return pullback_report(mu, config).configuration


def are_squares_birational(m: int, n: int) -> bool:
    """E_-d,m x E_-d,m and E_-d,n x E_-d,n are birational iff m == n."""
    return m == n


def hirzebruch_cusp_formula(alpha: QuadInt, m: int) -> int:
    """m + m*N(alpha) + GCD(y(alpha), m) + GCD(x(alpha) + y(alpha), m)."""
    return m + m * norm(alpha) + math.gcd(alpha.y, m) + math.gcd(alpha.x + alpha.y, m)


def shifted_bezout(a: QuadInt, b: QuadInt, gamma: QuadInt) -> Tuple[QuadInt, QuadInt]:
    """The Bezout pair (a0 + gamma*b, b0 - gamma*a)."""
    a0, b0 = bezout(a, b)
    return a0 + mul(gamma, b), b0 - mul(gamma, a)
