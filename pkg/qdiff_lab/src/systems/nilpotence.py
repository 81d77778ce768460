"""
Nilpotent reduction of a system at a cyclotomic place Phi_m.

With kappa = m the order of the image of q modulo Phi_m, three equivalent
conditions are tested:

    a. the reduction of A_kappa - 1 modulo Phi_m is nilpotent
    b. the reduction of G_kappa modulo Phi_m is nilpotent
    c. |G_{n kappa}|_Gauss <= |Phi_m| at Phi_m for some n <= horizon

Reductions live in Q(zeta_m)(x). A matrix is reduced by clearing a common
denominator D (nonzero modulo Phi_m) and reducing the polynomial entries of
D M modulo Phi_m(q) in Q[x, q]; (D M)^k vanishes exactly when M^k does.
"""

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Dict, List, Optional

from sympy import Rational
from sympy.polys.rings import PolyElement

from core import console
from core.cyclotomic import cyclotomic_poly, euler_phi
from core.exceptions import BadReductionError, DomainError
from core.matrix import RationalMatrix
from core.scalar_field import RING, as_polynomial, frac, from_qt_poly
from operators.parser import format_function
from places.place import Place, gauss_log_norm, log_plus
from systems.iteration import IterationTable, iterate
from systems.q_system import QSystem

PolyMatrix = List[List[PolyElement]]


@lru_cache(maxsize=None)
def _modulus(m: int) -> PolyElement:
    """Phi_m as an element of Q[x, qt]."""
    return from_qt_poly(cyclotomic_poly(m)).numer


def check_reducible(matrix: RationalMatrix, m: int, label: str) -> None:
    """
    Raises:
        BadReductionError: Naming the first entry whose denominator vanishes modulo Phi_m
    """
    phi = _modulus(m)
    for i, row in enumerate(matrix.rows):
        for j, e in enumerate(row):
            if e and not e.denom.rem(phi):
                raise BadReductionError(
                    f"denominator of {label}[{i},{j}] vanishes modulo Phi_{m}",
                    modulus=m, entry=f"{label}[{i},{j}] = {format_function(e)}"
                )


def reduce_matrix(matrix: RationalMatrix, m: int, label: str = "M") -> PolyMatrix:
    """D M modulo Phi_m for a common denominator D of the entries."""
    check_reducible(matrix, m, label)
    phi = _modulus(m)
    den = RING.one
    for e in matrix.entries():
        if e:
            den = den.lcm(e.denom)
    scale = frac(den)
    return [[as_polynomial(e * scale).rem(phi) for e in row] for row in matrix.rows]


def _multiply(a: PolyMatrix, b: PolyMatrix, phi: PolyElement) -> PolyMatrix:
    n = len(a)
    return [
        [sum((a[i][t] * b[t][j] for t in range(n)), RING.zero).rem(phi) for j in range(n)]
        for i in range(n)
    ]


def nilpotency_index(reduced: PolyMatrix, m: int) -> Optional[int]:
    """Least k with M^k = 0 over Q(zeta_m)(x), None if M is not nilpotent."""
    phi = _modulus(m)
    power = reduced
    for k in range(1, len(reduced) + 1):
        if not any(e for row in power for e in row):
            return k
        power = _multiply(power, reduced, phi)
    return None


def _gauss_drop(matrix: RationalMatrix, place: Place) -> bool:
    """|M|_Gauss <= |Phi_m| at the place Phi_m (true for M = 0)."""
    if matrix.is_zero():
        return True
    return gauss_log_norm(matrix, place) <= -place.degree


@dataclass
class NilpotenceReport:
    """
    The three nilpotence conditions at Phi_m.

    Attributes:
        m: Cyclotomic order (kappa = m)
        a_index: Nilpotency index of A_kappa - 1 modulo Phi_m, None if not nilpotent
        g_nilpotent: Whether G_kappa reduces to a nilpotent matrix (None if G_kappa does not reduce)
        gauss_order: Least n <= horizon with |G_{n kappa}|_Gauss <= |Phi_m|, None if none found
        horizon: Largest n scanned
    """
    m: int
    a_index: Optional[int]
    g_nilpotent: Optional[bool]
    gauss_order: Optional[int]
    horizon: int

    @property
    def kappa(self) -> int:
        return self.m

    @property
    def a_nilpotent(self) -> bool:
        return self.a_index is not None

    @property
    def gauss_drop(self) -> bool:
        return self.gauss_order is not None

    @property
    def flags(self) -> Dict[str, Optional[bool]]:
        """The three conditions by name."""
        return {
            "a_minus_one_nilpotent": self.a_nilpotent,
            "g_nilpotent": self.g_nilpotent,
            "gauss_drop": self.gauss_drop,
        }

    @property
    def consistent(self) -> bool:
        """True if the computed flags agree."""
        return len({flag for flag in self.flags.values() if flag is not None}) <= 1

    def to_dict(self) -> dict:
        """Plain data for reports."""
        return {
            "m": self.m,
            "kappa": self.kappa,
            "flags": self.flags,
            "a_index": self.a_index,
            "order": self.gauss_order,
            "horizon": self.horizon,
            "consistent": self.consistent,
        }


def nilpotent_reduction(system: QSystem, m: int, horizon: int = 8,
                        table: Optional[IterationTable] = None) -> NilpotenceReport:
    """
    Test nilpotent reduction of a system modulo Phi_m.

    Args:
        system: System over Q(q)
        m: Cyclotomic order
        horizon: Largest n tried for the Gauss-norm condition
        table: Iteration table to reuse (extended as needed)

    Raises:
        BadReductionError: If an entry of A_1..A_m does not reduce modulo Phi_m
        DomainError: Over a radical field, or for m < 2
    """
    if system.field.r != 1:
        raise DomainError("nilpotent reduction is implemented over Q(q) only")
    if m < 2:
        raise DomainError("nilpotent reduction needs m >= 2 (q - 1 divides the denominator of G_1)")
    if horizon < 1:
        raise DomainError("horizon must be positive")
    kappa = m
    table = (table or iterate(system, kappa)).extended(kappa)
    for n in range(1, kappa + 1):
        check_reducible(table.a(n), m, f"A_{n}")
    console.info(f"  reducing modulo Phi_{m}")

    shifted = table.a(kappa) - RationalMatrix.identity(system.dimension)
    a_index = nilpotency_index(reduce_matrix(shifted, m, f"A_{kappa} - 1"), m)

    try:
        g_index = nilpotency_index(reduce_matrix(table.g(kappa), m, f"G_{kappa}"), m)
        g_nilpotent: Optional[bool] = g_index is not None
    except BadReductionError as exc:
        console.info(f"  G_{kappa} does not reduce: {exc.message}")
        g_nilpotent = None

    place = Place.cyclotomic(m)
    gauss_order = None
    for n in range(1, horizon + 1):
        table = table.extended(n * kappa)
        if _gauss_drop(table.g(n * kappa), place):
            gauss_order = n
            break
    return NilpotenceReport(m, a_index, g_nilpotent, gauss_order, horizon)


@dataclass
class NilpotenceCensus:
    """
    Nilpotence reports for every m up to a bound.

    Attributes:
        reports: One report per m with good reduction
        skipped: m -> reason, for bad reductions
    """
    max_m: int
    reports: List[NilpotenceReport] = field(default_factory=list)
    skipped: Dict[int, str] = field(default_factory=dict)

    @property
    def failing(self) -> List[int]:
        """The m where A_kappa - 1 is not nilpotent."""
        return [report.m for report in self.reports if not report.a_nilpotent]

    def to_dict(self) -> dict:
        """Plain data for reports."""
        return {
            "max_m": self.max_m,
            "reports": [report.to_dict() for report in self.reports],
            "skipped": {str(m): reason for m, reason in sorted(self.skipped.items())},
            "failing": self.failing,
        }


def nilpotence_census(system: QSystem, max_m: int, horizon: int = 8) -> NilpotenceCensus:
    """Run the nilpotence report for m = 2..max_m, skipping bad reductions."""
    census = NilpotenceCensus(max_m)
    table = iterate(system, 1)
    for m in range(2, max_m + 1):
        try:
            report = nilpotent_reduction(system, m, horizon, table)
        except BadReductionError as exc:
            console.warn(f"skipping Phi_{m}: {exc.message}")
            census.skipped[m] = exc.message
            continue
        census.reports.append(report)
    return census


@dataclass
class DecayRow:
    """log+ |G_[s]|_Gauss at Phi_m against the bound from nilpotence of order n."""
    s: int
    log_norm: Rational
    bound: Rational

    @property
    def holds(self) -> bool:
        return self.log_norm <= self.bound


@dataclass
class DecayProfile:
    """
    Decay of G_[s] at Phi_m for a system with nilpotent reduction of order n.

    Attributes:
        m: Cyclotomic order
        order: Nilpotence order n
        rows: One row per s = 1..horizon
        limit_bound: phi(m) (1 - 1/n) / kappa, the bound on limsup log+|G_[s]| / s
    """
    m: int
    order: int
    rows: List[DecayRow]
    limit_bound: Rational

    @property
    def holds(self) -> bool:
        """True if every row respects its bound."""
        return all(row.holds for row in self.rows)


def decay_profile(table: IterationTable, m: int, order: int, horizon: Optional[int] = None) -> DecayProfile:
    """
    Compare log+ |G_[s]|_Gauss at Phi_m with phi(m) (floor(s/kappa) - floor(s/(n kappa))).

    The bound combines |G_{a n kappa}|_Gauss <= |Phi_m|^a with
    |[s]_q!| = |Phi_m|^floor(s/kappa); it needs |G_1|_Gauss <= 1 at Phi_m.

    Args:
        table: Iteration table (extended to the horizon)
        m: Cyclotomic order
        order: Nilpotence order n
        horizon: Largest s (default 6 n kappa)
    """
    if order < 1:
        raise DomainError("nilpotence order must be positive")
    kappa = m
    horizon = horizon or 6 * order * kappa
    table = table.extended(horizon)
    place = Place.cyclotomic(m)
    phi = euler_phi(m)
    rows = []
    for s in range(1, horizon + 1):
        g = table.g_bracket(s)
        value = Rational(0) if g.is_zero() else log_plus(gauss_log_norm(g, place))
        rows.append(DecayRow(s, value, Rational(phi * (s // kappa - s // (order * kappa)))))
    return DecayProfile(m, order, rows, Rational(phi * (order - 1), order * kappa))
