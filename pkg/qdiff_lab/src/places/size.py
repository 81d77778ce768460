"""
Size of a power series and heights of finite coefficient families.

The finite places are never enumerated. For a family of scalars the sum over
finite places of log+ sup |y_s|_v equals the degree of the lcm of the reduced
denominators (q-powers excluded, they belong to the q-adic place). The lcm is
built incrementally and only its cyclotomic part is split off, by trial
division of each new factor.
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Sequence, Tuple

import pandas as pd
from sympy import Rational
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from core.cyclotomic import (
    DEFAULT_ORDER_FACTOR, DEFAULT_ORDER_FLOOR, cyclotomic_factorization, euler_phi, strip_qt_power
)
from core.exceptions import DomainError
from core.scalar_field import QRING, ScalarField, to_qt_poly
from core.series import SeriesPrefix


class LcmAccumulator:
    """
    Running lcm of polynomials of Z[qt] split into cyclotomic and other parts.

    Args:
        floor: Cyclotomic orders always tried
        factor: Cyclotomic orders tried per unit of degree
    """

    def __init__(self, floor: int = DEFAULT_ORDER_FLOOR, factor: int = DEFAULT_ORDER_FACTOR):
        self.floor = floor
        self.factor = factor
        self.lcm = QRING.one
        self.cyclotomic: Dict[int, int] = {}
        self.cyclotomic_degree = 0
        self.noncyclotomic_degree = 0

    def absorb(self, upoly: PolyElement) -> PolyElement:
        """
        Replace the lcm L by lcm(L, upoly) for a polynomial with upoly(0) != 0.

        Returns:
            The new factor u = upoly / gcd(L, upoly)
        """
        if upoly.degree() <= 0:
            return QRING.one
        _, upoly = upoly.primitive()
        quotient, remainder = self.lcm.div(upoly)
        if not remainder:
            return QRING.one
        quotient, remainder = upoly.div(self.lcm)
        if not remainder:
            new = quotient
        else:
            new = upoly.exquo(self.lcm.gcd(upoly))
        if new.degree() <= 0:
            return QRING.one
        found, residual = cyclotomic_factorization(new, self.floor, self.factor)
        for m, k in found.items():
            self.cyclotomic[m] = self.cyclotomic.get(m, 0) + k
            self.cyclotomic_degree += euler_phi(m) * k
        self.noncyclotomic_degree += residual.degree()
        self.lcm = self.lcm * new
        return new


@dataclass
class SizeRow:
    """One partial sum of the size functional."""
    n: int
    cyclotomic: Rational
    noncyclotomic: Rational
    infinite: Rational

    @property
    def total(self) -> Rational:
        """Sum over all places."""
        return self.cyclotomic + self.noncyclotomic + self.infinite


@dataclass
class SizeReport:
    """
    Partial sums sigma_n = (1/n) sum_v log+ sup_{s<=n} |y_s|_v, split by place class.

    Attributes:
        rows: One SizeRow per n (n = 0 uses the divisor 1)
        cyclotomic_orders: Multiplicity of each Phi_m in the final lcm
    """
    rows: List[SizeRow]
    cyclotomic_orders: Dict[int, int] = dataclass_field(default_factory=dict)

    def row(self, n: int) -> SizeRow:
        """Partial sum at index n."""
        return self.rows[n]

    def totals(self) -> List[Rational]:
        """sigma_n for every n."""
        return [row.total for row in self.rows]

    def to_dataframe(self) -> pd.DataFrame:
        """One row per n with float columns for plotting and exact strings for export."""
        return pd.DataFrame({
            "n": [row.n for row in self.rows],
            "cyclotomic": [float(row.cyclotomic) for row in self.rows],
            "noncyclotomic": [float(row.noncyclotomic) for row in self.rows],
            "infinite": [float(row.infinite) for row in self.rows],
            "total": [float(row.total) for row in self.rows],
            "total_exact": [str(row.total) for row in self.rows],
        })

    def to_dict(self) -> Dict[str, Any]:
        """Exact partial sums for reports."""
        return {
            "partial_sums": [
                {
                    "n": row.n,
                    "cyclotomic": str(row.cyclotomic),
                    "noncyclotomic": str(row.noncyclotomic),
                    "infinite": str(row.infinite),
                    "total": str(row.total),
                }
                for row in self.rows
            ],
            "cyclotomic_orders": {str(m): k for m, k in sorted(self.cyclotomic_orders.items())},
        }


@dataclass
class HeightReport:
    """
    Heights sum_v log+ sup_n |g_n|_v of a finite family, split by place class.

    Attributes:
        cyclotomic: Sum over the places Phi_m
        noncyclotomic: Sum over the other finite places
        infinite: Sum over q and 1/q
        per_cyclotomic_place: Contribution of each Phi_m
    """
    cyclotomic: Rational
    noncyclotomic: Rational
    infinite: Rational
    per_cyclotomic_place: Dict[int, Rational]

    @property
    def total(self) -> Rational:
        """Sum over all places."""
        return self.cyclotomic + self.noncyclotomic + self.infinite


class _RunningSums:
    """Shared bookkeeping for size reports and heights."""

    def __init__(self, field: ScalarField, floor: int, factor: int):
        self.field = field
        self.acc = LcmAccumulator(floor, factor)
        self.q_adic = 0
        self.q_inverse_adic = 0

    def absorb(self, value: FracElement) -> None:
        if not value:
            return
        num, den = to_qt_poly(value.numer), to_qt_poly(value.denom)
        k_num, _ = strip_qt_power(num)
        k_den, rest = strip_qt_power(den)
        self.q_adic = max(self.q_adic, k_den - k_num)
        self.q_inverse_adic = max(self.q_inverse_adic, num.degree() - den.degree())
        self.acc.absorb(rest)

    def values(self) -> Tuple[Rational, Rational, Rational]:
        r = self.field.r
        return (
            Rational(self.acc.cyclotomic_degree, r),
            Rational(self.acc.noncyclotomic_degree, r),
            Rational(self.q_adic + self.q_inverse_adic, r),
        )


def size_report(
    prefix,
    field: ScalarField = None,
    floor: int = DEFAULT_ORDER_FLOOR,
    factor: int = DEFAULT_ORDER_FACTOR
) -> SizeReport:
    """
    Partial sums of the size functional of a coefficient prefix.

    Args:
        prefix: SeriesPrefix or sequence of scalars y_0..y_n
        field: Scalar field (taken from the prefix when omitted)

    Returns:
        SizeReport with one row per n

    Raises:
        DomainError: If the prefix is empty
    """
    if isinstance(prefix, SeriesPrefix):
        field = field or prefix.field
        values = prefix.values()
    else:
        values = list(prefix)
    field = field or ScalarField()
    if not values:
        raise DomainError("size of an empty prefix is undefined")
    return family_size_report([[y] for y in values], field, floor, factor)


def family_size_report(
    families: Sequence[Sequence[FracElement]],
    field: ScalarField = ScalarField(),
    floor: int = DEFAULT_ORDER_FLOOR,
    factor: int = DEFAULT_ORDER_FACTOR
) -> SizeReport:
    """
    Partial sums (1/n) sum_v log+ sup_{s<=n} sup_{y in family s} |y|_v.

    Used for matrices (the family is the list of entries, or of their
    Gauss contents).
    """
    sums = _RunningSums(field, floor, factor)
    rows = []
    for n, family in enumerate(families):
        for y in family:
            sums.absorb(y)
        cyc, noncyc, inf = sums.values()
        divisor = max(n, 1)
        rows.append(SizeRow(n, cyc / divisor, noncyc / divisor, inf / divisor))
    return SizeReport(rows, dict(sums.acc.cyclotomic))


def heights(values: Sequence[FracElement], field: ScalarField = ScalarField(),
            floor: int = DEFAULT_ORDER_FLOOR, factor: int = DEFAULT_ORDER_FACTOR) -> HeightReport:
    """
    Height of a finite family of scalars (for instance the coefficients of g).

    Returns:
        HeightReport split by place class
    """
    sums = _RunningSums(field, floor, factor)
    for value in values:
        sums.absorb(value)
    cyc, noncyc, inf = sums.values()
    per_place = {
        m: Rational(euler_phi(m) * k, field.r) for m, k in sorted(sums.acc.cyclotomic.items())
    }
    return HeightReport(cyc, noncyc, inf, per_place)
