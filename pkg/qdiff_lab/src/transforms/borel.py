"""
Formal q-Borel transforms and the action of operators in z on series in 1/z.

For y = sum a_n x^n the transforms are

    y^+ = sum [n]_q! a_n z^(-n-1)        y^# = sum q^(n(n-1)/2) a_n z^(-n-1)

Operators in z (generators sigma_p and d_p, p = 1/q) act on these series
without loss of precision; multiplying by z^k, k > 0, forgets the k lowest
known coefficients. Nonnegative powers of z produced along the way are
kept exactly in a polynomial part.
"""

from dataclasses import dataclass
from typing import Dict, List, Tuple

from sympy.polys.fields import FracElement

from core.exceptions import DomainError, TruncationUnderflowError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, ScalarField, constant, is_scalar, laurent_terms, qt_power
from core.series import SeriesPrefix
from operators.skew_operator import DQ, SkewOperator


@dataclass(frozen=True)
class InverseSeriesPrefix:
    """
    sum_n c_n z^(-n-1) known for n < order, plus an exact polynomial part.

    Args:
        coeffs: c_0, c_1, ... (index n is the coefficient of z^(-n-1))
        field: Scalar field
        polynomial: Coefficients of z^0, z^1, ... (exact)
    """
    coeffs: Tuple[FracElement, ...]
    field: ScalarField = ScalarField()
    polynomial: Tuple[FracElement, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(constant(c) for c in self.coeffs))
        poly = [constant(c) for c in self.polynomial]
        while poly and not poly[-1]:
            poly.pop()
        object.__setattr__(self, "polynomial", tuple(poly))
        for c in self.coeffs + self.polynomial:
            if not is_scalar(c):
                raise DomainError("series coefficients must not depend on the variable")

    @property
    def order(self) -> int:
        """Number of known coefficients of negative powers."""
        return len(self.coeffs)

    def __getitem__(self, n: int) -> FracElement:
        return self.coeffs[n]

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return not any(self.coeffs) and not self.polynomial

    def terms(self) -> Dict[int, FracElement]:
        """Known nonzero coefficients keyed by the power of z."""
        out = {-n - 1: c for n, c in enumerate(self.coeffs) if c}
        out.update({k: c for k, c in enumerate(self.polynomial) if c})
        return out

    def values(self) -> List[FracElement]:
        """The coefficients of z^-1, z^-2, ... as a list."""
        return list(self.coeffs)


def _weighted(prefix: SeriesPrefix, weight) -> InverseSeriesPrefix:
    return InverseSeriesPrefix(tuple(weight(n) * prefix[n] for n in range(prefix.order)), prefix.field)


def borel_plus(prefix: SeriesPrefix) -> InverseSeriesPrefix:
    """sum [n]_q! a_n z^(-n-1)."""
    numbers = q_numbers(prefix.field.r)
    return _weighted(prefix, numbers.factorial)


def borel_sharp(prefix: SeriesPrefix) -> InverseSeriesPrefix:
    """sum q^(n(n-1)/2) a_n z^(-n-1)."""
    numbers = q_numbers(prefix.field.r)
    return _weighted(prefix, numbers.triangular)


def inverse_borel_plus(series: InverseSeriesPrefix) -> SeriesPrefix:
    """Recover y from y^+ (the polynomial part is ignored)."""
    numbers = q_numbers(series.field.r)
    return SeriesPrefix(tuple(c / numbers.factorial(n) for n, c in enumerate(series.coeffs)), series.field)


def inverse_borel_sharp(series: InverseSeriesPrefix) -> SeriesPrefix:
    """Recover y from y^#."""
    numbers = q_numbers(series.field.r)
    return SeriesPrefix(tuple(c / numbers.triangular(n) for n, c in enumerate(series.coeffs)), series.field)


def _generator_image(terms: Dict[int, FracElement], op: SkewOperator) -> Dict[int, FracElement]:
    base = qt_power(op.step)
    out: Dict[int, FracElement] = {}
    if op.form == DQ:
        numbers = q_numbers(op.step)
        for m, c in terms.items():
            # d_Q z^m = [m]_Q z^(m-1)
            value = numbers.integer(m) * c
            if value:
                out[m - 1] = value
    else:
        for m, c in terms.items():
            out[m] = base ** m * c if m >= 0 else c / base ** (-m)
    return out


def apply_in_z(op: SkewOperator, series: InverseSeriesPrefix) -> InverseSeriesPrefix:
    """
    L(Y) for an operator in z with Laurent polynomial coefficients.

    Every term of the result is tracked with the lowest power of z it knows;
    the result keeps the powers known for all terms.

    Raises:
        DomainError: If a coefficient is not a Laurent polynomial in z
        TruncationUnderflowError: If the polynomial part of the result is not determined
    """
    acc: Dict[int, FracElement] = {}
    terms = series.terms()
    low = -series.order
    known = None
    for i, a in enumerate(op.coeffs):
        if i:
            terms = _generator_image(terms, op)
            if op.form == DQ:
                low -= 1
        if not a:
            continue
        factor = laurent_terms(a)
        for k, f in factor.items():
            for m, c in terms.items():
                acc[m + k] = acc.get(m + k, FIELD.zero) + f * c
        bound = low + max(factor)
        known = bound if known is None else max(known, bound)
    if known is None:
        return InverseSeriesPrefix((FIELD.zero,) * series.order, series.field)
    if known > 0:
        raise TruncationUnderflowError(
            "operator loses more precision than the series carries",
            requested=series.order + known, available=series.order
        )
    coeffs = tuple(acc.get(-n - 1, FIELD.zero) for n in range(-known))
    top = max((m for m, c in acc.items() if m >= 0 and c), default=-1)
    polynomial = tuple(acc.get(m, FIELD.zero) for m in range(top + 1))
    return InverseSeriesPrefix(coeffs, series.field, polynomial)


def annihilates_in_z(op: SkewOperator, series: InverseSeriesPrefix) -> bool:
    """True if every determined coefficient of L(Y) vanishes."""
    return apply_in_z(op, series).is_zero()
