"""
Conversion between the sigma-form and the d-form of an operator.

With Q = qt^step the two generators are tied by sigma = 1 + (Q - 1) x d, so

    sigma^i = sum_k binom(i, k)_Q (Q - 1)^k Q^(k(k-1)/2) x^k d^k
    d^n     = (-1)^n / ((Q - 1)^n x^n) sum_i c_{i,n} sigma^i

where sum_i c_{i,n} sigma^i = (-1)^n Q^(-n(n-1)/2) (sigma - 1)(sigma - Q)...(sigma - Q^(n-1)).
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Tuple

from sympy.polys.fields import FracElement

from core.qnumbers import q_numbers
from core.scalar_field import FIELD, X, power, qt_power
from core.series import SeriesPrefix
from operators.action import apply
from operators.skew_operator import DQ, SIGMA, SkewOperator


@dataclass(frozen=True)
class DqPowerExpansion:
    """
    Scalars c_{0,n}, ..., c_{n,n} expressing d^n through powers of sigma.

    Args:
        n: Power of d
        step: Exponent e of Q = qt^e
        c: The coefficients c_{i,n}, i = 0..n
    """
    n: int
    step: int
    c: Tuple[FracElement, ...]

    @property
    def prefactor(self) -> FracElement:
        """(-1)^n / ((Q - 1)^n x^n)."""
        sign = 1 if self.n % 2 == 0 else -1
        return sign / ((qt_power(self.step) - 1) * X) ** self.n if self.n else FIELD.one

    def sigma_coefficients(self):
        """Left coefficients of d^n as a sigma-operator."""
        pre = self.prefactor
        return [pre * ci for ci in self.c]

    def apply_to_monomial(self, k: int) -> FracElement:
        """d^n(x^k) evaluated through the expansion, using sigma^i x^k = Q^(ik) x^k."""
        total = FIELD.zero
        for i, ci in enumerate(self.c):
            total += ci * qt_power(self.step * i * k)
        return self.prefactor * total * X ** k


@lru_cache(maxsize=None)
def dq_power_expansion(n: int, step: int = 1) -> DqPowerExpansion:
    """
    The expansion of d^n in powers of sigma.

    Args:
        n: Nonnegative power
        step: Exponent e of Q = qt^e
    """
    # coefficients of (s - 1)(s - Q)...(s - Q^(n-1)), constant term first
    poly = [FIELD.one]
    for j in range(n):
        root = qt_power(step * j)
        shifted = [FIELD.zero] + poly
        for i, c in enumerate(poly):
            shifted[i] -= root * c
        poly = shifted
    sign = 1 if n % 2 == 0 else -1
    scale = sign * qt_power(-step * (n * (n - 1) // 2))
    return DqPowerExpansion(n, step, tuple(scale * c for c in poly))


def sigma_power_in_dq(i: int, step: int = 1) -> Tuple[FracElement, ...]:
    """Left d-coefficients of sigma^i."""
    numbers = q_numbers(step)
    base = qt_power(step) - 1
    return tuple(
        numbers.binomial(i, k) * power(base, k) * numbers.triangular(k) * X ** k
        for k in range(i + 1)
    )


def to_dq(op: SkewOperator) -> SkewOperator:
    """Rewrite a sigma-operator as a d-operator (same operator, other basis)."""
    if op.form == DQ:
        return op
    out = [FIELD.zero] * len(op.coeffs)
    for i, a in enumerate(op.coeffs):
        if not a:
            continue
        for k, c in enumerate(sigma_power_in_dq(i, op.step)):
            out[k] += a * c
    return op.like(out, form=DQ)


def to_sigma(op: SkewOperator) -> SkewOperator:
    """Rewrite a d-operator as a sigma-operator."""
    if op.form == SIGMA:
        return op
    out = [FIELD.zero] * len(op.coeffs)
    for n, a in enumerate(op.coeffs):
        if not a:
            continue
        for i, c in enumerate(dq_power_expansion(n, op.step).sigma_coefficients()):
            out[i] += a * c
    return op.like(out, form=SIGMA)


def convert(op: SkewOperator, form: str) -> SkewOperator:
    """Convert an operator to the requested form ("sigma" or "dq")."""
    return to_dq(op) if form == DQ else to_sigma(op)


@dataclass
class ConversionCheck:
    """
    Round trip through the other form and agreement of both forms on a prefix.

    Attributes:
        round_trip: Converting there and back gives the operator up to a unit
        acts_alike: Both forms give the same L(y) on their common precision
        known: Number of coefficients compared
    """
    round_trip: bool
    acts_alike: bool
    known: int

    @property
    def holds(self) -> bool:
        return self.round_trip and self.acts_alike


def conversion_check(op: SkewOperator, prefix: SeriesPrefix) -> ConversionCheck:
    """Convert L to the other form and back, and apply both forms to y."""
    other = DQ if op.form == SIGMA else SIGMA
    converted = convert(op, other)
    back = convert(converted, op.form)
    a, b = apply(op, prefix), apply(converted, prefix)
    known = min(a.order, b.order)
    return ConversionCheck(back.equals_up_to_unit(op), a.truncate(known) == b.truncate(known), known)
