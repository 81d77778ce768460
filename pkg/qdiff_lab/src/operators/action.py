"""
Action of skew operators on truncated power series.
"""

from typing import Dict

from sympy.polys.fields import FracElement

from core.exceptions import DomainError, TruncationUnderflowError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, laurent_expand
from core.series import SeriesPrefix
from operators.skew_operator import DQ, SkewOperator


def dq_series(prefix: SeriesPrefix, step: int) -> SeriesPrefix:
    """d_Q y with Q = qt^step; one coefficient of precision is lost."""
    numbers = q_numbers(step)
    return SeriesPrefix(
        tuple(numbers.integer(n) * prefix[n] for n in range(1, prefix.order)),
        prefix.field
    )


def _accumulate(acc: Dict[int, FracElement], f: FracElement, prefix: SeriesPrefix) -> int:
    """Add f * prefix into acc; returns the x-valuation of f."""
    v, coeffs = laurent_expand(f, prefix.order)
    for k in range(prefix.order):
        total = FIELD.zero
        for j in range(k + 1):
            a = coeffs[j]
            if a:
                b = prefix.coeffs[k - j]
                if b:
                    total += a * b
        if total:
            acc[v + k] = acc.get(v + k, FIELD.zero) + total
    return v


def apply(op: SkewOperator, prefix: SeriesPrefix) -> SeriesPrefix:
    """
    L(y) for a series y known modulo x^T.

    Coefficients a_i may have poles at x = 0; they are expanded as Laurent
    series. A term a_i T^i y with a_i of x-valuation v_i is known modulo
    x^(T - i + v_i) in d-form and x^(T + v_i) in sigma-form, and the result is
    known up to the smallest of these.

    Returns:
        SeriesPrefix of L(y)

    Raises:
        TruncationUnderflowError: If no coefficient of the result is determined
        DomainError: If the result has a pole at x = 0
    """
    acc: Dict[int, FracElement] = {}
    known = None
    image = prefix
    for i, a in enumerate(op.coeffs):
        if i:
            if op.form == DQ:
                image = dq_series(image, op.step)
            else:
                image = image.sigma(op.step)
        if not a:
            continue
        precision = max(prefix.order - i, 0) if op.form == DQ else prefix.order
        bound = _accumulate(acc, a, image) + precision
        known = bound if known is None else min(known, bound)
    if known is None:
        return SeriesPrefix.zero(prefix.order, prefix.field)
    if known < 0:
        raise TruncationUnderflowError(
            "operator loses more precision than the series carries",
            requested=prefix.order - known, available=prefix.order
        )
    for k, value in acc.items():
        if k < 0 and value:
            raise DomainError(f"L(y) has a pole of order {-k} at x = 0")
    return SeriesPrefix(tuple(acc.get(k, FIELD.zero) for k in range(known)), prefix.field)


def annihilates(op: SkewOperator, prefix: SeriesPrefix) -> bool:
    """True if every determined coefficient of L(y) vanishes."""
    return apply(op, prefix).is_zero()
