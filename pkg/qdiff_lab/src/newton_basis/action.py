"""
Action of skew operators on series in the q-Newton basis.
"""

from core.exceptions import DomainError, TruncationUnderflowError
from newton_basis.newton_series import NewtonSeries
from operators.skew_operator import DQ, SkewOperator


def act(op: SkewOperator, series: NewtonSeries) -> NewtonSeries:
    """
    L(s) for L = sum a_i(x) T^i with polynomial a_i, T = sigma_Q or d_Q.

    Each power of the generator loses one term, multiplication by a_i keeps
    the truncation, so the result is known modulo T_(order - nu).

    Raises:
        DomainError: If a coefficient is not a polynomial or the dilations differ
        TruncationUnderflowError: If the series is shorter than the order of L
    """
    if op.step != series.step or op.field != series.field:
        raise DomainError("operator and Newton series use different dilations")
    if not op.is_polynomial():
        raise DomainError("the Newton-basis action needs polynomial coefficients")
    if op.is_zero():
        return series.like([])
    known = series.order - op.order
    if known < 0:
        raise TruncationUnderflowError(
            "operator order exceeds the known Newton terms",
            requested=op.order, available=series.order
        )
    acc = series.like([0] * known)
    image = series
    for i, a in enumerate(op.coeffs):
        if i:
            image = image.dq() if op.form == DQ else image.sigma()
        if a:
            acc = acc + image.truncate(known).mul_polynomial(a)
    return acc


def annihilates_newton(op: SkewOperator, series: NewtonSeries) -> bool:
    """True if every determined Newton coefficient of L(s) vanishes."""
    return act(op, series).is_zero()
