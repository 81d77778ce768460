"""
Operator constructions: change of q into 1/q or into q^(1/r), and the
annihilator of all constant shifts F + c.
"""

from core.exceptions import DomainError
from core.scalar_field import FIELD, ScalarField, qt_rescale, sigma_shift
from operators.conversion import to_dq
from operators.skew_operator import DQ, SIGMA, SkewOperator, dq_function


def invert_q(op: SkewOperator) -> SkewOperator:
    """
    The same equation written with the inverse dilation.

    If sum_i a_i(x) y(Q^i x) = 0, substituting x -> Q^(-nu) x gives
    sum_j b_j(x) y(Q^(-j) x) = 0 with b_j(x) = a_{nu-j}(Q^(-nu) x).

    Args:
        op: sigma-operator with dilation Q = qt^e

    Returns:
        Normalized sigma-operator with dilation qt^(-e)
    """
    if op.form != SIGMA:
        raise DomainError("invert_q expects a sigma-operator")
    if op.is_zero():
        return op
    nu = op.order
    coeffs = [sigma_shift(op.coeffs[nu - j], -nu * op.step) for j in range(nu + 1)]
    return SkewOperator(SIGMA, tuple(coeffs), op.field, -op.step, op.var).normalized()


def rescale_power(op: SkewOperator, r: int) -> SkewOperator:
    """
    Read a sigma_q-operator over Q(q^(1/r)) as an operator in sigma_{q^(1/r)}.

    sigma_q = sigma_{q^(1/r)}^r, so a_i sigma_q^i becomes a_i sigma^(i r); the
    coefficients are embedded by qt -> qt^r.

    Args:
        op: sigma-operator over a field with root r0
        r: Positive integer

    Returns:
        Operator over the field with root r0 * r and the same step exponent
    """
    if op.form != SIGMA:
        raise DomainError("rescale_power expects a sigma-operator")
    if not isinstance(r, int) or r < 1:
        raise DomainError(f"rescaling factor must be a positive integer, got {r!r}")
    field = ScalarField(op.field.r * r)
    coeffs = [FIELD.zero] * (op.order * r + 1) if not op.is_zero() else []
    for i, a in enumerate(op.coeffs):
        coeffs[i * r] = qt_rescale(a, r)
    return SkewOperator(SIGMA, tuple(coeffs), field, op.step, op.var)


def shift_constant_annihilator(op: SkewOperator) -> SkewOperator:
    """
    An operator killing F + c for every constant c whenever op kills F.

    With a_0 the coefficient of d^0 the result is (d - d(a_0)/a_0) . op;
    when a_0 = 0 constants are already solutions and op is returned.

    Args:
        op: Operator in either form (converted to d-form)

    Returns:
        Normalized d-operator
    """
    op = to_dq(op)
    a0 = op.coefficient(0)
    if not a0:
        return op
    factor = op.like([-dq_function(a0, op.step) / a0, FIELD.one], form=DQ)
    return (factor * op).normalized()
