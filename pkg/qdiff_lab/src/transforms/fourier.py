"""
q-Fourier transformations of operators.

    q+ :  d_q -> z,        x -> -p d_p        (K[x, d_q] -> K[z, d_p])
    q# :  sigma_q -> p sigma_p,  x -> (1/(q z)) sigma_p

with p = 1/q. Both are ring morphisms, computed by substituting the images of
the generators and multiplying in the target ring. Their compositions with
the symmetry z -> 1/x give operators in the original variable:

    S o q+ :  d_q -> 1/x,           x -> x^2 d_q
    S o q# :  sigma_q -> sigma_q/q, x -> (x/q) sigma_q
"""

from typing import Dict

from sympy.polys.fields import FracElement

from core import console
from core.exceptions import DomainError, NotInImageConeError
from core.scalar_field import FIELD, X, laurent_terms, x_polynomial_terms
from operators.conversion import to_dq, to_sigma
from operators.skew_operator import DQ, SIGMA, SkewOperator

Z_VAR = "z"


def _check_source(op: SkewOperator, form: str) -> SkewOperator:
    if op.step != op.field.r:
        raise DomainError("the Fourier transformations act on operators in sigma_q or d_q")
    op = to_dq(op) if form == DQ else to_sigma(op)
    if not op.is_polynomial():
        console.info(f"  clearing x-denominators before the transform ({form})")
        op = op.cleared()
    return op


def _polynomial_terms(a: FracElement) -> Dict[int, FracElement]:
    return x_polynomial_terms(a)


def _substitute(op: SkewOperator, x_image: SkewOperator, generator_image: SkewOperator) -> SkewOperator:
    """sum_ij a_ij x^j T^i -> sum_ij a_ij X^j G^i in the target ring."""
    result = x_image.like([])
    x_powers = [x_image.like([FIELD.one])]
    g_power = generator_image.like([FIELD.one])
    for i, a in enumerate(op.coeffs):
        if i:
            g_power = g_power * generator_image
        if not a:
            continue
        for j, c in _polynomial_terms(a).items():
            while len(x_powers) <= j:
                x_powers.append(x_powers[-1] * x_image)
            result = result + (x_powers[j] * g_power).scale(c)
    return result


def fourier_plus(op: SkewOperator) -> SkewOperator:
    """
    q+-Fourier transform of a polynomial operator in d_q.

    Returns:
        Operator in z with generator d_p (exact image, not normalized)
    """
    op = _check_source(op, DQ)
    field = op.field
    d_p = SkewOperator.generator(DQ, field, -field.r, Z_VAR)
    return _substitute(op, d_p.scale(-field.p), SkewOperator.scalar(X, DQ, field, -field.r, Z_VAR))


def fourier_sharp(op: SkewOperator) -> SkewOperator:
    """
    q#-Fourier transform of a polynomial operator in sigma_q.

    Returns:
        Operator in z with generator sigma_p and coefficients in 1/z
    """
    op = _check_source(op, SIGMA)
    field = op.field
    sigma_p = SkewOperator.generator(SIGMA, field, -field.r, Z_VAR)
    return _substitute(op, sigma_p.scale(field.p / X), sigma_p.scale(field.p))


def _check_target(op: SkewOperator, form: str) -> SkewOperator:
    if op.step != -op.field.r:
        raise DomainError("the inverse transformations act on operators in sigma_p or d_p")
    if op.form != form:
        raise DomainError(f"expected an operator in {'d_p' if form == DQ else 'sigma_p'}")
    return op


def fourier_plus_inverse(op: SkewOperator) -> SkewOperator:
    """
    Preimage under q+ of an operator polynomial in z: z -> d_q, d_p -> -q x.

    Returns:
        Operator in x with generator d_q
    """
    op = _check_target(op, DQ)
    if not op.is_polynomial():
        raise DomainError("the preimage under q+ needs coefficients polynomial in z")
    field = op.field
    d_q = SkewOperator.generator(DQ, field, field.r)
    return _substitute(op, d_q, SkewOperator.scalar(-field.q * X, DQ, field, field.r))


def sharp_cone_excess(op: SkewOperator) -> int:
    """
    Smallest n such that sigma_p^n . M lies in the image of q#.

    M = sum a_i(1/z) sigma_p^i is in the image when deg_(1/z) a_i <= i for all i.

    Raises:
        NotInImageConeError: If a coefficient has a positive power of z (degree < 0)
    """
    excess = 0
    for i, a in enumerate(op.coeffs):
        if not a:
            continue
        for k in laurent_terms(a):
            if k > 0:
                raise NotInImageConeError(index=i, degree=-k)
            excess = max(excess, -k - i)
    return excess


def fourier_sharp_inverse(op: SkewOperator, pad: bool = False) -> SkewOperator:
    """
    Preimage under q# of M = sum a_i(1/z) sigma_p^i.

    z^(-k) sigma_p^i has the preimage q^(i - k(k-1)/2) x^k sigma_q^(i-k).

    Args:
        op: Operator in z with generator sigma_p
        pad: If true, first replace M by sigma_p^n . M with the least n that
            brings it into the image cone (same solutions)

    Raises:
        NotInImageConeError: If deg_(1/z) a_i > i for some i and pad is false
    """
    op = _check_target(op, SIGMA)
    excess = sharp_cone_excess(op)
    if excess:
        if not pad:
            bad = next(
                (i, -min(laurent_terms(a))) for i, a in enumerate(op.coeffs)
                if a and -min(laurent_terms(a)) > i
            )
            raise NotInImageConeError(index=bad[0], degree=bad[1])
        console.info(f"  padding with sigma_p^{excess}")
        op = SkewOperator.generator(SIGMA, op.field, op.step, op.var).power(excess) * op
    field = op.field
    coeffs = [FIELD.zero] * len(op.coeffs)
    for i, a in enumerate(op.coeffs):
        if not a:
            continue
        for k, c in laurent_terms(a).items():
            k = -k
            coeffs[i - k] += c * field.q_power(i - k * (k - 1) // 2) * X ** k
    return SkewOperator(SIGMA, tuple(coeffs), field)


def s_fourier_plus(op: SkewOperator) -> SkewOperator:
    """
    q+ followed by z -> 1/x, written in d_q: d_q -> 1/x, x -> x^2 d_q.
    """
    op = _check_source(op, DQ)
    d_q = SkewOperator.generator(DQ, op.field)
    return _substitute(op, d_q.scale(X ** 2), SkewOperator.scalar(1 / X, DQ, op.field))


def s_fourier_sharp(op: SkewOperator) -> SkewOperator:
    """
    q# followed by z -> 1/x, written in sigma_q: sigma_q -> sigma_q/q, x -> (x/q) sigma_q.
    """
    op = _check_source(op, SIGMA)
    sigma = SkewOperator.generator(SIGMA, op.field)
    return _substitute(op, sigma.scale(op.field.p * X), sigma.scale(op.field.p))


def borel_plus_annihilator(op: SkewOperator) -> SkewOperator:
    """
    d_p^nu . q+(L) for L of order nu in d_q.

    If L y = 0 this kills y^+: q+(L) y^+ is a polynomial in z of degree
    below nu.
    """
    op = _check_source(op, DQ)
    d_p = SkewOperator.generator(DQ, op.field, -op.field.r, Z_VAR)
    return d_p.power(op.order) * fourier_plus(op)
