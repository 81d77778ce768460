"""
Tests for q-Borel transforms and q-Fourier transformations.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st
from sympy import binomial

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.exceptions import DomainError, NotInImageConeError, TruncationUnderflowError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, QT, X, ScalarField
from core.series import SeriesPrefix
from operators.action import annihilates
from operators.conversion import to_dq, to_sigma
from operators.parser import parse_operator
from operators.skew_operator import DQ, SIGMA, SkewOperator
from polygons.newton_polygon import DQ as DQ_FORM, polygon, reflected
from transforms.borel import (
    InverseSeriesPrefix, annihilates_in_z, apply_in_z, borel_plus, borel_sharp, inverse_borel_plus
)
from transforms.fourier import (
    borel_plus_annihilator, fourier_plus, fourier_plus_inverse, fourier_sharp,
    fourier_sharp_inverse, s_fourier_plus, s_fourier_sharp
)

q = QT
numbers = q_numbers(1)

scalars = st.sampled_from([FIELD.one, q, 1 / q, 1 / (1 - q)])

small_polys = st.builds(
    lambda c: sum((FIELD(v) * s * X ** k for k, (v, s) in enumerate(c)), FIELD.zero),
    st.lists(st.tuples(st.integers(-2, 2), scalars), min_size=1, max_size=3)
)


@st.composite
def operators(draw, form=SIGMA):
    """Operators of order <= 2 with coefficients in K[x] of degree <= 2."""
    coeffs = draw(st.lists(small_polys, min_size=1, max_size=3))
    if not any(coeffs):
        coeffs[-1] = FIELD.one
    return SkewOperator(form, tuple(coeffs))


def z_operator(form, coeffs):
    """Operator in z with generator sigma_p or d_p."""
    return SkewOperator(form, tuple(coeffs), ScalarField(), -1, "z")


CATALOG = {
    "E_q": (lambda n: 1 / numbers.factorial(n), "dq - 1"),
    "T_q": (lambda n: 1 / q ** int(binomial(n, 2)), "sigma^2 - (1+q^2*x)*sigma + q*x"),
    "B_q": (lambda n: 1 / numbers.factorial(n) ** 2, "sigma^2 - 2*sigma + 1 - (q-1)^2*x"),
}


# ==================== Borel Transform Tests ====================

def test_borel_plus_of_eq():
    """Test [n]! / [n]! = 1."""
    y = SeriesPrefix.from_generator(CATALOG["E_q"][0], 12)
    assert borel_plus(y).values() == [FIELD.one] * 12


def test_borel_sharp_of_tq():
    """Test q^(n(n-1)/2) q^(-n(n-1)/2) = 1."""
    y = SeriesPrefix.from_generator(CATALOG["T_q"][0], 12)
    assert borel_sharp(y).values() == [FIELD.one] * 12


def test_borel_of_zero():
    """Test the zero series stays zero."""
    assert borel_plus(SeriesPrefix.zero(5)).is_zero()
    assert borel_sharp(SeriesPrefix.zero(5)).is_zero()


def test_inverse_borel_plus():
    """Test the transform can be undone."""
    y = SeriesPrefix.from_values([1, 2, 3, 4])
    assert inverse_borel_plus(borel_plus(y)) == y


# ==================== Action in z Tests ====================

def test_telescoping_leaves_constant():
    """Test (z - 1) sum z^(-n-1) = 1 and d_p kills the constant."""
    series = InverseSeriesPrefix((FIELD.one,) * 10)
    result = apply_in_z(z_operator(DQ, [X - 1]), series)
    assert result.order == 9
    assert not any(result.coeffs)
    assert result.polynomial == (FIELD.one,)
    d_p = z_operator(DQ, [FIELD.zero, FIELD.one])
    assert apply_in_z(d_p, result).is_zero()


def test_sigma_p_on_inverse_powers():
    """Test sigma_p z^(-n-1) = q^(n+1) z^(-n-1)."""
    series = InverseSeriesPrefix((FIELD.one,) * 4)
    result = apply_in_z(z_operator(SIGMA, [FIELD.zero, FIELD.one]), series)
    assert result.values() == [q ** (n + 1) for n in range(4)]


def test_dp_on_inverse_powers():
    """Test d_p z^(-1) = -q z^(-2) with no loss of precision."""
    series = InverseSeriesPrefix((FIELD.one,) + (FIELD.zero,) * 3)
    result = apply_in_z(z_operator(DQ, [FIELD.zero, FIELD.one]), series)
    assert result.order == 5
    assert result.values()[:2] == [FIELD.zero, -q]


def test_apply_in_z_underflow():
    """Test z^5 on three known coefficients."""
    with pytest.raises(TruncationUnderflowError):
        apply_in_z(z_operator(SIGMA, [X ** 5]), InverseSeriesPrefix((FIELD.one,) * 3))


def test_apply_in_z_needs_laurent_coefficients():
    """Test a coefficient 1/(1-z) is rejected."""
    with pytest.raises(DomainError):
        apply_in_z(z_operator(SIGMA, [1 / (1 - X)]), InverseSeriesPrefix((FIELD.one,) * 3))


# ==================== Fourier Transformation Tests ====================

def test_fourier_plus_generators():
    """Test d_q - 1 -> z - 1 and x -> -p d_p."""
    assert fourier_plus(parse_operator("dq - 1")) == z_operator(DQ, [X - 1])
    x_op = SkewOperator.scalar(X, DQ)
    assert fourier_plus(x_op) == z_operator(DQ, [FIELD.zero, -1 / q])


def test_fourier_sharp_generator():
    """Test sigma_q -> p sigma_p."""
    assert fourier_sharp(parse_operator("sigma")) == z_operator(SIGMA, [FIELD.zero, 1 / q])


def test_fourier_sharp_of_x():
    """Test x -> (1/(q z)) sigma_p."""
    assert fourier_sharp(SkewOperator.scalar(X)) == z_operator(SIGMA, [FIELD.zero, 1 / (q * X)])


def test_fourier_plus_inverse_example():
    """Test z - 1 -> d_q - 1."""
    assert fourier_plus_inverse(z_operator(DQ, [X - 1])) == parse_operator("dq - 1")


def test_sharp_round_trip_tchakaloff():
    """Test the q#-preimage of the transformed Tchakaloff operator."""
    op = parse_operator(CATALOG["T_q"][1])
    assert fourier_sharp_inverse(fourier_sharp(op)) == op


def test_sharp_inverse_cone_violation():
    """Test z^(-3) sigma_p^2 is outside the image cone."""
    m = z_operator(SIGMA, [FIELD.zero, FIELD.zero, 1 / X ** 3])
    with pytest.raises(NotInImageConeError) as info:
        fourier_sharp_inverse(m)
    assert info.value.index == 2
    assert info.value.degree == 3


def test_sharp_inverse_padding():
    """Test padding with sigma_p brings the operator into the cone."""
    m = z_operator(SIGMA, [FIELD.zero, FIELD.zero, 1 / X ** 3])
    preimage = fourier_sharp_inverse(m, pad=True)
    sigma_p = z_operator(SIGMA, [FIELD.zero, FIELD.one])
    assert fourier_sharp(preimage) == sigma_p * m


def test_fourier_plus_with_rational_constants():
    """Test d_q - 1/(1-q) -> z - 1/(1-q) and back."""
    op = SkewOperator(DQ, (-1 / (1 - q), FIELD.one))
    image = fourier_plus(op)
    assert image == z_operator(DQ, [X - 1 / (1 - q)])
    assert fourier_plus_inverse(image) == op


def test_fourier_plus_inverse_of_x_over_q():
    """Test x d_q - x/q survives q+ followed by its preimage."""
    op = SkewOperator(DQ, (-X / q, X))
    assert fourier_plus_inverse(fourier_plus(op)) == op


def test_fourier_sharp_clears_denominators():
    """Test d_q - 1 written in sigma_q is transformed through its cleared form."""
    op = to_sigma(parse_operator("dq - 1"))
    assert not op.is_polynomial()
    cleared = SkewOperator(SIGMA, (-1 - (q - 1) * X, FIELD.one))
    assert fourier_sharp(op).equals_up_to_unit(fourier_sharp(cleared))


def test_transform_rejects_wrong_dilation():
    """Test an operator in sigma_p cannot be transformed again."""
    with pytest.raises(DomainError):
        fourier_sharp(z_operator(SIGMA, [FIELD.zero, FIELD.one]))


@settings(max_examples=20, deadline=None)
@given(operators(DQ), operators(DQ))
def test_fourier_plus_is_multiplicative(a, b):
    """Test q+(LM) = q+(L) q+(M)."""
    assert fourier_plus(a * b) == fourier_plus(a) * fourier_plus(b)


@settings(max_examples=20, deadline=None)
@given(operators(), operators())
def test_fourier_sharp_is_multiplicative(a, b):
    """Test q#(LM) = q#(L) q#(M)."""
    assert fourier_sharp(a * b) == fourier_sharp(a) * fourier_sharp(b)


@settings(max_examples=20, deadline=None)
@given(operators(DQ))
def test_fourier_plus_inverse_undoes_transform(op):
    """Test the q+-preimage of q+(L) is L."""
    assert fourier_plus_inverse(fourier_plus(op)) == op


# ==================== Symmetry-Composed Tests ====================

def test_s_fourier_plus_normalization():
    """Test d_q . x -> x d_q."""
    d_q = SkewOperator.generator(DQ)
    assert s_fourier_plus(d_q * X) == SkewOperator(DQ, (FIELD.zero, X))


def test_s_fourier_sharp_generators():
    """Test sigma_q -> sigma_q / q and x -> (x/q) sigma_q."""
    assert s_fourier_sharp(parse_operator("sigma")) == SkewOperator(SIGMA, (FIELD.zero, 1 / q))
    assert s_fourier_sharp(SkewOperator.scalar(X)) == SkewOperator(SIGMA, (FIELD.zero, X / q))


def test_s_fourier_plus_of_exponential():
    """Test the polygon of S o q+(x d_q - x) is the mirrored q+-polygon."""
    op = parse_operator("x*dq - x")
    image = polygon(s_fourier_plus(op), DQ_FORM)
    assert image == reflected(polygon(fourier_plus(op), DQ_FORM))
    assert image.finite_slopes() == {0}


@settings(max_examples=30, deadline=None)
@given(operators(DQ))
def test_s_fourier_plus_mirrors_polygon(op):
    """Test the symmetry mirrors the d-polygon of the q+-transform."""
    assert polygon(s_fourier_plus(op), DQ_FORM) == reflected(polygon(fourier_plus(op), DQ_FORM))


# ==================== Compatibility Tests ====================

@pytest.mark.parametrize("name", sorted(CATALOG))
def test_plus_transform_kills_borel_plus(name):
    """Test d_p^nu q+(L) annihilates y^+ at truncation 25."""
    coefficient, text = CATALOG[name]
    op = to_dq(parse_operator(text))
    y = SeriesPrefix.from_generator(coefficient, 25)
    assert annihilates(op, y)
    assert annihilates_in_z(borel_plus_annihilator(op), borel_plus(y))


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_sharp_transform_kills_borel_sharp(name):
    """Test q#(L) annihilates y^# at truncation 25."""
    coefficient, text = CATALOG[name]
    y = SeriesPrefix.from_generator(coefficient, 25)
    assert annihilates_in_z(fourier_sharp(parse_operator(text)), borel_sharp(y))


def test_preimage_of_borel_annihilator_kills_series():
    """Test d_p (z - 1) kills E_q^+ and its q+-preimage kills E_q."""
    l1 = z_operator(DQ, [FIELD.one, X / q - 1])
    y = SeriesPrefix.from_generator(CATALOG["E_q"][0], 20)
    assert annihilates_in_z(l1, borel_plus(y))
    preimage = fourier_plus_inverse(l1)
    assert preimage == SkewOperator(DQ, (q * X, -q * X))
    assert annihilates(preimage, y)
