"""
Tests for skew operators: products, form conversion, action on series,
annihilator search, constructions and the text format.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st
from sympy import binomial

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.exceptions import DomainError, ParseError, TruncationUnderflowError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, QT, X, ScalarField, qt_rescale
from core.series import SeriesPrefix
from operators.action import annihilates, apply
from operators.annihilator import AnnihilatorSearch, annihilator_search
from operators.constructions import invert_q, rescale_power, shift_constant_annihilator
from operators.conversion import conversion_check, dq_power_expansion, sigma_power_in_dq, to_dq, to_sigma
from operators.parser import (
    format_function, format_operator, parse_coefficients, parse_function, parse_matrix, parse_operator
)
from operators.skew_operator import DQ, SIGMA, SkewOperator

q = QT
numbers = q_numbers(1)


def eq_coefficient(n):
    """E_q: 1/[n]_q!."""
    return 1 / numbers.factorial(n)


def tq_coefficient(n):
    """T_q: q^(-n(n-1)/2)."""
    return 1 / q ** int(binomial(n, 2))


def bq_coefficient(n):
    """B_q: 1/([n]_q!)^2."""
    return 1 / numbers.factorial(n) ** 2


def agree(a, b):
    """Two prefixes agree on their common length."""
    n = min(a.order, b.order)
    return a.truncate(n) == b.truncate(n)


small_polys = st.builds(
    lambda c: sum((FIELD(v) * q ** (k % 2) * X ** (k // 2) for k, v in enumerate(c)), FIELD.zero),
    st.lists(st.integers(-2, 2), min_size=1, max_size=8)
)


@st.composite
def operators(draw, form=SIGMA, max_order=3):
    """Random operators with small polynomial coefficients."""
    coeffs = draw(st.lists(small_polys, min_size=1, max_size=max_order + 1))
    return SkewOperator(form, tuple(coeffs))


@st.composite
def rational_operators(draw):
    """Random sigma-operators whose coefficients may have denominators."""
    coeffs = draw(st.lists(small_polys, min_size=1, max_size=3))
    den = draw(small_polys)
    if not den:
        den = 1 - q * X
    return SkewOperator(SIGMA, tuple(c / den for c in coeffs))


# ==================== Fixtures ====================

@pytest.fixture
def sigma():
    """The dilation operator sigma_q."""
    return SkewOperator.generator(SIGMA)


@pytest.fixture
def dq():
    """The q-derivative d_q."""
    return SkewOperator.generator(DQ)


@pytest.fixture
def tchakaloff(sigma):
    """(sigma - 1)(sigma - q x)."""
    one = SkewOperator.scalar(1)
    return (sigma - one) * (sigma - SkewOperator.scalar(q * X))


@pytest.fixture
def bessel():
    """sigma^2 - 2 sigma + 1 - (q-1)^2 x."""
    return SkewOperator(SIGMA, (1 - (q - 1) ** 2 * X, FIELD(-2), FIELD.one))


# ==================== Product Tests ====================

def test_sigma_commutes_past_x(sigma):
    """Test sigma . x = q x sigma."""
    assert sigma * X == SkewOperator(SIGMA, (FIELD.zero, q * X))


def test_dq_leibniz_on_x(dq):
    """Test d_q . x = q x d_q + 1."""
    assert dq * X == SkewOperator(DQ, (FIELD.one, q * X))


def test_tchakaloff_product(tchakaloff):
    """Test (sigma - 1)(sigma - q x) = sigma^2 - (1 + q^2 x) sigma + q x."""
    assert tchakaloff == SkewOperator(SIGMA, (q * X, -(1 + q ** 2 * X), FIELD.one))


def test_mixed_forms_rejected(sigma, dq):
    """Test that sigma- and d-operators do not multiply."""
    with pytest.raises(DomainError):
        sigma * dq


@settings(max_examples=15, deadline=None)
@given(operators(), operators(), operators())
def test_sigma_product_is_associative(a, b, c):
    """Test associativity in K(x)[sigma]."""
    assert (a * b) * c == a * (b * c)


@settings(max_examples=15, deadline=None)
@given(operators(DQ), operators(DQ), operators(DQ))
def test_dq_product_is_associative(a, b, c):
    """Test associativity in K(x)[d_q]."""
    assert (a * b) * c == a * (b * c)


@settings(max_examples=15, deadline=None)
@given(operators(max_order=2), operators(max_order=2))
def test_product_acts_as_composition(a, b):
    """Test (LM)(y) = L(M(y)) on a prefix."""
    y = SeriesPrefix.from_generator(eq_coefficient, 15)
    assert agree(apply(a * b, y), apply(a, apply(b, y)))


@settings(max_examples=15, deadline=None)
@given(operators(DQ, max_order=2), operators(DQ, max_order=2))
def test_dq_product_acts_as_composition(a, b):
    """Test (LM)(y) = L(M(y)) for d-operators."""
    y = SeriesPrefix.from_generator(tq_coefficient, 15)
    assert agree(apply(a * b, y), apply(a, apply(b, y)))


# ==================== Conversion Tests ====================

def test_sigma_to_dq(sigma):
    """Test sigma = 1 + (q - 1) x d_q."""
    assert to_dq(sigma) == SkewOperator(DQ, (FIELD.one, (q - 1) * X))


def test_dq_minus_one_to_sigma(dq):
    """Test d_q - 1 = ((q-1)x)^-1 (sigma - 1) - 1."""
    op = dq - SkewOperator.scalar(1, DQ)
    inv = 1 / ((q - 1) * X)
    assert to_sigma(op) == SkewOperator(SIGMA, (-inv - 1, inv))


def test_sigma_power_closed_form_matches_product(sigma):
    """Test the closed form of sigma^i in the d-basis against repeated products."""
    d_sigma = to_dq(sigma)
    for i in range(5):
        assert SkewOperator(DQ, sigma_power_in_dq(i)) == d_sigma.power(i)


@settings(max_examples=15, deadline=None)
@given(operators())
def test_conversion_round_trip(op):
    """Test that converting twice gives back the operator and both forms act alike."""
    assert to_sigma(to_dq(op)) == op
    y = SeriesPrefix.from_generator(eq_coefficient, 30)
    assert agree(apply(op, y), apply(to_dq(op), y))


def test_dq_power_expansion_on_monomials():
    """Test d^n x^k through the sigma expansion for n <= 6, k <= 12."""
    for n in range(7):
        expansion = dq_power_expansion(n)
        for k in range(13):
            expected = FIELD.one
            for j in range(n):
                expected *= numbers.integer(k - j)
            assert expansion.apply_to_monomial(k) == expected * X ** k / X ** n


def test_dq_power_expansion_small_case():
    """Test d^1 = -1/((q-1)x) (c_0 + c_1 sigma) with c = (1, -1)."""
    expansion = dq_power_expansion(1)
    assert expansion.c == (FIELD.one, -FIELD.one)



def test_conversion_check_on_eq(dq):
    """Test d_q - 1 and its sigma-form agree on E_q."""
    y = SeriesPrefix.from_generator(eq_coefficient, 20)
    check = conversion_check(dq - SkewOperator.scalar(1, DQ), y)
    assert check.round_trip
    assert check.acts_alike
    assert check.holds


def test_conversion_check_on_tchakaloff(tchakaloff):
    """Test the Tchakaloff operator survives the trip through d_q-form."""
    y = SeriesPrefix.from_generator(tq_coefficient, 16)
    assert conversion_check(tchakaloff, y).holds


# ==================== Action Tests ====================

def test_dq_minus_one_kills_eq(dq):
    """Test (d_q - 1) E_q = 0 to order 20."""
    y = SeriesPrefix.from_generator(eq_coefficient, 20)
    result = apply(dq - SkewOperator.scalar(1, DQ), y)
    assert result.order == 19
    assert result.is_zero()


def test_sigma_on_geometric(sigma):
    """Test sigma applied to sum x^n."""
    y = SeriesPrefix.from_values([1] * 6)
    assert apply(sigma, y).values() == [q ** n for n in range(6)]


def test_tchakaloff_kills_tq(tchakaloff):
    """Test the Tchakaloff operator on T_q to order 20."""
    assert annihilates(tchakaloff, SeriesPrefix.from_generator(tq_coefficient, 20))


def test_apply_underflow():
    """Test that a pole of order above the precision is reported."""
    op = SkewOperator(SIGMA, (1 / X ** 3,))
    with pytest.raises(TruncationUnderflowError):
        apply(op, SeriesPrefix.from_values([1, 1]))


def test_apply_detects_pole():
    """Test that a nonvanishing negative coefficient is a domain error."""
    op = SkewOperator(SIGMA, (1 / X,))
    with pytest.raises(DomainError):
        apply(op, SeriesPrefix.from_values([1, 0, 0]))


def test_apply_cancels_pole_of_converted_operator(dq):
    """Test that a sigma-form with 1/x coefficients acts like its d-form."""
    op = dq - SkewOperator.scalar(1, DQ)
    y = SeriesPrefix.from_generator(eq_coefficient, 12)
    assert apply(to_sigma(op), y).is_zero()


# ==================== Annihilator Search Tests ====================

def test_annihilator_of_geometric_series():
    """Test that 1/(1-x) gives (1 - q x) sigma - (1 - x)."""
    found = annihilator_search(lambda n: FIELD.one)
    assert found == parse_operator("(1-q*x)*sigma - (1-x)")


def test_annihilator_of_tchakaloff(tchakaloff):
    """Test that T_q gives the Tchakaloff operator and has no order-1 annihilator."""
    assert annihilator_search(tq_coefficient) == tchakaloff
    assert annihilator_search(tq_coefficient, max_order=1) is None


def test_annihilator_of_bessel(bessel):
    """Test that B_q gives sigma^2 - 2 sigma + 1 - (q-1)^2 x."""
    search = AnnihilatorSearch(bq_coefficient, guard=4)
    found = search.run()
    assert found == bessel
    assert search.attempts[-1].found
    assert not any(a.found for a in search.attempts if a.order == 1)


def test_annihilator_checks_further_coefficients():
    """Test that the result kills twice the guard length beyond the system."""
    guard = 4
    found = annihilator_search(eq_coefficient, guard=guard)
    assert found == SkewOperator(SIGMA, (-(1 + (q - 1) * X), FIELD.one))
    y = SeriesPrefix.from_generator(eq_coefficient, 2 * 2 + 5 * guard)
    assert annihilates(found, y)


def test_annihilator_of_zero_series():
    """Test that the zero series is killed by the identity."""
    assert annihilator_search(lambda n: FIELD.zero) == SkewOperator.scalar(1)


# ==================== Construction Tests ====================

def test_invert_q_constant_equation(sigma):
    """Test sigma_q - 1 becomes sigma_p - 1."""
    inverted = invert_q(sigma - SkewOperator.scalar(1))
    assert inverted == SkewOperator(SIGMA, (FIELD(-1), FIELD.one), step=-1)
    assert format_operator(inverted) == "sigma_p - 1"


def test_invert_q_geometric():
    """Test the inverted geometric operator on 1/(1-x)."""
    op = parse_operator("(1-q*x)*sigma - (1-x)")
    inverted = invert_q(op)
    assert inverted.step == -1
    assert annihilates(inverted, SeriesPrefix.from_values([1] * 20))


def test_invert_q_tchakaloff(tchakaloff):
    """Test the inverted Tchakaloff operator on T_q."""
    inverted = invert_q(tchakaloff)
    assert inverted.order == 2
    assert annihilates(inverted, SeriesPrefix.from_generator(tq_coefficient, 20))


def test_rescale_power_simple(sigma):
    """Test sigma_q - 1 over Q(q^(1/2)) is sigma_qt^2 - 1."""
    rescaled = rescale_power(sigma - SkewOperator.scalar(1), 2)
    assert rescaled == SkewOperator(SIGMA, (FIELD(-1), FIELD.zero, FIELD.one), ScalarField(2), 1)
    assert format_operator(rescaled) == "sigma_qt^2 - 1"


def test_rescale_power_tchakaloff(tchakaloff):
    """Test the rescaled Tchakaloff operator on T_q read over Q(q^(1/2))."""
    rescaled = rescale_power(tchakaloff, 2)
    assert rescaled.order == 4
    field = ScalarField(2)
    y = SeriesPrefix.from_generator(lambda n: qt_rescale(tq_coefficient(n), 2), 20, field)
    assert annihilates(rescaled, y)


def test_shift_constant_annihilator_eq(dq):
    """Test the operator killing E_q + 5."""
    op = shift_constant_annihilator(dq - SkewOperator.scalar(1, DQ))
    assert op.order == 2
    y = SeriesPrefix.from_generator(eq_coefficient, 20).add_constant(FIELD(5))
    assert annihilates(op, y)


def test_shift_constant_annihilator_without_constant_term(dq):
    """Test that x d_q is returned unchanged."""
    op = dq.scale(X)
    assert shift_constant_annihilator(op) == op


def test_shift_constant_annihilator_bessel(bessel):
    """Test the order-3 operator killing B_q + 1."""
    op = shift_constant_annihilator(to_dq(bessel))
    assert op.form == DQ
    assert op.order == 3
    y = SeriesPrefix.from_generator(bq_coefficient, 25).add_constant(FIELD.one)
    assert annihilates(op, y)


# ==================== Text Format Tests ====================

def test_format_tchakaloff(tchakaloff):
    """Test the printed Tchakaloff operator."""
    assert format_operator(tchakaloff) == "sigma^2 - (1+q^2*x)*sigma + q*x"


def test_format_bessel(bessel):
    """Test the printed Bessel operator."""
    assert format_operator(bessel) == "sigma^2 - 2*sigma + (1-x+2*q*x-q^2*x)"


def test_format_dq_operator(dq):
    """Test the printed d_q - 1."""
    assert format_operator(dq - SkewOperator.scalar(1, DQ)) == "dq - 1"


def test_format_rational_coefficient():
    """Test rational functions print as (num)/(den)."""
    assert format_function((1 - X) / (1 - q * X)) in ("(1-x)/(1-q*x)", "(-1+x)/(-1+q*x)")
    assert format_function(X / 2) == "1/2*x"


def test_parse_examples(tchakaloff, bessel):
    """Test parsing the printed forms."""
    assert parse_operator("sigma^2 - (1+q^2*x)*sigma + q*x") == tchakaloff
    assert parse_operator("sigma^2 - 2*sigma + 1 - (q-1)^2*x") == bessel
    assert parse_operator("dq - 1") == SkewOperator(DQ, (FIELD(-1), FIELD.one))
    assert parse_function("(1-x)/(1-q*x)") == (1 - X) / (1 - q * X)


def test_parse_variable_z():
    """Test that z is read as the variable and remembered for printing."""
    op = parse_operator("z*sigma_p - 1")
    assert op.var == "z"
    assert op.step == -1
    assert format_operator(op) == "z*sigma_p - 1"


def test_parse_radical_field():
    """Test q and qt over Q(q^(1/2))."""
    field = ScalarField(2)
    assert parse_function("q - qt", field) == QT ** 2 - QT


@pytest.mark.parametrize("text", [
    "sigma*dq", "x/sigma", "2 x", "x^y", "foo", "sigma^-1", "x*z", "(x", "x+", "", "x # 2", "1/0"
])
def test_parse_errors(text):
    """Test malformed operator texts."""
    with pytest.raises(ParseError):
        parse_operator(text)


@settings(max_examples=40, deadline=None)
@given(rational_operators())
def test_format_parse_round_trip(op):
    """Test parse(format(L)) == L."""
    assert parse_operator(format_operator(op)) == op


@settings(max_examples=25, deadline=None)
@given(operators(DQ))
def test_format_parse_round_trip_dq(op):
    """Test the round trip for d-operators."""
    assert parse_operator(format_operator(op), form=DQ) == op


def test_parse_matrix():
    """Test rows split on ';' and entries on ','."""
    rows = parse_matrix("1, 0; x, 1 + q*x")
    assert rows == [[FIELD.one, FIELD.zero], [X, 1 + QT * X]]


@pytest.mark.parametrize("text", ["", " ; ", "1, 0; x"])
def test_parse_matrix_errors(text):
    """Test empty and ragged matrices are rejected."""
    with pytest.raises(ParseError):
        parse_matrix(text)


def test_parse_coefficients_skips_comments():
    """Test blank lines and '#' comments are skipped."""
    values = parse_coefficients(["# E_q", "1", "", "1", "1/(1+q)"])
    assert values == [FIELD.one, FIELD.one, 1 / (1 + QT)]


def test_parse_coefficients_rejects_x():
    """Test a coefficient depending on x is an error."""
    with pytest.raises(ParseError):
        parse_coefficients(["1", "x"])
