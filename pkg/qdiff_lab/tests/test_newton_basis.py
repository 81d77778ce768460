"""
Tests for the q-Newton basis, operator actions in it, local solution bases
and Casorati determinants.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.exceptions import DomainError, HypothesisViolationError, TruncationUnderflowError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, QT, X, evaluate_x, sigma_shift
from newton_basis.action import act, annihilates_newton
from newton_basis.newton_series import NewtonSeries, from_newton, to_newton, tq_poly
from newton_basis.solutions import casoratian, local_solution_basis
from operators.parser import parse_operator
from operators.skew_operator import DQ, SIGMA, SkewOperator, dq_function

q = QT
numbers = q_numbers(1)

scalars = st.sampled_from([FIELD.one, q, 1 / q, 1 / (1 - q)])

small_polys = st.builds(
    lambda c: sum((FIELD(v) * s * X ** k for k, (v, s) in enumerate(c)), FIELD.zero),
    st.lists(st.tuples(st.integers(-2, 2), scalars), min_size=1, max_size=4)
)
points = st.sampled_from([FIELD(1), FIELD(-2), q + 1, FIELD(3) / 5, q ** 2])

TCHAKALOFF = "sigma^2 - (1+q^2*x)*sigma + q*x"
CATALOG_OPERATORS = ["dq - 1", TCHAKALOFF, "sigma^2 - 2*sigma + 1 - (q-1)^2*x", "x*dq^2 + (1-x)*dq - q"]


def apply_to_polynomial(op, f):
    """L f computed in the monomial basis."""
    acc = FIELD.zero
    image = f
    for i, a in enumerate(op.coeffs):
        if i:
            image = dq_function(image, op.step) if op.form == DQ else sigma_shift(image, op.step)
        acc += a * image
    return acc


# ==================== Newton Polynomial Tests ====================

def test_tq_poly_degree_zero():
    """Test T_0 = 1."""
    assert tq_poly(0, 1) == FIELD.one


def test_tq_poly_degree_two():
    """Test T_2(x, 1) = x^2 - (1+q)x + q."""
    assert tq_poly(2, 1) == X ** 2 - (1 + q) * X + q


def test_tq_poly_constant_term():
    """Test T_3(0, 1) = -q^3."""
    assert evaluate_x(tq_poly(3, 1), FIELD.zero) == -q ** 3


def test_tq_poly_negative_degree():
    """Test negative degrees are rejected."""
    with pytest.raises(DomainError):
        tq_poly(-1, 1)


# ==================== Basis Conversion Tests ====================

def test_x_in_newton_basis():
    """Test x = T_1 + xi T_0."""
    assert to_newton(X, 3).values() == [FIELD(3), FIELD.one]


def test_x_squared_in_newton_basis():
    """Test x^2 = T_2 + (1+q) T_1 + T_0 at xi = 1."""
    assert to_newton(X ** 2, 1).values() == [FIELD.one, 1 + q, FIELD.one]


def test_basis_polynomial_round_trip():
    """Test T_5 is a single basis element and converts back to itself."""
    xi = q + 1
    series = to_newton(tq_poly(5, xi), xi)
    assert series.values() == [FIELD.zero] * 5 + [FIELD.one]
    assert from_newton(series) == tq_poly(5, xi)


@settings(max_examples=25, deadline=None)
@given(small_polys, points)
def test_conversion_round_trip(f, xi):
    """Test the triangular conversion is inverted by summing the basis."""
    assert from_newton(to_newton(f, xi)) == f


def test_truncated_conversion_drops_high_terms():
    """Test truncation keeps the first Newton coefficients only."""
    assert to_newton(X ** 2, 1, order=2).values() == [FIELD.one, 1 + q]


def test_rational_function_rejected():
    """Test 1/(1 - x) has no finite Newton expansion."""
    with pytest.raises(DomainError):
        to_newton(1 / (1 - X), 1)


def test_base_point_must_be_nonzero():
    """Test xi = 0 is rejected."""
    with pytest.raises(DomainError):
        NewtonSeries(0, (FIELD.one,))


def test_product_matches_polynomial_product():
    """Test the x-rule product agrees with multiplying polynomials."""
    xi = FIELD(2)
    f, g = 1 + X, X - 2 * q
    product = to_newton(f, xi, 4) * to_newton(g, xi, 4)
    assert product.values() == to_newton(f * g, xi, 4).values()


# ==================== Action Tests ====================

def test_dq_lowers_index():
    """Test d_q T_3 = [3]_q T_2."""
    series = NewtonSeries.basis_element(3, 1, 5)
    result = act(SkewOperator.generator(DQ), series)
    assert result.values() == [FIELD.zero, FIELD.zero, numbers.integer(3), FIELD.zero]


def test_x_raises_index():
    """Test x T_1 = T_2 + q T_1 at xi = 1."""
    series = NewtonSeries.basis_element(1, 1, 4)
    result = act(SkewOperator.scalar(X), series)
    assert result.values() == [FIELD.zero, q, FIELD.one, FIELD.zero]


def test_sigma_rule_example():
    """Test sigma_q T_2 = q^2 T_2 + q(q^2 - 1) T_1 at xi = 1."""
    series = NewtonSeries.basis_element(2, 1, 4)
    result = act(SkewOperator.generator(SIGMA), series)
    assert result.values() == [FIELD.zero, q * (q ** 2 - 1), q ** 2]


@pytest.mark.parametrize("n", range(13))
@pytest.mark.parametrize("xi", [FIELD(1), FIELD(-3), q + 2])
def test_sigma_rule_matches_expansion(n, xi):
    """Test sigma_q T_n against T_n(qx, xi) expanded directly."""
    shifted = NewtonSeries.basis_element(n, xi, n + 2).sigma()
    assert from_newton(shifted) == sigma_shift(tq_poly(n, xi), 1)


@settings(max_examples=10, deadline=None)
@given(st.sampled_from(CATALOG_OPERATORS), small_polys, points)
def test_action_matches_monomial_action(text, f, xi):
    """Test act commutes with the change of basis."""
    op = parse_operator(text)
    order = 8
    expected = to_newton(apply_to_polynomial(op, f), xi, order)
    assert act(op, to_newton(f, xi, order)).values() == expected.values()[:order - op.order]


def test_action_needs_polynomial_coefficients():
    """Test a coefficient with a pole is rejected."""
    op = SkewOperator(SIGMA, (1 / (1 - X), FIELD.one))
    with pytest.raises(DomainError):
        act(op, NewtonSeries.basis_element(0, 1, 3))


def test_action_underflow():
    """Test an order-2 operator needs at least two terms."""
    with pytest.raises(TruncationUnderflowError):
        act(parse_operator(TCHAKALOFF), NewtonSeries.basis_element(0, 1, 1))


# ==================== Local Solution Tests ====================

def test_exponential_solution_at_special_point():
    """Test q d_q - 1 is solved by sum q^(-n)/[n]_q! T_n at xi = q^2/(1 - q)."""
    xi = q ** 2 / (1 - q)
    (solution,) = local_solution_basis(parse_operator("q*dq - 1"), xi, 10)
    assert solution.values() == [1 / (q ** n * numbers.factorial(n)) for n in range(10)]


def test_constant_solution():
    """Test sigma_q - 1 has the constant solution T_0."""
    (solution,) = local_solution_basis(parse_operator("sigma - 1"), 1, 6)
    assert solution.values() == [FIELD.one] + [FIELD.zero] * 5


def test_tchakaloff_basis():
    """Test two independent truncated solutions at xi = 1 with vanishing residuals."""
    op = parse_operator(TCHAKALOFF)
    solutions = local_solution_basis(op, 1, 20)
    assert len(solutions) == 2
    for solution in solutions:
        assert solution.order == 20
        assert annihilates_newton(op, solution)


def test_tchakaloff_casoratian():
    """Test sigma_q C = q x C for the Tchakaloff basis (a_0 = q x, a_2 = 1)."""
    op = parse_operator(TCHAKALOFF)
    report = casoratian(op, local_solution_basis(op, 1, 12))
    assert report.holds
    assert report.residual.order == 10
    assert report.leading is not None


def test_first_order_casoratian():
    """Test C = u and sigma_q u = -(a_0/a_1) u for a first-order operator."""
    op = parse_operator("sigma - (1+x)")
    (solution,) = local_solution_basis(op, 2, 8)
    report = casoratian(op, [solution])
    assert report.determinant == solution
    assert report.holds


def test_constants_plus_exponential():
    """Test (sigma_q - 1)(d_q - 1) has the constant solution and a nonzero Casorati determinant."""
    op = parse_operator("(q-1)*x*dq") * parse_operator("dq - 1")
    solutions = local_solution_basis(op, 1, 10)
    assert solutions[0].values() == [FIELD.one] + [FIELD.zero] * 9
    report = casoratian(op, solutions)
    assert report.leading is not None
    assert report.holds


def test_casoratian_needs_nu_solutions():
    """Test a single solution of an order-2 operator is rejected."""
    op = parse_operator(TCHAKALOFF)
    solutions = local_solution_basis(op, 1, 6)
    with pytest.raises(DomainError):
        casoratian(op, solutions[:1])


def test_leading_coefficient_vanishing_on_orbit():
    """Test a_1 = x - q^2 vanishes at the node q^2 of xi = 1."""
    op = parse_operator("(x - q^2)*sigma - 1")
    with pytest.raises(HypothesisViolationError) as info:
        local_solution_basis(op, 1, 6)
    assert info.value.point is not None


def test_leading_coefficient_off_orbit():
    """Test the same operator is fine at a point whose orbit misses q^2."""
    op = parse_operator("(x - q^2)*sigma - 1")
    (solution,) = local_solution_basis(op, 3, 6)
    assert annihilates_newton(op, solution)


def test_excluded_slope():
    """Test d_q - 1 (slopes 0 and -1) is rejected when negative slopes are excluded."""
    op = parse_operator("dq - 1")
    with pytest.raises(HypothesisViolationError) as info:
        local_solution_basis(op, 1, 6, excluded="negative")
    assert info.value.slope == "-1"
    assert len(local_solution_basis(op, 1, 6, excluded="positive")) == 1


def test_prepend_root_multiplies_by_root():
    """Test prepend_root is (x - xi) times the series, re-expanded at xi."""
    xi = q / (1 - q)
    series = NewtonSeries(q * xi, [1 / (q ** n * numbers.factorial(n)) for n in range(15)])
    product = series.prepend_root()
    assert product.xi == xi
    assert product.order == 16
    assert product.to_polynomial() == (X - xi) * series.to_polynomial()


def test_composed_operator_kills_shifted_series():
    """Test (d_q - 1)(x - xi) kills sum q^(-n)/[n]_q! T_n(x, q xi) for xi = q/(1 - q)."""
    xi = q / (1 - q)
    series = NewtonSeries(q * xi, [1 / (q ** n * numbers.factorial(n)) for n in range(15)])
    composed = parse_operator("dq - 1") * SkewOperator.scalar(X - xi, DQ)
    assert annihilates_newton(composed, series)
    assert annihilates_newton(parse_operator("dq - 1"), series.mul_polynomial(X - xi))


def test_newton_expansion_with_rational_constants():
    """Test polynomials with coefficients in Q(q) convert and multiply."""
    assert to_newton(X / q, 1).values() == [1 / q, 1 / q]
    f = X - q / (1 - q)
    assert from_newton(to_newton(f, q + 1)) == f
    unit = to_newton(FIELD.one, 1, order=3)
    assert unit.mul_polynomial(X / (1 - q)).values() == [1 / (1 - q), 1 / (1 - q), FIELD.zero]
