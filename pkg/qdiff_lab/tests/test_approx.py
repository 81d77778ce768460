"""
Tests for Hermite-Pade auxiliary polynomials, remainder tables, the
coefficients alpha and the central identity.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Rational

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from approx.alpha import alpha_triangle, is_integral_at_finite_places
from approx.context import ApproxContext, band_width
from approx.hermite_pade import build_g, build_g_for, height_report, minor_orders
from approx.identities import central_identity_check, determinant_check
from approx.remainders import remainder_table, remainders, truncation_check
from approx.report import hermite_pade_report
from core.exceptions import DomainError, TruncationUnderflowError
from core.matrix import RationalMatrix
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, QT, X, qt_power, sigma_shift
from core.series import SeriesPrefix
from systems.q_system import QSystem

q = QT
numbers = q_numbers(1)
KNOWN = 16
HALF = Rational(1, 2)


def eq_gen(n):
    return 1 / numbers.factorial(n)


def geometric(ratio=FIELD.one):
    """Prefix of 1/(1 - ratio x)."""
    return SeriesPrefix.from_rational(1 / (1 - ratio * X), KNOWN)


# ==================== Fixtures ====================

@pytest.fixture
def mixed_system():
    """A 2x2 system with det A_1 = 1 + (q - 1) x."""
    return QSystem.from_lists([[1, 1], [X, 1 + q * X]])


@pytest.fixture
def diagonal_pair():
    """diag((1-x)/(1-qx), (1-qx)/(1-q^2 x)) with y = (1/(1-x), 1/(1-qx))."""
    system = QSystem.from_lists([
        [(1 - X) / (1 - q * X), 0],
        [0, (1 - q * X) / (1 - q ** 2 * X)],
    ])
    return system, (geometric(), geometric(q))


@pytest.fixture
def exponential_pair():
    """diag(1, 1 + (q-1)x) with y = (1, E_q)."""
    system = QSystem.from_lists([[1, 0], [0, 1 + (q - 1) * X]])
    prefixes = (
        SeriesPrefix.from_values([1] + [0] * (KNOWN - 1)),
        SeriesPrefix.from_generator(eq_gen, KNOWN),
    )
    return system, prefixes


# ==================== Auxiliary Polynomial Tests ====================

def test_band_width():
    """Test M = floor(N (1 - tau)/nu)."""
    assert band_width(8, HALF, 2) == 2
    assert band_width(12, HALF, 2) == 3
    assert band_width(3, HALF, 1) == 1


def test_build_g_single_series():
    """Test g (1/(1-x)) has a vanishing x^4 coefficient for N = 3."""
    aux = build_g([geometric()], 3, HALF)
    assert aux.band == 1
    assert aux.conditions == 1
    assert aux.holds
    assert aux.g.numer.degree(0) <= 3


def test_build_g_condition_count():
    """Test nu M conditions for two series at N = 8."""
    aux = build_g([SeriesPrefix.from_values([1] + [0] * 15), geometric()], 8, HALF)
    assert aux.band == 2
    assert aux.conditions == 4
    assert aux.holds


def test_build_g_polynomial_series():
    """Test y = 1 + x forces the top coefficient of g to vanish."""
    aux = build_g([[1, 1, 0, 0, 0]], 2, HALF)
    assert aux.holds
    assert aux.g.numer.degree(0) <= 1


def test_build_g_short_prefix():
    """Test a prefix shorter than N + M + 1 is rejected."""
    with pytest.raises(TruncationUnderflowError) as exc:
        build_g([[1, 1, 1, 1]], 3, HALF)
    assert exc.value.requested == 5


@pytest.mark.parametrize("tau", [0, 1, Rational(3, 2)])
def test_build_g_rejects_tau(tau):
    """Test tau outside (0, 1) is rejected."""
    with pytest.raises(DomainError):
        build_g([geometric()], 3, tau)


def test_build_g_rejects_empty_budget():
    """Test N = 0 is rejected."""
    with pytest.raises(DomainError):
        build_g([geometric()], 0, HALF)


# ==================== Context Tests ====================

def test_context_dimension_mismatch(diagonal_pair):
    """Test one prefix for a 2x2 system is rejected."""
    system, prefixes = diagonal_pair
    with pytest.raises(DomainError):
        ApproxContext(system, prefixes[:1], 8, HALF)


def test_context_rejects_non_clearing_q1(diagonal_pair):
    """Test Q_1 = 1 - x leaves a pole at 1/q."""
    system, prefixes = diagonal_pair
    with pytest.raises(DomainError):
        ApproxContext(system, prefixes, 8, HALF, q1=1 - X)


def test_context_parameters(diagonal_pair):
    """Test t = 2, M = 2 and the budget 1 at N = 8."""
    system, prefixes = diagonal_pair
    ctx = ApproxContext(system, prefixes, 8, HALF)
    assert ctx.t == 2
    assert ctx.band == 2
    assert ctx.order_target == 11
    assert ctx.budget == 1


def test_context_q_products(mixed_system):
    """Test Q_2(x) = Q_1(x) Q_1(qx)."""
    ctx = ApproxContext(mixed_system, (geometric(), geometric()), 4, HALF)
    q1 = ctx.q1
    assert ctx.q_product(0) == FIELD.one
    assert ctx.q_product(2) == q1 * sigma_shift(q1, 1)


def test_context_without_budget_limit():
    """Test a constant system has t = 0 and no budget."""
    ctx = ApproxContext(QSystem.from_lists([[1]]), (geometric(),), 4, HALF)
    assert ctx.t == 0
    assert ctx.budget is None


# ==================== Remainder Tests ====================

def test_first_remainder_is_p(mixed_system):
    """Test R_0 = P."""
    p = [1 + X ** 2, q - X]
    table = remainder_table(mixed_system, p, 2)
    assert table.remainder(0) == RationalMatrix.column(p)


def test_trivial_system_remainder_is_derivative():
    """Test A = (1) gives R_1 = d_q P."""
    table = remainder_table(QSystem.from_lists([[1]]), [1 + X + X ** 2], 1)
    assert table.remainder(1) == RationalMatrix.column([1 + (1 + q) * X])


def test_remainder_paths_agree(mixed_system):
    """Test the recursion and the closed form agree."""
    table = remainder_table(mixed_system, [1 + X ** 2, q - X], 4)
    assert table.t == 1
    assert table.paths_agree
    assert table.degree_violations() == []


def test_remainder_rejects_rational_p(mixed_system):
    """Test a non-polynomial P is rejected."""
    with pytest.raises(DomainError):
        remainder_table(mixed_system, [1 / (1 - X), FIELD.one], 2)


def test_remainder_outside_table(mixed_system):
    """Test R^<n> past the horizon raises."""
    table = remainder_table(mixed_system, [FIELD.one, X], 2)
    with pytest.raises(DomainError):
        table.r_block(2)


@settings(max_examples=8, deadline=None)
@given(st.integers(-2, 2), st.integers(-2, 2), st.integers(-2, 2), st.integers(-1, 1))
def test_remainder_paths_random_systems(a, b, c, d):
    """Test both paths and the degree bound on [[1, a], [b x, 1 + c x + d x^2]]."""
    system = QSystem.from_lists([[1, a], [b * X, 1 + c * X + d * X ** 2]])
    table = remainder_table(system, [1 + X, q * X ** 2], 3)
    assert table.paths_agree
    assert table.degree_violations() == []


# ==================== Central Identity Tests ====================

@pytest.mark.parametrize("n", [0, 1, 2, 3])
def test_central_identity(mixed_system, n):
    """Test G_[n] R^<0> against the alpha expansion."""
    table = remainder_table(mixed_system, [1 + X ** 2, q - X], n + 1)
    check = central_identity_check(table, n)
    assert check.holds
    assert check.residual.is_zero()


@pytest.mark.parametrize("n", [1, 2, 3])
def test_central_identity_trivial_system(n):
    """Test the expansion collapses to zero when G_n = 0."""
    system = QSystem(RationalMatrix.identity(2))
    table = remainder_table(system, [1 + X + X ** 3, q * X ** 2], n + 1)
    check = central_identity_check(table, n)
    assert check.lhs.is_zero()
    assert check.holds


def test_central_identity_needs_table(mixed_system):
    """Test a table stopping before R_(n + nu - 1) is rejected."""
    table = remainder_table(mixed_system, [FIELD.one, X], 2)
    with pytest.raises(DomainError):
        central_identity_check(table, 2)


# ==================== Alpha Tests ====================

def test_alpha_first_column():
    """Test alpha_0 = 1 and alpha_1 = q^(1-n)."""
    triangle = alpha_triangle(6)
    for n in range(7):
        assert triangle.alpha(n, 0) == FIELD.one
    for n in range(1, 7):
        assert triangle.alpha(n, 1) == qt_power(1 - n)


def test_alpha_closed_form():
    """Test alpha_k = q^(k(k+1)/2 - kn)."""
    triangle = alpha_triangle(7)
    for n in range(8):
        for k in range(n + 1):
            assert triangle.alpha(n, k) == qt_power(k * (k + 1) // 2 - k * n)
    assert triangle.alpha(5, 2) == qt_power(-7)


def test_alpha_recursion_and_integrality():
    """Test the triangular rows vanish and no finite place sees |alpha| > 1."""
    triangle = alpha_triangle(12)
    assert triangle.recursion_holds()
    assert triangle.integrality_failures(12) == []


def test_integrality_predicate():
    """Test 1/(1 + q) is not integral at Phi_2."""
    assert is_integral_at_finite_places(qt_power(-3))
    assert not is_integral_at_finite_places(1 / (1 + q))


def test_alpha_outside_triangle():
    """Test alpha_3^(2) is rejected."""
    with pytest.raises(DomainError):
        alpha_triangle(4).alpha(2, 3)


# ==================== Dependent Pair Tests ====================

@pytest.mark.parametrize("degree_budget", [8, 12])
def test_dependent_pair(diagonal_pair, degree_budget):
    """Test every check on (1/(1-x), 1/(1-qx)) and the vanishing determinant."""
    system, prefixes = diagonal_pair
    ctx = ApproxContext(system, prefixes, degree_budget, HALF)
    aux = build_g_for(ctx)
    assert aux.holds

    table = remainders(ctx, aux.g, 2)
    assert table.paths_agree
    assert table.degree_violations() == []
    for n in range(ctx.budget + 1):
        check = truncation_check(ctx, aux.g, table, n)
        assert check.identity_holds
        assert check.order_holds
    assert all(m.holds for m in minor_orders(ctx, aux.g))

    report = determinant_check(table)
    assert not report.nonzero
    assert report.order is None


def test_truncation_past_budget(diagonal_pair):
    """Test n = 2 exceeds the budget 1 at N = 8."""
    system, prefixes = diagonal_pair
    ctx = ApproxContext(system, prefixes, 8, HALF)
    aux = build_g_for(ctx)
    table = remainders(ctx, aux.g, 2)
    with pytest.raises(DomainError):
        truncation_check(ctx, aux.g, table, 2)


# ==================== Independent Pair Tests ====================

def test_independent_pair(exponential_pair):
    """Test (1, E_q): checks hold up to the budget 2 and det R^<0> != 0."""
    system, prefixes = exponential_pair
    ctx = ApproxContext(system, prefixes, 8, HALF)
    assert ctx.t == 1
    assert ctx.budget == 2

    aux = build_g_for(ctx)
    assert aux.holds
    table = remainders(ctx, aux.g, 2)
    assert table.paths_agree
    assert table.degree_violations() == []
    for n in range(3):
        check = truncation_check(ctx, aux.g, table, n)
        assert check.identity_holds
        assert check.order_holds
    assert all(m.holds for m in minor_orders(ctx, aux.g))

    report = determinant_check(table)
    assert report.nonzero
    assert report.degree <= 8


def test_hermite_pade_report(exponential_pair):
    """Test the whole chain on (1, E_q) passes and serializes."""
    system, prefixes = exponential_pair
    report = hermite_pade_report(ApproxContext(system, prefixes, 8, HALF))
    assert report.passed
    assert len(report.truncations) == 3
    assert len(report.identities) == 2
    data = report.to_dict()
    assert data["parameters"]["budget"] == 2
    assert data["passed"] is True


# ==================== Height Tests ====================

def test_height_of_one():
    """Test h(1) = 0."""
    assert height_report(FIELD.one).total == 0


def test_height_without_denominators():
    """Test q - 1 + x has no cyclotomic contribution."""
    report = height_report(q - 1 + X)
    assert report.cyclotomic == 0
    assert report.per_cyclotomic_place == {}


def test_height_of_cyclotomic_denominator():
    """Test x/(q + 1)^2 weighs 2 at Phi_2."""
    report = height_report(X / (q + 1) ** 2)
    assert report.per_cyclotomic_place == {2: 2}


def test_height_of_prefix_vector():
    """Test the height of (1/[s]_q!) for s <= 3 sees Phi_2 and Phi_3."""
    report = height_report([SeriesPrefix.from_generator(eq_gen, 6)], 3)
    assert set(report.per_cyclotomic_place) == {2, 3}
