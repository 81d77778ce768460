"""
Tests for q-Gevrey orders, normalization, order detection and the rescaled
counterexample Phi.
"""

import sys
from pathlib import Path

import pytest
from sympy import Rational

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.exceptions import DomainError, IncompatibleRadicalError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, ScalarField, qt_power
from core.series import SeriesPrefix
from gevrey.detection import detect_orders
from gevrey.orders import (
    GevreyOrders, default_grid, in_negative_cone, invert_q_orders, normalize, predicted_slopes
)
from gevrey.phi import phi_counterexample_report, phi_prefix

numbers = q_numbers(1)

GRID = [GevreyOrders(0, 0), GevreyOrders(0, -1), GevreyOrders(-1, 0), GevreyOrders(0, -2)]
HORIZON = 24


def eq_gen(n):
    return 1 / numbers.factorial(n)


def tq_gen(n):
    return qt_power(-(n * (n - 1) // 2))


def bq_gen(n):
    return 1 / numbers.factorial(n) ** 2


def ones(order):
    return [FIELD.one] * order


# ==================== Orders Tests ====================

def test_orders_are_exact():
    """Test s1 is stored as a Rational."""
    orders = GevreyOrders(Rational(1, 2), -1)
    assert orders.s1 == Rational(1, 2)
    assert orders.s2 == -1


def test_second_order_must_be_integer():
    """Test s2 = 1/2 is rejected."""
    with pytest.raises(DomainError):
        GevreyOrders(0, Rational(1, 2))


def test_negation():
    """Test -(s1, s2) = (-s1, -s2)."""
    assert -GevreyOrders(Rational(1, 3), 2) == GevreyOrders(Rational(-1, 3), -2)


def test_default_grid_size():
    """Test the default grid is {-2..2}/r x {-3..3}."""
    grid = default_grid(ScalarField(2))
    assert len(grid) == 35
    assert GevreyOrders(Rational(1, 2), 0) in grid
    assert GevreyOrders(1, -3) in grid


def test_negative_cone():
    """Test membership in the cone of orders (-s1, -s2)."""
    assert in_negative_cone(GevreyOrders(0, -1))
    assert not in_negative_cone(GevreyOrders(0, 0))
    assert not in_negative_cone(GevreyOrders(1, -1))


# ==================== Normalization Tests ====================

def test_normalize_eq():
    """Test E_q with (0, -1) gives all ones."""
    assert normalize(eq_gen, GevreyOrders(0, -1), 12).values() == ones(12)


def test_normalize_tq():
    """Test T_q with (-1, 0) gives all ones."""
    assert normalize(tq_gen, GevreyOrders(-1, 0), 12).values() == ones(12)


def test_normalize_bq():
    """Test B_q with (0, -2) gives all ones."""
    assert normalize(bq_gen, GevreyOrders(0, -2), 10).values() == ones(10)


def test_normalize_trivial_orders():
    """Test (0, 0) leaves the prefix unchanged."""
    prefix = SeriesPrefix.from_generator(eq_gen, 8)
    assert normalize(prefix, GevreyOrders(0, 0), 8) == prefix


def test_normalize_involution():
    """Test normalizing by s then by -s returns the original prefix."""
    prefix = SeriesPrefix.from_generator(lambda n: (1 + qt_power(n)) / numbers.factorial(n), 10)
    orders = GevreyOrders(1, -2)
    assert normalize(normalize(prefix, orders, 10), -orders, 10) == prefix


def test_normalize_fractional_s1():
    """Test s1 = 1/2 over Q(q^(1/2)) divides by qt^(n(n-1)/2)."""
    field = ScalarField(2)
    result = normalize(ones(6), GevreyOrders(Rational(1, 2), 0), 6, field)
    assert result.values() == [qt_power(-(n * (n - 1) // 2)) for n in range(6)]


def test_normalize_incompatible_radical():
    """Test s1 = 1/3 is rejected over Q(q^(1/2))."""
    with pytest.raises(IncompatibleRadicalError):
        normalize(ones(4), GevreyOrders(Rational(1, 3), 0), 4, ScalarField(2))


def test_normalize_inverse_base():
    """Test E_q read over p = 1/q has orders (1, -1)."""
    result = normalize(eq_gen, GevreyOrders(1, -1), 10, inverse_q=True)
    assert result.values() == ones(10)


# ==================== Order Transform Tests ====================

@pytest.mark.parametrize("given,expected", [
    ((0, -1), (1, -1)),
    ((-1, 0), (1, 0)),
    ((-1, -1), (2, -1)),
    ((3, -2), (-1, -2)),
])
def test_invert_q_orders(given, expected):
    """Test (s1, s2) -> (-s1 - s2, s2)."""
    assert invert_q_orders(GevreyOrders(*given)) == GevreyOrders(*expected)


@pytest.mark.parametrize("s1", [Rational(0), Rational(1, 2), Rational(2)])
@pytest.mark.parametrize("s2", [0, 1, 3])
def test_invert_q_orders_involution(s1, s2):
    """Test applying the transform twice returns the original orders."""
    orders = GevreyOrders(-s1, -s2)
    assert invert_q_orders(invert_q_orders(orders)) == orders


# ==================== Slope Prediction Tests ====================

def test_predicted_slopes_exponential():
    """Test orders (0, -1) give d_q-slopes {0, -1} and no sigma prediction."""
    slopes = predicted_slopes(GevreyOrders(0, -1))
    assert slopes["dq"] == frozenset({Rational(0), Rational(-1)})
    assert slopes["sigma"] is None


def test_predicted_slopes_theta():
    """Test orders (-1, 0) give {0, -1} for both polygons."""
    slopes = predicted_slopes(GevreyOrders(-1, 0))
    assert slopes["dq"] == frozenset({Rational(0), Rational(-1)})
    assert slopes["sigma"] == frozenset({Rational(0), Rational(-1)})


def test_predicted_slopes_bessel():
    """Test orders (0, -2) give d_q-slopes {0, -1/2}."""
    assert predicted_slopes(GevreyOrders(0, -2))["dq"] == frozenset({Rational(0), Rational(-1, 2)})


def test_predicted_slopes_outside_cone():
    """Test positive orders are rejected."""
    with pytest.raises(DomainError):
        predicted_slopes(GevreyOrders(1, 0))


# ==================== Detection Tests ====================

@pytest.mark.parametrize("gen,expected", [
    (eq_gen, GevreyOrders(0, -1)),
    (tq_gen, GevreyOrders(-1, 0)),
    (bq_gen, GevreyOrders(0, -2)),
])
def test_detect_catalog_orders(gen, expected):
    """Test exactly one candidate of the small grid is bounded."""
    detection = detect_orders(gen, GRID, HORIZON)
    assert detection.bounded == [expected]
    assert detection.detected == expected
    assert not detection.polynomial


def test_detection_slopes_are_exact():
    """Test E_q unnormalized grows with slope exactly 1/2."""
    detection = detect_orders(eq_gen, GRID, HORIZON)
    assert detection.verdict(GevreyOrders(0, 0)).slope == Rational(1, 2)
    assert detection.verdict(GevreyOrders(0, -1)).slope == 0


def test_detection_normalized_sums_vanish():
    """Test the normalized E_q prefix has identically zero partial sums."""
    detection = detect_orders(eq_gen, [GevreyOrders(0, -1)], HORIZON)
    assert all(total == 0 for total in detection.verdicts[0].report.totals())


def test_detection_geometric_series():
    """Test sum x^n is bounded at (0, 0) only."""
    detection = detect_orders(lambda n: FIELD.one, GRID, HORIZON)
    assert detection.detected == GevreyOrders(0, 0)


def test_detection_polynomial_flag():
    """Test a polynomial prefix is flagged and every candidate is bounded."""
    detection = detect_orders([FIELD.one, FIELD(2)] + [FIELD.zero] * HORIZON, GRID, HORIZON)
    assert detection.polynomial
    assert len(detection.bounded) == len(GRID)


def test_detection_skips_unrepresentable_candidates():
    """Test s1 = 1/2 is skipped over Q(q)."""
    detection = detect_orders(eq_gen, [GevreyOrders(Rational(1, 2), 0), GevreyOrders(0, -1)], 12)
    assert detection.skipped == [GevreyOrders(Rational(1, 2), 0)]
    assert detection.detected == GevreyOrders(0, -1)


def test_detection_short_prefix():
    """Test a prefix shorter than the horizon is rejected."""
    with pytest.raises(DomainError):
        detect_orders(ones(5), GRID, HORIZON)


def test_detection_report_fields():
    """Test the report carries the window and threshold."""
    data = detect_orders(eq_gen, GRID, 12).to_dict()
    assert data["provenance"]["window"] == {"start": "6", "end": "12", "threshold": "1/10"}
    assert data["detected"] == {"s1": "0", "s2": "-1"}


# ==================== Phi Counterexample Tests ====================

def test_phi_trivial_case():
    """Test r = t = 1 gives sum x^n with zero partial sums."""
    assert phi_prefix(1, 1, 6).values() == ones(6)
    report = phi_counterexample_report(1, 1, 20)
    assert all(total == 0 for total in report.report.totals())
    assert not report.divergent


def test_phi_square_root_diverges():
    """Test r = 2, t = 1 grows at the cyclotomic places."""
    report = phi_counterexample_report(2, 1, 30)
    totals = report.report.totals()
    assert report.divergent
    assert not report.divergent_at_infinity
    assert totals[30] > totals[20] > totals[10]
    assert report.report.row(30).cyclotomic > 0


def test_phi_cube_root_diverges():
    """Test r = t = 3 grows as well."""
    report = phi_counterexample_report(3, 3, 24)
    assert report.divergent
    assert report.report.totals()[24] > report.report.totals()[12]


def test_phi_flags_infinite_places():
    """Test t > r is flagged divergent at infinity."""
    assert phi_counterexample_report(1, 2, 8).divergent_at_infinity


def test_phi_rejects_bad_parameters():
    """Test r = 0 is rejected."""
    with pytest.raises(DomainError):
        phi_prefix(0, 1, 4)
