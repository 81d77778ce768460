"""
Tests for Newton-Ramis polygons, their slopes and the Fourier action on them.
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Rational, oo

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent / "src"))

from core.exceptions import DomainError
from core.scalar_field import FIELD, QT, X
from operators.constructions import rescale_power
from operators.parser import parse_operator
from operators.skew_operator import DQ, SIGMA, SkewOperator
from polygons.fourier_image import polygon_fourier_image, slope_fourier_image
from polygons.newton_polygon import (
    INFINITY, ZERO, NewtonPolygon, leftward_closure, polygon, slopes
)
from transforms.fourier import fourier_plus, fourier_sharp

q = QT

scalars = st.sampled_from([FIELD.one, q, 1 / q, 1 / (1 - q)])

small_polys = st.builds(
    lambda c: sum((FIELD(v) * s * X ** k for k, (v, s) in enumerate(c)), FIELD.zero),
    st.lists(st.tuples(st.integers(-2, 2), scalars), min_size=1, max_size=4)
)


@st.composite
def operators(draw, form=SIGMA):
    """Nonzero operators of order <= 3 with coefficients of degree <= 3."""
    coeffs = draw(st.lists(small_polys, min_size=1, max_size=4))
    if not any(coeffs):
        coeffs[-1] = FIELD.one
    return SkewOperator(form, tuple(coeffs))


# ==================== Fixtures ====================

@pytest.fixture
def tchakaloff():
    """sigma^2 - (1 + q^2 x) sigma + q x."""
    return parse_operator("sigma^2 - (1+q^2*x)*sigma + q*x")


@pytest.fixture
def bessel():
    """sigma^2 - 2 sigma + 1 - (q-1)^2 x."""
    return parse_operator("sigma^2 - 2*sigma + 1 - (q-1)^2*x")


@pytest.fixture
def exponential():
    """x d_q - x, the cleared form of d_q y = y."""
    return parse_operator("x*dq - x")


# ==================== Polygon Tests ====================

def test_tchakaloff_sigma_hull(tchakaloff):
    """Test the four vertices of the Tchakaloff polygon."""
    poly = polygon(tchakaloff, SIGMA)
    assert set(poly.hull) == {(0, 1), (1, 1), (2, 0), (1, 0)}
    assert not poly.leftward


def test_exponential_dq_points(exponential):
    """Test x d_q - x gives (1, 0) and (0, 1) with leftward closure."""
    poly = polygon(exponential, DQ)
    assert poly.points == ((0, 1), (1, 0))
    assert poly.leftward


def test_constant_equation_is_flat():
    """Test sigma - 1 gives a horizontal segment."""
    poly = polygon(parse_operator("sigma - 1"))
    assert poly.points == ((0, 0), (1, 0))
    assert poly.all_slopes() == {0}


def test_zero_operator_has_no_polygon():
    """Test the zero operator is rejected."""
    with pytest.raises(DomainError):
        polygon(SkewOperator(SIGMA, ()))


def test_polygon_ignores_vertical_shift(tchakaloff):
    """Test x . L and L have equal polygons."""
    assert polygon(tchakaloff.scale(X)) == polygon(tchakaloff)
    assert polygon(tchakaloff.scale(X)).hull != polygon(tchakaloff).hull


def test_polygon_of_rational_operator(tchakaloff):
    """Test denominators are cleared before reading the points."""
    assert polygon(tchakaloff.scale(1 / (1 - X))) == polygon(tchakaloff)


def test_to_dict_is_normalized(tchakaloff):
    """Test the report form has lowest point at v = 0 and sorted slope labels."""
    data = polygon(tchakaloff.scale(X ** 2)).to_dict()
    assert min(v for _, v in data["points"]) == 0
    assert data["slopes"] == {"zero": ["-1", "0"], "infinity": ["-1", "0"]}


# ==================== Slope Tests ====================

def test_tchakaloff_dq_slopes(tchakaloff):
    """Test the finite d-slopes of the Tchakaloff operator are {0, -1}."""
    assert polygon(tchakaloff, DQ).finite_slopes() == {0, -1}


def test_exponential_dq_slopes(exponential):
    """Test the finite d-slopes of x d_q - x are {0, -1}."""
    assert polygon(exponential, DQ).finite_slopes() == {0, -1}


def test_bessel_slopes(bessel):
    """Test the only finite slope of the Bessel operator at infinity is -1/2."""
    poly = polygon(bessel, SIGMA)
    assert {s for s in slopes(poly, INFINITY) if s != oo} == {Rational(-1, 2)}
    assert slopes(poly, ZERO) == {0}
    assert polygon(bessel, DQ).finite_slopes() == {0, Rational(-1, 2)}


def test_bessel_constant_shift_slopes(bessel):
    """Test (q sigma - 1) . L has slopes {0, -1/2} at infinity."""
    op = parse_operator("q*sigma - 1") * bessel
    assert {s for s in slopes(polygon(op), INFINITY) if s != oo} == {0, Rational(-1, 2)}


def test_vertical_edges_report_infinity():
    """Test a vertical side has slope oo."""
    poly = NewtonPolygon.from_points([(0, 0), (0, 1), (1, 0)])
    assert oo in slopes(poly, INFINITY)
    assert poly.finite_slopes() == {0, -1}


def test_unknown_end_rejected(tchakaloff):
    """Test that only the two ends are accepted."""
    with pytest.raises(DomainError):
        slopes(polygon(tchakaloff), "middle")


def test_rescaled_slope():
    """Test a slope -1 becomes -1/3 over Q(q^(1/3))."""
    op = parse_operator("sigma - x")
    assert polygon(op).finite_slopes() == {-1}
    assert polygon(rescale_power(op, 3)).finite_slopes() == {Rational(-1, 3)}


@settings(max_examples=30, deadline=None)
@given(operators(), st.integers(2, 4))
def test_rescaling_divides_slopes(op, r):
    """Test every slope is divided by r."""
    expected = {s / r if s != oo else oo for s in polygon(op).all_slopes()}
    assert polygon(rescale_power(op, r)).all_slopes() == expected


@settings(max_examples=30, deadline=None)
@given(operators())
def test_dq_polygon_is_leftward_closure(op):
    """Test the d-polygon is the leftward closure of the sigma-polygon."""
    assert polygon(op, DQ) == leftward_closure(polygon(op, SIGMA))


# ==================== Fourier Image Tests ====================

def test_fourier_image_of_tchakaloff(tchakaloff):
    """Test (u, v) -> (u + v, -v) on the Tchakaloff hull."""
    image = polygon_fourier_image(polygon(tchakaloff))
    assert set(image.hull) == {(1, -1), (2, -1), (2, 0), (1, 0)}


def test_fourier_image_of_column():
    """Test a column at u = 0 becomes a segment of slope -1."""
    image = polygon_fourier_image(NewtonPolygon.from_points([(0, 0), (0, 1)]))
    assert image.all_slopes() == {-1}


@pytest.mark.parametrize("slope,expected", [
    (Rational(0), Rational(0)),
    (oo, Rational(-1)),
    (Rational(1), Rational(-1, 2)),
    (Rational(-1), oo),
    (Rational(-1, 2), Rational(1)),
])
def test_slope_fourier_image(slope, expected):
    """Test lambda -> -lambda / (1 + lambda)."""
    assert slope_fourier_image(slope) == expected


@settings(max_examples=50, deadline=None)
@given(operators())
def test_sharp_transform_commutes_with_polygons(op):
    """Test the polygon of the q#-transform is the image polygon."""
    assert polygon(fourier_sharp(op), SIGMA) == polygon_fourier_image(polygon(op, SIGMA))


@settings(max_examples=50, deadline=None)
@given(operators(DQ))
def test_plus_transform_commutes_with_polygons(op):
    """Test the polygon of the q+-transform is the image d-polygon."""
    assert polygon(fourier_plus(op), DQ) == polygon_fourier_image(polygon(op, DQ))


@settings(max_examples=50, deadline=None)
@given(operators())
def test_slope_map_on_random_polygons(op):
    """Test the slopes of the image are the images of the slopes."""
    for poly in (polygon(op, SIGMA), polygon(op, DQ)):
        expected = {slope_fourier_image(s) for s in poly.all_slopes()}
        assert polygon_fourier_image(poly).all_slopes() == expected
