"""
Action of the q-Fourier transformations on polygons and slopes.

Both transformations move the point (u, v) of a polygon to (u + v, -v); an
edge of slope lambda becomes an edge of slope -lambda / (1 + lambda).
"""

from sympy import Rational, oo

from polygons.newton_polygon import NewtonPolygon, Slope


def fourier_point(u: int, v: int):
    """(u, v) -> (u + v, -v)."""
    return u + v, -v


def polygon_fourier_image(poly: NewtonPolygon) -> NewtonPolygon:
    """
    Image of a polygon under (u, v) -> (u + v, -v).

    The map is a lattice bijection sending leftward rays to leftward rays,
    so the image is rebuilt from the mapped generating points.
    """
    return NewtonPolygon.from_points(
        (fourier_point(u, v) for u, v in poly.points), poly.form, poly.leftward
    )


def slope_fourier_image(slope: Slope) -> Slope:
    """
    -lambda / (1 + lambda), with oo -> -1 and -1 -> oo.

    Args:
        slope: Rational or sympy oo
    """
    if slope == oo:
        return Rational(-1)
    slope = Rational(slope)
    if slope == -1:
        return oo
    return -slope / (1 + slope)
