"""
Global q-Gevrey orders and normalization.

A series sum a_n x^n has orders (s1, s2) when

    sum a_n / ((q^(n(n-1)/2))^s1 ([n]_q!)^s2) x^n

is a G_q-function. Orders are written the way they act on the coefficients:
E_q = sum x^n/[n]_q! has orders (0, -1), T_q = sum q^(-n(n-1)/2) x^n has
orders (-1, 0).
"""

from dataclasses import dataclass
from typing import Callable, Dict, FrozenSet, List, Optional, Sequence, Union

from sympy import Rational
from sympy.polys.fields import FracElement

from core.exceptions import DomainError, IncompatibleRadicalError
from core.qnumbers import q_numbers
from core.scalar_field import ScalarField, power, qt_power
from core.series import SeriesPrefix

Generator = Callable[[int], FracElement]
Source = Union[Generator, SeriesPrefix, Sequence[FracElement]]


@dataclass(frozen=True)
class GevreyOrders:
    """
    A pair (s1, s2) with s1 rational and s2 an integer.

    Raises:
        DomainError: If s2 is not an integer
    """
    s1: Rational
    s2: int

    def __post_init__(self):
        object.__setattr__(self, "s1", Rational(self.s1))
        s2 = Rational(self.s2)
        if not s2.is_integer:
            raise DomainError(f"the second q-Gevrey order must be an integer, got {self.s2}")
        object.__setattr__(self, "s2", int(s2))

    def __neg__(self) -> "GevreyOrders":
        return GevreyOrders(-self.s1, -self.s2)

    @property
    def label(self) -> str:
        return f"({self.s1}, {self.s2})"

    def to_dict(self) -> Dict[str, str]:
        """Exact strings for reports."""
        return {"s1": str(self.s1), "s2": str(self.s2)}


def prefix_of(source: Source, order: int, field: ScalarField = ScalarField()) -> SeriesPrefix:
    """The first `order` coefficients of a generator, prefix or list."""
    if isinstance(source, SeriesPrefix):
        return source.truncate(min(order, source.order))
    if callable(source):
        return SeriesPrefix.from_generator(source, order, field)
    return SeriesPrefix.from_values(list(source)[:order], field)


def normalize(source: Source, orders: GevreyOrders, order: int,
              field: ScalarField = ScalarField(), inverse_q: bool = False) -> SeriesPrefix:
    """
    Divide a_n by (Q^(n(n-1)/2))^s1 ([n]_Q!)^s2, with Q = q or 1/q.

    Args:
        source: Coefficient generator, prefix or list
        orders: (s1, s2)
        order: Number of coefficients
        field: Scalar field Q(q^(1/r)); the denominator of s1 must divide r
        inverse_q: Use Q = 1/q

    Raises:
        IncompatibleRadicalError: If q^(s1 n(n-1)/2) is not in the field
    """
    prefix = prefix_of(source, order, field)
    field = prefix.field
    s1 = orders.s1
    if field.r % s1.q:
        raise IncompatibleRadicalError(
            f"s1 = {s1} needs q^(1/{s1.q})", required=int(s1.q), field_root=field.r
        )
    step = -field.r if inverse_q else field.r
    numbers = q_numbers(step)
    exponent = step * s1.p // s1.q
    out = []
    for n, a in enumerate(prefix.coeffs):
        weight = qt_power(exponent * (n * (n - 1) // 2)) * power(numbers.factorial(n), orders.s2)
        out.append(a / weight)
    return SeriesPrefix(tuple(out), field)


def invert_q_orders(orders: GevreyOrders) -> GevreyOrders:
    """
    Orders of the same series read as a q^(-1)-Gevrey series.

    From [n]_q! = q^(n(n-1)/2) [n]_(1/q)!, orders (s1, s2) for q become
    (-s1 - s2, s2) for 1/q. On (-s1, -s2) with s1, s2 >= 0 this is
    (s1 + s2, -s2); on (t1, -t2) with t1 >= t2 >= 0 it is (-(t1 - t2), -t2).
    The map is an involution.
    """
    return GevreyOrders(-orders.s1 - orders.s2, orders.s2)


def in_negative_cone(orders: GevreyOrders) -> bool:
    """True for (-s1, -s2) with s1 >= 0, s2 >= 0, (s1, s2) != (0, 0)."""
    return orders.s1 <= 0 and orders.s2 <= 0 and (orders.s1, orders.s2) != (0, 0)


def predicted_slopes(orders: GevreyOrders) -> Dict[str, Optional[FrozenSet[Rational]]]:
    """
    Finite slopes of the minimal operator of a non-polynomial series with
    orders (-s1, -s2), s1, s2 >= 0.

    The d_q-polygon has slopes {0, -1/(s1 + s2)}; when s2 = 0 the
    sigma_q-polygon has slopes {0, -1/s1}. Orders (0, 0) give a regular
    singular operator (slope 0 only).

    Returns:
        {"dq": slopes, "sigma": slopes or None when s2 != 0}

    Raises:
        DomainError: Outside the cone s1, s2 >= 0
    """
    s1, s2 = -orders.s1, -orders.s2
    if s1 < 0 or s2 < 0:
        raise DomainError(f"slope prediction needs orders (-s1, -s2) with s1, s2 >= 0, got {orders.label}")
    if s1 == 0 and s2 == 0:
        return {"dq": frozenset({Rational(0)}), "sigma": frozenset({Rational(0)})}
    dq = frozenset({Rational(0), -1 / (s1 + s2)})
    sigma = frozenset({Rational(0), -1 / s1}) if s2 == 0 else None
    return {"dq": dq, "sigma": sigma}


def default_grid(field: ScalarField = ScalarField(), s1_numerators: Sequence[int] = (-2, -1, 0, 1, 2),
                 s2_range: Sequence[int] = (-3, 3)) -> List[GevreyOrders]:
    """The candidates {k/r} x {s2_low..s2_high}."""
    low, high = s2_range
    return [
        GevreyOrders(Rational(k, field.r), s2)
        for k in s1_numerators
        for s2 in range(low, high + 1)
    ]
