"""
q^(-1)-adic facts about E_q(x) = sum x^n/[n]_q!.

With |q| > 1 the product prod_(k>=0) (1 - x(1-q)/q^(k+1)) converges to E_q
and vanishes at x = q/(1-q). Both facts are checked through q^(-1)-adic
orders (ord = deg denominator - deg numerator) of exact truncations.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from sympy.polys.fields import FracElement

from core.exceptions import DomainError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, QT, X, qt_power
from core.series import SeriesPrefix
from operators.parser import format_function
from places.place import Place, scalar_order

q = QT


def eq_product_polynomial(factors: int) -> FracElement:
    """prod_(k < factors) (1 - x (1-q)/q^(k+1))."""
    product = FIELD.one
    for k in range(factors):
        product *= 1 - X * (1 - q) * qt_power(-(k + 1))
    return product


@dataclass
class ProductDefect:
    """
    q^(-1)-adic orders of the coefficients of E_q - prod_(k<K).

    Attributes:
        factors: K
        orders: Per coefficient, None where the difference vanishes
    """
    factors: int
    orders: List[Optional[int]]

    @property
    def defect(self) -> Optional[int]:
        """Smallest order over the known coefficients."""
        known = [v for v in self.orders if v is not None]
        return min(known) if known else None

    def to_dict(self) -> Dict[str, Any]:
        return {
            "factors": self.factors,
            "coefficient_orders": [v if v is not None else "zero" for v in self.orders],
            "defect": self.defect,
        }


def eq_product_defect(factors: int, order: Optional[int] = None) -> ProductDefect:
    """
    Compare the first `order` coefficients of E_q with the product of K factors.

    Args:
        factors: K >= 1
        order: Number of coefficients (default K + 1)
    """
    if factors < 1:
        raise DomainError("the product needs at least one factor")
    order = factors + 1 if order is None else order
    numbers = q_numbers(1)
    product = SeriesPrefix.from_rational(eq_product_polynomial(factors), order)
    inverse_adic = Place.q_inverse_adic()
    orders = []
    for n in range(order):
        difference = 1 / numbers.factorial(n) - product[n]
        orders.append(scalar_order(difference, inverse_adic) if difference else None)
    return ProductDefect(factors, orders)


def eq_product_identity_check(n_bar: int) -> bool:
    """
    The product over k = 0..n_bar agrees with sum_(n<=n_bar) x^n/[n]_q! up
    to q^(-1)-adic order exactly n_bar + 1.
    """
    if n_bar < 1:
        raise DomainError(f"the product check needs n_bar >= 1, got {n_bar}")
    return eq_product_defect(n_bar + 1, n_bar + 1).defect == n_bar + 1


@dataclass
class ZeroTrace:
    """
    q^(-1)-adic orders of the partial sums sum_(n<=s) xi^n/[n]_q!.

    Attributes:
        xi: Evaluation point
        orders: One order per s = 0..n_bar
    """
    xi: FracElement
    orders: List[int]

    def strictly_increasing(self, start: int = 5) -> bool:
        """True if the orders increase strictly from s = start on."""
        tail = self.orders[start:]
        return all(a < b for a, b in zip(tail, tail[1:]))

    @property
    def bounded(self) -> bool:
        """The last order does not exceed the first one."""
        return max(self.orders) <= self.orders[0]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "xi": format_function(self.xi),
            "orders": self.orders,
            "strictly_increasing_from_5": self.strictly_increasing(),
        }


def eq_zero_check(n_bar: int, xi: Optional[FracElement] = None) -> ZeroTrace:
    """
    Orders of the partial sums of E_q(xi) for s = 0..n_bar.

    Args:
        n_bar: Last index (>= 5)
        xi: Point (default q/(1-q), the zero closest to 0)

    Raises:
        DomainError: If n_bar < 5 or a partial sum vanishes
    """
    if n_bar < 5:
        raise DomainError(f"the zero check needs n_bar >= 5, got {n_bar}")
    xi = q / (1 - q) if xi is None else xi
    numbers = q_numbers(1)
    inverse_adic = Place.q_inverse_adic()
    term, total, orders = FIELD.one, FIELD.zero, []
    for n in range(n_bar + 1):
        if n:
            term = term * xi / numbers.integer(n)
        total += term
        if not total:
            raise DomainError(f"partial sum {n} vanishes")
        orders.append(scalar_order(total, inverse_adic))
    return ZeroTrace(xi, orders)
