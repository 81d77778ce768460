"""
Catalog of worked examples: closed-form coefficients, known minimal
operators and known q-Gevrey orders.
"""

import re
from dataclasses import dataclass
from typing import Any, Callable, Dict, FrozenSet, List, Optional, Tuple

from sympy import Rational, binomial
from sympy.polys.fields import FracElement

from core.exceptions import UnknownCatalogEntryError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, QT, X, ScalarField, qt_power
from core.series import SeriesPrefix
from gevrey.orders import GevreyOrders, predicted_slopes
from operators.parser import format_operator, parse_operator
from operators.skew_operator import SIGMA, SkewOperator
from polygons.newton_polygon import slope_labels

q = QT

TCHAKALOFF = "sigma^2 - (1+q^2*x)*sigma + q*x"
BESSEL = "sigma^2 - 2*sigma + 1 - (q-1)^2*x"

_PHI = re.compile(r"^phi\(\s*(\d+)\s*,\s*(\d+)\s*\)$", re.IGNORECASE)


class HypergeometricTerms:
    """
    a_0 = 1 and a_(n+1) = ratio(n) a_n, cached.

    Args:
        ratio: n -> a_(n+1)/a_n
    """

    def __init__(self, ratio: Callable[[int], FracElement]):
        self.ratio = ratio
        self._terms: List[FracElement] = [FIELD.one]

    def __call__(self, n: int) -> FracElement:
        while len(self._terms) <= n:
            k = len(self._terms) - 1
            self._terms.append(self._terms[k] * self.ratio(k))
        return self._terms[n]


@dataclass(frozen=True)
class CatalogEntry:
    """
    One worked example.

    Attributes:
        name: Canonical name
        description: One-line description
        generator: n -> y_n
        operator: Known minimal operator
        orders: Known q-Gevrey orders (None when no grid candidate applies)
        field: Scalar field of the coefficients
        aliases: Other accepted names
        facts: Special values, zeros and other recorded data
        phi_parameters: (r, t) for the rescaled series Phi
    """
    name: str
    description: str
    generator: Callable[[int], FracElement]
    operator: SkewOperator
    orders: Optional[GevreyOrders]
    field: ScalarField = ScalarField()
    aliases: Tuple[str, ...] = ()
    facts: Tuple[Tuple[str, str], ...] = ()
    phi_parameters: Optional[Tuple[int, int]] = None

    @property
    def slopes(self) -> Optional[Dict[str, Optional[FrozenSet[Rational]]]]:
        """Slopes predicted from the orders."""
        if self.orders is None:
            return None
        return predicted_slopes(self.orders)

    def prefix(self, order: int) -> SeriesPrefix:
        """y modulo x^order."""
        return SeriesPrefix.from_generator(self.generator, order, self.field)

    def to_dict(self) -> Dict[str, Any]:
        slopes = self.slopes
        return {
            "name": self.name,
            "description": self.description,
            "aliases": list(self.aliases),
            "field_root": self.field.r,
            "operator": format_operator(self.operator),
            "orders": self.orders.to_dict() if self.orders else None,
            "predicted_slopes": {
                key: slope_labels(value) if value is not None else None
                for key, value in slopes.items()
            } if slopes else None,
            "facts": dict(self.facts),
        }


def _eq() -> CatalogEntry:
    numbers = q_numbers(1)
    return CatalogEntry(
        "Eq", "E_q(x) = sum x^n/[n]_q!",
        HypergeometricTerms(lambda n: 1 / numbers.integer(n + 1)),
        parse_operator("dq - 1"),
        GevreyOrders(0, -1),
        aliases=("eq", "e_q", "E_q"),
        facts=(
            ("equation", "d_q y = y"),
            ("product", "prod_(k>=0) (1 - x(1-q)/q^(k+1)), q^(-1)-adically"),
            ("zero", "E_q(q/(1-q)) = 0, q^(-1)-adically"),
        ),
    )


def _tq() -> CatalogEntry:
    return CatalogEntry(
        "Tq", "T_q(x) = sum x^n/q^(n(n-1)/2)",
        HypergeometricTerms(lambda n: qt_power(-n)),
        parse_operator(TCHAKALOFF),
        GevreyOrders(-1, 0),
        aliases=("tq", "T_q"),
        facts=(
            ("factorization", "(sigma - 1)(sigma - q x)"),
            ("solutions_at_zero", "1, T_q(x)"),
        ),
    )


def _bq() -> CatalogEntry:
    numbers = q_numbers(1)
    return CatalogEntry(
        "Bq", "B_q(x) = sum x^n/([n]_q!)^2",
        HypergeometricTerms(lambda n: 1 / numbers.integer(n + 1) ** 2),
        parse_operator(BESSEL),
        GevreyOrders(0, -2),
        aliases=("bq", "B_q"),
        facts=(("name", "q-Bessel series of order 0"),),
    )


def _geometric() -> CatalogEntry:
    return CatalogEntry(
        "geometric", "sum x^n = 1/(1-x)",
        lambda n: FIELD.one,
        parse_operator("(1-q*x)*sigma - (1-x)"),
        GevreyOrders(0, 0),
        aliases=("geom",),
        facts=(("closed_form", "1/(1-x)"),),
    )


def _eq_squared() -> CatalogEntry:
    numbers = q_numbers(1)

    def coefficient(n: int) -> FracElement:
        total = sum((numbers.binomial(n, k) for k in range(n + 1)), FIELD.zero)
        return total / numbers.factorial(n)

    return CatalogEntry(
        "eq_squared", "E_q(x)^2 = sum (sum_k binom(n, k)_q) x^n/[n]_q!",
        coefficient,
        SkewOperator(SIGMA, (-(1 + (q - 1) * X) ** 2, FIELD.one)),
        None,
        aliases=("Eq2", "eq2"),
        facts=(("grid_orders", "none: negative control for detection"),),
    )


def _phi(r: int, t: int) -> CatalogEntry:
    """
    Phi = sum prod_(k<=n) (1 - q^(k/r))^t/(1 - q^k) x^n over Q(q^(1/r)).

    With S = sigma_(q^(1/r)) it is killed by
    x sum_j (-1)^j binom(t, j) q^(j/r) S^j + S^r - 1.
    """
    field = ScalarField(r)
    coeffs = [FIELD.zero] * (max(r, t) + 1)
    for j in range(t + 1):
        coeffs[j] += (-1) ** j * int(binomial(t, j)) * qt_power(j) * X
    coeffs[0] -= 1
    coeffs[r] += 1
    return CatalogEntry(
        f"phi({r},{t})", f"Phi with (r, t) = ({r}, {t})",
        HypergeometricTerms(lambda n: (1 - qt_power(n + 1)) ** t / (1 - qt_power(r * (n + 1)))),
        SkewOperator(SIGMA, tuple(coeffs), field, step=1),
        None,
        field=field,
        facts=(("divergent_at_infinity", str(t > r).lower()),),
        phi_parameters=(r, t),
    )


CATALOG: Dict[str, Callable[[], CatalogEntry]] = {
    "Eq": _eq,
    "Tq": _tq,
    "Bq": _bq,
    "geometric": _geometric,
    "eq_squared": _eq_squared,
}

ALIASES: Dict[str, str] = {
    alias: name for name, build in CATALOG.items() for alias in build().aliases
}


def names() -> List[str]:
    """Canonical names, with the Phi family written phi(r,t)."""
    return list(CATALOG) + ["phi(r,t)"]


def entry(name: str) -> CatalogEntry:
    """
    Look up a catalog entry by name or alias.

    Args:
        name: "Eq", "Tq", "Bq", "geometric", "eq_squared", an alias, or
            "phi(r,t)" with integers r, t >= 1

    Raises:
        UnknownCatalogEntryError: For any other name
    """
    key = name.strip()
    match = _PHI.match(key)
    if match:
        r, t = int(match.group(1)), int(match.group(2))
        if r >= 1 and t >= 1:
            return _phi(r, t)
    key = ALIASES.get(key, key)
    if key not in CATALOG:
        raise UnknownCatalogEntryError(name, names())
    return CATALOG[key]()
