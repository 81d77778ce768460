"""
Empirical detection of global q-Gevrey orders.

Finite size cannot be decided from a prefix. Each candidate is judged by the
growth of the partial sums sigma_n of the normalized prefix over the window
[floor(horizon * fraction), horizon]: the candidate is reported bounded when
(sigma_end - sigma_start) / (end - start) <= threshold. The window and the
threshold are part of every result.
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Optional, Sequence

from sympy import Rational, floor

from core import console
from core.cyclotomic import DEFAULT_ORDER_FACTOR, DEFAULT_ORDER_FLOOR
from core.exceptions import DomainError
from core.scalar_field import ScalarField
from gevrey.orders import GevreyOrders, Source, normalize, prefix_of
from places.size import SizeReport, size_report

DEFAULT_HORIZON = 60
DEFAULT_FRACTION = Rational(1, 2)
DEFAULT_THRESHOLD = Rational(1, 10)


@dataclass
class Window:
    """Index window [start, end] of the growth test and its threshold."""
    start: int
    end: int
    threshold: Rational

    @classmethod
    def for_horizon(cls, horizon: int, fraction: Rational = DEFAULT_FRACTION,
                    threshold: Rational = DEFAULT_THRESHOLD) -> "Window":
        if horizon < 2:
            raise DomainError(f"the growth window needs a horizon >= 2, got {horizon}")
        start = int(floor(horizon * Rational(fraction)))
        start = min(max(start, 1), horizon - 1)
        return cls(start, horizon, Rational(threshold))

    def slope(self, report: SizeReport) -> Rational:
        """Average growth of sigma_n over the window."""
        totals = report.totals()
        return (totals[self.end] - totals[self.start]) / (self.end - self.start)

    def to_dict(self) -> Dict[str, str]:
        return {"start": str(self.start), "end": str(self.end), "threshold": str(self.threshold)}


@dataclass
class Verdict:
    """Outcome for one candidate."""
    orders: GevreyOrders
    slope: Rational
    bounded: bool
    report: SizeReport

    def to_dict(self) -> Dict[str, Any]:
        totals = self.report.totals()
        return {
            "orders": self.orders.to_dict(),
            "slope": str(self.slope),
            "bounded": self.bounded,
            "final_partial_sum": str(totals[-1]),
        }


@dataclass
class GevreyDetection:
    """
    Verdicts for every candidate of a grid.

    Attributes:
        verdicts: One Verdict per candidate, in grid order
        window: Growth window and threshold
        polynomial: True when the prefix vanishes over the whole window
        skipped: Candidates whose s1 is not representable in the field
    """
    verdicts: List[Verdict]
    window: Window
    polynomial: bool
    skipped: List[GevreyOrders] = dataclass_field(default_factory=list)

    @property
    def bounded(self) -> List[GevreyOrders]:
        """Candidates reported bounded."""
        return [v.orders for v in self.verdicts if v.bounded]

    @property
    def detected(self) -> Optional[GevreyOrders]:
        """The unique bounded candidate, if there is exactly one."""
        bounded = self.bounded
        return bounded[0] if len(bounded) == 1 else None

    def verdict(self, orders: GevreyOrders) -> Verdict:
        for v in self.verdicts:
            if v.orders == orders:
                return v
        raise DomainError(f"orders {orders.label} were not among the candidates")

    def to_dict(self) -> Dict[str, Any]:
        detected = self.detected
        return {
            "verdicts": [v.to_dict() for v in self.verdicts],
            "bounded": [o.to_dict() for o in self.bounded],
            "detected": detected.to_dict() if detected else None,
            "polynomial_prefix": self.polynomial,
            "skipped": [o.to_dict() for o in self.skipped],
            "provenance": {
                "window": self.window.to_dict(),
                "note": "finite-window growth test on partial sums, not a proof of finite size",
            },
        }


def detect_orders(
    source: Source,
    candidates: Sequence[GevreyOrders],
    horizon: int = DEFAULT_HORIZON,
    field: ScalarField = ScalarField(),
    fraction: Rational = DEFAULT_FRACTION,
    threshold: Rational = DEFAULT_THRESHOLD,
    floor_order: int = DEFAULT_ORDER_FLOOR,
    factor: int = DEFAULT_ORDER_FACTOR,
) -> GevreyDetection:
    """
    Windowed size test of the normalized prefix for every candidate.

    Args:
        source: Coefficient generator, prefix or list (at least horizon + 1 terms)
        candidates: Finite list of orders
        horizon: Last index n of the window
        field: Scalar field Q(q^(1/r))
        fraction: Window start as a fraction of the horizon
        threshold: Largest slope reported as bounded
        floor_order: Cyclotomic orders always tried
        factor: Cyclotomic orders tried per unit of degree

    Returns:
        GevreyDetection; a warning is printed when more than one candidate is
        bounded for a non-polynomial prefix
    """
    window = Window.for_horizon(horizon, fraction, threshold)
    prefix = prefix_of(source, horizon + 1, field)
    if prefix.order < horizon + 1:
        raise DomainError(f"detection up to n = {horizon} needs {horizon + 1} coefficients, got {prefix.order}")
    field = prefix.field
    polynomial = all(not c for c in prefix.coeffs[window.start:])

    verdicts, skipped = [], []
    for orders in candidates:
        if field.r % orders.s1.q:
            skipped.append(orders)
            continue
        normalized = normalize(prefix, orders, horizon + 1, field)
        report = size_report(normalized, field, floor_order, factor)
        slope = window.slope(report)
        bounded = bool(slope <= window.threshold)
        verdicts.append(Verdict(orders, slope, bounded, report))
        console.info(f"  {orders.label}: slope {slope} -> {'bounded' if bounded else 'growing'}")

    detection = GevreyDetection(verdicts, window, polynomial, skipped)
    if not polynomial and len(detection.bounded) > 1:
        labels = ", ".join(o.label for o in detection.bounded)
        console.warn(f"several candidates look bounded ({labels}); raise the horizon")
    return detection
