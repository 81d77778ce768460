"""
Verification of the recorded facts of a catalog entry.
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Any, Dict, List, Optional, Sequence

from sympy import Rational

from catalog.entries import CatalogEntry
from core import console
from gevrey.detection import DEFAULT_FRACTION, DEFAULT_THRESHOLD, GevreyDetection, detect_orders
from gevrey.orders import GevreyOrders, default_grid
from gevrey.phi import PhiReport, phi_counterexample_report
from operators.action import annihilates
from operators.annihilator import annihilator_search
from operators.conversion import to_sigma
from operators.parser import format_operator
from operators.skew_operator import DQ, SIGMA
from polygons.newton_polygon import polygon, slope_labels


@dataclass
class EntryVerification:
    """
    Outcome of every check run on one entry; None marks a check not run.

    Attributes:
        name: Entry name
        prefix_order: Number of coefficients the operator was applied to
        annihilates: The operator kills the prefix
        detection: Order detection over the candidate grid
        orders_match: The detected orders equal the recorded ones (for an
            entry without orders: nothing was detected)
        polygon_slopes: Finite slopes of the operator's d_q- and sigma-polygons
        slopes_match: Polygon slopes equal the predicted slopes
        search_result: Operator returned by the annihilator search
        search_match: The search recovered the recorded operator
        phi: Growth report for Phi entries
    """
    name: str
    prefix_order: int
    annihilates: bool
    detection: Optional[GevreyDetection] = None
    orders_match: Optional[bool] = None
    polygon_slopes: Dict[str, List[str]] = dataclass_field(default_factory=dict)
    slopes_match: Optional[bool] = None
    search_result: Optional[str] = None
    search_match: Optional[bool] = None
    phi: Optional[PhiReport] = None

    @property
    def checks(self) -> Dict[str, Optional[bool]]:
        return {
            "annihilates_prefix": self.annihilates,
            "orders_detected": self.orders_match,
            "slopes_predicted": self.slopes_match,
            "annihilator_recovered": self.search_match,
            "phi_divergent": self.phi.divergent if self.phi else None,
        }

    @property
    def passed(self) -> bool:
        """Every check that ran succeeded."""
        return all(v for v in self.checks.values() if v is not None)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "prefix_order": self.prefix_order,
            "checks": self.checks,
            "passed": self.passed,
            "polygon_slopes": self.polygon_slopes,
            "annihilator_search": self.search_result,
            "detection": self.detection.to_dict() if self.detection else None,
            "phi": self.phi.to_dict() if self.phi else None,
        }


def verify_entry(
    entry: CatalogEntry,
    prefix_order: int = 40,
    horizon: int = 30,
    candidates: Optional[Sequence[GevreyOrders]] = None,
    fraction: Rational = DEFAULT_FRACTION,
    threshold: Rational = DEFAULT_THRESHOLD,
    search: bool = True,
    guard: int = 8,
) -> EntryVerification:
    """
    Check the recorded operator, orders and slopes of an entry.

    Phi entries are checked for divergence of the size instead of a grid
    detection, and are not searched: their operator acts through q^(1/r).

    Args:
        entry: Catalog entry
        prefix_order: Number of coefficients the operator must kill
        horizon: Detection horizon
        candidates: Detection grid (default: default_grid of the entry's field)
        fraction: Window start as a fraction of the horizon
        threshold: Largest window slope reported as bounded
        search: Run the annihilator search in the (2, 6) box
        guard: Extra equations per search box
    """
    console.banner(f"VERIFY {entry.name}")
    killed = annihilates(entry.operator, entry.prefix(prefix_order))
    console.info(f"  operator kills {prefix_order} coefficients: {killed}")
    result = EntryVerification(entry.name, prefix_order, killed)

    if entry.phi_parameters is not None:
        r, t = entry.phi_parameters
        result.phi = phi_counterexample_report(r, t, horizon, fraction, threshold)
        return result

    grid = list(candidates) if candidates is not None else default_grid(entry.field)
    result.detection = detect_orders(entry.generator, grid, horizon, entry.field, fraction, threshold)
    result.orders_match = result.detection.detected == entry.orders

    dq_slopes = polygon(entry.operator, DQ).finite_slopes()
    sigma_slopes = polygon(entry.operator, SIGMA).finite_slopes()
    result.polygon_slopes = {"dq": slope_labels(dq_slopes), "sigma": slope_labels(sigma_slopes)}
    predicted = entry.slopes
    if predicted is not None:
        result.slopes_match = dq_slopes == predicted["dq"] and (
            predicted["sigma"] is None or sigma_slopes == predicted["sigma"]
        )

    if search:
        found = annihilator_search(entry.generator, guard=guard, field=entry.field)
        result.search_result = format_operator(found) if found is not None else None
        result.search_match = found is not None and found == to_sigma(entry.operator).normalized()
    return result
