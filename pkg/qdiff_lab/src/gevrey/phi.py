"""
The rescaled series Phi(x) = sum (qt; qt)_n^t / (q; q)_n x^n over Q(qt), q = qt^r.

For r >= 2 the cyclotomic part of the size diverges even though Phi solves a
q-difference equation, so finite size is not preserved by q -> q^(1/r). For
t > r the radius argument makes it divergent at the infinite places too.
"""

from dataclasses import dataclass
from typing import Any, Dict

from sympy import Rational

from core.exceptions import DomainError
from core.scalar_field import FIELD, ScalarField, qt_power
from core.series import SeriesPrefix
from gevrey.detection import DEFAULT_FRACTION, DEFAULT_THRESHOLD, Window
from places.size import SizeReport, size_report


def phi_prefix(r: int, t: int, order: int) -> SeriesPrefix:
    """The first `order` coefficients of Phi over Q(q^(1/r))."""
    if r < 1 or t < 1:
        raise DomainError(f"Phi needs r >= 1 and t >= 1, got r={r}, t={t}")
    coeffs = []
    value = FIELD.one
    for n in range(order):
        if n:
            value = value * (1 - qt_power(n)) ** t / (1 - qt_power(r * n))
        coeffs.append(value)
    return SeriesPrefix(tuple(coeffs), ScalarField(r))


@dataclass
class PhiReport:
    """Size growth of Phi for one (r, t)."""
    r: int
    t: int
    report: SizeReport
    window: Window
    slope: Rational

    @property
    def divergent(self) -> bool:
        """Growth over the window exceeds the threshold."""
        return bool(self.slope > self.window.threshold)

    @property
    def divergent_at_infinity(self) -> bool:
        return self.t > self.r

    def to_dict(self) -> Dict[str, Any]:
        return {
            "r": self.r,
            "t": self.t,
            "partial_sums": [
                {
                    "n": row.n,
                    "cyclotomic": str(row.cyclotomic),
                    "noncyclotomic": str(row.noncyclotomic),
                    "infinite": str(row.infinite),
                }
                for row in self.report.rows
            ],
            "slope": str(self.slope),
            "divergent": self.divergent,
            "divergent_at_infinity": self.divergent_at_infinity,
            "window": self.window.to_dict(),
        }


def phi_counterexample_report(r: int, t: int, horizon: int,
                              fraction: Rational = DEFAULT_FRACTION,
                              threshold: Rational = DEFAULT_THRESHOLD) -> PhiReport:
    """
    Partial sums of the size of Phi up to n = horizon.

    Returns:
        PhiReport with the window slope; divergent_at_infinity is set when t > r
    """
    window = Window.for_horizon(horizon, fraction, threshold)
    report = size_report(phi_prefix(r, t, horizon + 1))
    return PhiReport(r, t, report, window, window.slope(report))
