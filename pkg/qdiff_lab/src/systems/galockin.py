"""
Finite-horizon Galochkin estimators.

    sigma_n = (1/n) sum_v log+ sup_{s<=n} |G_[s]|_{v,Gauss}

At a finite place v the Gauss norm of a matrix is the largest |c|_v over the
Gauss contents c of its entries, so the sum over places reduces to the lcm
bookkeeping of the size functional applied to those contents. The q-adic
place is not a finite place here and is left out of both estimators.
"""

from typing import List, Optional

from sympy import Rational

from core.scalar_field import gauss_content
from places.size import SizeReport, family_size_report
from systems.iteration import IterationTable


def _contents(table: IterationTable, horizon: int):
    for n in range(horizon + 1):
        yield [gauss_content(e) for e in table.g_bracket(n).entries() if e]


def galockin_report(table: IterationTable, horizon: Optional[int] = None) -> SizeReport:
    """
    Partial sums for n = 0..horizon split into cyclotomic and other places.

    Args:
        table: Iteration table (its horizon bounds the default)
        horizon: Largest n, at most the table horizon
    """
    horizon = table.horizon if horizon is None else min(horizon, table.horizon)
    return family_size_report(list(_contents(table, horizon)), table.system.field)


def galockin_partial(table: IterationTable, horizon: Optional[int] = None) -> List[Rational]:
    """The cyclotomic partial sums sigma_C for n = 0..horizon."""
    return [row.cyclotomic for row in galockin_report(table, horizon).rows]


def noncyclotomic_partial(table: IterationTable, horizon: Optional[int] = None) -> List[Rational]:
    """The partial sums over the finite non-cyclotomic places for n = 0..horizon."""
    return [row.noncyclotomic for row in galockin_report(table, horizon).rows]
