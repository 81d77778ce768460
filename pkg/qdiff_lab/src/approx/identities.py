"""
Exact checks on remainder tables: the central identity

    G_[n] R^<0> = sum_(i<=n) (-1)^i alpha_i^(n) d_q^(n-i)/[n-i]_q! o A_i R^<i>

and the determinant of R^<0>.
"""

from dataclasses import dataclass
from typing import Any, Dict, Optional

from sympy.polys.fields import FracElement

from approx.alpha import AlphaTriangle, alpha_triangle
from approx.context import matrix_degree
from approx.remainders import RemainderTable
from core.exceptions import DomainError
from core.matrix import RationalMatrix
from core.qnumbers import q_numbers
from core.scalar_field import inverse, x_valuation
from operators.parser import format_function
from systems.iteration import IterationTable, iterate


@dataclass
class IdentityCheck:
    """Both sides of the central identity at one n."""
    n: int
    lhs: RationalMatrix
    rhs: RationalMatrix

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs

    @property
    def residual(self) -> RationalMatrix:
        return self.lhs - self.rhs

    def to_dict(self, field) -> Dict[str, Any]:
        return {
            "n": self.n,
            "holds": self.holds,
            "residual": [[format_function(e, field) for e in row] for row in self.residual.rows],
        }


def central_identity_check(table: RemainderTable, n: int, iteration: Optional[IterationTable] = None,
                           alphas: Optional[AlphaTriangle] = None) -> IdentityCheck:
    """
    Evaluate both sides of G_[n] R^<0> = sum_i (-1)^i alpha_i^(n) d_q^(n-i)/[n-i]_q! (A_i R^<i>).

    Args:
        table: Remainders up to n + nu - 1
        n: Index
        iteration: Iterates of the same system up to n (built when omitted)
        alphas: Triangle up to n (built when omitted)

    Raises:
        DomainError: If the tables are too short
    """
    system = table.system
    if n < 0:
        raise DomainError("identity index must be nonnegative")
    if n + system.dimension - 1 > table.horizon:
        raise DomainError(f"the identity at n = {n} needs R up to {n + system.dimension - 1}")
    iteration = iterate(system, max(n, 1)) if iteration is None else iteration.extended(max(n, 1))
    alphas = alpha_triangle(n, system.field) if alphas is None or alphas.n_max < n else alphas
    step = system.field.r
    numbers = q_numbers(step)

    lhs = iteration.g_bracket(n) * table.r_block(0)
    rhs = RationalMatrix.zeros(system.dimension, system.dimension)
    for i in range(n + 1):
        term = iteration.a(i) * table.r_block(i)
        for _ in range(n - i):
            term = term.dq(step)
        sign = 1 if i % 2 == 0 else -1
        rhs = rhs + term * (sign * alphas.alpha(n, i) * inverse(numbers.factorial(n - i)))
    return IdentityCheck(n, lhs, rhs)


@dataclass
class DeterminantReport:
    """
    det R^<0> with its order at 0 and the degree of P.

    Attributes:
        determinant: det R^<0>
        order: Order at 0 (None when the determinant vanishes)
        degree: deg P
    """
    determinant: FracElement
    order: Optional[int]
    degree: int

    @property
    def nonzero(self) -> bool:
        return bool(self.determinant)

    def to_dict(self, field) -> Dict[str, Any]:
        return {
            "determinant": format_function(self.determinant, field),
            "nonzero": self.nonzero,
            "order": self.order,
            "degree_P": self.degree,
        }


def determinant_check(table: RemainderTable) -> DeterminantReport:
    """det R^<0>; a zero determinant is reported, not raised."""
    det = table.r_block(0).det()
    return DeterminantReport(det, x_valuation(det) if det else None, matrix_degree(table.p))
