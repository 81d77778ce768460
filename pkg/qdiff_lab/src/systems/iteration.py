"""
Iterates of a q-difference system.

For sigma_q Y = A_1 Y the higher iterates satisfy sigma_q^n Y = A_n Y and
d_q^n Y = G_n Y with

    A_0 = 1,  A_{n+1}(x) = A_n(qx) A_1(x)
    G_0 = 1,  G_1 = (A_1 - 1)/((q - 1)x),  G_{n+1}(x) = G_n(qx) G_1(x) + d_q G_n(x)

and G_[n] = G_n / [n]_q!.
"""

import copy
from typing import List, Tuple

from core import console
from core.exceptions import DomainError
from core.matrix import RationalMatrix
from core.qnumbers import q_numbers
from core.scalar_field import X, inverse
from operators.conversion import dq_power_expansion
from systems.q_system import QSystem


class IterationTable:
    """
    Exact tables A_n, G_n and G_[n] for n = 0..horizon.

    Args:
        system: The system sigma_q Y = A_1 Y
        horizon: Largest n computed (>= 1)
    """

    def __init__(self, system: QSystem, horizon: int):
        if horizon < 1:
            raise DomainError(f"iteration horizon must be >= 1, got {horizon}")
        self.system = system
        identity = RationalMatrix.identity(system.dimension)
        g1 = (system.a1 - identity) * inverse((system.field.q - 1) * X)
        self._a: Tuple[RationalMatrix, ...] = (identity, system.a1)
        self._g: Tuple[RationalMatrix, ...] = (identity, g1)
        self._g_bracket: Tuple[RationalMatrix, ...] = (identity, g1)
        self._grow(horizon)

    @property
    def horizon(self) -> int:
        """Largest n in the table."""
        return len(self._a) - 1

    def _grow(self, horizon: int) -> None:
        r = self.system.field.r
        numbers = q_numbers(r)
        a_list, g_list = list(self._a), list(self._g)
        g1 = g_list[1]
        for n in range(len(a_list) - 1, horizon):
            a_list.append(a_list[n].sigma(r) * self.system.a1)
            g_list.append(g_list[n].sigma(r) * g1 + g_list[n].dq(r))
            console.info(f"  iterate {n + 1}/{horizon}")
        self._a = tuple(a_list)
        self._g = tuple(g_list)
        self._g_bracket = self._g_bracket + tuple(
            g_list[n] * inverse(numbers.factorial(n)) for n in range(len(self._g_bracket), len(g_list))
        )

    def extended(self, horizon: int) -> "IterationTable":
        """A table reaching at least the given horizon (self if it already does)."""
        if horizon <= self.horizon:
            return self
        table = copy.copy(self)
        table._grow(horizon)
        return table

    def _check(self, n: int) -> None:
        if not 0 <= n <= self.horizon:
            raise DomainError(f"index {n} outside the table (horizon {self.horizon})")

    def a(self, n: int) -> RationalMatrix:
        """A_n with sigma_q^n Y = A_n Y."""
        self._check(n)
        return self._a[n]

    def g(self, n: int) -> RationalMatrix:
        """G_n with d_q^n Y = G_n Y."""
        self._check(n)
        return self._g[n]

    def g_bracket(self, n: int) -> RationalMatrix:
        """G_[n] = G_n / [n]_q!."""
        self._check(n)
        return self._g_bracket[n]


def iterate(system: QSystem, horizon: int) -> IterationTable:
    """Build the iteration table of a system up to the given horizon."""
    return IterationTable(system, horizon)


def g_from_dq_expansion(table: IterationTable, n: int) -> RationalMatrix:
    """
    G_n recomputed from the sigma-iterates: d_q^n = sum_i c_i(x) sigma_q^i
    gives G_n = sum_i c_i(x) A_i.
    """
    expansion = dq_power_expansion(n, table.system.field.r)
    result = RationalMatrix.zeros(table.system.dimension, table.system.dimension)
    for i, c in enumerate(expansion.sigma_coefficients()):
        if c:
            result = result + c * table.a(i)
    return result


def _leibniz_sum(table: IterationTable, n: int, s: int) -> RationalMatrix:
    """sum_{i+j=n} ([n]![s]!/[n+s]!) (d_q^j G_[s] / [j]!)(q^i x) G_[i](x)."""
    r = table.system.field.r
    numbers = q_numbers(r)
    weight = numbers.factorial(n) * numbers.factorial(s) / numbers.factorial(n + s)
    nu = table.system.dimension
    total = RationalMatrix.zeros(nu, nu)
    derivative = table.g_bracket(s)
    for j in range(n + 1):
        i = n - j
        term = derivative.map(lambda f: f / numbers.factorial(j)).sigma(r * i) * table.g_bracket(i)
        total = total + term
        derivative = derivative.dq(r)
    return total * weight


def leibniz_identity_check(table: IterationTable, max_total: int = 5) -> List[Tuple[int, int]]:
    """
    Check G_[n+s] against the Leibniz convolution for every n + s <= max_total.

    Returns:
        The pairs (n, s) where the identity fails (empty when it holds)
    """
    max_total = min(max_total, table.horizon)
    failures = []
    for total in range(max_total + 1):
        for n in range(total + 1):
            s = total - n
            if _leibniz_sum(table, n, s) != table.g_bracket(total):
                failures.append((n, s))
    return failures
