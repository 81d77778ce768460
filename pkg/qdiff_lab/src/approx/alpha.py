"""
The coefficients alpha_i^(n) of the expansion

    G_[n] P = sum_i (-1)^i / [n]_q! binom(n, i)_q alpha_i^(n) d_q^(n-i) o A_i Lambda^i(P)

They solve sum_(i<=k) (-1)^i binom(k, i)_q q^(i(n-k)) alpha_i^(n) = 0 for
k >= 1 with alpha_0^(n) = 1, one new unknown per row.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from sympy.polys.fields import FracElement

from core.exceptions import DomainError
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, ScalarField, is_scalar
from operators.parser import format_function


def is_integral_at_finite_places(value: FracElement) -> bool:
    """|value|_v <= 1 at every place other than q and 1/q: the denominator is c qt^k."""
    return is_scalar(value) and len(value.denom.terms()) == 1


@dataclass
class AlphaTriangle:
    """
    alpha_i^(n) for 0 <= i <= n <= n_max.

    Attributes:
        rows: rows[n][i] = alpha_i^(n)
        field: Scalar field (q = qt^r)
    """
    rows: List[List[FracElement]]
    field: ScalarField

    @property
    def n_max(self) -> int:
        return len(self.rows) - 1

    def alpha(self, n: int, i: int) -> FracElement:
        if not 0 <= i <= n <= self.n_max:
            raise DomainError(f"alpha_{i}^({n}) is outside the triangle")
        return self.rows[n][i]

    def row_residual(self, n: int, k: int) -> FracElement:
        """sum_(i<=k) (-1)^i binom(k, i)_q q^(i(n-k)) alpha_i^(n)."""
        numbers = q_numbers(self.field.r)
        total = FIELD.zero
        for i in range(k + 1):
            sign = 1 if i % 2 == 0 else -1
            total += sign * numbers.binomial(k, i) * self.field.q_power(i * (n - k)) * self.rows[n][i]
        return total

    def recursion_holds(self) -> bool:
        """alpha_0^(n) = 1 and every row of the triangular system is satisfied."""
        for n, row in enumerate(self.rows):
            if row[0] != FIELD.one:
                return False
            if any(self.row_residual(n, k) for k in range(1, n + 1)):
                return False
        return True

    def integrality_failures(self, limit: int = 12) -> List[Tuple[int, int]]:
        """Pairs (n, i) with n <= limit where some finite place sees |alpha| > 1."""
        return [
            (n, i)
            for n, row in enumerate(self.rows[:limit + 1])
            for i, value in enumerate(row)
            if not is_integral_at_finite_places(value)
        ]

    def to_dict(self) -> Dict[str, Any]:
        return {
            "rows": [[format_function(v, self.field) for v in row] for row in self.rows],
            "recursion_holds": self.recursion_holds(),
            "integrality_failures": [list(p) for p in self.integrality_failures(self.n_max)],
        }


def alpha_triangle(n_max: int, field: ScalarField = ScalarField()) -> AlphaTriangle:
    """
    Solve the triangular systems for n = 0..n_max.

    alpha_k^(n) = (-1)^(k+1) q^(-k(n-k)) sum_(i<k) (-1)^i binom(k, i)_q q^(i(n-k)) alpha_i^(n)
    """
    if n_max < 0:
        raise DomainError("triangle size must be nonnegative")
    numbers = q_numbers(field.r)
    rows = []
    for n in range(n_max + 1):
        row = [FIELD.one]
        for k in range(1, n + 1):
            acc = FIELD.zero
            for i in range(k):
                sign = 1 if i % 2 == 0 else -1
                acc += sign * numbers.binomial(k, i) * field.q_power(i * (n - k)) * row[i]
            sign = 1 if (k + 1) % 2 == 0 else -1
            row.append(sign * field.q_power(-k * (n - k)) * acc)
        rows.append(row)
    return AlphaTriangle(rows, field)
