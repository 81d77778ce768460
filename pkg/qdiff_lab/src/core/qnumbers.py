"""
q-integers, q-factorials and q-binomial coefficients.

QNumbers caches values for one base Q = qt^step. Caches are append-only;
writes are serialized with a lock so instances can be shared between threads.
"""

import threading
from functools import lru_cache
from typing import Dict, List, Tuple

from sympy.polys.fields import FracElement

from core.exceptions import DomainError
from core.scalar_field import FIELD, ScalarField, qt_power


class QNumbers:
    """
    Cache of [n]_Q, [n]_Q!, binom(n, k)_Q and Q^(n(n-1)/2) for Q = qt^step.

    Args:
        step: Exponent e with Q = qt^e (e = r for q, e = -r for p = 1/q)
    """

    def __init__(self, step: int):
        if step == 0:
            raise DomainError("q-numbers need a base different from 1")
        self.step = step
        self._integers: List[FracElement] = [FIELD.zero]
        self._factorials: List[FracElement] = [FIELD.one]
        self._binomials: Dict[Tuple[int, int], FracElement] = {}
        self._lock = threading.Lock()

    @property
    def base(self) -> FracElement:
        """The base Q."""
        return qt_power(self.step)

    def integer(self, n: int) -> FracElement:
        """[n]_Q = (Q^n - 1)/(Q - 1), any integer n."""
        if n < 0:
            return (qt_power(self.step * n) - 1) / (self.base - 1)
        if n >= len(self._integers):
            with self._lock:
                while len(self._integers) <= n:
                    k = len(self._integers)
                    self._integers.append(self._integers[k - 1] + qt_power(self.step * (k - 1)))
        return self._integers[n]

    def factorial(self, n: int) -> FracElement:
        """[n]_Q! = [n]_Q [n-1]_Q!, [0]_Q! = 1."""
        if n < 0:
            raise DomainError(f"q-factorial of a negative integer {n}")
        if n >= len(self._factorials):
            self.integer(n)
            with self._lock:
                while len(self._factorials) <= n:
                    k = len(self._factorials)
                    self._factorials.append(self._factorials[k - 1] * self._integers[k])
        return self._factorials[n]

    def binomial(self, n: int, k: int) -> FracElement:
        """binom(n, k)_Q through the q-Pascal rule."""
        if n < 0 or k < 0 or k > n:
            raise DomainError(f"q-binomial needs 0 <= k <= n, got n={n}, k={k}")
        if k == 0 or k == n:
            return FIELD.one
        key = (n, k)
        cached = self._binomials.get(key)
        if cached is not None:
            return cached
        # binom(n,k) = binom(n-1,k-1) + Q^k binom(n-1,k), filled row by row
        for m in range(2, n + 1):
            for j in range(1, min(m, k + 1)):
                if (m, j) in self._binomials:
                    continue
                left = FIELD.one if j - 1 == 0 else self._binomials[(m - 1, j - 1)]
                right = FIELD.one if j == m - 1 else self._binomials[(m - 1, j)]
                value = left + qt_power(self.step * j) * right
                with self._lock:
                    self._binomials.setdefault((m, j), value)
        return self._binomials[key]

    def triangular(self, n: int) -> FracElement:
        """Q^(n(n-1)/2)."""
        return qt_power(self.step * (n * (n - 1) // 2))


@lru_cache(maxsize=None)
def q_numbers(step: int) -> QNumbers:
    """Shared QNumbers instance for the base qt^step."""
    return QNumbers(step)


def q_quantities(n: int, k: int, field: ScalarField = ScalarField()) -> Tuple[FracElement, FracElement, FracElement]:
    """
    The triple ([n]_q, [n]_q!, binom(n, k)_q) over the given field.

    Raises:
        DomainError: If k > n or either argument is negative
    """
    if n < 0 or k < 0 or k > n:
        raise DomainError(f"q_quantities needs 0 <= k <= n, got n={n}, k={k}")
    numbers = q_numbers(field.r)
    return numbers.integer(n), numbers.factorial(n), numbers.binomial(n, k)
