"""
Shared data of a Hermite-Pade construction.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy import Rational, floor
from sympy.polys.fields import FracElement

from core.exceptions import DomainError
from core.matrix import RationalMatrix
from core.scalar_field import FIELD, RING, frac, is_x_polynomial, sigma_shift, x_degree
from core.series import SeriesPrefix
from systems.q_system import QSystem


def band_width(degree_budget: int, tau: Rational, nu: int) -> int:
    """floor(N (1 - tau) / nu)."""
    return int(floor(degree_budget * (1 - Rational(tau)) / nu))


def check_parameters(degree_budget: int, tau) -> Rational:
    """
    Raises:
        DomainError: If N < 1 or tau is not in (0, 1)
    """
    tau = Rational(tau)
    if degree_budget < 1:
        raise DomainError(f"degree budget must be positive, got {degree_budget}")
    if not 0 < tau < 1:
        raise DomainError(f"tau must lie in (0, 1), got {tau}")
    return tau


def matrix_degree(matrix: RationalMatrix) -> int:
    """Largest x-degree of the nonzero entries (0 for the zero matrix)."""
    degrees = [x_degree(e) for e in matrix.entries() if e]
    return max(degrees) if degrees else 0


def clearing_polynomial(matrix: RationalMatrix) -> FracElement:
    """The lcm of the entry denominators."""
    lcm = RING.one
    for e in matrix.entries():
        if e:
            lcm = lcm.lcm(e.denom)
    return frac(lcm)


@dataclass
class ApproxContext:
    """
    A system sigma_q Y = A_1 Y, a prefix of a solution vector and the
    parameters N and tau.

    Args:
        system: The system
        prefixes: One SeriesPrefix per component of the solution vector
        degree_budget: N
        tau: Rational in (0, 1)
        q1: Polynomial with Q_1 A_1^(-1) polynomial (default: lcm of the
            denominators of A_1^(-1))

    Raises:
        DomainError: On a dimension mismatch, bad parameters or a Q_1 that
            does not clear A_1^(-1)
    """
    system: QSystem
    prefixes: Tuple[SeriesPrefix, ...]
    degree_budget: int
    tau: Rational
    q1: Optional[FracElement] = None

    def __post_init__(self):
        self.prefixes = tuple(self.prefixes)
        self.tau = check_parameters(self.degree_budget, self.tau)
        if len(self.prefixes) != self.system.dimension:
            raise DomainError(
                f"solution vector has {len(self.prefixes)} components, system has dimension {self.system.dimension}"
            )
        self.a1_inverse = self.system.a1.inverse()
        if self.q1 is None:
            self.q1 = clearing_polynomial(self.a1_inverse)
        if not self.q1 or not is_x_polynomial(self.q1):
            raise DomainError("Q_1 must be a nonzero polynomial")
        cleared = self.a1_inverse * self.q1
        if not all(is_x_polynomial(e) for e in cleared.entries()):
            raise DomainError("Q_1 A_1^(-1) is not polynomial")
        self.t = max(matrix_degree(cleared), x_degree(self.q1))
        self._q_products: List[FracElement] = [FIELD.one, self.q1]

    @property
    def nu(self) -> int:
        return self.system.dimension

    @property
    def band(self) -> int:
        """floor(N (1 - tau) / nu)."""
        return band_width(self.degree_budget, self.tau, self.nu)

    @property
    def order_target(self) -> int:
        """1 + N + floor(N (1 - tau) / nu)."""
        return 1 + self.degree_budget + self.band

    @property
    def budget(self) -> Optional[int]:
        """Largest n <= (N / t)(1 - tau)/nu, or None when t = 0 (no limit)."""
        if self.t == 0:
            return None
        return int(floor(Rational(self.degree_budget, self.t) * (1 - self.tau) / self.nu))

    def q_product(self, n: int) -> FracElement:
        """Q_n(x) = Q_1(x) Q_(n-1)(qx), Q_0 = 1."""
        r = self.system.field.r
        while len(self._q_products) <= n:
            self._q_products.append(self.q1 * sigma_shift(self._q_products[-1], r))
        return self._q_products[n]

    def known_terms(self) -> int:
        """Shortest prefix length among the components."""
        return min(p.order for p in self.prefixes)


def as_prefixes(values: Sequence) -> Tuple[SeriesPrefix, ...]:
    """Accept SeriesPrefix objects or lists of coefficients."""
    return tuple(v if isinstance(v, SeriesPrefix) else SeriesPrefix.from_values(v) for v in values)
