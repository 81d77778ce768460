"""
Remainder vectors R_n = Lambda^n(P)/[n]_q! of a q-difference system.

Lambda = A_1^(-1) o (d_q - G_1) satisfies Lambda^n = Y o d_q^n o Y^(-1) for a
fundamental solution Y, so R_n is computed two ways:

    recursion:  R_(n+1) = Lambda(R_n) / [n+1]_q
    closed form: x^n R_n = (-1)^n / ([n]_q! (q-1)^n) sum_i c_{i,n} A_i^(-1) sigma_q^i(P)

with the scalars c_{i,n} of d_q^n = (-1)^n/((q-1)^n x^n) sum_i c_{i,n} sigma_q^i.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from sympy.polys.fields import FracElement

from approx.context import ApproxContext, clearing_polynomial, matrix_degree
from approx.hermite_pade import truncated_product
from core import console
from core.exceptions import DomainError
from core.matrix import RationalMatrix
from core.qnumbers import q_numbers
from core.scalar_field import FIELD, X, inverse, is_x_polynomial, sigma_shift
from core.series import SeriesPrefix
from operators.conversion import dq_power_expansion
from operators.parser import format_function
from operators.skew_operator import dq_function
from systems.q_system import QSystem


class LambdaOperator:
    """
    Lambda = A_1^(-1) o (d_q - G_1) acting on column vectors.

    Args:
        system: The system sigma_q Y = A_1 Y
    """

    def __init__(self, system: QSystem):
        self.system = system
        self.step = system.field.r
        identity = RationalMatrix.identity(system.dimension)
        self.a1_inverse = system.a1.inverse()
        self.g1 = (system.a1 - identity) * inverse((system.field.q - 1) * X)

    def __call__(self, vector: RationalMatrix) -> RationalMatrix:
        return self.a1_inverse * (vector.dq(self.step) - self.g1 * vector)

    def inverse_iterates(self, n: int) -> List[RationalMatrix]:
        """A_0^(-1), ..., A_n^(-1) with A_i^(-1) = A_1^(-1)(x) A_(i-1)^(-1)(qx)."""
        out = [RationalMatrix.identity(self.system.dimension)]
        for _ in range(n):
            out.append(self.a1_inverse * out[-1].sigma(self.step))
        return out


@dataclass
class RemainderTable:
    """
    R_0..R_k for a polynomial vector P, with the closed-form cross-check.

    Attributes:
        system: The system
        p: P as a column vector
        remainders: R_0..R_k (column vectors)
        scaled: x^n Q_n R_n from the recursion
        closed_form: x^n Q_n R_n from the c_{i,n} formula
        degree_bound: deg P (N when P = (g y)_(<=N))
        t: max(deg Q_1 A_1^(-1), deg Q_1)
    """
    system: QSystem
    p: RationalMatrix
    remainders: List[RationalMatrix]
    scaled: List[RationalMatrix]
    closed_form: List[RationalMatrix]
    degree_bound: int
    t: int

    @property
    def horizon(self) -> int:
        """Largest n with R_n in the table."""
        return len(self.remainders) - 1

    def remainder(self, n: int) -> RationalMatrix:
        if not 0 <= n <= self.horizon:
            raise DomainError(f"R_{n} is outside the table (horizon {self.horizon})")
        return self.remainders[n]

    def r_block(self, n: int) -> RationalMatrix:
        """R^<n> = (binom(n+j, n)_q R_(n+j))_(j < nu)."""
        nu = self.system.dimension
        if n + nu - 1 > self.horizon:
            raise DomainError(f"R^<{n}> needs R up to {n + nu - 1}, table stops at {self.horizon}")
        numbers = q_numbers(self.system.field.r)
        return RationalMatrix.from_columns([
            self.remainders[n + j] * numbers.binomial(n + j, n) for j in range(nu)
        ])

    @property
    def paths_agree(self) -> bool:
        """Recursion and closed form give the same x^n Q_n R_n for every n."""
        return all(a == b for a, b in zip(self.scaled, self.closed_form))

    def degree_violations(self) -> List[int]:
        """Indices n where x^n Q_n R_n is not polynomial or exceeds N + n t."""
        bad = []
        for n, vector in enumerate(self.scaled):
            if not all(is_x_polynomial(e) for e in vector.entries()):
                bad.append(n)
            elif matrix_degree(vector) > self.degree_bound + n * self.t:
                bad.append(n)
        return bad

    def to_dict(self) -> Dict[str, Any]:
        field = self.system.field
        return {
            "P": [format_function(e, field) for e in self.p.entries()],
            "scaled_remainders": [[format_function(e, field) for e in v.entries()] for v in self.scaled],
            "paths_agree": self.paths_agree,
            "degree_violations": self.degree_violations(),
            "degree_bound": self.degree_bound,
            "t": self.t,
        }


def remainder_table(system: QSystem, p: List[FracElement], horizon: int,
                    q1: Optional[FracElement] = None, degree_bound: Optional[int] = None) -> RemainderTable:
    """
    R_0..R_horizon for a polynomial vector P.

    Args:
        system: The system
        p: Polynomial entries P_0..P_(nu-1)
        horizon: Largest n
        q1: Clearing polynomial of A_1^(-1) (default: lcm of its denominators)
        degree_bound: N (defaults to deg P)
    """
    if len(p) != system.dimension:
        raise DomainError(f"P has {len(p)} entries, system has dimension {system.dimension}")
    if horizon < 0:
        raise DomainError("remainder horizon must be nonnegative")
    column = RationalMatrix.column(p)
    if not all(is_x_polynomial(e) for e in column.entries()):
        raise DomainError("P must have polynomial entries")

    lam = LambdaOperator(system)
    step = system.field.r
    numbers = q_numbers(step)
    q1 = clearing_polynomial(lam.a1_inverse) if q1 is None else q1
    t = max(matrix_degree(lam.a1_inverse * q1), matrix_degree(RationalMatrix.column([q1])))
    degree_bound = matrix_degree(column) if degree_bound is None else degree_bound

    remainders = [column]
    for n in range(horizon):
        remainders.append(lam(remainders[-1]) * inverse(numbers.integer(n + 1)))
        console.info(f"  R_{n + 1}")

    inverses = lam.inverse_iterates(horizon)
    shifted = [column]
    for _ in range(horizon):
        shifted.append(shifted[-1].sigma(step))

    scaled, closed = [], []
    q_n = FIELD.one
    for n in range(horizon + 1):
        if n:
            q_n = q1 * sigma_shift(q_n, step)
        scaled.append(remainders[n] * (X ** n * q_n))
        expansion = dq_power_expansion(n, step)
        total = RationalMatrix.zeros(system.dimension, 1)
        for i, c in enumerate(expansion.c):
            if c:
                total = total + (inverses[i] * shifted[i]) * c
        sign = 1 if n % 2 == 0 else -1
        scale = sign * q_n / (numbers.factorial(n) * (system.field.q - 1) ** n)
        closed.append(total * scale)
    return RemainderTable(system, column, remainders, scaled, closed, degree_bound, t)


def remainders(ctx: ApproxContext, g: FracElement, horizon: int) -> RemainderTable:
    """The table for P = (g y)_(<=N) of a Hermite-Pade context."""
    p = [truncated_product(g, prefix, ctx.degree_budget) for prefix in ctx.prefixes]
    return remainder_table(ctx.system, p, horizon, ctx.q1, ctx.degree_budget)


@dataclass
class TruncationCheck:
    """
    Comparison of x^n Q_n (d_q^n g/[n]_q!) y with x^n Q_n R_n.

    Attributes:
        n: Index
        identity_holds: Coefficients up to N + n t agree
        order: Order at 0 of the difference (None if it vanishes to `known` terms)
        known: Number of known terms of the difference
        target: 1 + N + floor(N (1 - tau)/nu)
    """
    n: int
    identity_holds: bool
    order: Optional[int]
    known: int
    target: int

    @property
    def order_holds(self) -> bool:
        if self.order is None:
            return self.known >= self.target
        return self.order >= self.target

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.n,
            "truncation_identity": self.identity_holds,
            "order": self.order if self.order is not None else f">={self.known}",
            "target": self.target,
            "order_bound_holds": self.order_holds,
        }


def truncation_check(ctx: ApproxContext, g: FracElement, table: RemainderTable, n: int) -> TruncationCheck:
    """
    Check (x^n Q_n d_q^n g/[n]_q! y)_(<=N+nt) = x^n Q_n R_n and the order of
    their difference, for n within the budget (N/t)(1 - tau)/nu.

    Raises:
        DomainError: If n exceeds the budget or the table
    """
    budget = ctx.budget
    if budget is not None and n > budget:
        raise DomainError(f"n = {n} exceeds the truncation budget {budget}")
    if n > table.horizon:
        raise DomainError(f"R_{n} is outside the table (horizon {table.horizon})")
    step = ctx.system.field.r
    numbers = q_numbers(step)
    derivative = g
    for _ in range(n):
        derivative = dq_function(derivative, step)
    weight = X ** n * ctx.q_product(n) * derivative / numbers.factorial(n)

    known = ctx.known_terms()
    limit = min(ctx.degree_budget + n * ctx.t, known - 1)
    identity, order = True, None
    for i, prefix in enumerate(ctx.prefixes):
        product = prefix.truncate(known).mul_rational(weight)
        remainder = SeriesPrefix.from_rational(table.scaled[n].entry(i, 0), known)
        difference = product - remainder
        if any(difference[k] for k in range(limit + 1)):
            identity = False
        v = difference.valuation()
        if v is not None:
            order = v if order is None else min(order, v)
    return TruncationCheck(n, identity, order, known, ctx.order_target)
