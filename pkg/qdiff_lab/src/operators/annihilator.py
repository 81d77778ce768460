"""
Bounded search for a q-difference operator annihilating a power series.

Operators L = sum_{i<=nu, j<=D} a_ij x^j sigma^i are tried box by box in
lexicographic (nu, D) order. A box gives a linear system over K in the a_ij:
the first (nu+1)(D+1) + guard coefficients of L(y) must vanish. A rank
computation at a rational value of q certifies boxes without solutions
cheaply; the others are solved exactly and the candidate is checked on
further coefficients.
"""

from dataclasses import dataclass, field as dataclass_field
from typing import Callable, List, Optional, Union

from sympy import Rational
from sympy.polys.fields import FracElement

from core import console
from core.linalg import nullspace, specialized_rank
from core.scalar_field import FIELD, X, ScalarField, qt_power
from core.series import SeriesPrefix
from operators.action import annihilates
from operators.skew_operator import SIGMA, SkewOperator

CoefficientSource = Union[Callable[[int], FracElement], SeriesPrefix]


@dataclass
class SearchAttempt:
    """One (order, degree) box of the search."""
    order: int
    degree: int
    unknowns: int
    equations: int
    method: str
    found: bool


@dataclass
class AnnihilatorSearch:
    """
    Search state and log.

    Args:
        source: Coefficient generator n -> y_n, or a SeriesPrefix
        field: Scalar field of the coefficients
        max_order: Largest order nu tried
        max_degree: Largest x-degree D of the coefficients tried
        guard: Extra equations beyond the number of unknowns
        point: Rational value of q used for the rank certificate
    """
    source: CoefficientSource
    field: ScalarField = ScalarField()
    max_order: int = 2
    max_degree: int = 6
    guard: int = 8
    point: Rational = Rational(7, 3)
    attempts: List[SearchAttempt] = dataclass_field(default_factory=list)

    def __post_init__(self):
        self._cache: List[FracElement] = []

    def coefficient(self, n: int) -> FracElement:
        """y_n, pulled from the source on demand."""
        if isinstance(self.source, SeriesPrefix):
            return self.source[n]
        while len(self._cache) <= n:
            self._cache.append(self.source(len(self._cache)))
        return self._cache[n]

    def prefix(self, order: int) -> SeriesPrefix:
        """y modulo x^order."""
        return SeriesPrefix(tuple(self.coefficient(n) for n in range(order)), self.field)

    def _system(self, order: int, degree: int) -> List[List[FracElement]]:
        step = self.field.r
        unknowns = (order + 1) * (degree + 1)
        rows = []
        for n in range(unknowns + self.guard):
            row = []
            for i in range(order + 1):
                for j in range(degree + 1):
                    # coefficient of x^n in x^j y(q^i x)
                    if n < j:
                        row.append(FIELD.zero)
                    else:
                        row.append(qt_power(step * i * (n - j)) * self.coefficient(n - j))
            rows.append(row)
        return rows

    def _operator(self, order: int, degree: int, vector: List[FracElement]) -> SkewOperator:
        coeffs = []
        for i in range(order + 1):
            a = FIELD.zero
            for j in range(degree + 1):
                a += vector[i * (degree + 1) + j] * X ** j
            coeffs.append(a)
        return SkewOperator(SIGMA, tuple(coeffs), self.field).normalized()

    def try_box(self, order: int, degree: int) -> Optional[SkewOperator]:
        """Look for an annihilator of exactly this order and degree bound."""
        matrix = self._system(order, degree)
        unknowns = len(matrix[0])
        # full column rank at one point means full rank over K
        if specialized_rank(matrix, self.point) == unknowns:
            self.attempts.append(SearchAttempt(order, degree, unknowns, len(matrix), "specialized", False))
            return None
        for vector in nullspace(matrix):
            candidate = self._operator(order, degree, vector)
            if candidate.order < order:
                continue
            check = len(matrix) + 2 * self.guard
            if annihilates(candidate, self.prefix(check)):
                self.attempts.append(SearchAttempt(order, degree, unknowns, len(matrix), "exact", True))
                return candidate
            console.info(f"  candidate in box ({order}, {degree}) failed on {check} coefficients")
        self.attempts.append(SearchAttempt(order, degree, unknowns, len(matrix), "exact", False))
        return None

    def run(self) -> Optional[SkewOperator]:
        """
        Lowest (order, degree) annihilator within the bounds.

        Returns:
            Normalized sigma-operator, or None if the box holds none
        """
        console.banner("ANNIHILATOR SEARCH")
        if self.prefix(2 * self.guard + 2).is_zero():
            return SkewOperator.scalar(1, SIGMA, self.field)
        for order in range(1, self.max_order + 1):
            for degree in range(self.max_degree + 1):
                console.info(f"  trying order {order}, degree {degree}")
                found = self.try_box(order, degree)
                if found is not None:
                    console.info(f"  found order {order}, degree {degree}")
                    return found
        return None


def annihilator_search(
    source: CoefficientSource,
    max_order: int = 2,
    max_degree: int = 6,
    guard: int = 8,
    field: ScalarField = ScalarField(),
    point: Rational = Rational(7, 3)
) -> Optional[SkewOperator]:
    """
    Lowest (order, degree) sigma-operator killing the series, or None.

    Args:
        source: Coefficient generator n -> y_n, or a SeriesPrefix long enough
            for (max_order+1)(max_degree+1) + 3 * guard coefficients
        max_order: Largest order tried
        max_degree: Largest x-degree of the coefficients tried
        guard: Extra equations per box (the candidate is then checked on
            2 * guard more coefficients)
        field: Scalar field of the coefficients
        point: Rational value of q for the rank certificate
    """
    return AnnihilatorSearch(source, field, max_order, max_degree, guard, point).run()
