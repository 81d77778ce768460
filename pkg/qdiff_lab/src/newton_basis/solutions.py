"""
Local solution bases at a point xi != 0 and their Casorati determinants.

Writing y = sum c_n T_n(x, xi), the coefficient of T_n in L(y) involves
c_0..c_(n+nu) and the last one through a_nu(xi Q^n) times a nonzero
q-integer factor. When a_nu does not vanish on the nodes xi Q^n the
values c_0..c_(nu-1) are free and the rest follow by recursion.
"""

from dataclasses import dataclass
from itertools import permutations
from typing import List, Optional

from sympy.combinatorics import Permutation

from core import console
from core.exceptions import DomainError, HypothesisViolationError, TruncationUnderflowError
from core.scalar_field import FIELD, evaluate_x
from newton_basis.action import act
from newton_basis.newton_series import NewtonSeries
from operators.conversion import to_sigma
from operators.parser import format_function
from operators.skew_operator import DQ, SkewOperator
from polygons.newton_polygon import polygon, slope_label

POSITIVE = "positive"
NEGATIVE = "negative"


def _polynomial(op: SkewOperator) -> SkewOperator:
    return op if op.is_polynomial() else op.cleared()


def check_slopes(op: SkewOperator, excluded: Optional[str]) -> None:
    """
    Reject operators whose d_q-polygon has a finite slope of the excluded sign.

    Raises:
        HypothesisViolationError: Naming the first offending slope
    """
    if excluded is None:
        return
    if excluded not in (POSITIVE, NEGATIVE):
        raise DomainError(f"excluded slope sign must be '{POSITIVE}' or '{NEGATIVE}', got {excluded!r}")
    slopes = sorted(polygon(op, DQ).finite_slopes())
    bad = [s for s in slopes if (s > 0 if excluded == POSITIVE else s < 0)]
    if bad:
        raise HypothesisViolationError(
            f"d_q-polygon has a {excluded} slope", slope=slope_label(bad[0])
        )


def check_leading_coefficient(op: SkewOperator, xi, nodes: int) -> None:
    """
    Check that a_nu does not vanish at xi Q^n for n < nodes.

    Raises:
        HypothesisViolationError: Naming the first node where it vanishes
    """
    probe = NewtonSeries(xi, (), op.field, op.step)
    for n in range(nodes):
        point = probe.node(n)
        if not evaluate_x(op.leading, point):
            raise HypothesisViolationError(
                f"leading coefficient vanishes at xi*q^{n}", point=format_function(point, op.field)
            )


def local_solution_basis(op: SkewOperator, xi, order: int, excluded: Optional[str] = None) -> List[NewtonSeries]:
    """
    Truncated basis of solutions of L in K[[x - xi]]_Q.

    Solution j starts with c_k = delta_jk for k < nu; every solution is known
    to `order` terms and L(y) vanishes modulo T_(order - nu).

    Args:
        op: Operator of order nu >= 1 (coefficients are cleared to polynomials)
        xi: Nonzero base point
        order: Number of Newton terms T (>= nu)
        excluded: Finite slope sign of the d_q-polygon to reject, if any

    Raises:
        HypothesisViolationError: Offending slope, or a_nu vanishing at some xi Q^n
        TruncationUnderflowError: If order < nu
        DomainError: If the truncated Casorati determinant vanishes
    """
    op = _polynomial(op)
    nu = op.order
    if nu < 1:
        raise DomainError("local solutions need an operator of order >= 1")
    if order < nu:
        raise TruncationUnderflowError("too few Newton terms for the operator order", requested=nu, available=order)
    check_slopes(op, excluded)
    check_leading_coefficient(op, xi, order - nu)

    pivots = []
    for n in range(order - nu):
        unit = NewtonSeries.basis_element(n + nu, xi, n + nu + 1, op.field, op.step)
        pivots.append(act(op, unit)[n])
        if not pivots[-1]:
            raise HypothesisViolationError(f"recursion pivot vanishes at n={n}", point=n)

    solutions = []
    for j in range(nu):
        coeffs = [FIELD.one if k == j else FIELD.zero for k in range(nu)]
        for n in range(order - nu):
            trial = NewtonSeries(xi, tuple(coeffs) + (FIELD.zero,), op.field, op.step)
            coeffs.append(-act(op, trial)[n] / pivots[n])
        solutions.append(NewtonSeries(xi, tuple(coeffs), op.field, op.step))
        console.info(f"  solution {j + 1}/{nu} at xi = {format_function(solutions[-1].xi, op.field)}")

    if casoratian(op, solutions).determinant.is_zero():
        raise DomainError("truncated Casorati determinant vanishes")
    return solutions


@dataclass
class CasoratiReport:
    """
    Casorati determinant C = det(sigma^i y_j) with its functional equation.

    Attributes:
        determinant: C known modulo T_(order - nu + 1)
        residual: a_nu sigma C - (-1)^nu a_0 C, known one term less
    """
    determinant: NewtonSeries
    residual: NewtonSeries

    @property
    def holds(self) -> bool:
        """True if sigma C = (-1)^nu (a_0/a_nu) C at the known truncation."""
        return self.residual.is_zero()

    @property
    def leading(self):
        """First nonzero Newton coefficient of C, or None."""
        v = self.determinant.valuation()
        return None if v is None else self.determinant[v]

    def to_dict(self, field=None) -> dict:
        """Plain data for reports."""
        field = field or self.determinant.field
        return {
            "determinant": [format_function(c, field) for c in self.determinant.coeffs],
            "valuation": self.determinant.valuation(),
            "functional_equation_holds": self.holds,
            "known_terms": self.residual.order,
        }


def casoratian(op: SkewOperator, solutions: List[NewtonSeries]) -> CasoratiReport:
    """
    Casorati determinant of nu solutions and the check of
    sigma_Q C = (-1)^nu a_0/a_nu C.

    Raises:
        DomainError: If the number of solutions is not the order of L
    """
    sigma_op = _polynomial(to_sigma(op))
    nu = sigma_op.order
    if nu < 1 or len(solutions) != nu:
        raise DomainError(f"Casorati matrix needs {nu} solutions, got {len(solutions)}")
    first = solutions[0]
    for s in solutions[1:]:
        first.compatible(s)

    known = min(s.order for s in solutions) - (nu - 1)
    if known < 1:
        raise TruncationUnderflowError("solutions too short for the Casorati matrix",
                                       requested=nu, available=known + nu - 1)
    rows = []
    shifted = list(solutions)
    for i in range(nu):
        rows.append([s.truncate(known) for s in shifted])
        shifted = [s.sigma() for s in shifted]

    det = first.like([FIELD.zero] * known)
    for p in permutations(range(nu)):
        perm = Permutation(list(p))
        term = None
        for i, j in enumerate(perm.array_form):
            term = rows[i][j] if term is None else term * rows[i][j]
        det = det + term.scale(perm.signature())

    sign = -1 if nu % 2 else 1
    lhs = det.sigma().mul_polynomial(sigma_op.leading)
    rhs = det.truncate(known - 1).mul_polynomial(sigma_op.coefficient(0)).scale(sign)
    return CasoratiReport(det, lhs - rhs)
