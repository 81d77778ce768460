"""
Exact linear algebra over Q(x, qt).

Rows are cleared of denominators and handed to sympy's DomainMatrix over the
polynomial ring Q[x, qt], whose elimination is fraction-free.
"""

from typing import List, Optional, Sequence, Tuple

from sympy import QQ, Rational
from sympy.polys.fields import FracElement
from sympy.polys.matrices import DomainMatrix

from core.exceptions import DomainError, NoSolutionError
from core.scalar_field import FIELD, RING, as_polynomial, frac

POLY_DOMAIN = RING.to_domain()
FIELD_DOMAIN = FIELD.to_domain()

Matrix = Sequence[Sequence[FracElement]]


def _shape(matrix: Matrix) -> Tuple[int, int]:
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    if any(len(row) != cols for row in matrix):
        raise DomainError("ragged matrix")
    return rows, cols


def clear_row(row: Sequence[FracElement]):
    """
    Multiply a row by the lcm of its denominators.

    Returns:
        (polynomial row in RING, the multiplier as a RING element)
    """
    lcm = RING.one
    for entry in row:
        if entry:
            lcm = lcm.lcm(entry.denom)
    return [as_polynomial(entry * frac(lcm)) if entry else RING.zero for entry in row], lcm


def polynomial_matrix(matrix: Matrix) -> Tuple[DomainMatrix, List]:
    """Row-cleared DomainMatrix over Q[x, qt] and the row multipliers."""
    rows, cols = _shape(matrix)
    cleared, multipliers = [], []
    for row in matrix:
        poly_row, mult = clear_row(row)
        cleared.append(poly_row)
        multipliers.append(mult)
    return DomainMatrix(cleared, (rows, cols), POLY_DOMAIN), multipliers


def linear_solve(matrix: Matrix, rhs: Sequence[FracElement]) -> List[FracElement]:
    """
    Solve M v = b exactly.

    Args:
        matrix: m x n matrix of field elements
        rhs: Vector of length m

    Returns:
        One solution (free variables set to 0)

    Raises:
        NoSolutionError: If the system is inconsistent
    """
    rows, cols = _shape(matrix)
    if len(rhs) != rows:
        raise DomainError(f"dimension mismatch: {rows} rows, right-hand side of length {len(rhs)}")
    augmented = [list(row) + [b] for row, b in zip(matrix, rhs)]
    dm, _ = polynomial_matrix(augmented)
    reduced, _, pivots = dm.rref_den()
    if cols in pivots:
        raise NoSolutionError("no solution: the system is inconsistent")
    table = reduced.to_list()
    solution = [FIELD.zero] * cols
    for i, j in enumerate(pivots):
        solution[j] = frac(table[i][cols], table[i][j])
    return solution


def nullspace(matrix: Matrix) -> List[List[FracElement]]:
    """
    Basis of {v : M v = 0}, each vector primitive with polynomial entries.

    Args:
        matrix: m x n matrix of field elements

    Returns:
        List of basis vectors (possibly empty)
    """
    rows, cols = _shape(matrix)
    if rows == 0:
        return [[FIELD.one if i == j else FIELD.zero for i in range(cols)] for j in range(cols)]
    dm, _ = polynomial_matrix(matrix)
    basis = dm.nullspace()
    if basis.shape[0] == 0:
        return []
    vectors = []
    for row in basis.to_list():
        if not any(row):
            continue
        vec = DomainMatrix([row], (1, cols), POLY_DOMAIN)
        _, prim = vec.primitive()
        vectors.append([frac(c) for c in prim.to_list()[0]])
    return vectors


def determinant(matrix: Matrix) -> FracElement:
    """Exact determinant of a square matrix."""
    rows, cols = _shape(matrix)
    if rows != cols:
        raise DomainError("determinant of a non-square matrix")
    if rows == 0:
        return FIELD.one
    dm, multipliers = polynomial_matrix(matrix)
    den = RING.one
    for m in multipliers:
        den *= m
    return frac(dm.det(), den)


def rank(matrix: Matrix) -> int:
    """Exact rank."""
    rows, cols = _shape(matrix)
    if rows == 0 or cols == 0:
        return 0
    dm, _ = polynomial_matrix(matrix)
    return dm.rank()


def matrix_inverse(matrix: Matrix) -> List[List[FracElement]]:
    """Inverse of a square matrix over Q(x, qt)."""
    rows, cols = _shape(matrix)
    if rows != cols:
        raise DomainError("inverse of a non-square matrix")
    if not determinant(matrix):
        raise DomainError("matrix is singular")
    dm = DomainMatrix([list(row) for row in matrix], (rows, cols), FIELD_DOMAIN)
    return [[FIELD(c) for c in row] for row in dm.inv().to_list()]


def _specialize_poly(poly, value: Rational):
    """Evaluate an x-free RING element at qt = value, in QQ."""
    a = QQ(int(value.p), int(value.q))
    total = QQ(0)
    for (i, j), c in poly.iterterms():
        if i:
            raise DomainError("specialization expects x-free entries")
        total += c * a ** j
    return total


def specialized_rank(matrix: Matrix, value: Rational) -> Optional[int]:
    """
    Rank over Q after substituting qt = value into x-free entries.

    The specialized rank never exceeds the generic rank, so full column rank
    here certifies full column rank over Q(qt).

    Returns:
        The rank, or None if a denominator vanishes at the point
    """
    rows, cols = _shape(matrix)
    if rows == 0 or cols == 0:
        return 0
    values = []
    for row in matrix:
        out = []
        for entry in row:
            if not entry:
                out.append(QQ(0))
                continue
            den = _specialize_poly(entry.denom, value)
            if not den:
                return None
            out.append(_specialize_poly(entry.numer, value) / den)
        values.append(out)
    return DomainMatrix(values, (rows, cols), QQ).rank()
