"""
Matrix q-difference systems Y(qx) = A_1(x) Y(x).
"""

from dataclasses import dataclass

from core.exceptions import DomainError
from core.matrix import RationalMatrix
from core.scalar_field import FIELD, ScalarField
from operators.conversion import to_sigma
from operators.parser import format_function
from operators.skew_operator import SkewOperator


@dataclass(frozen=True)
class QSystem:
    """
    A q-difference system sigma_q Y = A_1 Y.

    Args:
        a1: Invertible square matrix A_1(x)
        field: Scalar field; sigma_q is x -> qt^r x
    """
    a1: RationalMatrix
    field: ScalarField = ScalarField()

    def __post_init__(self):
        rows, cols = self.a1.shape
        if rows != cols:
            raise DomainError(f"system matrix must be square, got {rows}x{cols}")
        if not self.a1.det():
            raise DomainError("system matrix is not invertible")

    @classmethod
    def from_lists(cls, rows, field: ScalarField = ScalarField()) -> "QSystem":
        """Build from nested lists of field elements or numbers."""
        return cls(RationalMatrix.from_lists(rows), field)

    @property
    def dimension(self) -> int:
        """nu."""
        return self.a1.shape[0]

    def to_dict(self) -> dict:
        """Plain data for reports."""
        return {
            "dimension": self.dimension,
            "field": str(self.field),
            "A1": [[format_function(e, self.field) for e in row] for row in self.a1.rows],
        }


def companion(op: SkewOperator) -> QSystem:
    """
    Companion system of L = sum a_i sigma^i acting on (y, sigma y, ..., sigma^(nu-1) y).

    Raises:
        DomainError: If L has order 0 or a_0 = 0
    """
    op = to_sigma(op)
    nu = op.order
    if nu < 1:
        raise DomainError("companion system needs an operator of order >= 1")
    lead = op.leading
    rows = []
    for i in range(nu - 1):
        rows.append([FIELD.one if j == i + 1 else FIELD.zero for j in range(nu)])
    rows.append([-op.coefficient(j) / lead for j in range(nu)])
    return QSystem(RationalMatrix.from_lists(rows), op.field)
