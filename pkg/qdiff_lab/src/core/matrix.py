"""
Immutable matrices of rational functions in x over Q(qt).
"""

from dataclasses import dataclass
from typing import Callable, Iterable, List, Sequence, Tuple

from sympy.polys.fields import FracElement

from core.exceptions import DomainError
from core.linalg import determinant, matrix_inverse
from core.scalar_field import FIELD, X, constant, inverse, qt_power, sigma_shift


@dataclass(frozen=True)
class RationalMatrix:
    """
    Matrix with entries in Q(x, qt).

    Args:
        rows: Tuple of rows, each a tuple of field elements
    """
    rows: Tuple[Tuple[FracElement, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(constant(e) for e in row) for row in self.rows)
        if not rows or any(len(row) != len(rows[0]) for row in rows):
            raise DomainError("matrix rows must be nonempty and of equal length")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_lists(cls, rows: Iterable[Iterable]) -> "RationalMatrix":
        """Build from nested lists of field elements or numbers."""
        return cls(tuple(tuple(row) for row in rows))

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        """n x n identity."""
        return cls(tuple(tuple(FIELD.one if i == j else FIELD.zero for j in range(n)) for i in range(n)))

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "RationalMatrix":
        """Zero matrix."""
        return cls(tuple(tuple(FIELD.zero for _ in range(cols)) for _ in range(rows)))

    @classmethod
    def column(cls, entries: Sequence) -> "RationalMatrix":
        """A column vector."""
        return cls(tuple((e,) for e in entries))

    @classmethod
    def from_columns(cls, columns: Sequence["RationalMatrix"]) -> "RationalMatrix":
        """Concatenate column vectors."""
        n = columns[0].shape[0]
        return cls(tuple(tuple(col.rows[i][0] for col in columns) for i in range(n)))

    @property
    def shape(self) -> Tuple[int, int]:
        """(rows, columns)."""
        return len(self.rows), len(self.rows[0])

    def entry(self, i: int, j: int) -> FracElement:
        """Entry (i, j)."""
        return self.rows[i][j]

    def entries(self) -> List[FracElement]:
        """All entries, row-major."""
        return [e for row in self.rows for e in row]

    def col(self, j: int) -> "RationalMatrix":
        """Column j as a column vector."""
        return RationalMatrix(tuple((row[j],) for row in self.rows))

    def map(self, fn: Callable[[FracElement], FracElement]) -> "RationalMatrix":
        """Apply fn entrywise."""
        return RationalMatrix(tuple(tuple(fn(e) for e in row) for row in self.rows))

    def __add__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "RationalMatrix") -> "RationalMatrix":
        self._same_shape(other)
        return RationalMatrix(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __neg__(self) -> "RationalMatrix":
        return self.map(lambda e: -e)

    def __mul__(self, other) -> "RationalMatrix":
        if isinstance(other, RationalMatrix):
            n, k = self.shape
            k2, m = other.shape
            if k != k2:
                raise DomainError(f"cannot multiply {n}x{k} by {k2}x{m}")
            out = []
            for i in range(n):
                row = []
                for j in range(m):
                    acc = FIELD.zero
                    for t in range(k):
                        a = self.rows[i][t]
                        if a:
                            b = other.rows[t][j]
                            if b:
                                acc += a * b
                    row.append(acc)
                out.append(tuple(row))
            return RationalMatrix(tuple(out))
        c = constant(other)
        return self.map(lambda e: c * e)

    def __rmul__(self, other) -> "RationalMatrix":
        c = constant(other)
        return self.map(lambda e: c * e)

    def _same_shape(self, other: "RationalMatrix") -> None:
        if self.shape != other.shape:
            raise DomainError(f"shape mismatch {self.shape} vs {other.shape}")

    def sigma(self, e: int) -> "RationalMatrix":
        """Entrywise x -> qt^e x."""
        return self.map(lambda f: sigma_shift(f, e))

    def dq(self, e: int) -> "RationalMatrix":
        """Entrywise q-derivative (f(Qx) - f(x))/((Q - 1)x) with Q = qt^e."""
        scale = inverse((qt_power(e) - 1) * X)
        return self.map(lambda f: (sigma_shift(f, e) - f) * scale)

    def is_zero(self) -> bool:
        """True for the zero matrix."""
        return not any(self.entries())

    def det(self) -> FracElement:
        """Exact determinant."""
        return determinant(self.rows)

    def inverse(self) -> "RationalMatrix":
        """Exact inverse."""
        return RationalMatrix.from_lists(matrix_inverse(self.rows))

    def power(self, n: int) -> "RationalMatrix":
        """Matrix power with n >= 0."""
        result = RationalMatrix.identity(self.shape[0])
        for _ in range(n):
            result = result * self
        return result
