"""
Truncated power series in x over Q(qt).

A SeriesPrefix stores y_0, ..., y_{T-1} and stands for the class of a power
series modulo x^T. Every operation keeps track of how many coefficients of
its result are actually determined.
"""

from dataclasses import dataclass
from typing import Callable, Iterable, List, Optional, Sequence, Tuple

from sympy.polys.fields import FracElement

from core.exceptions import DomainError, TruncationUnderflowError
from core.scalar_field import (
    FIELD, X, ScalarField, constant, is_scalar, laurent_expand, qt_power
)


@dataclass(frozen=True)
class SeriesPrefix:
    """
    Power series known modulo x^order.

    Args:
        coeffs: Known coefficients y_0..y_{order-1} (scalars)
        field: Scalar field the coefficients belong to
    """
    coeffs: Tuple[FracElement, ...]
    field: ScalarField = ScalarField()

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        for c in self.coeffs:
            if not is_scalar(c):
                raise DomainError("series coefficients must not depend on x")

    @classmethod
    def from_values(cls, values: Iterable, field: ScalarField = ScalarField()) -> "SeriesPrefix":
        """Build a prefix from integers, Rationals or field elements."""
        return cls(tuple(constant(v) for v in values), field)

    @classmethod
    def from_generator(cls, generator: Callable[[int], FracElement], order: int,
                       field: ScalarField = ScalarField()) -> "SeriesPrefix":
        """Build a prefix from a closed-form coefficient function."""
        return cls(tuple(generator(n) for n in range(order)), field)

    @classmethod
    def from_rational(cls, f: FracElement, order: int, field: ScalarField = ScalarField()) -> "SeriesPrefix":
        """
        Taylor expansion of a rational function regular at 0.

        Raises:
            DomainError: If f has a pole at x = 0
        """
        if not f:
            return cls.zero(order, field)
        v, coeffs = laurent_expand(f, max(order, 0))
        if v < 0:
            raise DomainError("rational function has a pole at x = 0")
        full = [FIELD.zero] * v + coeffs
        return cls(tuple(full[:order]), field)

    @classmethod
    def zero(cls, order: int, field: ScalarField = ScalarField()) -> "SeriesPrefix":
        """The zero series known modulo x^order."""
        return cls(tuple(FIELD.zero for _ in range(order)), field)

    @property
    def order(self) -> int:
        """Number of known coefficients."""
        return len(self.coeffs)

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> FracElement:
        if n < 0 or n >= len(self.coeffs):
            raise TruncationUnderflowError(
                f"coefficient {n} is not known", requested=n + 1, available=len(self.coeffs)
            )
        return self.coeffs[n]

    def truncate(self, order: int) -> "SeriesPrefix":
        """Keep only the first `order` coefficients."""
        if order > self.order:
            raise TruncationUnderflowError("cannot extend a truncated series", requested=order, available=self.order)
        return SeriesPrefix(self.coeffs[:order], self.field)

    def _check(self, other: "SeriesPrefix") -> None:
        if self.field != other.field:
            raise DomainError("series over different fields")

    def __add__(self, other: "SeriesPrefix") -> "SeriesPrefix":
        self._check(other)
        n = min(self.order, other.order)
        return SeriesPrefix(tuple(a + b for a, b in zip(self.coeffs[:n], other.coeffs[:n])), self.field)

    def __sub__(self, other: "SeriesPrefix") -> "SeriesPrefix":
        self._check(other)
        n = min(self.order, other.order)
        return SeriesPrefix(tuple(a - b for a, b in zip(self.coeffs[:n], other.coeffs[:n])), self.field)

    def __neg__(self) -> "SeriesPrefix":
        return SeriesPrefix(tuple(-a for a in self.coeffs), self.field)

    def scale(self, c: FracElement) -> "SeriesPrefix":
        """Multiply by a scalar."""
        return SeriesPrefix(tuple(c * a for a in self.coeffs), self.field)

    def add_constant(self, c: FracElement) -> "SeriesPrefix":
        """y + c."""
        if not self.coeffs:
            return self
        return SeriesPrefix((self.coeffs[0] + c,) + self.coeffs[1:], self.field)

    def __mul__(self, other: "SeriesPrefix") -> "SeriesPrefix":
        self._check(other)
        n = min(self.order, other.order)
        out = []
        for k in range(n):
            acc = FIELD.zero
            for i in range(k + 1):
                a = self.coeffs[i]
                if a:
                    b = other.coeffs[k - i]
                    if b:
                        acc += a * b
            out.append(acc)
        return SeriesPrefix(tuple(out), self.field)

    def mul_rational(self, f: FracElement) -> "SeriesPrefix":
        """
        Multiply by a rational function with no pole at 0.

        The known length is unchanged.
        """
        return SeriesPrefix.from_rational(f, self.order, self.field) * self if f else SeriesPrefix.zero(self.order, self.field)

    def mul_monomial(self, k: int) -> "SeriesPrefix":
        """Multiply by x^k (k may be negative if enough leading zeros exist)."""
        if k >= 0:
            return SeriesPrefix((FIELD.zero,) * k + self.coeffs, self.field)
        if any(self.coeffs[:-k]):
            raise DomainError("division by x^k leaves a pole")
        return SeriesPrefix(self.coeffs[-k:], self.field)

    def sigma(self, e: int) -> "SeriesPrefix":
        """y(qt^e x)."""
        return SeriesPrefix(tuple(qt_power(e * n) * c for n, c in enumerate(self.coeffs)), self.field)

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero known coefficient, or None if all known ones vanish."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return self.valuation() is None

    def to_polynomial(self) -> FracElement:
        """The truncation sum y_n x^n as a polynomial."""
        acc = FIELD.zero
        for n, c in enumerate(self.coeffs):
            if c:
                acc += c * X ** n
        return acc

    def values(self) -> List[FracElement]:
        """Known coefficients as a list."""
        return list(self.coeffs)


def polynomial_prefix(coeffs: Sequence[FracElement], order: int, field: ScalarField = ScalarField()) -> SeriesPrefix:
    """A polynomial (finite coefficient list) as a prefix of given length."""
    padded = list(coeffs[:order]) + [FIELD.zero] * max(0, order - len(coeffs))
    return SeriesPrefix(tuple(constant(c) for c in padded), field)
