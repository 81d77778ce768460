"""
Truncated series in the q-Newton basis at a point xi != 0.

A NewtonSeries stores a_0..a_{T-1} and stands for the class of
sum a_n T_n(x, xi) modulo the ideal generated by T_T(x, xi). With
Q = qt^step the basis obeys

    d_Q T_n     = [n]_Q T_{n-1}
    x T_n       = T_{n+1} + Q^n xi T_n
    sigma_Q T_n = Q^n T_n + Q^(n-1) (Q^n - 1) xi T_{n-1}

Multiplication by x keeps the truncation; d_Q and sigma_Q lose one term.
Products of series are built from the x-rule alone.

The sigma_Q rule above follows from x - xi/Q = (x - Q^(n-1) xi) + (Q^(n-1) - 1/Q) xi
and is checked against direct expansion in the tests; the summation form
sometimes written for sigma_Q(sum a_n T_n) carries shifted exponents and is
not used.
"""

from dataclasses import dataclass
from typing import Optional, Sequence, Tuple, Union

from sympy.polys.fields import FracElement

from core.exceptions import DomainError, TruncationUnderflowError
from core.qnumbers import q_numbers
from core.scalar_field import (
    FIELD, X, ScalarField, constant, is_scalar, qt_power, x_polynomial_terms
)
from core.series import SeriesPrefix


def tq_poly(n: int, xi, field: ScalarField = ScalarField(), step: Optional[int] = None) -> FracElement:
    """
    T_n(x, xi) = (x - xi)(x - Q xi)...(x - Q^(n-1) xi) expanded in x.

    Args:
        n: Degree (>= 0)
        xi: Base point
        field: Scalar field
        step: Exponent e of Q = qt^e (defaults to r)
    """
    if n < 0:
        raise DomainError(f"Newton polynomial of negative degree {n}")
    xi = constant(xi)
    step = field.r if step is None else step
    result = FIELD.one
    for k in range(n):
        result *= X - qt_power(step * k) * xi
    return result


@dataclass(frozen=True)
class NewtonSeries:
    """
    sum a_n T_n(x, xi) known modulo T_order(x, xi).

    Args:
        xi: Nonzero scalar base point
        coeffs: a_0..a_{T-1}
        field: Scalar field
        step: Exponent e of the twist Q = qt^e (defaults to r; -r for p = 1/q)
    """
    xi: FracElement
    coeffs: Tuple[FracElement, ...]
    field: ScalarField = ScalarField()
    step: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "xi", constant(self.xi))
        object.__setattr__(self, "coeffs", tuple(constant(c) for c in self.coeffs))
        if self.step is None:
            object.__setattr__(self, "step", self.field.r)
        if self.step == 0:
            raise DomainError("the twist Q = 1 gives no Newton basis")
        if not self.xi or not is_scalar(self.xi):
            raise DomainError("the base point must be a nonzero scalar")
        for c in self.coeffs:
            if not is_scalar(c):
                raise DomainError("Newton coefficients must not depend on x")

    @classmethod
    def zero(cls, xi, order: int, field: ScalarField = ScalarField(), step: Optional[int] = None) -> "NewtonSeries":
        return cls(xi, (FIELD.zero,) * order, field, step)

    @classmethod
    def basis_element(cls, n: int, xi, order: int, field: ScalarField = ScalarField(),
                      step: Optional[int] = None) -> "NewtonSeries":
        """T_n(x, xi) known modulo T_order."""
        return cls(xi, tuple(FIELD.one if k == n else FIELD.zero for k in range(order)), field, step)

    def like(self, coeffs: Sequence[FracElement]) -> "NewtonSeries":
        """Series with the same base point, field and twist."""
        return NewtonSeries(self.xi, tuple(coeffs), self.field, self.step)

    @property
    def order(self) -> int:
        """Number of known coefficients T."""
        return len(self.coeffs)

    @property
    def twist(self) -> FracElement:
        """Q."""
        return qt_power(self.step)

    def node(self, n: int) -> FracElement:
        """xi Q^n."""
        return qt_power(self.step * n) * self.xi

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> FracElement:
        if n < 0 or n >= len(self.coeffs):
            raise TruncationUnderflowError(
                f"Newton coefficient {n} is not known", requested=n + 1, available=len(self.coeffs)
            )
        return self.coeffs[n]

    def truncate(self, order: int) -> "NewtonSeries":
        """Keep only the first `order` coefficients."""
        if order > self.order:
            raise TruncationUnderflowError("cannot extend a truncated series", requested=order, available=self.order)
        return self.like(self.coeffs[:order])

    def compatible(self, other: "NewtonSeries") -> None:
        """
        Raises:
            DomainError: If the series live at different points or twists
        """
        if (self.xi, self.field, self.step) != (other.xi, other.field, other.step):
            raise DomainError("Newton series at different points or twists")

    # ---- module structure ----

    def __add__(self, other: "NewtonSeries") -> "NewtonSeries":
        self.compatible(other)
        return self.like([a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "NewtonSeries") -> "NewtonSeries":
        self.compatible(other)
        return self.like([a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "NewtonSeries":
        return self.like([-a for a in self.coeffs])

    def scale(self, c) -> "NewtonSeries":
        """Multiply by a scalar."""
        c = constant(c)
        return self.like([c * a for a in self.coeffs])

    # ---- the three structural rules ----

    def mul_x(self) -> "NewtonSeries":
        """x * s; the truncation is kept."""
        c = self.coeffs
        return self.like([
            (c[n - 1] if n else FIELD.zero) + self.node(n) * c[n] for n in range(self.order)
        ])

    def dq(self) -> "NewtonSeries":
        """d_Q s; one term is lost."""
        numbers = q_numbers(self.step)
        return self.like([numbers.integer(n + 1) * self.coeffs[n + 1] for n in range(self.order - 1)])

    def sigma(self) -> "NewtonSeries":
        """sigma_Q s; one term is lost."""
        c = self.coeffs
        out = []
        for n in range(self.order - 1):
            Qn = qt_power(self.step * n)
            out.append(Qn * c[n] + Qn * (qt_power(self.step * (n + 1)) - 1) * self.xi * c[n + 1])
        return self.like(out)

    def mul_polynomial(self, f) -> "NewtonSeries":
        """f(x) * s for f in K[x], by Horner's rule on the x-action."""
        f = constant(f)
        if not f:
            return self.like([FIELD.zero] * self.order)
        coeffs = x_polynomial_terms(f)
        acc = self.like([FIELD.zero] * self.order)
        for i in range(max(coeffs), -1, -1):
            acc = acc.mul_x()
            if i in coeffs:
                acc = acc + self.scale(coeffs[i])
        return acc

    def __mul__(self, other: "NewtonSeries") -> "NewtonSeries":
        """
        Product in K[[x - xi]]_Q.

        T_n = (x - xi)...(x - Q^(n-1) xi), so s * t = sum t_n P_n with
        P_0 = s and P_(n+1) = (x - Q^n xi) P_n.
        """
        self.compatible(other)
        order = min(self.order, other.order)
        part = self.truncate(order)
        acc = self.like([FIELD.zero] * order)
        for n in range(order):
            if other.coeffs[n]:
                acc = acc + part.scale(other.coeffs[n])
            part = part.mul_x() - part.scale(self.node(n))
        return acc

    def prepend_root(self) -> "NewtonSeries":
        """
        (x - xi/Q) * s for s at xi, as a series at xi/Q.

        (x - eta) T_n(x, Q eta) = T_(n+1)(x, eta), so the product of
        sum t_n T_n(x, Q eta) with (x - eta) is sum t_n T_(n+1)(x, eta),
        known one term further.
        """
        return NewtonSeries(self.xi / self.twist, (FIELD.zero,) + self.coeffs, self.field, self.step)

    # ---- inspection ----

    def valuation(self) -> Optional[int]:
        """Index of the first nonzero known coefficient."""
        for n, c in enumerate(self.coeffs):
            if c:
                return n
        return None

    def is_zero(self) -> bool:
        """True if every known coefficient vanishes."""
        return self.valuation() is None

    def to_polynomial(self) -> FracElement:
        """sum a_n T_n(x, xi) as a polynomial in x."""
        acc = FIELD.zero
        basis = FIELD.one
        for n, c in enumerate(self.coeffs):
            if c:
                acc += c * basis
            basis *= X - self.node(n)
        return acc

    def values(self):
        """Known coefficients as a list."""
        return list(self.coeffs)


def to_newton(value: Union[FracElement, SeriesPrefix, int], xi, order: Optional[int] = None,
              field: ScalarField = ScalarField(), step: Optional[int] = None) -> NewtonSeries:
    """
    Expand a polynomial in the Newton basis at xi.

    A SeriesPrefix is read as the polynomial of its known coefficients.

    Args:
        value: Polynomial in x
        xi: Base point
        order: Number of Newton coefficients kept (default deg + 1)
        field: Scalar field
        step: Exponent of the twist Q
    """
    if isinstance(value, SeriesPrefix):
        field = value.field
        value = value.to_polynomial()
    value = constant(value)
    if value and value.denom.degree(0) > 0:
        raise DomainError("only polynomials have a finite Newton expansion")
    degree = value.numer.degree(0) if value else 0
    order = degree + 1 if order is None else order
    unit = NewtonSeries.basis_element(0, xi, order, field, step)
    return unit.mul_polynomial(value)


def from_newton(series: NewtonSeries) -> FracElement:
    """The polynomial sum a_n T_n(x, xi) of the known coefficients."""
    return series.to_polynomial()
