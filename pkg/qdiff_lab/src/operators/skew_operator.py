"""
Skew polynomial operators over Q(x, qt).

An operator L = sum_i a_i(x) T^i has left coefficients a_i and a generator T
which is either the dilation sigma: f(x) -> f(Q x) or the q-derivative
d: f(x) -> (f(Q x) - f(x)) / ((Q - 1) x), with Q = qt^step. The commutation
laws are

    sigma . f = f(Q x) sigma
    d . f     = f(Q x) d + d(f)

so products are computed by pushing the generator through coefficients.
"""

from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from sympy.polys.fields import FracElement

from core.exceptions import DomainError, IncompatibleFormsError
from core.scalar_field import (
    FIELD, RING, X, ScalarField, as_polynomial, constant, constant_poly, frac, inverse, qt_power, sigma_shift,
    x_coefficients
)

SIGMA = "sigma"
DQ = "dq"
FORMS = (SIGMA, DQ)


def dq_function(f: FracElement, step: int) -> FracElement:
    """d_Q f = (f(Q x) - f(x)) / ((Q - 1) x) with Q = qt^step."""
    if not f:
        return FIELD.zero
    return (sigma_shift(f, step) - f) / ((qt_power(step) - 1) * X)


def _strip(coeffs: Sequence[FracElement]) -> Tuple[FracElement, ...]:
    coeffs = [constant(c) for c in coeffs]
    while coeffs and not coeffs[-1]:
        coeffs.pop()
    return tuple(coeffs)


@dataclass(frozen=True)
class SkewOperator:
    """
    Element of K(x)[sigma] or K(x)[d].

    Args:
        form: "sigma" or "dq"
        coeffs: a_0, a_1, ..., a_nu (trailing zeros are dropped)
        field: Scalar field K = Q(q^(1/r))
        step: Exponent e of the dilation x -> qt^e x (defaults to r, i.e. q)
        var: Name of the variable when printing ("x", or "z" for transforms)
    """
    form: str
    coeffs: Tuple[FracElement, ...]
    field: ScalarField = ScalarField()
    step: Optional[int] = None
    var: str = "x"

    def __post_init__(self):
        if self.form not in FORMS:
            raise DomainError(f"unknown operator form {self.form!r}")
        object.__setattr__(self, "coeffs", _strip(self.coeffs))
        if self.step is None:
            object.__setattr__(self, "step", self.field.r)
        if self.step == 0:
            raise DomainError("the dilation x -> x is not a q-operator")

    # ---- constructors ----

    @classmethod
    def scalar(cls, f, form: str = SIGMA, field: ScalarField = ScalarField(),
               step: Optional[int] = None, var: str = "x") -> "SkewOperator":
        """Order-0 operator, multiplication by f."""
        return cls(form, (constant(f),), field, step, var)

    @classmethod
    def generator(cls, form: str = SIGMA, field: ScalarField = ScalarField(),
                  step: Optional[int] = None, var: str = "x") -> "SkewOperator":
        """The operator sigma or d itself."""
        return cls(form, (FIELD.zero, FIELD.one), field, step, var)

    def like(self, coeffs: Sequence[FracElement], form: Optional[str] = None) -> "SkewOperator":
        """Operator with the same field, step and variable."""
        return SkewOperator(form or self.form, tuple(coeffs), self.field, self.step, self.var)

    # ---- basic properties ----

    @property
    def order(self) -> int:
        """nu, the degree in the generator (-1 for the zero operator)."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> FracElement:
        """a_nu."""
        if not self.coeffs:
            raise DomainError("the zero operator has no leading coefficient")
        return self.coeffs[-1]

    def coefficient(self, i: int) -> FracElement:
        """a_i, zero outside 0..nu."""
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else FIELD.zero

    def is_zero(self) -> bool:
        """True for the zero operator."""
        return not self.coeffs

    def is_polynomial(self) -> bool:
        """True if every coefficient is a polynomial in x."""
        return all(c.denom.degree(0) <= 0 for c in self.coeffs)

    def compatible(self, other: "SkewOperator") -> None:
        """
        Check that two operators live in the same ring.

        Raises:
            IncompatibleFormsError: On different forms, fields or steps
        """
        if self.form != other.form:
            raise IncompatibleFormsError(f"cannot combine a {self.form} operator with a {other.form} operator")
        if self.field != other.field or self.step != other.step:
            raise IncompatibleFormsError("operators over different fields or dilations")

    # ---- ring structure ----

    def __add__(self, other: "SkewOperator") -> "SkewOperator":
        self.compatible(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return self.like([self.coefficient(i) + other.coefficient(i) for i in range(n)])

    def __sub__(self, other: "SkewOperator") -> "SkewOperator":
        return self + (-other)

    def __neg__(self) -> "SkewOperator":
        return self.like([-c for c in self.coeffs])

    def scale(self, f) -> "SkewOperator":
        """Left multiplication by a function f."""
        f = constant(f)
        return self.like([f * c for c in self.coeffs])

    def _generator_times(self, coeffs: List[FracElement]) -> List[FracElement]:
        """Coefficients of T . (sum coeffs[i] T^i)."""
        out = [FIELD.zero] * (len(coeffs) + 1)
        for i, c in enumerate(coeffs):
            if not c:
                continue
            out[i + 1] += sigma_shift(c, self.step)
            if self.form == DQ:
                out[i] += dq_function(c, self.step)
        return out

    def __mul__(self, other) -> "SkewOperator":
        """Composition self . other (functions act as order-0 operators)."""
        if not isinstance(other, SkewOperator):
            return self * SkewOperator.scalar(other, self.form, self.field, self.step, self.var)
        self.compatible(other)
        result = [FIELD.zero] * max(len(self.coeffs) + len(other.coeffs) - 1, 0)
        power = list(other.coeffs)
        for i, a in enumerate(self.coeffs):
            if i:
                power = self._generator_times(power)
            if not a:
                continue
            for k, c in enumerate(power):
                if c:
                    result[k] += a * c
        return self.like(result)

    def __rmul__(self, other) -> "SkewOperator":
        return self.scale(other)

    def power(self, n: int) -> "SkewOperator":
        """L^n, n >= 0."""
        if n < 0:
            raise DomainError("negative powers of operators are not defined")
        result = SkewOperator.scalar(1, self.form, self.field, self.step, self.var)
        for _ in range(n):
            result = result * self
        return result

    # ---- normal forms ----

    def cleared(self) -> "SkewOperator":
        """Left multiple with coprime polynomial coefficients (content removed)."""
        if self.is_zero():
            return self
        lcm = RING.one
        for c in self.coeffs:
            if c:
                lcm = lcm.lcm(c.denom)
        polys = [as_polynomial(c * frac(lcm)) if c else RING.zero for c in self.coeffs]
        g = RING.zero
        for p in polys:
            if p:
                g = p if not g else g.gcd(p)
        return self.like([frac(p.exquo(g)) if p else FIELD.zero for p in polys])

    def normalized(self) -> "SkewOperator":
        """
        Canonical unit multiple: polynomial coprime coefficients and the
        lowest x-coefficient of a_nu equal to 1.
        """
        if self.is_zero():
            return self
        op = self.cleared()
        lead = x_coefficients(as_polynomial(op.leading))
        low = constant_poly(lead[min(lead)])
        return op.scale(inverse(low))

    def equals_up_to_unit(self, other: "SkewOperator") -> bool:
        """True if other = u . self for a nonzero function u."""
        self.compatible(other)
        return self.normalized().coeffs == other.normalized().coeffs

    def with_var(self, var: str) -> "SkewOperator":
        """Same operator printed in another variable name."""
        return SkewOperator(self.form, self.coeffs, self.field, self.step, var)
