"""
Exact scalar field and rational functions.

Every value lives in the single sympy fraction field Q(x, qt). A ScalarField
fixes the radical index r of q = qt^r; its scalars are the x-free elements
(the field Q(qt) = Q(q^(1/r))), its rational functions are the rest.

Elements are sympy FracElement objects, always reduced with a denominator of
positive leading coefficient, so equality is structural.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import chain
from typing import Dict, List, Tuple, Union

from sympy import QQ, ZZ, Rational
from sympy.polys.fields import FracElement, field
from sympy.polys.rings import PolyElement, ring

from core.exceptions import DomainError, IncompatibleRadicalError

FIELD, X, QT = field("x,qt", QQ)
RING = FIELD.ring

# Univariate Z[qt], used for place computations on scalars
QRING, QVAR = ring("qt", ZZ)

Number = Union[int, Rational, FracElement]


def frac(numer: PolyElement, denom: PolyElement = None) -> FracElement:
    """
    Build a reduced element of Q(x, qt).

    Args:
        numer: Numerator in RING
        denom: Denominator in RING (default 1)

    Returns:
        The reduced fraction numer/denom
    """
    if denom is None:
        denom = RING.one
    if not denom:
        raise DomainError("division by zero")
    return FIELD.new(numer, denom)


def constant(value: Number) -> FracElement:
    """Coerce an integer, sympy Rational or field element into FIELD."""
    if isinstance(value, FracElement):
        return value
    if isinstance(value, int):
        return FIELD(value)
    value = Rational(value)
    return FIELD.new(RING(QQ(int(value.p), int(value.q))))


@lru_cache(maxsize=None)
def qt_power(k: int) -> FracElement:
    """qt^k for any integer k."""
    if k >= 0:
        return QT ** k
    return FIELD.one / QT ** (-k)


def x_power(k: int) -> FracElement:
    """x^k for any integer k."""
    if k >= 0:
        return X ** k
    return FIELD.one / X ** (-k)


def power(f: FracElement, n: int) -> FracElement:
    """f^n for any integer n; negative powers require f != 0."""
    if n >= 0:
        return f ** n
    if not f:
        raise DomainError("zero has no inverse")
    return FIELD.one / f ** (-n)


def inverse(f: FracElement) -> FracElement:
    """Multiplicative inverse."""
    if not f:
        raise DomainError("zero has no inverse")
    return FIELD.one / f


def is_scalar(f: FracElement) -> bool:
    """True if f does not depend on x."""
    return f.numer.degree(0) <= 0 and f.denom.degree(0) <= 0


def is_x_polynomial(f: FracElement) -> bool:
    """True if the denominator of f is free of x."""
    return f.denom.degree(0) <= 0


def is_laurent_monomial_denominator(f: FracElement) -> bool:
    """True if the denominator of f is x^k times a scalar."""
    return len({m[0] for m in f.denom.itermonoms()}) == 1


def _remap(poly: PolyElement, e: int) -> Dict[Tuple[int, int], object]:
    return {(i, j + e * i): c for (i, j), c in poly.iterterms()}


def sigma_shift(f: FracElement, e: int) -> FracElement:
    """
    Substitute x -> qt^e * x.

    Args:
        f: Element of Q(x, qt)
        e: Exponent of qt in the dilation factor

    Returns:
        f(qt^e x)
    """
    if e == 0 or is_scalar(f):
        return f
    num = _remap(f.numer, e)
    den = _remap(f.denom, e)
    low = min(j for (_, j) in chain(num, den))
    if low < 0:
        num = {(i, j - low): c for (i, j), c in num.items()}
        den = {(i, j - low): c for (i, j), c in den.items()}
    return frac(RING.from_dict(num), RING.from_dict(den))


def dilate_x(f: FracElement, scale: FracElement) -> FracElement:
    """Substitute x -> scale * x for a nonzero scalar scale."""
    if is_scalar(f):
        return f
    num = sum((constant_poly(c) * scale ** i * X ** i
               for i, c in x_coefficients(f.numer).items()), FIELD.zero)
    den = sum((constant_poly(c) * scale ** i * X ** i
               for i, c in x_coefficients(f.denom).items()), FIELD.zero)
    return num / den


def qt_rescale(f: FracElement, s: int) -> FracElement:
    """Substitute qt -> qt^s (s >= 1): the embedding Q(qt) -> Q(qt^(1/s))."""
    if s == 1:
        return f
    if s < 1:
        raise DomainError(f"rescaling factor must be positive, got {s}")
    num = {(i, j * s): c for (i, j), c in f.numer.iterterms()}
    den = {(i, j * s): c for (i, j), c in f.denom.iterterms()}
    return FIELD.raw_new(RING.from_dict(num), RING.from_dict(den))


def x_coefficients(poly: PolyElement) -> Dict[int, PolyElement]:
    """Group the terms of a RING element by x-degree; values are x-free."""
    groups: Dict[int, Dict[Tuple[int, int], object]] = {}
    for (i, j), c in poly.iterterms():
        groups.setdefault(i, {})[(0, j)] = c
    return {i: RING.from_dict(terms) for i, terms in groups.items()}


def constant_poly(poly: PolyElement) -> FracElement:
    """Wrap an x-free RING element as a field element."""
    return frac(poly)


def as_polynomial(f: FracElement) -> PolyElement:
    """
    The RING element equal to f.

    Raises:
        DomainError: If the denominator of f is not a rational constant
    """
    if not f:
        return RING.zero
    if not f.denom.is_ground:
        raise DomainError("expected a polynomial")
    return f.numer.quo_ground(f.denom.LC)


def x_polynomial_terms(f: FracElement) -> Dict[int, FracElement]:
    """
    Coefficients of f as a polynomial in x over Q(qt).

    Raises:
        DomainError: If the denominator of f involves x
    """
    if not f:
        return {}
    if not is_x_polynomial(f):
        raise DomainError("expected a polynomial in x")
    denom = frac(f.denom)
    return {i: constant_poly(c) / denom for i, c in x_coefficients(f.numer).items()}


def x_valuation(f: FracElement) -> int:
    """The x-adic order of a nonzero f."""
    if not f:
        raise DomainError("x-adic order of zero is undefined")
    return min(m[0] for m in f.numer.itermonoms()) - min(m[0] for m in f.denom.itermonoms())


def x_degree(f: FracElement) -> int:
    """deg_x numerator - deg_x denominator of a nonzero f."""
    if not f:
        raise DomainError("degree of zero is undefined")
    return f.numer.degree(0) - f.denom.degree(0)


def laurent_expand(f: FracElement, length: int) -> Tuple[int, List[FracElement]]:
    """
    Expand f as a Laurent series at x = 0.

    Args:
        f: Nonzero element of Q(x, qt)
        length: Number of coefficients to return

    Returns:
        (v, c) with f = x^v (c[0] + c[1] x + ...), c[0] != 0
    """
    num = x_coefficients(f.numer)
    den = x_coefficients(f.denom)
    v_num = min(num)
    v_den = min(den)
    den_c = {k - v_den: constant_poly(p) for k, p in den.items()}
    lead = inverse(den_c[0])
    top = max(den_c)
    out: List[FracElement] = []
    for k in range(length):
        acc = constant_poly(num[v_num + k]) if (v_num + k) in num else FIELD.zero
        for j in range(1, min(k, top) + 1):
            if j in den_c:
                acc -= den_c[j] * out[k - j]
        out.append(acc * lead)
    return v_num - v_den, out


def laurent_terms(f: FracElement) -> Dict[int, FracElement]:
    """
    The x-powers of a Laurent polynomial f with their scalar coefficients.

    Raises:
        DomainError: If the denominator of f is not x^k times a scalar
    """
    if not f:
        return {}
    if not is_laurent_monomial_denominator(f):
        raise DomainError("expected a Laurent polynomial in the variable")
    (k, den), = x_coefficients(f.denom).items()
    den = constant_poly(den)
    return {i - k: constant_poly(c) / den for i, c in x_coefficients(f.numer).items()}


def evaluate_x(f: FracElement, xi: FracElement) -> FracElement:
    """Evaluate a rational function at x = xi (a scalar)."""
    def _horner(poly: PolyElement) -> FracElement:
        coeffs = x_coefficients(poly)
        acc = FIELD.zero
        for i in range(max(coeffs), -1, -1):
            acc = acc * xi
            if i in coeffs:
                acc += constant_poly(coeffs[i])
        return acc

    den = _horner(f.denom)
    if not f.numer:
        return FIELD.zero
    if not den:
        raise DomainError("denominator vanishes at the evaluation point")
    return _horner(f.numer) / den


def to_qt_poly(poly: PolyElement) -> PolyElement:
    """Convert an x-free RING element with integer coefficients to QRING."""
    terms = {}
    for (i, j), c in poly.iterterms():
        if i:
            raise DomainError("expected an x-free polynomial")
        if c.denominator != 1:
            raise DomainError("expected integer coefficients")
        terms[(j,)] = ZZ(int(c.numerator))
    return QRING.from_dict(terms) if terms else QRING.zero


def from_qt_poly(upoly: PolyElement) -> FracElement:
    """Convert a QRING element back to FIELD."""
    terms = {(0, m[0]): QQ(int(c)) for m, c in upoly.iterterms()}
    return frac(RING.from_dict(terms)) if terms else FIELD.zero


def content_in_qt(poly: PolyElement) -> PolyElement:
    """gcd in Z[qt] of the x-coefficients of a RING element."""
    coeffs = [to_qt_poly(c) for c in x_coefficients(poly).values()]
    g = QRING.zero
    for c in coeffs:
        g = c if not g else g.gcd(c)
    if g and g.LC < 0:
        g = -g
    return g


def gauss_content(f: FracElement) -> FracElement:
    """
    The scalar c with f = c * (primitive / primitive).

    At every finite place v the Gauss norm of f is |c|_v.
    """
    if not f:
        return FIELD.zero
    return from_qt_poly(content_in_qt(f.numer)) / from_qt_poly(content_in_qt(f.denom))


@dataclass(frozen=True)
class ScalarField:
    """
    The coefficient field Q(qt) with q = qt^r.

    Args:
        r: Radical index (positive integer)
    """
    r: int = 1

    def __post_init__(self):
        if not isinstance(self.r, int) or isinstance(self.r, bool) or self.r < 1:
            raise DomainError(f"radical index must be a positive integer, got {self.r!r}")

    @property
    def q(self) -> FracElement:
        """The element q = qt^r."""
        return qt_power(self.r)

    @property
    def p(self) -> FracElement:
        """The element p = 1/q."""
        return qt_power(-self.r)

    def q_power(self, k: int) -> FracElement:
        """q^k."""
        return qt_power(self.r * k)

    def q_power_fraction(self, numerator: int, denominator: int) -> FracElement:
        """q^(numerator/denominator); denominator must divide r."""
        if (self.r * numerator) % denominator:
            raise IncompatibleRadicalError(
                f"q^({numerator}/{denominator}) is not in Q(q^(1/{self.r}))",
                required=denominator, field_root=self.r
            )
        return qt_power(self.r * numerator // denominator)

    @property
    def symbol(self) -> str:
        """Name used when printing the scalar generator."""
        return "q" if self.r == 1 else "qt"

    def embed(self, f: FracElement, target: "ScalarField") -> FracElement:
        """Map an element of this field into a field whose root is a multiple of r."""
        if target.r % self.r:
            raise DomainError(f"cannot embed r={self.r} into r={target.r}")
        return qt_rescale(f, target.r // self.r)

    def __str__(self) -> str:
        return "Q(q)" if self.r == 1 else f"Q(q^(1/{self.r}))"
