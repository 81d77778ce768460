"""
Places of Q(q) and their log-norms.

All norms are exact rationals in units of log(1/d) for an unspecified base
d in (0, 1): log|f|_v = -(deg v)(ord_v f) at a finite place v, and
log|f| = deg f at the place q^-1. Over Q(q^(1/r)) the same quantities are
computed in qt and scaled by 1/r so that restrictions to Q(q) agree.
"""

from dataclasses import dataclass
from typing import Dict, Iterable, Optional

from sympy import Rational, binomial
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement

from core.cyclotomic import (
    cyclotomic_factorization, cyclotomic_multiplicity, cyclotomic_poly, euler_phi, strip_qt_power
)
from core.exceptions import DomainError
from core.matrix import RationalMatrix
from core.qnumbers import q_numbers
from core.scalar_field import QVAR, ScalarField, is_scalar, to_qt_poly, x_coefficients

FINITE = "finite"
Q_ADIC = "q_adic"
Q_INVERSE_ADIC = "q_inverse_adic"


@dataclass(frozen=True)
class Place:
    """
    An ultrametric place of Q(q) (or of Q(qt) for radical fields).

    Args:
        kind: One of "finite", "q_adic", "q_inverse_adic"
        poly: Primitive irreducible polynomial in Z[qt] for finite places
        cyclotomic_order: m when poly is the m-th cyclotomic polynomial
    """
    kind: str
    poly: Optional[PolyElement] = None
    cyclotomic_order: Optional[int] = None

    @classmethod
    def finite(cls, poly: PolyElement) -> "Place":
        """
        Finite place attached to a polynomial of Z[qt].

        The polynomial is made primitive with positive leading coefficient and
        recognised as cyclotomic when it is one. Irreducibility is the
        caller's responsibility.
        """
        if not poly or poly.degree() < 1:
            raise DomainError("a finite place needs a nonconstant polynomial")
        _, poly = poly.primitive()
        if poly.LC < 0:
            poly = -poly
        if poly == QVAR:
            return cls.q_adic()
        for m in range(1, max(6, 2 * poly.degree() ** 2) + 1):
            if euler_phi(m) == poly.degree() and cyclotomic_poly(m) == poly:
                return cls(FINITE, poly, m)
        return cls(FINITE, poly, None)

    @classmethod
    def cyclotomic(cls, m: int) -> "Place":
        """The place Phi_m."""
        return cls(FINITE, cyclotomic_poly(m), m)

    @classmethod
    def q_adic(cls) -> "Place":
        """The place v = q."""
        return cls(Q_ADIC)

    @classmethod
    def q_inverse_adic(cls) -> "Place":
        """The place at infinity in q."""
        return cls(Q_INVERSE_ADIC)

    @property
    def degree(self) -> int:
        """deg_q of the uniformizer (1 for the two infinite places)."""
        return self.poly.degree() if self.kind == FINITE else 1

    @property
    def is_cyclotomic(self) -> bool:
        """True for the places Phi_m."""
        return self.cyclotomic_order is not None

    @property
    def label(self) -> str:
        """Short printable name."""
        if self.kind == Q_ADIC:
            return "q"
        if self.kind == Q_INVERSE_ADIC:
            return "1/q"
        if self.is_cyclotomic:
            return f"Phi_{self.cyclotomic_order}"
        return str(self.poly.as_expr()).replace("**", "^").replace("qt", "q")


def poly_order(upoly: PolyElement, place: Place) -> int:
    """ord_v of a nonzero polynomial of Z[qt] at a finite or q-adic place."""
    if not upoly:
        raise DomainError("order of zero is undefined")
    if place.kind == Q_ADIC:
        return strip_qt_power(upoly)[0]
    if place.kind != FINITE:
        raise DomainError("poly_order is defined for finite places only")
    if place.is_cyclotomic:
        return cyclotomic_multiplicity(upoly, place.cyclotomic_order)[0]
    k = 0
    while upoly.degree() >= place.poly.degree():
        quotient, remainder = upoly.div(place.poly)
        if remainder:
            break
        upoly = quotient
        k += 1
    return k


def scalar_order(f: FracElement, place: Place) -> int:
    """ord_v of a nonzero scalar; for the place 1/q this is deg den - deg num."""
    if not f:
        raise DomainError("order of zero is undefined")
    if not is_scalar(f):
        raise DomainError("expected an x-free element")
    num, den = to_qt_poly(f.numer), to_qt_poly(f.denom)
    if place.kind == Q_INVERSE_ADIC:
        return den.degree() - num.degree()
    return poly_order(num, place) - poly_order(den, place)


def log_norm(f: FracElement, place: Place, field: ScalarField = ScalarField()) -> Rational:
    """
    log|f|_v in units of log(1/d).

    Args:
        f: Nonzero scalar
        place: The place v
        field: Field of f; values are divided by its root r

    Raises:
        DomainError: If f = 0
    """
    if not f:
        raise DomainError("log-norm of zero is undefined")
    if place.kind == Q_INVERSE_ADIC:
        return Rational(-scalar_order(f, place), field.r)
    return Rational(-place.degree * scalar_order(f, place), field.r)


def log_plus(value: Rational) -> Rational:
    """max(0, value)."""
    return value if value > 0 else Rational(0)


def _qt_coefficients(poly: PolyElement) -> Iterable[PolyElement]:
    return [to_qt_poly(c) for c in x_coefficients(poly).values()]


def _gauss_entry(f: FracElement, place: Place) -> int:
    """Order of the Gauss norm, ord(num content) - ord(den content)."""
    num = _qt_coefficients(f.numer)
    den = _qt_coefficients(f.denom)
    if place.kind == Q_INVERSE_ADIC:
        return min(-c.degree() for c in num) - min(-c.degree() for c in den)
    return min(poly_order(c, place) for c in num) - min(poly_order(c, place) for c in den)


def gauss_log_norm(value, place: Place, field: ScalarField = ScalarField()) -> Rational:
    """
    Gauss log-norm of a rational function, or the max over a matrix.

    Args:
        value: Nonzero FracElement or RationalMatrix
        place: The place v

    Raises:
        DomainError: If the input is zero
    """
    entries = value.entries() if isinstance(value, RationalMatrix) else [value]
    entries = [e for e in entries if e]
    if not entries:
        raise DomainError("Gauss norm of zero is undefined")
    scale = 1 if place.kind == Q_INVERSE_ADIC else place.degree
    return max(Rational(-scale * _gauss_entry(e, place), field.r) for e in entries)


def qfact_order(m: int, place: Place) -> int:
    """ord_v [m]_q! from the closed form (place Phi_kappa or q-adic); 1/q uses -deg."""
    if m < 0:
        raise DomainError("q-factorial of a negative integer")
    if place.kind == Q_ADIC:
        return 0
    if place.kind == Q_INVERSE_ADIC:
        return -int(binomial(m, 2))
    if not place.is_cyclotomic:
        raise DomainError("closed form needs a cyclotomic place")
    kappa = place.cyclotomic_order
    if kappa == 1:
        return 0
    return m // kappa


def qfact_log_norm(m: int, place: Place) -> Rational:
    """
    log|[m]_q!|_v from the closed form ord_{Phi_kappa}[m]_q! = floor(m/kappa).

    Args:
        m: Nonnegative integer
        place: Phi_kappa, q or 1/q
    """
    order = qfact_order(m, place)
    if place.kind == Q_INVERSE_ADIC:
        return Rational(-order)
    return Rational(-place.degree * order)


def qfact_order_by_division(m: int, place: Place) -> int:
    """ord_v [m]_q! by repeated division of the expanded factorial."""
    upoly = to_qt_poly(q_numbers(1).factorial(m).numer)
    return poly_order(upoly, place)


def product_formula_terms(f: FracElement, field: ScalarField = ScalarField()) -> Dict[str, Rational]:
    """
    Split sum over all places of log|f|_v into its parts.

    The finite part is computed in three independent pieces: the q-adic
    place, the cyclotomic places by trial division, and the remaining
    finite places as a degree.

    Returns:
        Dict with keys q_adic, cyclotomic, noncyclotomic, q_inverse_adic, total
    """
    if not f:
        raise DomainError("product formula for zero is undefined")
    num, den = to_qt_poly(f.numer), to_qt_poly(f.denom)
    parts = {"q_adic": 0, "cyclotomic": 0, "noncyclotomic": 0}
    for upoly, sign in ((num, 1), (den, -1)):
        k, rest = strip_qt_power(upoly)
        found, residual = cyclotomic_factorization(rest)
        parts["q_adic"] += -sign * k
        parts["cyclotomic"] += -sign * sum(euler_phi(m) * e for m, e in found.items())
        parts["noncyclotomic"] += -sign * residual.degree()
    result = {key: Rational(value, field.r) for key, value in parts.items()}
    result["q_inverse_adic"] = Rational(num.degree() - den.degree(), field.r)
    result["total"] = sum(result.values(), Rational(0))
    return result


def product_formula_check(f: FracElement, field: ScalarField = ScalarField()) -> bool:
    """True iff the log-norms of f over all places sum to 0."""
    return product_formula_terms(f, field)["total"] == 0

