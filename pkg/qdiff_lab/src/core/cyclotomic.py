"""
Cyclotomic polynomials, trial division and residue fields Q(zeta_m).

Polynomials in qt are handled in the univariate ring Z[qt]. Only cyclotomic
factors are ever split off; the remaining part of a polynomial is kept
unfactored.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import Dict, Tuple

from sympy import QQ, ZZ, cyclotomic_poly as sympy_cyclotomic_poly, totient
from sympy.polys.fields import FracElement
from sympy.polys.rings import PolyElement, ring

from core.exceptions import BadReductionError, DomainError
from core.scalar_field import QRING, is_scalar, to_qt_poly

ZETA_RING, ZETA = ring("zeta", QQ)

DEFAULT_ORDER_FLOOR = 30
DEFAULT_ORDER_FACTOR = 8


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> PolyElement:
    """
    The m-th cyclotomic polynomial as an element of Z[qt].

    Raises:
        DomainError: If m < 1
    """
    if m < 1:
        raise DomainError(f"cyclotomic order must be positive, got {m}")
    coeffs = sympy_cyclotomic_poly(m, polys=True).all_coeffs()
    return QRING.from_list([ZZ(int(c)) for c in coeffs])


@lru_cache(maxsize=None)
def euler_phi(m: int) -> int:
    """Euler's totient, the degree of the m-th cyclotomic polynomial."""
    return int(totient(m))


def strip_qt_power(upoly: PolyElement) -> Tuple[int, PolyElement]:
    """Split a nonzero Z[qt] polynomial as qt^k * rest with rest(0) != 0."""
    if not upoly:
        raise DomainError("cannot strip qt from zero")
    k = min(m[0] for m in upoly.itermonoms())
    if k == 0:
        return 0, upoly
    return k, QRING.from_dict({(m[0] - k,): c for m, c in upoly.iterterms()})


def divisible_by_cyclotomic(upoly: PolyElement, m: int) -> bool:
    """
    Test Phi_m | upoly without dividing the full polynomial.

    The polynomial is first folded modulo qt^m - 1, which Phi_m divides.
    """
    if not upoly:
        return True
    folded: Dict[int, int] = {}
    for (e,), c in upoly.iterterms():
        folded[e % m] = folded.get(e % m, 0) + c
    small = QRING.from_dict({(e,): c for e, c in folded.items() if c}) if any(folded.values()) else QRING.zero
    if not small:
        return True
    return not small.rem(cyclotomic_poly(m))


def cyclotomic_multiplicity(upoly: PolyElement, m: int) -> Tuple[int, PolyElement]:
    """
    Multiplicity of Phi_m in a nonzero polynomial and the cofactor.

    Returns:
        (k, rest) with upoly = Phi_m^k * rest
    """
    phi = cyclotomic_poly(m)
    k = 0
    while upoly.degree() >= phi.degree() and divisible_by_cyclotomic(upoly, m):
        upoly = upoly.exquo(phi)
        k += 1
    return k, upoly


def order_bound(degree: int, floor: int = DEFAULT_ORDER_FLOOR, factor: int = DEFAULT_ORDER_FACTOR) -> int:
    """Largest cyclotomic order worth trying for a polynomial of given degree."""
    return max(floor, factor * degree)


def cyclotomic_factorization(
    upoly: PolyElement,
    floor: int = DEFAULT_ORDER_FLOOR,
    factor: int = DEFAULT_ORDER_FACTOR
) -> Tuple[Dict[int, int], PolyElement]:
    """
    Split off every cyclotomic factor Phi_m of a polynomial with upoly(0) != 0.

    Args:
        upoly: Nonzero element of Z[qt]
        floor: Orders up to this bound are always tried
        factor: Orders up to factor * degree are tried

    Returns:
        ({m: multiplicity}, residual) with residual free of cyclotomic factors
        of the orders tried
    """
    if not upoly:
        raise DomainError("cyclotomic factorization of zero")
    found: Dict[int, int] = {}
    residual = upoly
    bound = order_bound(residual.degree(), floor, factor)
    for m in range(1, bound + 1):
        if residual.degree() < 1:
            break
        if euler_phi(m) > residual.degree():
            continue
        k, residual = cyclotomic_multiplicity(residual, m)
        if k:
            found[m] = k
    return found, residual


@dataclass(frozen=True)
class CyclotomicResidue:
    """
    Element of Q(zeta_m), stored as a polynomial in zeta of degree < phi(m).

    Args:
        m: Order of the root of unity
        value: Reduced polynomial in ZETA_RING
    """
    m: int
    value: PolyElement

    @classmethod
    def from_poly(cls, m: int, poly: PolyElement) -> "CyclotomicResidue":
        """Reduce a ZETA_RING polynomial modulo Phi_m."""
        return cls(m, poly.rem(_zeta_modulus(m)))

    @classmethod
    def zeta(cls, m: int) -> "CyclotomicResidue":
        """The generator zeta_m."""
        return cls.from_poly(m, ZETA)

    def _check(self, other: "CyclotomicResidue") -> None:
        if self.m != other.m:
            raise DomainError(f"residues modulo Phi_{self.m} and Phi_{other.m} do not mix")

    def __add__(self, other: "CyclotomicResidue") -> "CyclotomicResidue":
        self._check(other)
        return CyclotomicResidue(self.m, self.value + other.value)

    def __sub__(self, other: "CyclotomicResidue") -> "CyclotomicResidue":
        self._check(other)
        return CyclotomicResidue(self.m, self.value - other.value)

    def __neg__(self) -> "CyclotomicResidue":
        return CyclotomicResidue(self.m, -self.value)

    def __mul__(self, other: "CyclotomicResidue") -> "CyclotomicResidue":
        self._check(other)
        return CyclotomicResidue.from_poly(self.m, self.value * other.value)

    def inverse(self) -> "CyclotomicResidue":
        """Inverse in the field Q(zeta_m)."""
        if not self.value:
            raise DomainError("zero has no inverse")
        s, _, g = self.value.gcdex(_zeta_modulus(self.m))
        return CyclotomicResidue.from_poly(self.m, s.quo_ground(g.LC))

    def __truediv__(self, other: "CyclotomicResidue") -> "CyclotomicResidue":
        return self * other.inverse()

    def is_zero(self) -> bool:
        """True for the zero residue."""
        return not self.value

    def __str__(self) -> str:
        return str(self.value.as_expr()).replace("**", "^")


@lru_cache(maxsize=None)
def _zeta_modulus(m: int) -> PolyElement:
    return ZETA_RING.from_dict({(e,): QQ(int(c)) for (e,), c in cyclotomic_poly(m).iterterms()})


def _to_zeta(upoly: PolyElement) -> PolyElement:
    return ZETA_RING.from_dict({(e,): QQ(int(c)) for (e,), c in upoly.iterterms()}) if upoly else ZETA_RING.zero


def specialize_at_root(f: FracElement, m: int) -> CyclotomicResidue:
    """
    Reduce a scalar of Q(q) modulo Phi_m, i.e. substitute q = zeta_m.

    Args:
        f: x-free element (field root r = 1)
        m: Order of the root of unity

    Raises:
        BadReductionError: If the denominator of f vanishes modulo Phi_m
    """
    if not is_scalar(f):
        raise DomainError("specialize_at_root expects a scalar")
    num = CyclotomicResidue.from_poly(m, _to_zeta(to_qt_poly(f.numer)))
    den = CyclotomicResidue.from_poly(m, _to_zeta(to_qt_poly(f.denom)))
    if den.is_zero():
        raise BadReductionError(f"denominator vanishes modulo Phi_{m}", modulus=m, entry=str(f.as_expr()))
    return num / den
