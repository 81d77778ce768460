"""
The auxiliary polynomial g of a Hermite-Pade construction.

Given y_1, ..., y_nu known to enough terms, g has degree <= N and the
coefficients of x^k in every g y_i vanish for N + 1 <= k <= N + M with
M = floor(N (1 - tau) / nu). Equivalently ord((g y)_(>N)) >= 1 + N + M.
The N + 1 unknown coefficients face nu M <= N (1 - tau) equations, so a
nonzero solution always exists.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Sequence, Union

from sympy.polys.fields import FracElement

from approx.context import ApproxContext, as_prefixes, band_width, check_parameters
from core import console
from core.exceptions import DomainError, NoSolutionError, TruncationUnderflowError
from core.linalg import nullspace
from core.scalar_field import FIELD, X, ScalarField, is_x_polynomial, x_degree
from core.series import SeriesPrefix
from operators.parser import format_function
from places.size import HeightReport, heights as family_heights


def polynomial_coefficients(g: FracElement) -> List[FracElement]:
    """Scalar coefficients g_0..g_deg of a polynomial in x."""
    if not g:
        return []
    if not is_x_polynomial(g):
        raise DomainError("expected a polynomial in x")
    return SeriesPrefix.from_rational(g, x_degree(g) + 1).values()


def truncated_product(g: FracElement, prefix: SeriesPrefix, degree_budget: int) -> FracElement:
    """(g y)_(<=N) as a polynomial."""
    if prefix.order < degree_budget + 1:
        raise TruncationUnderflowError("prefix too short for the truncation", requested=degree_budget + 1,
                                       available=prefix.order)
    product = prefix.truncate(degree_budget + 1).mul_rational(g)
    return product.to_polynomial()


@dataclass
class AuxiliaryPolynomial:
    """
    A polynomial g with the vanishing band and its measured height.

    Attributes:
        g: The polynomial
        degree_budget: N
        band: M = floor(N (1 - tau) / nu)
        residues: Coefficients of x^k in g y_i for N < k <= N + M, per component
        height: Heights of the coefficients of g
    """
    g: FracElement
    degree_budget: int
    band: int
    residues: List[List[FracElement]]
    height: HeightReport

    @property
    def holds(self) -> bool:
        """deg g <= N and every band coefficient vanishes."""
        return (
            bool(self.g)
            and x_degree(self.g) <= self.degree_budget
            and all(not c for row in self.residues for c in row)
        )

    @property
    def conditions(self) -> int:
        """Number of linear conditions imposed."""
        return sum(len(row) for row in self.residues)

    def to_dict(self, field: ScalarField = ScalarField()) -> Dict[str, Any]:
        return {
            "g": format_function(self.g, field),
            "degree": x_degree(self.g),
            "degree_budget": self.degree_budget,
            "band": self.band,
            "conditions": self.conditions,
            "vanishing_band_holds": self.holds,
            "height": {
                "cyclotomic": str(self.height.cyclotomic),
                "noncyclotomic": str(self.height.noncyclotomic),
                "infinite": str(self.height.infinite),
                "total": str(self.height.total),
            },
        }


def band_residues(g: FracElement, prefixes: Sequence[SeriesPrefix], degree_budget: int,
                  band: int) -> List[List[FracElement]]:
    """Coefficients of x^k in g y_i for N < k <= N + M."""
    coeffs = polynomial_coefficients(g)
    out = []
    for prefix in prefixes:
        row = []
        for k in range(degree_budget + 1, degree_budget + band + 1):
            acc = FIELD.zero
            for j, c in enumerate(coeffs):
                if c and k - j < prefix.order:
                    acc += c * prefix[k - j]
            row.append(acc)
        out.append(row)
    return out


def build_g(prefixes: Sequence, degree_budget: int, tau, nu: Optional[int] = None,
            field: ScalarField = ScalarField()) -> AuxiliaryPolynomial:
    """
    A nonzero g of degree <= N whose products with the y_i vanish on the band.

    Args:
        prefixes: One prefix (or coefficient list) per component y_i
        degree_budget: N
        tau: Rational in (0, 1)
        nu: Number of components used in the band width (defaults to the
            number of prefixes)
        field: Scalar field

    Raises:
        TruncationUnderflowError: If a prefix is shorter than N + M + 1
        NoSolutionError: If the null space is trivial
    """
    prefixes = as_prefixes(prefixes)
    tau = check_parameters(degree_budget, tau)
    nu = len(prefixes) if nu is None else nu
    if nu < 1:
        raise DomainError("need at least one series")
    band = band_width(degree_budget, tau, nu)
    needed = degree_budget + band + 1
    for prefix in prefixes:
        if prefix.order < needed:
            raise TruncationUnderflowError("prefix too short for the vanishing band",
                                           requested=needed, available=prefix.order)

    rows = []
    for prefix in prefixes:
        for k in range(degree_budget + 1, degree_budget + band + 1):
            rows.append([prefix[k - j] for j in range(degree_budget + 1)])
    basis = nullspace(rows) if rows else [
        [FIELD.one if j == 0 else FIELD.zero for j in range(degree_budget + 1)]
    ]
    if not basis:
        raise NoSolutionError("no nonzero auxiliary polynomial: the prefix is degenerate")
    g = sum((c * X ** j for j, c in enumerate(basis[0]) if c), FIELD.zero)
    console.info(f"  g found with {len(rows)} conditions and {degree_budget + 1} unknowns")
    return AuxiliaryPolynomial(
        g, degree_budget, band, band_residues(g, prefixes, degree_budget, band),
        family_heights(polynomial_coefficients(g), field)
    )


def build_g_for(ctx: ApproxContext) -> AuxiliaryPolynomial:
    """build_g on the prefixes and parameters of a context."""
    return build_g(ctx.prefixes, ctx.degree_budget, ctx.tau, ctx.nu, ctx.system.field)


@dataclass
class MinorOrder:
    """Order at 0 of det [[P_i, P_j], [y_i, y_j]] as far as it is known."""
    i: int
    j: int
    order: Optional[int]
    known: int
    target: int

    @property
    def holds(self) -> bool:
        """ord >= target, or the minor vanishes to the known precision at or past it."""
        if self.order is None:
            return self.known >= self.target
        return self.order >= self.target

    def to_dict(self) -> Dict[str, Any]:
        return {
            "pair": [self.i, self.j],
            "order": self.order if self.order is not None else f">={self.known}",
            "target": self.target,
            "holds": self.holds,
        }


def minor_orders(ctx: ApproxContext, g: FracElement) -> List[MinorOrder]:
    """
    ord det [[P_i, P_j], [y_i, y_j]] for P = (g y)_(<=N) and every pair i < j.

    The target is 1 + N + floor(N (1 - tau)/nu).
    """
    n_budget = ctx.degree_budget
    known = ctx.known_terms()
    prefixes = [p.truncate(known) for p in ctx.prefixes]
    polys = [truncated_product(g, p, n_budget) for p in prefixes]
    out = []
    for i in range(ctx.nu):
        for j in range(i + 1, ctx.nu):
            minor = prefixes[j].mul_rational(polys[i]) - prefixes[i].mul_rational(polys[j])
            out.append(MinorOrder(i, j, minor.valuation(), known, ctx.order_target))
    return out


def height_report(value: Union[FracElement, Sequence[SeriesPrefix]], n: Optional[int] = None,
                  field: ScalarField = ScalarField()) -> HeightReport:
    """
    h(g) = sum_v sup_k log+ |g_k|_v for a polynomial g, or
    sum_v sup_(s<=n) log+ |y_s|_v for a vector of prefixes (entries of every y_s).
    """
    if isinstance(value, FracElement):
        return family_heights(polynomial_coefficients(value), field)
    prefixes = as_prefixes(value)
    last = min(p.order for p in prefixes) - 1 if n is None else n
    if any(p.order <= last for p in prefixes):
        raise TruncationUnderflowError("prefix too short for the height", requested=last + 1,
                                       available=min(p.order for p in prefixes))
    return family_heights([p[s] for p in prefixes for s in range(last + 1)], field)
