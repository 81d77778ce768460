"""
Newton-Ramis polygons of skew operators.

For L = sum b_i(x) sigma^i with polynomial b_i the sigma-polygon is the
convex hull of the points (i, j), x^j a monomial of b_i. Writing the same
operator as sum a_i(x) x^i d^i, the d-polygon is the convex hull of the
leftward rays {(u, j) : u <= i} over the monomials x^j of a_i.

A polygon keeps the points read from the operator as given and its two
boundary chains from left to right. It is only defined up to a vertical
shift, so equality compares the chains after moving the lowest point to
v = 0. Slopes of the lower chain are the slopes at 0, slopes of the upper
chain the slopes at infinity; vertical edges have slope oo. For a d-polygon
the left rays are horizontal edges of slope 0 on both chains.
"""

from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

from sympy import Rational, oo

from core.exceptions import DomainError
from core.scalar_field import is_laurent_monomial_denominator, laurent_terms
from operators.conversion import to_dq, to_sigma
from operators.skew_operator import DQ, SIGMA, SkewOperator

ZERO = "zero"
INFINITY = "infinity"
ENDS = (ZERO, INFINITY)

Point = Tuple[int, int]
Slope = Union[Rational, type(oo)]


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _chains(points: Iterable[Point]) -> Tuple[List[Point], List[Point]]:
    """Lower and upper hull chains (monotone chain), both from left to right."""
    pts = sorted(set(points))
    lower: List[Point] = []
    upper: List[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) >= 0:
            upper.pop()
        upper.append(p)
    return lower, upper


def _leftward_chains(points: Sequence[Point]) -> Tuple[List[Point], List[Point]]:
    # anchor the rays on a column left of every point, then drop the anchors
    left = min(u for u, _ in points) - 1
    anchors = {(left, min(v for _, v in points)), (left, max(v for _, v in points))}
    lower, upper = _chains(list(points) + sorted(anchors))
    return [p for p in lower if p not in anchors], [p for p in upper if p not in anchors]


def edge_slope(a: Point, b: Point) -> Slope:
    """Slope of the segment ab (oo if vertical)."""
    if a[0] == b[0]:
        return oo
    return Rational(b[1] - a[1], b[0] - a[0])


def _chain_slopes(chain: Sequence[Point]) -> List[Slope]:
    return [edge_slope(a, b) for a, b in zip(chain, chain[1:])]


@dataclass(frozen=True, eq=False)
class NewtonPolygon:
    """
    Newton-Ramis polygon of a point set.

    Args:
        form: "sigma" or "dq" (the generator the polygon was read from)
        points: Generating lattice points
        leftward: True if every point carries the ray to its left (d-polygons)
    """
    form: str
    points: Tuple[Point, ...]
    leftward: bool = False
    lower: Tuple[Point, ...] = field(init=False)
    upper: Tuple[Point, ...] = field(init=False)

    def __post_init__(self):
        pts = tuple(sorted(set((int(u), int(v)) for u, v in self.points)))
        if not pts:
            raise DomainError("the Newton polygon of the zero operator is not defined")
        lower, upper = _leftward_chains(pts) if self.leftward else _chains(pts)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "lower", tuple(lower))
        object.__setattr__(self, "upper", tuple(upper))

    @classmethod
    def from_points(cls, points: Iterable[Point], form: str = SIGMA, leftward: bool = False) -> "NewtonPolygon":
        """Build the polygon of a point set."""
        return cls(form, tuple(points), leftward)

    @property
    def lowest(self) -> int:
        """Smallest v over the points."""
        return min(v for _, v in self.points)

    def shifted(self, dv: int) -> "NewtonPolygon":
        """The polygon moved by dv vertically."""
        return NewtonPolygon(self.form, tuple((u, v + dv) for u, v in self.points), self.leftward)

    def normalized(self) -> "NewtonPolygon":
        """The polygon moved so that its lowest point has v = 0."""
        return self.shifted(-self.lowest)

    def _key(self):
        low = self.lowest
        return (
            self.leftward,
            tuple((u, v - low) for u, v in self.lower),
            tuple((u, v - low) for u, v in self.upper),
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, NewtonPolygon):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    @property
    def hull(self) -> Tuple[Point, ...]:
        """Vertices in counterclockwise order starting at the lower left (rays excluded)."""
        out = list(self.lower)
        for p in reversed(self.upper):
            if p not in out:
                out.append(p)
        return tuple(out)

    def chain_slopes(self, end: str) -> List[Slope]:
        """Edge slopes of one chain, left to right, starting with the ray if any."""
        if end not in ENDS:
            raise DomainError(f"unknown polygon end {end!r}")
        chain = self.lower if end == ZERO else self.upper
        edges = _chain_slopes(chain)
        if self.leftward:
            edges = [Rational(0)] + edges
        return edges

    def all_slopes(self) -> FrozenSet[Slope]:
        """Slopes of every edge."""
        return frozenset(self.chain_slopes(ZERO)) | frozenset(self.chain_slopes(INFINITY))

    def finite_slopes(self) -> FrozenSet[Rational]:
        """Slopes of every non-vertical edge."""
        return frozenset(s for s in self.all_slopes() if s != oo)

    def to_dict(self) -> dict:
        """Plain data for reports, shifted so that the lowest point has v = 0."""
        poly = self.normalized()
        return {
            "form": poly.form,
            "leftward": poly.leftward,
            "points": [list(p) for p in poly.points],
            "hull": [list(p) for p in poly.hull],
            "slopes": {end: slope_labels(slopes(poly, end)) for end in ENDS},
        }


def slope_label(slope: Slope) -> str:
    """Text form of a slope ("oo" for vertical edges)."""
    return "oo" if slope == oo else str(slope)


def slope_labels(values: Iterable[Slope]) -> List[str]:
    """Sorted labels, finite slopes first."""
    return [slope_label(s) for s in sorted(values, key=lambda s: (s == oo, s if s != oo else 0))]


def _monomial_points(op: SkewOperator, by_index: bool) -> List[Point]:
    points = []
    for i, c in enumerate(op.coeffs):
        if not c:
            continue
        for j in laurent_terms(c):
            points.append((i, j - i if by_index else j))
    return points


def polygon(op: SkewOperator, form: Optional[str] = None) -> NewtonPolygon:
    """
    Newton-Ramis polygon of an operator with respect to sigma or d.

    Operators with Laurent polynomial coefficients are read as given; others
    are first cleared of denominators and content.

    Args:
        op: Operator in either form (converted as needed)
        form: "sigma" or "dq"; defaults to the operator's own form

    Raises:
        DomainError: For the zero operator or an unknown form
    """
    form = form or op.form
    if op.is_zero():
        raise DomainError("the Newton polygon of the zero operator is not defined")
    if form == SIGMA:
        op = to_sigma(op)
    elif form == DQ:
        op = to_dq(op)
    else:
        raise DomainError(f"unknown operator form {form!r}")
    if not all(is_laurent_monomial_denominator(c) for c in op.coeffs):
        op = op.cleared()
    if form == SIGMA:
        return NewtonPolygon(SIGMA, tuple(_monomial_points(op, False)))
    # L = sum c_i d^i = sum (c_i / x^i) x^i d^i
    return NewtonPolygon(DQ, tuple(_monomial_points(op, True)), leftward=True)


def leftward_closure(poly: NewtonPolygon) -> NewtonPolygon:
    """The union of the leftward rays from every point of the polygon."""
    return NewtonPolygon(DQ, poly.points, leftward=True)


def reflected(poly: NewtonPolygon) -> NewtonPolygon:
    """Mirror image in the line v = 0 (the substitution x -> 1/x)."""
    return NewtonPolygon(poly.form, tuple((u, -v) for u, v in poly.points), poly.leftward)


def slopes(poly: NewtonPolygon, end: str = ZERO) -> FrozenSet[Slope]:
    """
    Slopes of the polygon at 0 (lower chain) or at infinity (upper chain).

    Vertical edges are reported as oo. Upper-chain slopes are reported as
    drawn, so sigma^2 - 2 sigma + 1 - (q-1)^2 x has the single finite slope
    -1/2 at infinity.
    """
    return frozenset(poly.chain_slopes(end))
