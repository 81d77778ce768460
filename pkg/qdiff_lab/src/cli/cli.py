"""
Command-line front end for qdiff-lab.

Each subcommand parses its inputs, calls the library and wraps the result in
a versioned JSON report on stdout. Progress lines and errors go to stderr.
Malformed input exits with code 2, a violated mathematical precondition with
code 3, and a report whose checks fail with code 1.
"""

import argparse
import sys
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence

from sympy import Rational
from sympy.polys.fields import FracElement

from approx.alpha import alpha_triangle
from approx.context import ApproxContext
from approx.report import hermite_pade_report
from catalog.entries import entry, names
from catalog.eq_analytics import eq_product_defect, eq_product_identity_check, eq_zero_check
from catalog.verification import verify_entry
from cli.models import ErrorReport, PolygonModel, Provenance, ReportEnvelope
from core import console
from core.config_loader import QDiffConfig, load_config, set_config
from core.exceptions import ParseError, QDiffLabError
from core.scalar_field import ScalarField
from gevrey.orders import GevreyOrders, default_grid, normalize, predicted_slopes, prefix_of
from gevrey.detection import detect_orders
from newton_basis.action import annihilates_newton
from newton_basis.solutions import NEGATIVE, POSITIVE, casoratian, local_solution_basis
from operators.action import annihilates
from operators.annihilator import annihilator_search
from operators.conversion import conversion_check
from operators.parser import (
    format_function, format_operator, parse_coefficients, parse_function, parse_matrix, parse_operator
)
from operators.skew_operator import DQ, FORMS, SIGMA
from places.place import Place, product_formula_terms, qfact_order, qfact_order_by_division
from places.size import SizeReport, size_report
from polygons.fourier_image import polygon_fourier_image
from polygons.newton_polygon import NewtonPolygon, polygon, slope_labels
from systems.galockin import galockin_report
from systems.iteration import iterate
from systems.nilpotence import nilpotence_census, nilpotent_reduction
from systems.q_system import QSystem, companion
from transforms.borel import annihilates_in_z, borel_plus, borel_sharp
from transforms.fourier import (
    borel_plus_annihilator, fourier_plus, fourier_plus_inverse, fourier_sharp,
    fourier_sharp_inverse, s_fourier_plus, s_fourier_sharp
)
from visualization.visualizer import QDiffVisualizer

EXIT_CHECK_FAILED = 1


# ==================== Invocation State ====================

@dataclass
class Settings:
    """Resolved configuration of one invocation."""
    config: QDiffConfig
    field: ScalarField
    truncation: Optional[int]
    svg: Optional[str]
    drawings: List[str] = dataclass_field(default_factory=list)

    def order(self) -> int:
        """Series terms to use: --trunc, else the configured default."""
        return self.truncation if self.truncation is not None else self.config.default_truncation

    def _visualizer(self) -> QDiffVisualizer:
        return QDiffVisualizer(str(Path(self.svg).parent))

    def draw_polygons(self, polygons: Sequence[NewtonPolygon]) -> None:
        if not self.svg:
            return
        path = Path(self.svg)
        if len(polygons) == 1:
            self.drawings.append(self._visualizer().draw_polygon(polygons[0], path.name))
        else:
            self.drawings.extend(self._visualizer().draw_polygons(polygons, path.stem))

    def draw_size(self, report: SizeReport) -> None:
        if self.svg:
            self.drawings.append(self._visualizer().draw_size_growth(report, Path(self.svg).name))


@dataclass
class CommandResult:
    """What a subcommand hands back to the envelope."""
    inputs: Dict[str, Any]
    results: Dict[str, Any]
    truncation: Optional[int] = None
    notes: List[str] = dataclass_field(default_factory=list)
    passed: bool = True


@dataclass
class SeriesInput:
    """A series given by catalog name or by a coefficient file."""
    label: str
    field: ScalarField
    generator: Optional[Callable[[int], FracElement]] = None
    values: Optional[List[FracElement]] = None

    def source(self):
        """The generator, or the whole file as a prefix."""
        if self.generator is not None:
            return self.generator
        return prefix_of(self.values, len(self.values), self.field)

    def prefix(self, order: int):
        return prefix_of(self.source(), order, self.field)


class SeriesSourceAction(argparse.Action):
    """Collect --gen/--coeffs occurrences in command-line order."""

    def __call__(self, parser, namespace, values, option_string=None):
        sources = list(getattr(namespace, self.dest, None) or [])
        kind = "coeffs" if option_string == "--coeffs" else "gen"
        sources.append((kind, values))
        setattr(namespace, self.dest, sources)


# ==================== Input Helpers ====================

def parse_rational(text: str, what: str) -> Rational:
    try:
        return Rational(text)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what} must be an exact rational, got {text!r}") from exc


def parse_orders(text: str) -> GevreyOrders:
    """'s1,s2' with s1 rational and s2 an integer."""
    parts = text.split(",")
    if len(parts) != 2:
        raise ParseError(f"orders must be written 's1,s2', got {text!r}")
    s2 = parse_rational(parts[1].strip(), "s2")
    if not s2.is_integer:
        raise ParseError(f"s2 must be an integer, got {parts[1].strip()!r}")
    return GevreyOrders(parse_rational(parts[0].strip(), "s1"), int(s2))


def read_series(kind: str, value: str, settings: Settings) -> SeriesInput:
    if kind == "gen":
        item = entry(value)
        return SeriesInput(item.name, item.field, generator=item.generator)
    try:
        lines = Path(value).read_text().splitlines()
    except OSError as exc:
        raise ParseError(f"cannot read coefficient file: {exc.strerror}", details={"path": value}) from exc
    values = parse_coefficients(lines, settings.field)
    if not values:
        raise ParseError("coefficient file has no coefficients", details={"path": value})
    return SeriesInput(value, settings.field, values=values)


def series_list(args, settings: Settings) -> List[SeriesInput]:
    sources = getattr(args, "series", None) or []
    if not sources:
        raise ParseError("a series is required: use --gen NAME or --coeffs FILE")
    return [read_series(kind, value, settings) for kind, value in sources]


def single_series(args, settings: Settings) -> SeriesInput:
    series = series_list(args, settings)
    if len(series) != 1:
        raise ParseError(f"this command takes one series, got {len(series)}")
    return series[0]


def series_order(series: SeriesInput, settings: Settings) -> int:
    """--trunc, else the configured default; a file is never read past its end."""
    order = settings.order()
    if series.values is not None:
        order = len(series.values) if settings.truncation is None else min(order, len(series.values))
    return order


def read_system(args, settings: Settings) -> QSystem:
    if args.matrix:
        return QSystem.from_lists(parse_matrix(args.matrix, settings.field), settings.field)
    if args.op:
        return companion(parse_operator(args.op, settings.field))
    raise ParseError("a system is required: use --matrix 'a, b; c, d' or --op OPERATOR")


def polygon_model(poly: NewtonPolygon) -> Dict[str, Any]:
    return PolygonModel.model_validate(poly.to_dict()).model_dump()


# ==================== Polygon & Transform Commands ====================

def cmd_nrp(args, settings: Settings) -> CommandResult:
    """Newton-Ramis polygon of an operator."""
    op = parse_operator(args.operator, settings.field)
    poly = polygon(op, args.form)
    settings.draw_polygons([poly])
    return CommandResult(
        inputs={"operator": args.operator, "form": poly.form},
        results={"operator": format_operator(op), "polygon": polygon_model(poly)},
    )


TRANSFORMS = {
    "plus": (fourier_plus, DQ),
    "sharp": (fourier_sharp, SIGMA),
    "plus-inverse": (fourier_plus_inverse, DQ),
    "sharp-inverse": (fourier_sharp_inverse, SIGMA),
    "s-plus": (s_fourier_plus, DQ),
    "s-sharp": (s_fourier_sharp, SIGMA),
    "borel-plus": (borel_plus_annihilator, DQ),
}


def cmd_fourier(args, settings: Settings) -> CommandResult:
    """q-Fourier transform of an operator with both polygons."""
    op = parse_operator(args.operator, settings.field)
    transform, form = TRANSFORMS[args.transform]
    if args.transform == "sharp-inverse":
        image = fourier_sharp_inverse(op, pad=args.pad)
    else:
        image = transform(op)
    source_polygon, image_polygon = polygon(op, form), polygon(image, form)
    results = {
        "operator": format_operator(op),
        "image": format_operator(image),
        "source_polygon": polygon_model(source_polygon),
        "image_polygon": polygon_model(image_polygon),
        "polygon_commutes": None,
    }
    passed = True
    if args.transform in ("plus", "sharp"):
        passed = image_polygon == polygon_fourier_image(source_polygon)
        results["polygon_commutes"] = passed
    settings.draw_polygons([source_polygon, image_polygon])
    return CommandResult(
        inputs={"operator": args.operator, "transform": args.transform, "pad": args.pad},
        results=results,
        passed=passed,
    )


def cmd_borel(args, settings: Settings) -> CommandResult:
    """Formal q-Borel transform of a series, with the transformed annihilator."""
    series = single_series(args, settings)
    order = series_order(series, settings)
    prefix = series.prefix(order)
    image = borel_plus(prefix) if args.kind == "plus" else borel_sharp(prefix)
    results: Dict[str, Any] = {
        "coefficients": [format_function(c, prefix.field) for c in image.values()],
    }
    passed = True
    if args.op:
        op = parse_operator(args.op, prefix.field)
        transformed = borel_plus_annihilator(op) if args.kind == "plus" else fourier_sharp(op)
        killed = annihilates(op, prefix)
        transformed_kills = annihilates_in_z(transformed, image)
        results.update({
            "operator": format_operator(transformed),
            "series_annihilated": killed,
            "transform_annihilates": transformed_kills,
        })
        passed = killed and transformed_kills
    return CommandResult(
        inputs={"series": series.label, "kind": args.kind, "operator": args.op},
        results=results,
        truncation=order,
        notes=["index n is the coefficient of z^(-n-1)"],
        passed=passed,
    )


# ==================== Size & Gevrey Commands ====================

def cmd_size(args, settings: Settings) -> CommandResult:
    """Partial sums of the size functional."""
    series = single_series(args, settings)
    order = series_order(series, settings)
    prefix = series.prefix(order)
    orders = parse_orders(args.normalize) if args.normalize else None
    if orders is not None:
        prefix = normalize(prefix, orders, order, prefix.field, args.inverse_q)
    config = settings.config
    report = size_report(prefix, floor=config.order_bound_floor, factor=config.order_bound_factor)
    settings.draw_size(report)
    return CommandResult(
        inputs={
            "series": series.label,
            "normalize": orders.to_dict() if orders else None,
            "inverse_q": args.inverse_q,
        },
        results=report.to_dict(),
        truncation=order,
        notes=["partial sums up to the truncation are finite evidence for a limsup"],
    )


def cmd_gevrey(args, settings: Settings) -> CommandResult:
    """Windowed q-Gevrey order detection over a candidate grid."""
    config = settings.config
    series = single_series(args, settings)
    if args.candidates:
        grid = [parse_orders(text) for text in args.candidates.split(";") if text.strip()]
    else:
        grid = default_grid(series.field, config.s1_numerators, config.s2_range)
    horizon = args.horizon if args.horizon is not None else config.detection_horizon
    detection = detect_orders(
        series.source(), grid, horizon, series.field,
        config.window_start_fraction, config.slope_threshold,
        config.order_bound_floor, config.order_bound_factor,
    )
    results = detection.to_dict()
    detected = detection.detected
    results["predicted_slopes"] = None
    if detected is not None and detected.s1 <= 0 and detected.s2 <= 0:
        results["predicted_slopes"] = {
            key: slope_labels(value) if value is not None else None
            for key, value in predicted_slopes(detected).items()
        }
    return CommandResult(
        inputs={"series": series.label, "candidates": [o.to_dict() for o in grid], "horizon": horizon},
        results=results,
        truncation=horizon + 1,
        notes=["a bounded window slope is evidence, not a proof, of finite size"],
    )


# ==================== System Commands ====================

def cmd_nilpotent(args, settings: Settings) -> CommandResult:
    """Nilpotent reduction at one cyclotomic place, or a census over 2..M."""
    system = read_system(args, settings)
    horizon = args.horizon if args.horizon is not None else settings.config.nilpotence_horizon
    if args.census is not None:
        census = nilpotence_census(system, args.census, horizon)
        results = census.to_dict()
        passed = all(report.consistent for report in census.reports)
    else:
        report = nilpotent_reduction(system, args.m, horizon)
        results = report.to_dict()
        passed = report.consistent
    results["system"] = system.to_dict()
    return CommandResult(
        inputs={"m": args.m, "census": args.census, "horizon": horizon},
        results=results,
        notes=[f"the Gauss-norm condition is scanned for n <= {horizon}"],
        passed=passed,
    )


def cmd_galockin(args, settings: Settings) -> CommandResult:
    """Galochkin partial sums of G_[n]."""
    system = read_system(args, settings)
    horizon = args.horizon if args.horizon is not None else settings.config.estimator_horizon
    report = galockin_report(iterate(system, horizon))
    results = report.to_dict()
    results["system"] = system.to_dict()
    return CommandResult(
        inputs={"horizon": horizon},
        results=results,
        notes=["the q-adic place is left out of both estimators"],
    )


# ==================== Operator Commands ====================

def cmd_annihilate(args, settings: Settings) -> CommandResult:
    """Guess the minimal sigma-operator of a series."""
    config = settings.config
    series = single_series(args, settings)
    max_order = args.max_order if args.max_order is not None else config.max_order
    max_degree = args.max_degree if args.max_degree is not None else config.max_degree
    found = annihilator_search(
        series.source(), max_order, max_degree, config.guard, series.field, config.specialization_point
    )
    return CommandResult(
        inputs={"series": series.label, "max_order": max_order, "max_degree": max_degree},
        results={"found": found is not None, "operator": format_operator(found) if found else None},
        notes=["an empty box is certified by rank at the specialization point"],
    )


def _local_basis(args, settings: Settings):
    op = parse_operator(args.operator, settings.field)
    xi = parse_function(args.xi, settings.field)
    order = settings.order()
    excluded = args.exclude
    return op, xi, order, local_solution_basis(op, xi, order, excluded)


def cmd_local_solve(args, settings: Settings) -> CommandResult:
    """Truncated basis of local solutions in the q-Newton basis at xi."""
    op, xi, order, solutions = _local_basis(args, settings)
    residuals = [annihilates_newton(op.cleared() if not op.is_polynomial() else op, s) for s in solutions]
    return CommandResult(
        inputs={"operator": args.operator, "xi": args.xi, "exclude": args.exclude},
        results={
            "operator": format_operator(op),
            "xi": format_function(xi, op.field),
            "solutions": [[format_function(c, op.field) for c in s.coeffs] for s in solutions],
            "residuals_vanish": residuals,
        },
        truncation=order,
        notes=["coefficient n multiplies T_n(x, xi) = prod_(k<n) (x - xi q^k)"],
        passed=all(residuals),
    )


def cmd_casorati(args, settings: Settings) -> CommandResult:
    """Casorati determinant of the local basis and its functional equation."""
    op, xi, order, solutions = _local_basis(args, settings)
    report = casoratian(op, solutions)
    return CommandResult(
        inputs={"operator": args.operator, "xi": args.xi},
        results=report.to_dict(op.field),
        truncation=order,
        passed=report.holds,
    )


def cmd_hermite_pade(args, settings: Settings) -> CommandResult:
    """Auxiliary polynomial, remainders and every exact check of the chain."""
    config = settings.config
    system = read_system(args, settings)
    series = series_list(args, settings)
    prefixes = [s.prefix(series_order(s, settings)) for s in series]
    tau = parse_rational(args.tau, "tau") if args.tau else config.tau
    budget = args.degree_budget if args.degree_budget is not None else config.degree_budget
    q1 = parse_function(args.q1, settings.field) if args.q1 else None
    report = hermite_pade_report(ApproxContext(system, prefixes, budget, tau, q1), args.horizon)
    results = report.to_dict()
    results["system"] = system.to_dict()
    return CommandResult(
        inputs={"series": [s.label for s in series], "N": budget, "tau": str(tau), "q1": args.q1},
        results=results,
        truncation=min(p.order for p in prefixes),
        passed=report.passed,
    )


# ==================== Catalog & Check Commands ====================

def cmd_catalog(args, settings: Settings) -> CommandResult:
    """List the catalog, show one entry, or verify its recorded facts."""
    config = settings.config
    if not args.name:
        return CommandResult(
            inputs={"name": None},
            results={
                "names": names(),
                "entries": [entry(name).to_dict() for name in names() if name != "phi(r,t)"],
            },
        )
    item = entry(args.name)
    results: Dict[str, Any] = {"entry": item.to_dict()}
    if settings.svg:
        settings.draw_polygons([polygon(item.operator, DQ), polygon(item.operator, SIGMA)])
    passed = True
    truncation = None
    if args.verify:
        verification = verify_entry(
            item,
            prefix_order=config.verify_prefix,
            horizon=config.verify_horizon,
            candidates=default_grid(item.field, config.s1_numerators, config.s2_range),
            fraction=config.window_start_fraction,
            threshold=config.slope_threshold,
            search=not args.no_search,
            guard=config.guard,
        )
        results["verification"] = verification.to_dict()
        passed = verification.passed
        truncation = config.verify_prefix
    return CommandResult(
        inputs={"name": args.name, "verify": args.verify},
        results=results,
        truncation=truncation,
        passed=passed,
    )


def _require(value, flag: str):
    if value is None:
        raise ParseError(f"this check needs {flag}")
    return value


def cmd_check(args, settings: Settings) -> CommandResult:
    """Run one exact identity check."""
    name = args.check_name
    field = settings.field
    truncation = None
    if name == "product-formula":
        f = parse_function(_require(args.function, "--function"), field)
        terms = product_formula_terms(f, field)
        results = {"terms": {k: str(v) for k, v in terms.items()}}
        passed = terms["total"] == 0
    elif name == "conversion":
        op = parse_operator(_require(args.op, "--op"), field)
        truncation = settings.order()
        check = conversion_check(op, entry(args.gen or "Eq").prefix(truncation))
        results = {"round_trip": check.round_trip, "acts_alike": check.acts_alike, "known": check.known}
        passed = check.holds
    elif name == "qfact":
        kappa, m = _require(args.kappa, "--kappa"), _require(args.m, "--m")
        place = Place.cyclotomic(kappa)
        closed, divided = qfact_order(m, place), qfact_order_by_division(m, place)
        results = {"kappa": kappa, "m": m, "closed_form": closed, "by_division": divided}
        passed = closed == divided
    elif name == "eq-product":
        n_bar = _require(args.n, "--n")
        results = {"defect": eq_product_defect(n_bar + 1, n_bar + 1).to_dict()}
        passed = eq_product_identity_check(n_bar)
    elif name == "eq-zero":
        n_bar = _require(args.n, "--n")
        xi = parse_function(args.xi, field) if args.xi else None
        trace = eq_zero_check(n_bar, xi)
        results = trace.to_dict()
        passed = trace.strictly_increasing(5) if xi is None else True
    else:
        triangle = alpha_triangle(_require(args.n, "--n"), field)
        results = triangle.to_dict()
        passed = triangle.recursion_holds() and not results["integrality_failures"]
    results["passed"] = passed
    return CommandResult(inputs={"check": name}, results=results, truncation=truncation, passed=passed)


COMMANDS: Dict[str, Callable] = {
    "nrp": cmd_nrp,
    "fourier": cmd_fourier,
    "borel": cmd_borel,
    "size": cmd_size,
    "gevrey": cmd_gevrey,
    "nilpotent": cmd_nilpotent,
    "galockin": cmd_galockin,
    "annihilate": cmd_annihilate,
    "local-solve": cmd_local_solve,
    "casorati": cmd_casorati,
    "hermite-pade": cmd_hermite_pade,
    "catalog": cmd_catalog,
    "check": cmd_check,
}

CHECKS = ("product-formula", "conversion", "qfact", "eq-product", "eq-zero", "alpha")


# ==================== Argument Parser ====================

def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="Path to config.json")
    common.add_argument("--trunc", type=int, help="Number of series or Newton terms")
    common.add_argument("--field-root", type=int, dest="field_root", help="Work over Q(q^(1/r))")
    common.add_argument("--svg", help="Write drawings to this SVG path")
    common.add_argument("--verbose", action="store_true", help="Progress lines on stderr")
    return common


def _series_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--gen", "--catalog", dest="series", action=SeriesSourceAction,
                        metavar="NAME", help="Catalog series (repeatable where a vector is expected)")
    parser.add_argument("--coeffs", dest="series", action=SeriesSourceAction,
                        metavar="FILE", help="One coefficient per line, functions of q")


def _system_options(parser: argparse.ArgumentParser) -> None:
    group = parser.add_mutually_exclusive_group()
    group.add_argument("--matrix", help="A_1 row by row: 'a, b; c, d'")
    group.add_argument("--op", help="Operator whose companion system is used")


def build_parser() -> argparse.ArgumentParser:
    common = _common_options()
    parser = argparse.ArgumentParser(
        prog="qdiff-lab",
        description="Exact computations with q-difference operators, G_q-functions and q-Gevrey series.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("nrp", parents=[common], help="Newton-Ramis polygon")
    p.add_argument("operator")
    p.add_argument("--form", choices=FORMS)

    p = sub.add_parser("fourier", parents=[common], help="q-Fourier transforms")
    p.add_argument("operator")
    p.add_argument("--transform", choices=sorted(TRANSFORMS), default="plus")
    p.add_argument("--pad", action="store_true", help="Pad into the image cone (sharp-inverse)")

    p = sub.add_parser("borel", parents=[common], help="Formal q-Borel transforms")
    _series_options(p)
    p.add_argument("--kind", choices=("plus", "sharp"), default="plus")
    p.add_argument("--op", help="Annihilator of the series, transformed alongside")

    p = sub.add_parser("size", parents=[common], help="Size partial sums")
    _series_options(p)
    p.add_argument("--normalize", metavar="S1,S2", help="Divide by the q-Gevrey weights first")
    p.add_argument("--inverse-q", dest="inverse_q", action="store_true", help="Normalize with 1/q")

    p = sub.add_parser("gevrey", parents=[common], help="q-Gevrey order detection")
    _series_options(p)
    p.add_argument("--candidates", metavar="S1,S2;...", help="Candidate grid (default from config)")
    p.add_argument("--horizon", type=int)

    p = sub.add_parser("nilpotent", parents=[common], help="Nilpotent reduction at roots of unity")
    _system_options(p)
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--m", type=int, help="Cyclotomic order")
    which.add_argument("--census", type=int, metavar="M", help="Every m in 2..M")
    p.add_argument("--horizon", type=int)

    p = sub.add_parser("galockin", parents=[common], help="Galochkin partial sums")
    _system_options(p)
    p.add_argument("--horizon", type=int)

    p = sub.add_parser("annihilate", parents=[common], help="Annihilator search")
    _series_options(p)
    p.add_argument("--max-order", dest="max_order", type=int)
    p.add_argument("--max-degree", dest="max_degree", type=int)

    for name in ("local-solve", "casorati"):
        p = sub.add_parser(name, parents=[common], help="Local solutions in the q-Newton basis")
        p.add_argument("operator")
        p.add_argument("--xi", required=True, help="Base point, a nonzero function of q")
        p.add_argument("--exclude", choices=(POSITIVE, NEGATIVE), help="Reject slopes of this sign")

    p = sub.add_parser("hermite-pade", parents=[common], help="Hermite-Pade chain")
    _system_options(p)
    _series_options(p)
    p.add_argument("--degree-budget", dest="degree_budget", type=int, help="N")
    p.add_argument("--tau", help="Rational in (0, 1)")
    p.add_argument("--q1", help="Polynomial clearing A_1^(-1)")
    p.add_argument("--horizon", type=int, help="Largest remainder index")

    p = sub.add_parser("catalog", parents=[common], help="Worked examples")
    p.add_argument("name", nargs="?")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--no-search", dest="no_search", action="store_true")

    p = sub.add_parser("check", parents=[common], help="Exact identity checks")
    p.add_argument("check_name", choices=CHECKS)
    p.add_argument("--function")
    p.add_argument("--op")
    p.add_argument("--gen")
    p.add_argument("--kappa", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--xi")
    return parser


# ==================== Entry Point ====================

def _settings(args) -> Settings:
    config = load_config(args.config)
    set_config(config)
    console.set_verbose(args.verbose or config.verbose)
    config.print_summary()
    field_root = args.field_root if args.field_root is not None else config.field_root
    return Settings(config, ScalarField(field_root), args.trunc, args.svg)


def _fail(exc: QDiffLabError) -> int:
    report = ErrorReport(error=type(exc).__name__, detail=str(exc), exit_code=exc.exit_code)
    print(report.model_dump_json(), file=sys.stderr)
    return exc.exit_code


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Run one command.

    Args:
        argv: Arguments without the program name (default: sys.argv[1:])

    Returns:
        0 on success, 1 if a reported check fails, 2 on malformed input,
        3 on a violated mathematical precondition
    """
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    try:
        settings = _settings(args)
        console.banner(f"qdiff-lab {args.command}")
        outcome = COMMANDS[args.command](args, settings)
        notes = list(outcome.notes) + [f"drawing: {path}" for path in settings.drawings]
        envelope = ReportEnvelope(
            schema_name=settings.config.schema,
            command=args.command,
            inputs=outcome.inputs,
            results=outcome.results,
            provenance=Provenance(field_root=settings.field.r, truncation=outcome.truncation, notes=notes),
        )
    except QDiffLabError as exc:
        return _fail(exc)

    print(envelope.to_json())
    return 0 if outcome.passed else EXIT_CHECK_FAILED


def main() -> None:
    sys.exit(run())
