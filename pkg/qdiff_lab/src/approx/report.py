"""
The whole Hermite-Pade chain on one context: g, the remainders, the
truncation checks up to the budget, the minors, the central identity and
det R^<0>.
"""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional

from approx.alpha import alpha_triangle
from approx.context import ApproxContext
from approx.hermite_pade import AuxiliaryPolynomial, MinorOrder, build_g_for, minor_orders
from approx.identities import DeterminantReport, IdentityCheck, central_identity_check, determinant_check
from approx.remainders import RemainderTable, TruncationCheck, remainders, truncation_check
from core import console
from systems.iteration import iterate


@dataclass
class HermitePadeReport:
    """
    Every check of the chain for one context.

    Attributes:
        context: The context
        auxiliary: g with its band residues and height
        table: Remainders R_0..R_horizon
        truncations: One check per n within the budget and the table
        minors: Orders of the 2x2 minors
        identities: Central identity for n = 0..horizon - nu + 1
        determinant: det R^<0>
    """
    context: ApproxContext
    auxiliary: AuxiliaryPolynomial
    table: RemainderTable
    truncations: List[TruncationCheck]
    minors: List[MinorOrder]
    identities: List[IdentityCheck]
    determinant: DeterminantReport

    @property
    def passed(self) -> bool:
        """Every identity and bound holds; det R^<0> is reported, not required."""
        return (
            self.auxiliary.holds
            and self.table.paths_agree
            and not self.table.degree_violations()
            and all(c.identity_holds and c.order_holds for c in self.truncations)
            and all(m.holds for m in self.minors)
            and all(c.holds for c in self.identities)
        )

    def to_dict(self) -> Dict[str, Any]:
        ctx = self.context
        field = ctx.system.field
        return {
            "parameters": {
                "N": ctx.degree_budget,
                "tau": str(ctx.tau),
                "nu": ctx.nu,
                "t": ctx.t,
                "band": ctx.band,
                "order_target": ctx.order_target,
                "budget": ctx.budget,
                "known_terms": ctx.known_terms(),
            },
            "auxiliary": self.auxiliary.to_dict(field),
            "remainders": self.table.to_dict(),
            "truncation_checks": [c.to_dict() for c in self.truncations],
            "minors": [m.to_dict() for m in self.minors],
            "central_identity": [c.to_dict(field) for c in self.identities],
            "determinant": self.determinant.to_dict(field),
            "passed": self.passed,
            "provenance": {
                "note": "C(Lambda) of the degree lemma is not effective and is not reported",
            },
        }


def hermite_pade_report(ctx: ApproxContext, horizon: Optional[int] = None) -> HermitePadeReport:
    """
    Run the chain on a context.

    Args:
        ctx: System, solution prefixes, N and tau
        horizon: Largest remainder index (default: the budget, or nu when
            there is no budget; at least nu - 1 so that R^<0> exists)

    Raises:
        TruncationUnderflowError: If the prefixes are too short for g
        NoSolutionError: If no auxiliary polynomial exists
    """
    console.banner("HERMITE-PADE")
    budget = ctx.budget
    if horizon is None:
        horizon = budget if budget is not None else ctx.nu
    horizon = max(horizon, ctx.nu - 1)

    auxiliary = build_g_for(ctx)
    table = remainders(ctx, auxiliary.g, horizon)
    last = horizon if budget is None else min(horizon, budget)
    truncations = [truncation_check(ctx, auxiliary.g, table, n) for n in range(last + 1)]
    console.info(f"  {len(truncations)} truncation checks")

    last_identity = horizon - ctx.nu + 1
    iteration = iterate(ctx.system, max(last_identity, 1))
    alphas = alpha_triangle(last_identity, ctx.system.field)
    identities = [
        central_identity_check(table, n, iteration, alphas) for n in range(last_identity + 1)
    ]
    return HermitePadeReport(
        ctx, auxiliary, table, truncations, minor_orders(ctx, auxiliary.g),
        identities, determinant_check(table)
    )
