"""Per-period equilibrium policies and the indirect/expected utilities.

Both periods have corner policy solutions: the ruler taxes at capacity and
splits the proceeds according to the mandated transfer shares. All utilities
are per member of the viewing group. Expected utilities accept scalar or
array tau2 so grid oracles can evaluate them vectorized.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Union

import numpy as np

from .params import CostSpec, ModelParams


class OutcomeKind(Enum):
    """Who rules in period 2."""

    INCUMBENT_RETAINS = "incumbent_retains"
    OPPOSITION_RULES = "opposition_rules"
    OPPOSITION_RULES_POST_REVOLUTION = "opposition_rules_post_revolution"
    FOREIGN_ADMINISTRATION = "foreign_administration"


DOMESTIC_KINDS = (OutcomeKind.INCUMBENT_RETAINS, OutcomeKind.OPPOSITION_RULES)


class InfeasibleInvestment(ValueError):
    """Raised when the investment cost exceeds period-1 tax revenue."""


@dataclass(frozen=True)
class PolicyOutcome:
    """A period's tax rate and per-member transfers.

    Revenue accounting: t*m = invest_cost + (r_inc + r_opp)/2 + r_f, where the
    incumbent-group and opposition-group transfers each reach half the
    population and r_f goes to the foreign power.
    """

    t: float
    r_inc: float
    r_opp: float
    r_f: float
    invest_cost: float = 0.0

    def budget_gap(self, m: float) -> float:
        """Signed budget residual, relative to the revenue scale."""
        revenue = self.t * m
        spend = self.invest_cost + (self.r_inc + self.r_opp) / 2.0 + self.r_f
        return (revenue - spend) / max(1.0, abs(revenue))


def period2_policy(kind: OutcomeKind, tau2: float, sigma_d: float,
                   sigma_f: float, m: float) -> PolicyOutcome:
    """Period-2 corner policy for the given ruler."""
    if not 0.0 <= tau2 <= 1.0:
        raise ValueError(f"tau2={tau2!r} must be in [0, 1]")
    if kind in DOMESTIC_KINDS:
        r_inc = 2.0 * tau2 * m / (1.0 + sigma_d)
        return PolicyOutcome(t=tau2, r_inc=r_inc, r_opp=sigma_d * r_inc, r_f=0.0)
    if kind is OutcomeKind.FOREIGN_ADMINISTRATION:
        r_f = 2.0 * tau2 * m / (2.0 + sigma_f)
        return PolicyOutcome(t=tau2, r_inc=0.0, r_opp=sigma_f * r_f, r_f=r_f)
    # post-revolution: the winner owes the loser nothing
    return PolicyOutcome(t=tau2, r_inc=2.0 * tau2 * m, r_opp=0.0, r_f=0.0)


def period1_policy(tau1: float, tau2: float, sigma_d: float, m: float,
                   cost: CostSpec) -> PolicyOutcome:
    """Period-1 corner policy: tax at capacity, pay the investment, split the rest."""
    invest = cost.value(tau2 - tau1)
    if invest > tau1 * m:
        raise InfeasibleInvestment(
            f"investment cost {invest:.6g} exceeds period-1 revenue {tau1 * m:.6g}")
    r_inc = 2.0 * (tau1 * m - invest) / (1.0 + sigma_d)
    return PolicyOutcome(t=tau1, r_inc=r_inc, r_opp=sigma_d * r_inc, r_f=0.0,
                         invest_cost=invest)


def indirect_utility(viewer: str, kind: OutcomeKind, tau2, params: ModelParams):
    """Period-2 indirect utility of `viewer` ("I1" or "O1") under the given ruler.

    Accepts scalar or array tau2.
    """
    tau2 = np.asarray(tau2, dtype=float)
    base = (1.0 - tau2) * params.m
    inc_share = 2.0 * tau2 * params.m / (1.0 + params.sigma_d)
    if viewer == "O1":
        if kind is OutcomeKind.OPPOSITION_RULES:
            out = base + inc_share
        elif kind is OutcomeKind.INCUMBENT_RETAINS:
            out = base + params.sigma_d * inc_share
        elif kind is OutcomeKind.FOREIGN_ADMINISTRATION:
            out = base + 2.0 * params.sigma_f * tau2 * params.m / (2.0 + params.sigma_f)
        else:
            out = base + 2.0 * tau2 * params.m
    elif viewer == "I1":
        if kind is OutcomeKind.INCUMBENT_RETAINS:
            out = base + inc_share
        elif kind is OutcomeKind.OPPOSITION_RULES:
            out = base + params.sigma_d * inc_share
        else:
            # foreign administration and post-revolution leave the old incumbent nothing
            out = base
    else:
        raise ValueError(f"viewer must be 'I1' or 'O1', got {viewer!r}")
    return out if out.ndim else float(out)


def _mixture(params: ModelParams, war: bool, w_opp, w_keep, w_foreign):
    """Expected period-2 value over the turnover lottery for either branch."""
    p = params
    if war:
        with_conflict = ((p.omega + p.rho * p.lam) * w_opp
                         + (1.0 - p.omega - p.rho) * w_keep
                         + p.rho * (1.0 - p.lam) * w_foreign)
        without = p.delta * w_opp + (1.0 - p.delta) * w_keep
    else:
        with_conflict = (p.mu * p.lam * w_opp
                         + (1.0 - p.mu) * w_keep
                         + p.mu * (1.0 - p.lam) * w_foreign)
        without = p.epsilon * w_opp + (1.0 - p.epsilon) * w_keep
    return p.alpha * with_conflict + (1.0 - p.alpha) * without


def expected_utility_O1(params: ModelParams, tau2, war: bool):
    """O1's expected period-2 utility under civil war (war=True) or peace."""
    return _mixture(
        params, war,
        indirect_utility("O1", OutcomeKind.OPPOSITION_RULES, tau2, params),
        indirect_utility("O1", OutcomeKind.INCUMBENT_RETAINS, tau2, params),
        indirect_utility("O1", OutcomeKind.FOREIGN_ADMINISTRATION, tau2, params))


def expected_utility_I1(params: ModelParams, cost: CostSpec, tau2, war: bool):
    """I1's total expected utility: period-1 value net of investment plus the
    expected period-2 value. Accepts scalar or array tau2; raises
    InfeasibleInvestment if any point costs more than period-1 revenue.
    """
    tau2_arr = np.asarray(tau2, dtype=float)
    invest = cost.value(tau2_arr - params.tau1)
    if np.any(np.asarray(invest) > params.tau1 * params.m):
        raise InfeasibleInvestment("investment cost exceeds period-1 revenue")
    period1 = ((1.0 - params.tau1) * params.m
               + 2.0 * (params.tau1 * params.m - invest) / (1.0 + params.sigma_d))
    period2 = _mixture(
        params, war,
        indirect_utility("I1", OutcomeKind.OPPOSITION_RULES, tau2_arr, params),
        indirect_utility("I1", OutcomeKind.INCUMBENT_RETAINS, tau2_arr, params),
        indirect_utility("I1", OutcomeKind.FOREIGN_ADMINISTRATION, tau2_arr, params))
    out = np.asarray(period1 + period2)
    return out if out.ndim else float(out)
