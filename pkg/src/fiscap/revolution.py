"""Variant where a victorious rebel government owes the loser nothing.

Winning a civil war voids the cohesiveness rule for period 2, which raises
the opposition's war payoff and so lowers the war threshold relative to the
baseline (they coincide exactly at zero cohesiveness, where the rule pays
nothing anyway). The peace branch is untouched: with no war there is no
revolution, and the baseline peace solution applies bit for bit.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .conflict import DIRECT_UTILITY_COMPARISON, THRESHOLD_COMPARISON, turnover_probability
from .fiscal import (SolveFlags, Tau2Solution, inverse_marginal,
                     max_feasible_tau2, optimal_tau2)
from .params import CostSpec, ModelParams
from .policy import (InfeasibleInvestment, OutcomeKind, expected_utility_I1,
                     expected_utility_O1, indirect_utility)
from .statics import (InvestmentRegime, JointRegime, TurnoverResponse,
                      investment_condition, EQUALITY_TOL)


@dataclass(frozen=True)
class VariantResult:
    sigma_f_bar_prime: Optional[float]
    gamma_prime: int
    phi_prime: float
    tau2_star_prime: float
    prop1a: TurnoverResponse
    prop2a: InvestmentRegime
    prop3a: JointRegime
    flags: SolveFlags
    method: str


def revolution_threshold(params: ModelParams) -> Optional[float]:
    """War threshold on sigma_f under the revolution rule, or None when its
    denominator is not positive."""
    p = params
    num = 2.0 * (p.alpha * (p.rho - p.mu) * (p.sigma_d - p.lam)
                 - (p.alpha * p.omega + (1.0 - p.alpha) * p.delta)
                 + (1.0 - p.alpha) * p.epsilon * (1.0 - p.sigma_d)
                 - p.alpha * p.rho * p.lam * p.sigma_d)
    den = (p.alpha * (p.rho - p.mu) * (1.0 - p.lam * p.sigma_d)
           + p.alpha * p.omega + (1.0 - p.alpha) * p.delta
           - (1.0 - p.alpha) * p.epsilon * (1.0 - p.sigma_d)
           + p.alpha * p.rho * p.lam * p.sigma_d)
    if den <= 0.0:
        return None
    return num / den


def expected_utility_O1_variant(params: ModelParams, tau2, war: bool):
    """O1's expected period-2 utility when winning a war voids the rule.

    Every opposition accession inside the war branch pays the full transfer
    (winning the civil war outright, or being installed after the foreign
    power wins the simultaneous interstate war). The peace branch is the
    baseline one.
    """
    if not war:
        return expected_utility_O1(params, tau2, war=False)
    p = params
    w_rev = indirect_utility(
        "O1", OutcomeKind.OPPOSITION_RULES_POST_REVOLUTION, tau2, params)
    w_keep = indirect_utility("O1", OutcomeKind.INCUMBENT_RETAINS, tau2, params)
    w_foreign = indirect_utility("O1", OutcomeKind.FOREIGN_ADMINISTRATION, tau2, params)
    with_conflict = ((p.omega + p.rho * p.lam) * w_rev
                     + (1.0 - p.omega - p.rho) * w_keep
                     + p.rho * (1.0 - p.lam) * w_foreign)
    without = p.delta * w_rev + (1.0 - p.delta) * w_keep
    return p.alpha * with_conflict + (1.0 - p.alpha) * without


def expected_utility_I1_variant(params: ModelParams, cost: CostSpec, tau2, war: bool):
    """I1's total expected utility in the variant (war branch pays the old
    incumbent nothing whenever the opposition accedes)."""
    if not war:
        return expected_utility_I1(params, cost, tau2, war=False)
    p = params
    tau2_arr = np.asarray(tau2, dtype=float)
    invest = cost.value(tau2_arr - p.tau1)
    if np.any(np.asarray(invest) > p.tau1 * p.m):
        raise InfeasibleInvestment("investment cost exceeds period-1 revenue")
    period1 = ((1.0 - p.tau1) * p.m
               + 2.0 * (p.tau1 * p.m - invest) / (1.0 + p.sigma_d))
    w_gone = indirect_utility(
        "I1", OutcomeKind.OPPOSITION_RULES_POST_REVOLUTION, tau2_arr, params)
    w_keep = indirect_utility("I1", OutcomeKind.INCUMBENT_RETAINS, tau2_arr, params)
    w_foreign = indirect_utility("I1", OutcomeKind.FOREIGN_ADMINISTRATION, tau2_arr, params)
    with_conflict = ((p.omega + p.rho * p.lam) * w_gone
                     + (1.0 - p.omega - p.rho) * w_keep
                     + p.rho * (1.0 - p.lam) * w_foreign)
    without = p.delta * w_gone + (1.0 - p.delta) * w_keep
    out = np.asarray(period1 + p.alpha * with_conflict + (1.0 - p.alpha) * without)
    return out if out.ndim else float(out)


def variant_war_tau2(params: ModelParams, cost: CostSpec) -> Tau2Solution:
    """Optimal capacity on the variant war branch: losing power now means
    losing everything, so only the keep probability carries weight."""
    p = params
    phi = turnover_probability(params, 1)
    argument = p.m * (-phi + (1.0 - p.sigma_d) / 2.0)
    raw = p.tau1 + inverse_marginal(cost, argument)
    corner = argument <= 0.0
    clamped_cap = raw > p.tau_max
    tau2 = min(raw, p.tau_max)
    feasible_hi = max_feasible_tau2(params, cost)
    clamped_feas = tau2 > feasible_hi
    if clamped_feas:
        tau2 = feasible_hi
    return Tau2Solution(
        tau2_star=tau2, argument=argument,
        flags=SolveFlags(corner=corner, clamped_at_tau_max=clamped_cap,
                         clamped_for_feasibility=clamped_feas))


def brute_force_tau2_variant(params: ModelParams, cost: CostSpec, gamma: int,
                             grid_step: float = 1e-4) -> float:
    """Grid argmax of the variant expected utility (lowest tau2 on ties)."""
    if grid_step <= 0.0:
        raise ValueError("grid_step must be positive")
    hi = max_feasible_tau2(params, cost)
    n = int(np.floor((hi - params.tau1) / grid_step + 1e-9))
    grid = params.tau1 + grid_step * np.arange(n + 1)
    grid = grid[grid <= hi]
    if grid[-1] < hi:
        grid = np.append(grid, hi)
    values = expected_utility_I1_variant(params, cost, grid, war=(gamma == 1))
    return float(grid[int(np.argmax(values))])


def revolution_solve(params: ModelParams, cost: CostSpec) -> VariantResult:
    """Full solve under the revolution rule.

    The war decision comes from the variant utilities directly (threshold as
    cross-check when defined); the peace branch reuses the baseline
    investment solution unchanged.
    """
    war = expected_utility_O1_variant(params, 1.0, war=True)
    peace = expected_utility_O1_variant(params, 1.0, war=False)
    gamma = 1 if war > peace else 0
    threshold = revolution_threshold(params)
    method = DIRECT_UTILITY_COMPARISON
    if threshold is not None:
        by_threshold = 1 if params.sigma_f > threshold else 0
        if by_threshold != gamma and abs(war - peace) > 1e-9 * params.m:
            raise AssertionError(
                f"variant war-decision routes disagree at {params!r}")
        method = THRESHOLD_COMPARISON
    phi = turnover_probability(params, gamma)
    if gamma == 1:
        solution = variant_war_tau2(params, cost)
    else:
        solution = optimal_tau2(params, cost, 0)
    cond = investment_condition(params)
    if gamma == 1:
        prop1a = TurnoverResponse.UP
        prop2a = InvestmentRegime.WAR
        prop3a = JointRegime.WAR
    else:
        prop1a = TurnoverResponse.DOWN
        if cond > EQUALITY_TOL:
            prop2a = InvestmentRegime.INVEST_UP
            prop3a = JointRegime.TURNOVER_DOWN_INVEST_UP
        else:
            prop2a = (InvestmentRegime.KNIFE_EDGE if abs(cond) <= EQUALITY_TOL
                      else InvestmentRegime.INVEST_DOWN)
            prop3a = JointRegime.TURNOVER_DOWN_INVEST_DOWN
    return VariantResult(
        sigma_f_bar_prime=threshold, gamma_prime=gamma, phi_prime=phi,
        tau2_star_prime=solution.tau2_star, prop1a=prop1a, prop2a=prop2a,
        prop3a=prop3a, flags=solution.flags, method=method)
