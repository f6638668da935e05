"""The incumbent's fiscal-capacity investment problem and the composed solve.

optimal_tau2 inverts the marginal cost at the closed-form marginal benefit;
brute_force_tau2 maximizes the same expected utility on a grid and exists
purely as an independent check. solve_equilibrium chains the war decision,
turnover, investment, and policies into one result.
"""

from dataclasses import dataclass
from typing import Dict, Optional

import numpy as np

from .conflict import civil_war_decision, turnover_probability
from .params import CostSpec, ModelParams, NonConvexCost
from .policy import (OutcomeKind, PolicyOutcome, expected_utility_I1,
                     expected_utility_O1, period1_policy, period2_policy)

BASELINE_KINDS = (OutcomeKind.INCUMBENT_RETAINS, OutcomeKind.OPPOSITION_RULES,
                  OutcomeKind.FOREIGN_ADMINISTRATION)


@dataclass(frozen=True)
class SolveFlags:
    corner: bool                    # marginal benefit <= 0, no investment
    clamped_at_tau_max: bool        # solution cut at the tax-rate cap
    clamped_for_feasibility: bool   # solution cut so period-1 transfers stay nonnegative


@dataclass(frozen=True)
class Tau2Solution:
    tau2_star: float
    argument: float  # marginal benefit handed to the inverse marginal cost
    flags: SolveFlags


@dataclass(frozen=True)
class EquilibriumResult:
    gamma: int
    sigma_f_bar: Optional[float]
    phi: float
    tau2_star: float
    period1: PolicyOutcome
    period2_by_kind: Dict[OutcomeKind, PolicyOutcome]
    eu_I1: float
    eu_O1: float
    flags: SolveFlags


def inverse_marginal(cost: CostSpec, y: float) -> float:
    """Investment x >= 0 with marginal cost y; 0 whenever y <= 0.

    Quadratic costs invert exactly; tabulated costs bisect the strictly
    increasing marginal to |residual| <= 1e-12 * max(1, |y|).
    """
    if not np.isfinite(y):
        raise ValueError(f"marginal value must be finite, got {y!r}")
    if y <= 0.0:
        return 0.0
    if cost.kind == "quadratic":
        return y / cost.c
    ms = np.asarray(cost.marginals)
    if np.any(np.diff(ms) <= 0):
        raise NonConvexCost("marginal cost must be strictly increasing")
    lo, hi = 0.0, float(cost.knots[-1])
    while cost.marginal(hi) < y:
        hi *= 2.0
    tol = 1e-12 * max(1.0, abs(y))
    for _ in range(200):
        mid = (lo + hi) / 2.0
        resid = cost.marginal(mid) - y
        if abs(resid) <= tol:
            return mid
        if resid < 0.0:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2.0


def max_feasible_tau2(params: ModelParams, cost: CostSpec) -> float:
    """Largest tau2 whose investment cost period-1 revenue can still cover,
    capped at tau_max."""
    budget = params.tau1 * params.m
    if cost.kind == "quadratic":
        x_max = float(np.sqrt(2.0 * budget / cost.c))
    else:
        lo, hi = 0.0, float(cost.knots[-1])
        while cost.value(hi) < budget:
            hi *= 2.0
        for _ in range(200):
            mid = (lo + hi) / 2.0
            if cost.value(mid) <= budget:
                lo = mid
            else:
                hi = mid
        x_max = lo
    top = min(params.tau_max, params.tau1 + x_max)
    # round-off guard on the value consumers re-derive: tau1 + x - tau1 can
    # land an ulp above x, so check affordability after the round trip
    for _ in range(16):
        if cost.value(top - params.tau1) <= budget:
            break
        top = float(np.nextafter(top, params.tau1))
    return top


def investment_argument(params: ModelParams, gamma: int,
                        sigma_d2: Optional[float] = None) -> float:
    """Marginal benefit of capacity at zero investment.

    sigma_d2 overrides period-2 cohesiveness (the constitutional-stage case);
    period 1 keeps params.sigma_d, which scales the marginal through the
    period-1 value of retained funds.
    """
    p = params
    phi = turnover_probability(params, gamma)
    if sigma_d2 is None:
        s1 = s2 = p.sigma_d
    else:
        s1, s2 = p.sigma_d, sigma_d2
    loser_prob = p.rho if gamma == 1 else p.mu
    bracket = (-phi * (1.0 - s2)
               - p.alpha * loser_prob * (1.0 - p.lam) * s2
               + (1.0 - s2) / 2.0)
    return p.m * (1.0 + s1) / (1.0 + s2) * bracket


def optimal_tau2(params: ModelParams, cost: CostSpec, gamma: int,
                 sigma_d2: Optional[float] = None) -> Tau2Solution:
    """Closed-form optimal period-2 capacity with corner and clamp handling."""
    argument = investment_argument(params, gamma, sigma_d2)
    raw = params.tau1 + inverse_marginal(cost, argument)
    corner = argument <= 0.0
    clamped_cap = raw > params.tau_max
    tau2 = min(raw, params.tau_max)
    feasible_hi = max_feasible_tau2(params, cost)
    clamped_feas = tau2 > feasible_hi
    if clamped_feas:
        tau2 = feasible_hi
    return Tau2Solution(
        tau2_star=tau2, argument=argument,
        flags=SolveFlags(corner=corner, clamped_at_tau_max=clamped_cap,
                         clamped_for_feasibility=clamped_feas))


def brute_force_tau2(params: ModelParams, cost: CostSpec, gamma: int,
                     grid_step: float = 1e-4) -> float:
    """Grid argmax of the incumbent's expected utility over feasible tau2.

    Independent of the closed form on purpose. Exact ties resolve to the
    lowest tau2 (first index), so the result never depends on evaluation
    order.
    """
    if grid_step <= 0.0:
        raise ValueError("grid_step must be positive")
    hi = max_feasible_tau2(params, cost)
    n = int(np.floor((hi - params.tau1) / grid_step + 1e-9))
    grid = params.tau1 + grid_step * np.arange(n + 1)
    grid = grid[grid <= hi]
    if grid[-1] < hi:
        grid = np.append(grid, hi)  # include the exact feasibility endpoint
    values = expected_utility_I1(params, cost, grid, war=(gamma == 1))
    return float(grid[int(np.argmax(values))])


def solve_equilibrium(params: ModelParams, cost: CostSpec) -> EquilibriumResult:
    """Full backward-induction solve for one parameter point."""
    decision = civil_war_decision(params)
    gamma = decision.gamma
    phi = turnover_probability(params, gamma)
    solution = optimal_tau2(params, cost, gamma)
    tau2 = solution.tau2_star
    period1 = period1_policy(params.tau1, tau2, params.sigma_d, params.m, cost)
    period2 = {kind: period2_policy(kind, tau2, params.sigma_d, params.sigma_f, params.m)
               for kind in BASELINE_KINDS}
    war = gamma == 1
    return EquilibriumResult(
        gamma=gamma, sigma_f_bar=decision.threshold, phi=phi, tau2_star=tau2,
        period1=period1, period2_by_kind=period2,
        eu_I1=expected_utility_I1(params, cost, tau2, war),
        eu_O1=expected_utility_O1(params, tau2, war),
        flags=solution.flags)
