"""Regime classification and finite-difference checks of the comparative statics.

Each parameter point is classified by how turnover and investment respond to
the external-conflict probability: prop1 tracks the direction of turnover,
prop2 the direction of investment (war regime, more investment, knife edge,
less investment), and prop3 the joint pattern. The labels are the row ids
used in sweep CSVs and reports.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Dict

from .conflict import civil_war_decision, civil_war_threshold, turnover_probability
from .fiscal import investment_argument, optimal_tau2
from .params import CostSpec, ModelParams, check_params

EQUALITY_TOL = 1e-12      # knife-edge classification width
BOUNDARY_TOL = 1e-9       # near-tie flagging width


class TurnoverResponse(Enum):
    """Direction of d(turnover)/d(alpha)."""

    UP = "up"      # war regime: more external risk means more turnover
    DOWN = "down"  # peace regime: more external risk means less turnover


class InvestmentRegime(Enum):
    """Direction of d(tau2*)/d(alpha) at interior solutions."""

    WAR = "2.A"              # war: investment falls with alpha
    INVEST_UP = "2.B.1"      # peace, (eps-mu) > sigma_d*(eps-lam*mu)
    KNIFE_EDGE = "2.B.2"     # peace, equality within tolerance
    INVEST_DOWN = "2.B.3"    # peace, strict reverse inequality


class JointRegime(Enum):
    """Joint turnover/investment pattern."""

    WAR = "3.A"                      # turnover up, investment down
    TURNOVER_DOWN_INVEST_UP = "3.B.1"
    TURNOVER_DOWN_INVEST_DOWN = "3.B.2"


@dataclass(frozen=True)
class RegimeClassification:
    prop1: TurnoverResponse
    prop2: InvestmentRegime
    prop3: JointRegime
    boundary_flags: Dict[str, bool]


@dataclass(frozen=True)
class FiniteDifference:
    estimate: float
    regime_stable: bool  # false when gamma or any flag changed across probes
    corner: bool         # base point sits at the no-investment corner


class DomainExit(ValueError):
    """Raised when a finite-difference probe leaves the valid parameter domain."""


def investment_condition(params: ModelParams) -> float:
    """(eps - mu) - sigma_d*(eps - lam*mu): positive means investment rises
    with alpha in the peace regime."""
    return ((params.epsilon - params.mu)
            - params.sigma_d * (params.epsilon - params.lam * params.mu))


def classify(params: ModelParams) -> RegimeClassification:
    """Regime labels plus near-tie flags for one parameter point."""
    decision = civil_war_decision(params)
    gamma = decision.gamma
    cond = investment_condition(params)
    if gamma == 1:
        prop1 = TurnoverResponse.UP
        prop2 = InvestmentRegime.WAR
        prop3 = JointRegime.WAR
    else:
        prop1 = TurnoverResponse.DOWN
        if cond > EQUALITY_TOL:
            prop2 = InvestmentRegime.INVEST_UP
            prop3 = JointRegime.TURNOVER_DOWN_INVEST_UP
        elif abs(cond) <= EQUALITY_TOL:
            prop2 = InvestmentRegime.KNIFE_EDGE
            prop3 = JointRegime.TURNOVER_DOWN_INVEST_DOWN
        else:
            prop2 = InvestmentRegime.INVEST_DOWN
            prop3 = JointRegime.TURNOVER_DOWN_INVEST_DOWN
    threshold = civil_war_threshold(params)
    flags = {
        "prop2_near_equality": abs(cond) <= BOUNDARY_TOL,
        "near_war_threshold": (threshold is not None
                               and abs(params.sigma_f - threshold) <= BOUNDARY_TOL),
        "near_corner": abs(investment_argument(params, gamma)) <= BOUNDARY_TOL * params.m,
    }
    return RegimeClassification(prop1=prop1, prop2=prop2, prop3=prop3,
                                boundary_flags=flags)


def _solve_point(params: ModelParams, cost: CostSpec, target: str):
    decision = civil_war_decision(params)
    solution = optimal_tau2(params, cost, decision.gamma)
    if target == "phi":
        value = turnover_probability(params, decision.gamma)
    elif target == "tau2":
        value = solution.tau2_star
    else:
        raise ValueError(f"target must be 'phi' or 'tau2', got {target!r}")
    return value, decision.gamma, solution.flags


def finite_difference(params: ModelParams, cost: CostSpec, target: str,
                      wrt: str, h: float = None) -> FiniteDifference:
    """Central difference of phi or tau2* in alpha, lam, or sigma_d.

    regime_stable is False when the war decision or any corner/clamp flag
    differs across the three evaluation points; such estimates straddle a
    kink and must not be sign-checked.
    """
    attr = {"alpha": "alpha", "lambda": "lam", "sigma_d": "sigma_d"}.get(wrt)
    if attr is None:
        raise ValueError(f"wrt must be alpha, lambda, or sigma_d, got {wrt!r}")
    x = getattr(params, attr)
    if h is None:
        h = 1e-6 * max(1.0, abs(x))
    if x - h < 0.0 or x + h > 1.0:
        raise DomainExit(f"{wrt}={x!r} with step {h!r} leaves [0, 1]")
    lo = params.replace(**{attr: x - h})
    hi = params.replace(**{attr: x + h})
    for probe in (lo, hi):
        if check_params(probe.as_dict()):
            raise DomainExit(f"probe at {wrt}={getattr(probe, attr)!r} is invalid")
    f_lo, g_lo, flags_lo = _solve_point(lo, cost, target)
    f_mid, g_mid, flags_mid = _solve_point(params, cost, target)
    f_hi, g_hi, flags_hi = _solve_point(hi, cost, target)
    stable = (g_lo == g_mid == g_hi) and (flags_lo == flags_mid == flags_hi)
    return FiniteDifference(
        estimate=(f_hi - f_lo) / (2.0 * h),
        regime_stable=stable,
        corner=flags_mid.corner)
