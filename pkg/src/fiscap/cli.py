"""Command-line surface: solve, sweep, verify, bargain.

Exit codes: 0 on success, 1 on configuration or usage errors, 2 when the
verification suite reports failures.
"""

import argparse
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import List, Optional, Tuple

from .bargaining import bargaining_outcome, check_bargaining_assumptions, classify_prop5
from .fiscal import solve_equilibrium
from .params import (AssumptionViolation, CostSpec, FIELD_ORDER, ModelParams,
                     load_config, validate_params)
from .policy import OutcomeKind, period1_policy, period2_policy
from .revolution import (expected_utility_I1_variant, expected_utility_O1_variant,
                         revolution_solve)
from .statics import classify
from .verify import render_report, run_trials

CSV_HEADER = ("axis1,axis2,gamma,sigma_f_bar,phi,tau2_star,"
              "prop1,prop2,prop3,corner,clamped,status")


def _fmt(value: float) -> str:
    # round first so values inside the rounding tick cannot print as -0.000000
    rounded = round(value, 6) + 0.0
    return f"{rounded:.6f}"


def parse_cost(text: str) -> CostSpec:
    """Parse a cost option of the form quadratic:c=VALUE."""
    kind, _, rest = text.partition(":")
    if kind != "quadratic":
        raise ValueError(f"unsupported cost: {text}")
    key, _, raw = rest.partition("=")
    if key != "c":
        raise ValueError(f"unsupported cost parameter: {text}")
    try:
        c = float(raw)
    except ValueError:
        raise ValueError(f"bad cost value: {text}") from None
    return CostSpec(kind="quadratic", c=c)


@dataclass(frozen=True)
class Axis:
    name: str      # external config key
    values: Tuple[float, ...]


def parse_axis(text: str) -> Axis:
    """Parse an axis option of the form field=start:stop:step, inclusive."""
    name, eq, rest = text.partition("=")
    parts = rest.split(":")
    if not eq or name not in FIELD_ORDER or len(parts) != 3:
        raise ValueError(f"bad axis: {text}")
    try:
        start, stop, step = (float(p) for p in parts)
    except ValueError:
        raise ValueError(f"bad axis: {text}") from None
    if step <= 0.0 or stop < start:
        raise ValueError(f"bad axis range: {text}")
    count = int(math.floor((stop - start) / step + 1e-9)) + 1
    return Axis(name=name, values=tuple(start + i * step for i in range(count)))


def _solve_any(params: ModelParams, cost: CostSpec, variant: str):
    """Returns (gamma, sigma_f_bar, phi, tau2_star, labels, flags) per variant."""
    if variant == "revolution":
        res = revolution_solve(params, cost)
        labels = (res.prop1a.value, res.prop2a.value, res.prop3a.value)
        return (res.gamma_prime, res.sigma_f_bar_prime, res.phi_prime,
                res.tau2_star_prime, labels, res.flags)
    res = solve_equilibrium(params, cost)
    cls = classify(params)
    labels = (cls.prop1.value, cls.prop2.value, cls.prop3.value)
    return (res.gamma, res.sigma_f_bar, res.phi, res.tau2_star, labels, res.flags)


def _policy_line(label: str, out) -> str:
    return (f"{label}: t={_fmt(out.t)} r_inc={_fmt(out.r_inc)} "
            f"r_opp={_fmt(out.r_opp)} r_f={_fmt(out.r_f)} "
            f"invest_cost={_fmt(out.invest_cost)}")


def solve_report(params: ModelParams, cost: CostSpec, variant: str = "baseline") -> str:
    gamma, sigma_f_bar, phi, tau2_star, labels, flags = _solve_any(params, cost, variant)
    prop1, prop2, prop3 = labels
    clamped = flags.clamped_at_tau_max or flags.clamped_for_feasibility
    if variant == "revolution":
        war = gamma == 1
        eu_i1 = expected_utility_I1_variant(params, cost, tau2_star, war)
        eu_o1 = expected_utility_O1_variant(params, tau2_star, war)
        period1 = period1_policy(params.tau1, tau2_star, params.sigma_d,
                                 params.m, cost)
        period2 = {kind: period2_policy(kind, tau2_star, params.sigma_d,
                                        params.sigma_f, params.m)
                   for kind in OutcomeKind}
    else:
        res = solve_equilibrium(params, cost)
        eu_i1, eu_o1 = res.eu_I1, res.eu_O1
        period1, period2 = res.period1, res.period2_by_kind
    lines = [
        f"gamma={gamma} phi={_fmt(phi)} tau2_star={_fmt(tau2_star)} prop2={prop2}",
        "sigma_f_bar=undefined" if sigma_f_bar is None
        else f"sigma_f_bar={_fmt(sigma_f_bar)}",
        f"prop1={prop1} prop3={prop3}",
        f"corner={int(flags.corner)} clamped={int(clamped)}",
        _policy_line("period1", period1),
    ]
    lines.extend(_policy_line(f"period2[{kind.value}]", out)
                 for kind, out in period2.items())
    lines.append(f"eu_I1={_fmt(eu_i1)} eu_O1={_fmt(eu_o1)}")
    return "\n".join(lines)


def bargain_report(params: ModelParams, cost: CostSpec) -> str:
    outcome = bargaining_outcome(params)
    prop5 = classify_prop5(params, cost)
    lines = [
        f"regime={outcome.regime.value} "
        f"sigma_d2_star={_fmt(outcome.sigma_d2_star)} prop5={prop5.case.value}",
        f"accepted={int(outcome.accepted)}",
        f"cond11_lhs={_fmt(outcome.cond11_lhs)} "
        f"cond12_lhs={_fmt(outcome.cond12_lhs)} cond12_rhs={_fmt(outcome.cond12_rhs)}",
        f"d_tau2_d_alpha={_fmt(prop5.derivative)} corner={int(prop5.corner)}",
    ]
    return "\n".join(lines)


def sweep_rows(params: ModelParams, cost: CostSpec, axis1: Axis,
               axis2: Optional[Axis], variant: str = "baseline",
               workers: int = 1) -> List[str]:
    """Row-major sweep over one or two config fields; invalid points keep
    their axis values and carry status=invalid with everything else empty."""
    base = params.as_dict()
    axis2_values: Tuple[Optional[float], ...] = (
        axis2.values if axis2 is not None else (None,))
    points = [(v1, v2) for v1 in axis1.values for v2 in axis2_values]

    def one(point: Tuple[float, Optional[float]]) -> str:
        v1, v2 = point
        raw = dict(base)
        raw[axis1.name] = v1
        axis2_text = ""
        if axis2 is not None:
            raw[axis2.name] = v2
            axis2_text = _fmt(v2)
        try:
            p = validate_params(raw)
        except AssumptionViolation:
            return f"{_fmt(v1)},{axis2_text},,,,,,,,,,invalid"
        gamma, sigma_f_bar, phi, tau2_star, labels, flags = _solve_any(p, cost, variant)
        clamped = flags.clamped_at_tau_max or flags.clamped_for_feasibility
        bar = "" if sigma_f_bar is None else _fmt(sigma_f_bar)
        return (f"{_fmt(v1)},{axis2_text},{gamma},{bar},{_fmt(phi)},"
                f"{_fmt(tau2_star)},{labels[0]},{labels[1]},{labels[2]},"
                f"{int(flags.corner)},{int(clamped)},ok")

    if workers > 1 and len(points) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(one, points))
    else:
        rows = [one(pt) for pt in points]
    return rows


def write_sweep_csv(path: str, rows: List[str]) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(CSV_HEADER + "\n")
        for row in rows:
            fh.write(row + "\n")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fiscap",
        description="Equilibrium solver for external threats, civil conflict, "
                    "and fiscal-capacity investment.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, config_required=True):
        p.add_argument("--config", required=config_required,
                       help="key=value config file")
        p.add_argument("--cost", default="quadratic:c=1",
                       help="investment cost, quadratic:c=VALUE")

    p_solve = sub.add_parser("solve", help="solve one parameter point")
    add_common(p_solve)
    p_solve.add_argument("--variant", choices=["baseline", "revolution"],
                         default="baseline")

    p_sweep = sub.add_parser("sweep", help="solve over a parameter grid")
    add_common(p_sweep)
    p_sweep.add_argument("--axis1", required=True, help="field=start:stop:step")
    p_sweep.add_argument("--axis2", help="field=start:stop:step")
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument("--variant", choices=["baseline", "revolution"],
                         default="baseline")
    p_sweep.add_argument("--workers", type=int, default=1)

    p_verify = sub.add_parser("verify", help="run the property suite")
    p_verify.add_argument("--trials", type=int, default=200)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--variant", choices=["baseline", "revolution"],
                          default="baseline")
    p_verify.add_argument("--workers", type=int, default=1)

    p_bargain = sub.add_parser("bargain", help="solve the constitutional stage")
    add_common(p_bargain)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            report = run_trials(args.trials, args.seed, variant=args.variant,
                                workers=args.workers)
            print(render_report(report))
            return 2 if report.failures else 0

        cost = parse_cost(args.cost)
        params = load_config(args.config, bargaining=args.command == "bargain")
        if args.command == "solve":
            print(solve_report(params, cost, args.variant))
            return 0
        if args.command == "bargain":
            violations = check_bargaining_assumptions(params)
            if violations:
                raise AssumptionViolation(violations)
            print(bargain_report(params, cost))
            return 0
        axis1 = parse_axis(args.axis1)
        axis2 = parse_axis(args.axis2) if args.axis2 else None
        rows = sweep_rows(params, cost, axis1, axis2,
                          variant=args.variant, workers=args.workers)
        write_sweep_csv(args.out, rows)
        print(f"wrote {len(rows)} rows to {args.out}")
        return 0
    except (AssumptionViolation, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
