"""Invariant suite behind ``ota verify``"""

import logging
import math
from functools import partial
from typing import Callable, Iterable

import numpy as np
from pydantic import BaseModel, ConfigDict, ValidationError

from ota_cli.analysis.certify import certify
from ota_cli.analysis.conversion import (
    check_consistency_integral_constraint,
    conversion_function,
    conversion_lower_bound,
)
from ota_cli.analysis.frontier import dominance_gaps, lb_consistency, pareto_frontier
from ota_cli.analysis.instances import instance_ratio, p_instance
from ota_cli.analysis.sufficient import check_sufficient_condition, design_partition
from ota_cli.core.models import Instance, PriceBounds, ProblemKind
from ota_cli.engine.policy import make_policy, naive_policy
from ota_cli.engine.runner import replay_allocation_optimality, run_instance
from ota_cli.harness.backtest import BacktestConfig, run_backtest
from ota_cli.harness.data import synthesize_prices
from ota_cli.thresholds.breakpoints import boundary_breakpoints, intermediate_breakpoints
from ota_cli.thresholds.designs import NaiveMode, build_threshold_one_way
from ota_cli.thresholds.special import lambert_w
from ota_cli.thresholds.tradeoff import tradeoff, tradeoff_one_way
from ota_cli.utils.exceptions import OtaError

logger = logging.getLogger(__name__)

LAMBDAS = (0.0, 0.25, 0.5, 0.75, 1.0)
BACKTEST_TICKS = 10020
BACKTEST_SERIES_SEED = 21


class CheckResult(BaseModel):
    """Outcome of one named invariant check"""

    model_config = ConfigDict(frozen=True)

    name: str
    passed: bool
    detail: str = ""


def _predictions(bounds: PriceBounds, count: int = 11) -> list[float]:
    return np.linspace(bounds.lower, bounds.upper, count).tolist()


def check_lambert_w() -> str:
    grid = np.concatenate((np.linspace(-1.0 / math.e, 10.0, 2000), np.geomspace(10.0, 1e3, 200)))
    worst = 0.0
    for x in grid.tolist():
        w = lambert_w(x)
        worst = max(worst, abs(w * math.exp(w) - x) / max(1.0, abs(x)))
    if worst > 1e-12:
        raise AssertionError(f"relative residual {worst:.3g}")
    return f"max relative residual {worst:.3g}"


def check_tradeoffs(theta: float) -> str:
    for kind in ProblemKind:
        previous = None
        for lam in np.linspace(0.0, 1.0, 200).tolist():
            params = tradeoff(kind, lam, theta)
            if previous is not None and (
                params.eta < previous.eta - 1e-12 or params.gamma > previous.gamma + 1e-12
            ):
                raise AssertionError(f"{kind.value} trade-off is not monotone at λ={lam:.4g}")
            if abs(params.eta - lb_consistency(kind, params.gamma, theta)) > 1e-9:
                raise AssertionError(f"{kind.value} design is off its lower bound at λ={lam:.4g}")
            previous = params
    return "identities, monotonicity and lower bounds hold"


def check_breakpoints(bounds: PriceBounds) -> str:
    worst = 0.0
    for lam in LAMBDAS:
        params = tradeoff_one_way(lam, bounds.theta)
        boundary = boundary_breakpoints(bounds, params.eta, params.gamma)
        worst = max(worst, *map(abs, boundary.residuals(bounds, params.eta, params.gamma)))
        for prediction in np.linspace(boundary.m, bounds.upper, 12).tolist():
            points = intermediate_breakpoints(bounds, params.eta, params.gamma, prediction)
            residuals = points.residuals(bounds, params.eta, params.gamma, prediction)
            worst = max(worst, *map(abs, residuals))
    if worst > 1e-8 * bounds.upper:
        raise AssertionError(f"breakpoint residual {worst:.3g}")
    return f"max residual {worst:.3g}"


def check_round_trip(bounds: PriceBounds) -> str:
    for lam in LAMBDAS:
        for prediction in _predictions(bounds):
            phi = build_threshold_one_way(bounds, lam, prediction)
            prices = np.linspace(bounds.lower, bounds.upper, 1000)
            levels = phi.pseudo_inverse_many(prices)
            interior = (levels > 1e-6) & (levels < 1.0 - 1e-6)
            above = phi(levels[interior])
            below = phi(levels[interior] - 1e-9)
            tol = 1e-9 * bounds.upper
            if np.any(below > prices[interior] + tol) or np.any(above < prices[interior] - tol):
                raise AssertionError(f"pseudo-inverse round trip fails at λ={lam}, P={prediction}")
    return "pseudo-inverse brackets every interior price"


def check_sufficient_conditions(bounds: PriceBounds) -> str:
    for kind in ProblemKind:
        for lam in LAMBDAS:
            for prediction in _predictions(bounds):
                policy = make_policy(bounds, kind, lam, prediction)
                partition = design_partition(bounds, kind, lam, prediction)
                report = check_sufficient_condition(
                    policy.as_threshold,
                    partition.prices,
                    partition.utilizations,
                    partition.alphas,
                    bounds,
                )
                if not report.passed:
                    failure = report.failures[0] if report.failures else None
                    detail = failure.detail if failure else "φ(1) is not a partition price"
                    raise AssertionError(f"{kind.value} λ={lam} P={prediction:.6g}: {detail}")
    return "every design satisfies its piecewise condition"


def check_dominance(theta: float) -> str:
    gaps = dominance_gaps(theta)
    if gaps.size and gaps.min() < -1e-12:
        raise AssertionError(f"one-way frontier is above max-search by {-gaps.min():.3g}")
    frontier = pareto_frontier(theta, ProblemKind.FRACTIONAL, 50)
    if any(b.gamma >= a.gamma for a, b in zip(frontier, frontier[1:])) and theta > 1.0:
        raise AssertionError("one-way frontier is not strictly monotone")
    return "one-way frontier dominates max-search"


def check_certificates(bounds: PriceBounds) -> str:
    worst = 0.0
    for kind in ProblemKind:
        for lam in LAMBDAS:
            targets = tradeoff(kind, lam, bounds.theta)
            factory = partial(make_policy, bounds, kind, lam)
            report = certify(
                factory,
                bounds,
                targets,
                p_grid_size=12,
                steps=300,
                prediction_grid_size=6,
            )
            if not report.within_targets(1e-3):
                raise AssertionError(
                    f"{kind.value} λ={lam}: measured ({report.measured_consistency:.6g}, "
                    f"{report.measured_robustness:.6g}) above targets "
                    f"({targets.eta:.6g}, {targets.gamma:.6g})"
                )
            worst = max(worst, report.measured_robustness / targets.gamma)
    return f"worst robustness/target {worst:.6g}"


def check_replay(bounds: PriceBounds, seed: int) -> str:
    rng = np.random.default_rng(seed)
    for trial in range(20):
        lam = float(rng.uniform())
        prediction = float(rng.uniform(bounds.lower, bounds.upper))
        policy = make_policy(bounds, ProblemKind.FRACTIONAL, lam, prediction)
        inst = Instance(prices=tuple(rng.uniform(bounds.lower, bounds.upper, 50).tolist()))
        trace = run_instance(policy, inst)
        if not replay_allocation_optimality(policy, inst, trace):
            raise AssertionError(f"trial {trial}: an allocation is not the step optimum")
    return "allocations maximize the per-step objective"


def check_baselines(bounds: PriceBounds) -> str:
    lam = 0.5
    root = math.sqrt(bounds.lower * bounds.upper)
    report = certify(
        lambda prediction: naive_policy(bounds, NaiveMode.LINEAR_BLEND, prediction, lam),
        bounds,
        tradeoff(ProblemKind.INTEGRAL, lam, bounds.theta),
        p_grid_size=20,
        steps=300,
        prediction_grid_size=11,
        extra_predictions=(root * (1.0 - 1e-9),),
    )
    bound = lam * math.sqrt(bounds.theta) + (1.0 - lam) * bounds.theta
    if not bound - 0.02 <= report.measured_robustness <= bound + 1e-9:
        raise AssertionError(
            f"blend robustness {report.measured_robustness:.6g}, expected {bound:.6g}"
        )
    if report.measured_consistency < math.sqrt(bounds.theta) - 0.01:
        raise AssertionError(f"blend consistency {report.measured_consistency:.6g} beats √θ")

    blind = naive_policy(bounds, NaiveMode.BLIND, bounds.upper)
    near_miss = max(bounds.lower, bounds.upper - 0.01 * bounds.lower)
    ratio = instance_ratio(blind, p_instance(bounds, near_miss, 300))
    if ratio < bounds.theta - 0.01 - 1e-9:
        raise AssertionError(f"blind ratio {ratio:.6g} at a near miss of P = U")
    return f"blend robustness {report.measured_robustness:.6g}, blind near miss {ratio:.6g}"


def check_conversion(bounds: PriceBounds) -> str:
    lam = 0.5
    params = tradeoff(ProblemKind.FRACTIONAL, lam, bounds.theta)
    factory = partial(make_policy, bounds, ProblemKind.FRACTIONAL, lam)
    grid = np.linspace(bounds.lower, bounds.upper, 200)
    samples = conversion_function(factory, bounds.upper, bounds, grid, steps=100)
    values = np.array([g for _, g in samples])
    if np.any(np.diff(values) < -1e-12):
        raise AssertionError("conversion function decreases")
    if abs(values[-1] - 1.0) > 1e-9:
        raise AssertionError(f"g(U) = {values[-1]:.12g}")
    for p, g in samples:
        if p >= params.gamma * bounds.lower:
            floor = conversion_lower_bound(p, params.gamma, bounds)
            if g < floor - 0.01:
                raise AssertionError(f"g({p:.6g}) = {g:.6g} below the robustness curve {floor:.6g}")
    if not check_consistency_integral_constraint(samples, params.gamma, params.eta, bounds):
        raise AssertionError("conversion integral exceeds (η - 1)U/η")
    return "non-decreasing, complete at U, above the robustness curve, integral within 1%"


def check_backtest(seed: int) -> str:
    series = synthesize_prices(BACKTEST_TICKS, vol=0.01, seed=BACKTEST_SERIES_SEED)
    config = BacktestConfig(
        window_len=20, stride=20, kind=ProblemKind.INTEGRAL, seed=seed, lambda_grid_size=33
    )
    report = run_backtest(config, series)
    learner = report.cumulative_profit["alf"][-1]
    static = report.cumulative_profit["best_static"][-1]
    if learner < 0.95 * static:
        raise AssertionError(f"learner profit {learner:.6g} vs best static {static:.6g}")
    rate = np.asarray(report.regret_rate)
    if np.any(np.diff(rate[-100:]) > 0.0) or rate[-1] > 0.1:
        raise AssertionError(f"regret rate ends at {rate[-1]:.4g} or rises in the last rounds")

    crashed = run_backtest(config.model_copy(update={"crash_prob": 0.45}), series)
    best = crashed.summaries["offline_best"].median
    worst = crashed.summaries["worst_case"].median
    if best > worst:
        raise AssertionError(f"offline-best median {best:.6g} above worst-case {worst:.6g}")
    return f"{report.windows_evaluated} windows, regret/T {rate[-1]:.3g}"


def _run(name: str, check: Callable[[], str]) -> CheckResult:
    try:
        detail = check()
    except (AssertionError, OtaError, ValidationError) as e:
        logger.warning("check %s failed: %s", name, e)
        return CheckResult(name=name, passed=False, detail=str(e))
    logger.info("check %s passed", name)
    return CheckResult(name=name, passed=True, detail=detail)


def run_verification(
    thetas: Iterable[float] = (5.0,), seed: int = 0, quick: bool = False
) -> list[CheckResult]:
    """Run the invariant suite for each fluctuation ratio (with L = 1)"""
    results = [_run("lambert-w", check_lambert_w)]
    for theta in thetas:
        bounds = PriceBounds.from_theta(theta)
        suffix = f"[theta={theta:g}]"
        checks: list[tuple[str, Callable[[], str]]] = [
            ("tradeoffs", partial(check_tradeoffs, theta)),
            ("breakpoints", partial(check_breakpoints, bounds)),
            ("pseudo-inverse", partial(check_round_trip, bounds)),
            ("sufficient-condition", partial(check_sufficient_conditions, bounds)),
            ("frontier", partial(check_dominance, theta)),
            ("replay", partial(check_replay, bounds, seed)),
            ("baselines", partial(check_baselines, bounds)),
            ("conversion", partial(check_conversion, bounds)),
        ]
        if not quick:
            checks.append(("certificates", partial(check_certificates, bounds)))
        results += [_run(f"{name} {suffix}", check) for name, check in checks]
    results.append(_run("backtest", partial(check_backtest, seed)))
    return results
