"""Empirical consistency, robustness and error-dependent competitive ratio"""

import logging
from typing import Iterable, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ota_cli.analysis.instances import (
    PolicyFactory,
    build_instance,
    evaluate_policy,
    instance_ratio,
    p_instance,
)
from ota_cli.core.models import ExecutionTrace, PriceBounds
from ota_cli.engine.policy import Policy
from ota_cli.engine.runner import run_instance
from ota_cli.thresholds.tradeoff import TradeoffParams
from ota_cli.utils.exceptions import DomainError

logger = logging.getLogger(__name__)

NUDGE = 1e-9


class RatioRecord(BaseModel):
    """Worst ratio measured for one (prediction, peak) pair"""

    model_config = ConfigDict(frozen=True)

    prediction: float
    peak: float
    ratio: float
    shape: str


class CertificateReport(BaseModel):
    """Measured consistency, robustness and κ(ξ) curve against the design targets"""

    model_config = ConfigDict(frozen=True)

    measured_consistency: float
    measured_robustness: float
    kappa_curve: tuple[tuple[float, float], ...]
    worst_instances: dict[str, tuple[float, float]]
    targets: TradeoffParams
    records: tuple[RatioRecord, ...] = ()

    @model_validator(mode="after")
    def _check_order(self) -> "CertificateReport":
        if self.measured_consistency > self.measured_robustness:
            raise ValueError("consistency cannot exceed robustness")
        return self

    def within_targets(self, tolerance: float = 1e-3) -> bool:
        """Both measurements are at most the targets times (1 + tolerance)"""
        return (
            self.measured_consistency <= self.targets.eta * (1.0 + tolerance)
            and self.measured_robustness <= self.targets.gamma * (1.0 + tolerance)
        )


def critical_prices(policy: Policy, prediction: float, targets: TradeoffParams) -> list[float]:
    """Prices where the worst case can switch: bounds, prediction, junctions and levels"""
    bounds = policy.bounds
    lower, upper = bounds.lower, bounds.upper
    delta = NUDGE * (upper - lower)
    points = [lower, upper, prediction, prediction - delta, prediction + delta]
    points += [lower * targets.eta, lower * targets.gamma]
    for segment in policy.as_threshold.segments:
        for value in (segment.start_value, segment.end_value):
            points += [value, value - delta]
    return [bounds.clamp(p) for p in points]


def _peak_grid(policy: Policy, prediction: float, targets: TradeoffParams, size: int) -> np.ndarray:
    bounds = policy.bounds
    dense = np.linspace(bounds.lower, bounds.upper, size)
    return np.unique(np.concatenate((dense, critical_prices(policy, prediction, targets))))


def certify(
    factory: PolicyFactory,
    bounds: PriceBounds,
    targets: TradeoffParams,
    p_grid_size: int = 50,
    steps: int = 2000,
    prediction_grid_size: int = 11,
    extra_predictions: Sequence[float] = (),
    xi_grid_size: int = 21,
) -> CertificateReport:
    """Grid adversary over predictions P and true peaks p

    Consistency is the worst ratio with p = P, robustness the worst over
    every pair, κ(ξ) the worst over pairs with |p - P| <= ξ.
    """
    if p_grid_size < 10 or steps < 100:
        raise DomainError("certification needs p_grid_size >= 10 and steps >= 100")
    if prediction_grid_size < 2:
        raise DomainError("certification needs at least two predictions")

    predictions = np.unique(
        np.concatenate(
            (
                np.linspace(bounds.lower, bounds.upper, prediction_grid_size),
                [bounds.clamp(p) for p in extra_predictions],
            )
        )
    )

    records: list[RatioRecord] = []
    for prediction in predictions.tolist():
        policy = factory(prediction)
        for peak in _peak_grid(policy, prediction, targets, p_grid_size).tolist():
            ratio, shape = evaluate_policy(policy, peak, steps)
            records.append(RatioRecord(prediction=prediction, peak=peak, ratio=ratio, shape=shape))
        logger.info("certified prediction %.6g (%d records)", prediction, len(records))

    consistent = [r for r in records if r.peak == r.prediction]
    worst_consistent = max(consistent, key=lambda r: r.ratio)
    worst_overall = max(records, key=lambda r: r.ratio)

    errors = np.array([abs(r.peak - r.prediction) for r in records])
    ratios = np.array([r.ratio for r in records])
    xis = np.linspace(0.0, bounds.width, xi_grid_size)
    kappa = tuple(
        (float(xi), float(np.max(ratios[errors <= xi], initial=worst_consistent.ratio)))
        for xi in xis
    )

    return CertificateReport(
        measured_consistency=worst_consistent.ratio,
        measured_robustness=worst_overall.ratio,
        kappa_curve=kappa,
        worst_instances={
            "consistency": (worst_consistent.prediction, worst_consistent.peak),
            "robustness": (worst_overall.prediction, worst_overall.peak),
        },
        targets=targets,
        records=tuple(records),
    )


def empirical_kappa(
    factory: PolicyFactory,
    bounds: PriceBounds,
    prediction: float,
    xi_grid: Iterable[float],
    steps: int = 2000,
    p_grid_size: int = 200,
) -> list[tuple[float, float]]:
    """κ(ξ) for a single prediction over p-instances with peaks in [P-ξ, P+ξ]"""
    policy = factory(prediction)
    xis = sorted(float(xi) for xi in xi_grid)
    if any(xi < 0 for xi in xis):
        raise DomainError("prediction error radius must be non-negative")
    peaks = np.linspace(bounds.lower, bounds.upper, p_grid_size).tolist()
    peaks += [prediction]
    peaks += [bounds.clamp(prediction - xi) for xi in xis]
    peaks += [bounds.clamp(prediction + xi) for xi in xis]
    peak_values = np.unique(np.array(peaks))
    ratios = np.array(
        [instance_ratio(policy, p_instance(bounds, p, steps)) for p in peak_values.tolist()]
    )
    errors = np.abs(peak_values - prediction)
    return [(xi, float(np.max(ratios[errors <= xi]))) for xi in xis]


def worst_trace(
    factory: PolicyFactory,
    report: CertificateReport,
    steps: int = 2000,
    which: str = "robustness",
) -> ExecutionTrace:
    """Replay the instance behind one of the report's worst (P, p) pairs

    Raises:
        DomainError: unknown ``which``, or a report without records
    """
    if which not in report.worst_instances:
        raise DomainError(f"no worst instance named {which!r}")
    prediction, peak = report.worst_instances[which]
    matches = [r for r in report.records if (r.prediction, r.peak) == (prediction, peak)]
    if not matches:
        raise DomainError("the report carries no record for its worst instance")
    record = max(matches, key=lambda r: r.ratio)
    policy = factory(prediction)
    return run_instance(policy, build_instance(record.shape, policy.bounds, peak, steps))
