import math
from functools import partial

import numpy as np
import pytest

from ota_cli.analysis.certify import (
    CertificateReport,
    certify,
    critical_prices,
    empirical_kappa,
    worst_trace,
)
from ota_cli.analysis.conversion import (
    check_consistency_integral_constraint,
    conversion_function,
    conversion_lower_bound,
)
from ota_cli.analysis.frontier import (
    dominance_gaps,
    lb_consistency,
    lb_consistency_max_search,
    lb_consistency_one_way,
    pareto_frontier,
)
from ota_cli.analysis.instances import (
    build_instance,
    constant_instance,
    evaluate_pair,
    evaluate_policy,
    instance_ratio,
    p_instance,
    spike_instance,
)
from ota_cli.analysis.sufficient import check_sufficient_condition, design_partition
from ota_cli.core.models import ProblemKind
from ota_cli.engine.policy import make_policy, naive_policy, pure_policy
from ota_cli.thresholds.designs import NaiveMode
from ota_cli.thresholds.special import alpha_star
from ota_cli.thresholds.tradeoff import tradeoff
from ota_cli.utils.exceptions import BadPartitionError, DomainError

LAMBDAS = (0.0, 0.25, 0.5, 0.75, 1.0)


class TestInstances:
    """Test the adversarial instance families"""

    def test_p_instance_shape(self, bounds):
        """Test a linear climb to p followed by a drop to L"""
        inst = p_instance(bounds, 6.0, 5)
        assert inst.prices[0] == 2.0
        assert inst.prices[-2] == 6.0
        assert inst.prices[-1] == 2.0
        assert inst.length == 5

    def test_constant_and_spike(self, bounds):
        """Test the flat and single-spike families"""
        assert constant_instance(bounds, 5.0, 3).prices == (5.0, 5.0, 5.0)
        assert spike_instance(bounds, 9.0, 4).prices == (2.0, 2.0, 9.0, 2.0)

    def test_peak_outside_bounds(self, bounds):
        """Test peaks outside [L, U] raise DomainError"""
        with pytest.raises(DomainError):
            p_instance(bounds, 11.0, 10)

    def test_too_short(self, bounds):
        """Test p-instances need at least three steps"""
        with pytest.raises(DomainError):
            p_instance(bounds, 5.0, 2)

    def test_evaluate_policy_reports_shape(self, bounds):
        """Test the worst family is named"""
        policy = make_policy(bounds, ProblemKind.INTEGRAL, 0.5, 4.0)
        ratio, shape = evaluate_policy(policy, 3.7, 50)
        assert shape in ("p-instance", "spike")
        assert ratio == pytest.approx(3.7 / 2.0)

    def test_evaluate_pair_checks_bounds(self, bounds, unit_bounds):
        """Test the factory must build policies on the evaluated bounds"""
        factory = partial(make_policy, unit_bounds, ProblemKind.INTEGRAL, 0.5)
        with pytest.raises(DomainError):
            evaluate_pair(factory, bounds, 3.0, 3.0, 50)

    def test_build_instance_by_shape(self, bounds):
        """Test each family can be rebuilt by name"""
        assert build_instance("p-instance", bounds, 6.0, 10) == p_instance(bounds, 6.0, 10)
        assert build_instance("constant", bounds, 6.0, 10) == constant_instance(bounds, 6.0, 10)
        assert build_instance("spike", bounds, 6.0, 10) == spike_instance(bounds, 6.0, 10)
        with pytest.raises(DomainError):
            build_instance("sawtooth", bounds, 6.0, 10)


class TestDesignGuarantees:
    """Test consistency and robustness of the designs on p-instances"""

    @pytest.mark.parametrize("kind", list(ProblemKind))
    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_consistency_and_robustness(self, bounds, kind, lam):
        """Test ratio <= η when p = P and ratio <= γ for every p"""
        targets = tradeoff(kind, lam, bounds.theta)
        peaks = np.linspace(bounds.lower, bounds.upper, 41).tolist()
        for prediction in np.linspace(bounds.lower, bounds.upper, 11).tolist():
            policy = make_policy(bounds, kind, lam, prediction)
            exact = instance_ratio(policy, p_instance(bounds, prediction, 200))
            assert exact <= targets.eta * (1.0 + 1e-9)
            for peak in peaks:
                ratio = instance_ratio(policy, p_instance(bounds, peak, 200))
                assert ratio <= targets.gamma * (1.0 + 1e-9)


class TestCertify:
    """Test the grid adversary"""

    @pytest.mark.parametrize("kind", list(ProblemKind))
    @pytest.mark.parametrize("lam", [0.25, 0.75])
    def test_designs_within_targets(self, bounds, kind, lam):
        """Test the designs measure within 0.1% of their targets"""
        targets = tradeoff(kind, lam, bounds.theta)
        report = certify(
            partial(make_policy, bounds, kind, lam),
            bounds,
            targets,
            p_grid_size=12,
            steps=300,
            prediction_grid_size=6,
        )
        assert report.within_targets(1e-3)
        assert report.measured_consistency <= report.measured_robustness
        assert report.records

    @pytest.mark.slow
    @pytest.mark.parametrize("kind", list(ProblemKind))
    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_full_grid_within_targets(self, bounds, kind, lam):
        """Test 2000-step instances over 11 predictions stay within 0.1% of the targets"""
        targets = tradeoff(kind, lam, bounds.theta)
        report = certify(
            partial(make_policy, bounds, kind, lam),
            bounds,
            targets,
            steps=2000,
            prediction_grid_size=11,
        )
        assert report.measured_consistency <= targets.eta * 1.001
        assert report.measured_robustness <= targets.gamma * 1.001
        if kind is ProblemKind.INTEGRAL:
            assert report.measured_robustness >= targets.gamma * 0.99

    def test_worst_trace_replays_robustness(self, bounds):
        """Test the replayed worst pair reproduces the measured robustness"""
        factory = partial(make_policy, bounds, ProblemKind.INTEGRAL, 0.5)
        targets = tradeoff(ProblemKind.INTEGRAL, 0.5, bounds.theta)
        report = certify(
            factory, bounds, targets, p_grid_size=12, steps=200, prediction_grid_size=4
        )
        trace = worst_trace(factory, report, steps=200)
        assert len(trace.prices) == 200
        assert max(trace.prices) / trace.profit == pytest.approx(report.measured_robustness)
        with pytest.raises(DomainError):
            worst_trace(factory, report, steps=200, which="median")
        with pytest.raises(DomainError):
            worst_trace(factory, report.model_copy(update={"records": ()}), steps=200)

    def test_max_search_robustness_witness(self, bounds):
        """Test a max-search instance attains at least 99% of γ"""
        targets = tradeoff(ProblemKind.INTEGRAL, 0.5, bounds.theta)
        report = certify(
            partial(make_policy, bounds, ProblemKind.INTEGRAL, 0.5),
            bounds,
            targets,
            p_grid_size=12,
            steps=300,
            prediction_grid_size=6,
        )
        assert report.measured_robustness >= 0.99 * targets.gamma

    @pytest.mark.parametrize(
        "kind, expected",
        [(ProblemKind.INTEGRAL, math.sqrt(5.0)), (ProblemKind.FRACTIONAL, alpha_star(5.0))],
    )
    def test_pure_online_ratio(self, bounds, kind, expected):
        """Test the prediction-free designs stay within √θ and α*"""
        pure = pure_policy(bounds, kind)
        report = certify(
            lambda prediction: pure,
            bounds,
            tradeoff(kind, 1.0, bounds.theta),
            p_grid_size=20,
            steps=300,
            prediction_grid_size=2,
        )
        assert report.measured_robustness <= expected * 1.001

    def test_linear_blend_baseline(self, unit_bounds):
        """Test the blend is (λ√θ + (1-λ)θ)-robust and no better than √θ-consistent"""
        root = math.sqrt(5.0)
        report = certify(
            lambda prediction: naive_policy(unit_bounds, NaiveMode.LINEAR_BLEND, prediction, 0.5),
            unit_bounds,
            tradeoff(ProblemKind.INTEGRAL, 0.5, 5.0),
            p_grid_size=20,
            steps=300,
            prediction_grid_size=11,
            extra_predictions=(root * (1.0 - 1e-9),),
        )
        bound = 0.5 * root + 0.5 * 5.0
        assert bound - 0.02 <= report.measured_robustness <= bound + 1e-9
        assert report.measured_consistency >= root - 0.01

    def test_blind_baseline_failure(self, unit_bounds):
        """Test trusting P = U blindly loses almost θ when the peak falls just short"""
        policy = naive_policy(unit_bounds, NaiveMode.BLIND, 5.0)
        assert instance_ratio(policy, p_instance(unit_bounds, 4.99, 300)) >= 4.99 - 1e-12

    def test_kappa_curve(self, bounds):
        """Test κ(ξ) starts at the consistency and ends at the robustness"""
        targets = tradeoff(ProblemKind.FRACTIONAL, 0.5, bounds.theta)
        report = certify(
            partial(make_policy, bounds, ProblemKind.FRACTIONAL, 0.5),
            bounds,
            targets,
            p_grid_size=12,
            steps=200,
            prediction_grid_size=3,
        )
        values = [value for _, value in report.kappa_curve]
        assert values[0] == pytest.approx(report.measured_consistency)
        assert values[-1] == pytest.approx(report.measured_robustness)
        assert all(b >= a for a, b in zip(values, values[1:]))

    def test_grid_too_small(self, bounds):
        """Test tiny grids are rejected"""
        with pytest.raises(DomainError):
            certify(
                partial(make_policy, bounds, ProblemKind.INTEGRAL, 0.5),
                bounds,
                tradeoff(ProblemKind.INTEGRAL, 0.5, 5.0),
                p_grid_size=5,
            )

    def test_report_order_validated(self, bounds):
        """Test consistency above robustness is rejected"""
        with pytest.raises(ValueError):
            CertificateReport(
                measured_consistency=3.0,
                measured_robustness=2.0,
                kappa_curve=(),
                worst_instances={},
                targets=tradeoff(ProblemKind.INTEGRAL, 0.5, 5.0),
            )

    def test_critical_prices_inside_bounds(self, bounds):
        """Test every critical price is clamped into [L, U]"""
        policy = make_policy(bounds, ProblemKind.FRACTIONAL, 0.5, 6.0)
        prices = critical_prices(policy, 6.0, tradeoff(ProblemKind.FRACTIONAL, 0.5, 5.0))
        assert all(bounds.contains(p) for p in prices)
        assert 6.0 in prices

    def test_empirical_kappa_single_prediction(self, bounds):
        """Test κ(ξ) for one prediction is non-decreasing"""
        factory = partial(make_policy, bounds, ProblemKind.FRACTIONAL, 0.5)
        curve = empirical_kappa(
            factory, bounds, 6.0, [0.0, 1.0, 4.0, 8.0], steps=200, p_grid_size=20
        )
        values = [value for _, value in curve]
        assert all(b >= a for a, b in zip(values, values[1:]))
        with pytest.raises(DomainError):
            empirical_kappa(factory, bounds, 6.0, [-1.0])


class TestFrontier:
    """Test the trade-off curves and their lower bounds"""

    @pytest.mark.parametrize("kind", list(ProblemKind))
    def test_monotone_curve(self, kind):
        """Test γ strictly decreases and η strictly increases with λ"""
        points = pareto_frontier(5.0, kind, 100)
        assert len(points) == 100
        assert all(b.gamma < a.gamma for a, b in zip(points, points[1:]))
        assert all(b.eta > a.eta for a, b in zip(points, points[1:]))

    @pytest.mark.parametrize("kind", list(ProblemKind))
    def test_designs_meet_lower_bound(self, kind):
        """Test |η(λ) - lb(γ(λ))| <= 1e-9 over 200 λ"""
        for lam in np.linspace(0.0, 1.0, 200).tolist():
            params = tradeoff(kind, lam, 5.0)
            assert abs(params.eta - lb_consistency(kind, params.gamma, 5.0)) <= 1e-9

    def test_one_way_dominates(self):
        """Test one-way needs less consistency than max-search at every shared γ"""
        gaps = dominance_gaps(5.0, 100)
        assert gaps.size == 100
        assert gaps.min() >= -1e-12

    def test_robustness_outside_range(self):
        """Test γ below √θ is outside the max-search domain"""
        with pytest.raises(DomainError):
            lb_consistency_max_search(2.0, 5.0)

    def test_one_way_lower_bound_endpoints(self):
        """Test the one-way bound runs from α* at γ = α* to 1 at γ = θ"""
        a_star = alpha_star(5.0)
        assert lb_consistency_one_way(a_star, 5.0) == pytest.approx(a_star, rel=1e-9)
        assert lb_consistency_one_way(5.0, 5.0) == pytest.approx(1.0)
        with pytest.raises(DomainError):
            lb_consistency_one_way(a_star - 0.1, 5.0)


class TestConversionFunction:
    """Test the conversion function of the one-way design with P = U"""

    @pytest.fixture
    def samples(self, bounds):
        factory = partial(make_policy, bounds, ProblemKind.FRACTIONAL, 0.5)
        grid = np.linspace(bounds.lower, bounds.upper, 200)
        return conversion_function(factory, bounds.upper, bounds, grid, steps=100)

    def test_non_decreasing_and_complete(self, samples):
        """Test g is non-decreasing with g(U) = 1"""
        values = [g for _, g in samples]
        assert all(b >= a - 1e-12 for a, b in zip(values, values[1:]))
        assert samples[-1][1] == pytest.approx(1.0, abs=1e-9)

    def test_above_robustness_curve(self, bounds, samples):
        """Test g(p) >= (1/γ) ln((p - L)/(γL - L)) on [γL, U]"""
        gamma = tradeoff(ProblemKind.FRACTIONAL, 0.5, 5.0).gamma
        for p, g in samples:
            if p >= gamma * bounds.lower:
                assert g >= conversion_lower_bound(p, gamma, bounds) - 0.01

    def test_integral_constraint(self, bounds, samples):
        """Test ∫ g <= (η - 1)U/η within 1%"""
        params = tradeoff(ProblemKind.FRACTIONAL, 0.5, 5.0)
        assert check_consistency_integral_constraint(samples, params.gamma, params.eta, bounds)

    def test_integral_constraint_catches_eager_conversion(self, bounds):
        """Test converting everything early violates the constraint"""
        params = tradeoff(ProblemKind.FRACTIONAL, 0.5, 5.0)
        eager = [(p, 1.0) for p in np.linspace(2.0, 10.0, 50).tolist()]
        assert not check_consistency_integral_constraint(eager, params.gamma, params.eta, bounds)

    def test_max_search_rejected(self, bounds):
        """Test conversion functions are one-way only"""
        factory = partial(make_policy, bounds, ProblemKind.INTEGRAL, 0.5)
        with pytest.raises(DomainError):
            conversion_function(factory, 10.0, bounds, [5.0])


class TestSufficientCondition:
    """Test the piecewise sufficient condition"""

    @pytest.mark.parametrize("kind", list(ProblemKind))
    @pytest.mark.parametrize("lam", LAMBDAS)
    def test_designs_pass(self, bounds, kind, lam):
        """Test every design passes with its own partition"""
        for prediction in np.linspace(bounds.lower, bounds.upper, 11).tolist():
            policy = make_policy(bounds, kind, lam, prediction)
            partition = design_partition(bounds, kind, lam, prediction)
            report = check_sufficient_condition(
                policy.as_threshold,
                partition.prices,
                partition.utilizations,
                partition.alphas,
                bounds,
            )
            assert report.passed, (prediction, report.failures)

    def test_weakened_ratios_fail_locally(self, bounds):
        """Test shrinking the ratios by 10% produces a located violation"""
        policy = make_policy(bounds, ProblemKind.FRACTIONAL, 0.5, 6.0)
        partition = design_partition(bounds, ProblemKind.FRACTIONAL, 0.5, 6.0)
        weakened = tuple(0.9 * a for a in partition.alphas)
        report = check_sufficient_condition(
            policy.as_threshold, partition.prices, partition.utilizations, weakened, bounds
        )
        assert not report.passed
        failure = report.failures[0]
        assert failure.detail
        assert failure.location is not None

    def test_malformed_partition(self, bounds):
        """Test partitions of the wrong length or range are rejected"""
        phi = make_policy(bounds, ProblemKind.INTEGRAL, 0.5, 4.0).as_threshold
        with pytest.raises(BadPartitionError):
            check_sufficient_condition(phi, (2.0, 10.0), (0.0, 1.0), (1.0, 2.0), bounds)
        with pytest.raises(BadPartitionError):
            check_sufficient_condition(phi, (3.0, 10.0), (0.0, 1.0), (2.0,), bounds)

    def test_max_search_partition(self, bounds):
        """Test the three-piece partition of a blended reservation price"""
        partition = design_partition(bounds, ProblemKind.INTEGRAL, 0.5, 4.0)
        assert partition.prices[2] == 4.0
        assert partition.utilizations == (0.0, 0.0, 1.0, 1.0)
