import math

import numpy as np
import pytest
from pydantic import ValidationError

from ota_cli.core.models import Instance, ProblemKind
from ota_cli.learning.forecaster import LearnerState, alf_select, alf_update, regret
from ota_cli.learning.selection import (
    cumulative_average,
    lambda_best_static,
    lambda_grid,
    lambda_offline_best,
    lambda_worst_case,
    normalized_reward,
    profits_over_grid,
)
from ota_cli.utils.exceptions import BadRewardError, DomainError


class TestSelection:
    """Test static and offline λ selection"""

    def test_grid(self):
        """Test the default grid spans [0, 1] with 33 points"""
        grid = lambda_grid()
        assert grid.size == 33
        assert (grid[0], grid[-1]) == (0.0, 1.0)

    def test_grid_too_small(self):
        """Test a single-point grid is rejected"""
        with pytest.raises(DomainError):
            lambda_grid(1)

    def test_worst_case_ignores_predictions(self):
        """Test the worst-case choice is λ = 1"""
        assert lambda_worst_case() == 1.0

    def test_profits_on_constant_instance(self, bounds):
        """Test every λ earns the constant price"""
        inst = Instance(prices=(5.0,) * 6)
        profits = profits_over_grid(inst, 5.0, bounds, ProblemKind.FRACTIONAL, lambda_grid(5))
        assert np.allclose(profits, 5.0)

    def test_offline_best_prefers_smallest_on_ties(self, bounds):
        """Test ties resolve to the smallest λ"""
        inst = Instance(prices=(5.0,) * 6)
        assert lambda_offline_best(inst, 5.0, bounds, ProblemKind.INTEGRAL, 5) == 0.0

    def test_offline_best_trusts_a_good_prediction(self, bounds):
        """Test an exact prediction on a rising instance picks full trust"""
        inst = Instance(prices=(2.0, 4.0, 6.0, 9.0, 2.0))
        assert lambda_offline_best(inst, 9.0, bounds, ProblemKind.INTEGRAL, 5) == 0.0

    def test_best_static(self):
        """Test the column with the largest total wins"""
        arm, lam = lambda_best_static(np.array([[1.0, 2.0], [3.0, 1.0]]), [0.0, 1.0])
        assert (arm, lam) == (0, 0.0)

    def test_normalized_reward(self, bounds):
        """Test (profit - L)/(U - L) clipped to [0, 1]"""
        assert normalized_reward(6.0, bounds) == 0.5
        assert normalized_reward(1.0, bounds) == 0.0
        assert normalized_reward(12.0, bounds) == 1.0

    def test_cumulative_average(self):
        """Test the running mean"""
        assert np.allclose(cumulative_average([1.0, 0.0, 1.0]), [1.0, 0.5, 2.0 / 3.0])


class TestForecaster:
    """Test the exponentially weighted forecaster"""

    def test_uniform_start(self):
        """Test uniform weights over the grid"""
        state = LearnerState.uniform(5, seed=2)
        assert state.arms == 5
        assert np.allclose(state.probabilities, 0.2)
        assert state.round == 0

    def test_select_is_reproducible(self):
        """Test the draw depends only on seed and round"""
        state = LearnerState.uniform(9, seed=4)
        first, chosen = alf_select(state)
        second, _ = alf_select(state)
        assert first == second
        assert chosen.pending is not None
        assert chosen.lambda_grid[chosen.pending] == first

    def test_checkpoint_resumes_identically(self):
        """Test a restored state draws the same arm"""
        state = LearnerState.uniform(9, seed=4)
        for _ in range(3):
            _, state = alf_select(state)
            state = alf_update(state, [0.1 * k for k in range(9)])
        restored = LearnerState.from_json(state.to_json())
        assert restored == state
        assert alf_select(restored)[0] == alf_select(state)[0]

    def test_update_records_history(self):
        """Test round, history and choices after one update"""
        _, state = alf_select(LearnerState.uniform(3))
        pending = state.pending
        state = alf_update(state, [0.0, 0.5, 1.0])
        assert state.round == 1
        assert state.reward_history == ((0.0, 0.5, 1.0),)
        assert state.choices == (pending,)
        assert state.pending is None
        assert sum(state.weights) == pytest.approx(1.0, abs=1e-12)
        assert state.weights[2] > state.weights[1] > state.weights[0]

    def test_concentrates_on_best_arm(self):
        """Test weights converge to an arm that always earns the most"""
        state = LearnerState.uniform(33)
        rewards = [0.0] * 33
        rewards[3] = 1.0
        for _ in range(200):
            _, state = alf_select(state)
            state = alf_update(state, rewards)
        assert state.probabilities[3] > 0.99

    def test_degenerate_weights_pick_the_heavy_arm(self):
        """Test a state holding almost all weight on one arm always draws it"""
        state = LearnerState(
            lambda_grid=(0.0, 0.25, 0.5, 1.0), weights=(1.0 - 3e-13, 1e-13, 1e-13, 1e-13), seed=8
        )
        for round_ in range(200):
            lam, chosen = alf_select(state.model_copy(update={"round": round_}))
            assert chosen.pending == 0
            assert lam == 0.0

    def test_two_arms_after_a_long_streak(self):
        """Test the winning arm is drawn at least 95% of the time after 500 wins"""
        state = LearnerState.uniform(2, seed=3)
        for _ in range(500):
            _, state = alf_select(state)
            state = alf_update(state, [1.0, 0.0])
        draws = [
            alf_select(state.model_copy(update={"round": state.round + k}))[1].pending
            for k in range(1000)
        ]
        assert draws.count(0) / 1000 >= 0.95

    def test_reward_out_of_range(self):
        """Test rewards outside [0, 1] raise BadRewardError"""
        with pytest.raises(BadRewardError) as exc:
            alf_update(LearnerState.uniform(3), [0.0, 1.5, 0.2])
        assert exc.value.arm == 1

    def test_reward_count_mismatch(self):
        """Test one reward per arm is required"""
        with pytest.raises(DomainError):
            alf_update(LearnerState.uniform(3), [0.0, 1.0])

    def test_invalid_weights_rejected(self):
        """Test weights that do not sum to one are rejected"""
        with pytest.raises(ValidationError):
            LearnerState(lambda_grid=(0.0, 1.0), weights=(0.7, 0.7))


class TestRegret:
    """Test cumulative regret"""

    def test_against_best_fixed_arm(self):
        """Test regret after each round against the best arm so far"""
        summary = regret([[1.0, 0.0], [1.0, 0.0], [0.0, 1.0]], [1, 1, 1])
        assert summary.cumulative == (1.0, 2.0, 1.0)
        assert summary.total == 1.0
        assert summary.average == pytest.approx(1.0 / 3.0)

    def test_empty(self):
        """Test no rounds means no regret"""
        assert regret([], []).total == 0.0

    def test_rate_is_a_non_increasing_envelope(self):
        """Test the regret rate bounds every later average and never rises"""
        summary = regret([[0.0, 0.0], [0.0, 0.0], [1.0, 0.0], [1.0, 0.0]], [0, 0, 1, 1])
        assert summary.cumulative == (0.0, 0.0, 1.0, 2.0)
        assert summary.rate == pytest.approx((0.5, 0.5, 0.5, 0.5))
        assert summary.rate[-1] == pytest.approx(summary.average)

    def test_expected_regret_uses_probabilities(self):
        """Test expected regret weighs every arm by its probability"""
        summary = regret([[1.0, 0.0], [1.0, 0.0]], [1, 0], [[0.5, 0.5], [0.75, 0.25]])
        assert summary.cumulative == (1.0, 1.0)
        assert summary.expected == pytest.approx((0.5, 0.75))

    def test_probability_count_mismatch(self):
        """Test one probability vector per round is required"""
        with pytest.raises(DomainError):
            regret([[1.0, 0.0]], [0], [])


class TestForecasterOnIidRewards:
    """Test the forecaster on a seeded stream of noisy arm rewards"""

    ARMS = 33
    ROUNDS = 500

    @pytest.fixture
    def history(self):
        rng = np.random.default_rng(12)
        means = np.linspace(0.2, 0.8, self.ARMS)
        state = LearnerState.uniform(self.ARMS, seed=5)
        rewards, chosen, mixtures = [], [], []
        for _ in range(self.ROUNDS):
            noisy = np.clip(means + rng.uniform(-0.2, 0.2, self.ARMS), 0.0, 1.0).tolist()
            mixtures.append(state.probabilities.tolist())
            _, state = alf_select(state)
            chosen.append(state.pending)
            state = alf_update(state, noisy)
            rewards.append(noisy)
        return regret(rewards, chosen, mixtures)

    def test_within_weighted_average_bound(self, history):
        """Test regret stays under 2√(T ln K / 2) + K"""
        bound = 2.0 * math.sqrt(self.ROUNDS * math.log(self.ARMS) / 2.0) + self.ARMS
        assert history.total <= bound
        assert history.expected[-1] <= bound

    def test_average_regret(self, history):
        """Test regret per round stays at or below 0.1"""
        assert history.average <= 0.1
        assert history.rate[-1] <= 0.1
        assert all(b <= a for a, b in zip(history.rate, history.rate[1:]))
