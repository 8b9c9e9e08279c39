"""Full-information exponentially weighted forecaster over a λ grid"""

import logging
import math
from typing import Optional, Sequence

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ota_cli.learning.selection import DEFAULT_GRID_SIZE, lambda_grid
from ota_cli.utils.exceptions import BadRewardError, DomainError

logger = logging.getLogger(__name__)

WEIGHT_TOLERANCE = 1e-12


class LearnerState(BaseModel):
    """Checkpointable learner: λ grid, weights, history and seed"""

    model_config = ConfigDict(frozen=True)

    lambda_grid: tuple[float, ...]
    weights: tuple[float, ...]
    round: int = 0
    reward_history: tuple[tuple[float, ...], ...] = ()
    choices: tuple[int, ...] = ()
    pending: Optional[int] = None
    seed: int = 0

    @model_validator(mode="after")
    def _check_weights(self) -> "LearnerState":
        if len(self.lambda_grid) < 2:
            raise ValueError("learner needs at least two arms")
        if len(self.weights) != len(self.lambda_grid):
            raise ValueError("one weight per arm is required")
        if any(not (w > 0.0 and math.isfinite(w)) for w in self.weights):
            raise ValueError("weights must be positive and finite")
        if abs(math.fsum(self.weights) - 1.0) > WEIGHT_TOLERANCE:
            raise ValueError("weights must sum to one")
        return self

    @classmethod
    def uniform(cls, grid_size: int = DEFAULT_GRID_SIZE, seed: int = 0) -> "LearnerState":
        grid = lambda_grid(grid_size)
        return cls(
            lambda_grid=tuple(grid.tolist()),
            weights=(1.0 / grid_size,) * grid_size,
            seed=seed,
        )

    @property
    def arms(self) -> int:
        return len(self.lambda_grid)

    @property
    def probabilities(self) -> np.ndarray:
        weights = np.asarray(self.weights)
        return weights / weights.sum()

    def to_json(self) -> str:
        return self.model_dump_json(indent=2)

    @classmethod
    def from_json(cls, text: str) -> "LearnerState":
        return cls.model_validate_json(text)


def _normalize(weights: np.ndarray) -> np.ndarray:
    weights = weights / weights.sum()
    weights = np.maximum(weights, np.finfo(float).tiny)
    return weights / weights.sum()


def alf_select(state: LearnerState) -> tuple[float, LearnerState]:
    """Draw an arm from the weights; the draw depends only on (seed, round)"""
    rng = np.random.default_rng([state.seed, state.round])
    arm = int(rng.choice(state.arms, p=state.probabilities))
    return state.lambda_grid[arm], state.model_copy(update={"pending": arm})


def alf_update(state: LearnerState, rewards: Sequence[float]) -> LearnerState:
    """Multiply each weight by exp(rate_t · reward) with rate_t = √(8 ln K / t)

    Raises:
        BadRewardError: a reward outside [0, 1]
    """
    if len(rewards) != state.arms:
        raise DomainError(f"expected {state.arms} rewards, got {len(rewards)}")
    for arm, reward in enumerate(rewards):
        if not 0.0 <= reward <= 1.0:
            raise BadRewardError(arm, reward)

    t = state.round + 1
    rate = math.sqrt(8.0 * math.log(state.arms) / t)
    log_weights = np.log(np.asarray(state.weights)) + rate * np.asarray(rewards, dtype=float)
    weights = _normalize(np.exp(log_weights - log_weights.max()))

    choices = state.choices if state.pending is None else state.choices + (state.pending,)
    logger.debug("round %d rate %.4g best arm %d", t, rate, int(np.argmax(weights)))
    return state.model_copy(
        update={
            "weights": tuple(weights.tolist()),
            "round": t,
            "reward_history": state.reward_history + (tuple(float(r) for r in rewards),),
            "choices": choices,
            "pending": None,
        }
    )


class RegretSummary(BaseModel):
    """Cumulative regret against the best fixed arm in hindsight

    ``rate`` is the tail envelope max_{s>=t} regret_s / s, so it never
    increases and ends at ``average``. ``expected`` is filled when the
    learner's arm probabilities are known and replaces the realized reward
    of the drawn arm by the probability-weighted reward of each round.
    """

    model_config = ConfigDict(frozen=True)

    cumulative: tuple[float, ...]
    total: float
    average: float
    rate: tuple[float, ...] = ()
    expected: tuple[float, ...] = ()


def regret_rate(cumulative: Sequence[float]) -> np.ndarray:
    """max over s >= t of cumulative_s / s for every round t"""
    values = np.asarray(cumulative, dtype=float)
    if values.size == 0:
        return values
    average = values / np.arange(1, values.size + 1)
    return np.maximum.accumulate(average[::-1])[::-1]


def regret(
    rewards: Sequence[Sequence[float]],
    chosen: Sequence[int],
    probabilities: Optional[Sequence[Sequence[float]]] = None,
) -> RegretSummary:
    """max_k Σ_t r_{k,t} - Σ_t r_{chosen_t,t} after every round

    Raises:
        DomainError: history lengths disagree
    """
    if len(rewards) != len(chosen):
        raise DomainError("one chosen arm per reward round is required")
    if probabilities is not None and len(probabilities) != len(rewards):
        raise DomainError("one probability vector per reward round is required")
    if not rewards:
        return RegretSummary(cumulative=(), total=0.0, average=0.0)
    matrix = np.asarray(rewards, dtype=float)
    picked = matrix[np.arange(len(chosen)), np.asarray(chosen)]
    best = np.cumsum(matrix, axis=0).max(axis=1)
    cumulative = best - np.cumsum(picked)
    expected: tuple[float, ...] = ()
    if probabilities is not None:
        mixed = np.einsum("tk,tk->t", matrix, np.asarray(probabilities, dtype=float))
        expected = tuple((best - np.cumsum(mixed)).tolist())
    total = float(cumulative[-1])
    return RegretSummary(
        cumulative=tuple(cumulative.tolist()),
        total=total,
        average=total / len(chosen),
        rate=tuple(regret_rate(cumulative).tolist()),
        expected=expected,
    )
