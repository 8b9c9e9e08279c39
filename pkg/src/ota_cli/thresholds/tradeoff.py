"""Consistency/robustness trade-off parameters"""

import math

from pydantic import BaseModel, ConfigDict, Field, model_validator

from ota_cli.core.models import ProblemKind
from ota_cli.thresholds.special import alpha_star
from ota_cli.utils.exceptions import DomainError

IDENTITY_TOLERANCE = 1e-10


def one_way_consistency(gamma: float, theta: float) -> float:
    """Best consistency of a gamma-robust one-way trading algorithm

    θ / [θ/γ + (θ-1)(1 - ln((θ-1)/(γ-1))/γ)]
    """
    if theta == 1.0:
        return 1.0
    bracket = theta / gamma + (theta - 1.0) * (
        1.0 - math.log((theta - 1.0) / (gamma - 1.0)) / gamma
    )
    return theta / bracket


class TradeoffParams(BaseModel):
    """Robustness parameter λ with its target consistency η and robustness γ"""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    lam: float = Field(alias="lambda", ge=0.0, le=1.0)
    eta: float
    gamma: float
    theta: float = Field(ge=1.0)
    kind: ProblemKind

    @model_validator(mode="after")
    def _check_identities(self) -> "TradeoffParams":
        tol = IDENTITY_TOLERANCE * self.theta
        if not (1.0 - tol <= self.eta <= self.gamma + tol and self.gamma <= self.theta + tol):
            raise ValueError(
                f"expected 1 <= eta <= gamma <= theta, got eta={self.eta}, gamma={self.gamma}"
            )
        if self.kind is ProblemKind.INTEGRAL:
            if abs(self.eta * self.gamma - self.theta) > tol:
                raise ValueError("max-search parameters must satisfy eta * gamma = theta")
            if abs(self.eta - (self.lam * self.gamma + 1.0 - self.lam)) > tol:
                raise ValueError("max-search parameters must satisfy eta = lambda*gamma + 1-lambda")
        else:
            a_star = alpha_star(self.theta)
            if abs(self.gamma - (a_star + (1.0 - self.lam) * (self.theta - a_star))) > tol:
                raise ValueError("one-way robustness does not match its lambda")
            if abs(self.eta - one_way_consistency(self.gamma, self.theta)) > tol:
                raise ValueError("one-way consistency does not match its robustness")
        return self


def _check_inputs(lam: float, theta: float) -> None:
    if not 0.0 <= lam <= 1.0:
        raise DomainError(f"lambda must lie in [0, 1], got {lam!r}")
    if not theta >= 1.0:
        raise DomainError(f"theta must be at least 1, got {theta!r}")


def tradeoff_max_search(lam: float, theta: float) -> TradeoffParams:
    """Pareto-optimal (η, γ) of 1-max-search for robustness parameter λ

    γ is the positive root of λγ² + (1-λ)γ - θ = 0, written in the form
    2θ / ((1-λ) + sqrt((1-λ)² + 4λθ)) which is exact at λ = 0 (γ = θ).
    """
    _check_inputs(lam, theta)
    if lam == 1.0:
        gamma = math.sqrt(theta)
    else:
        gamma = 2.0 * theta / ((1.0 - lam) + math.sqrt((1.0 - lam) ** 2 + 4.0 * lam * theta))
    eta = theta / gamma
    return TradeoffParams(lam=lam, eta=eta, gamma=gamma, theta=theta, kind=ProblemKind.INTEGRAL)


def tradeoff_one_way(lam: float, theta: float) -> TradeoffParams:
    """Pareto-optimal (η, γ) of one-way trading for robustness parameter λ"""
    _check_inputs(lam, theta)
    a_star = alpha_star(theta)
    if lam == 0.0:
        gamma, eta = theta, 1.0
    elif lam == 1.0:
        gamma, eta = a_star, a_star
    else:
        gamma = a_star + (1.0 - lam) * (theta - a_star)
        eta = one_way_consistency(gamma, theta)
    return TradeoffParams(lam=lam, eta=eta, gamma=gamma, theta=theta, kind=ProblemKind.FRACTIONAL)


def tradeoff(kind: ProblemKind, lam: float, theta: float) -> TradeoffParams:
    """Trade-off parameters for either problem kind"""
    if kind is ProblemKind.INTEGRAL:
        return tradeoff_max_search(lam, theta)
    return tradeoff_one_way(lam, theta)
