"""Consistency lower bounds and Pareto frontiers"""

import math

import numpy as np
from pydantic import BaseModel, ConfigDict

from ota_cli.core.models import ProblemKind
from ota_cli.thresholds.special import alpha_star
from ota_cli.thresholds.tradeoff import one_way_consistency, tradeoff
from ota_cli.utils.exceptions import DomainError

DOMAIN_TOLERANCE = 1e-12


class FrontierPoint(BaseModel):
    """One λ sample of the trade-off curve with the matching lower bound"""

    model_config = ConfigDict(frozen=True)

    lam: float
    gamma: float
    eta: float
    lower_bound: float


def lb_consistency_max_search(gamma: float, theta: float) -> float:
    """Least consistency θ/γ of any γ-robust 1-max-search algorithm"""
    tol = DOMAIN_TOLERANCE * theta
    if theta < 1.0 or not (math.sqrt(theta) - tol <= gamma <= theta + tol):
        raise DomainError(f"robustness {gamma!r} is outside [√θ, θ] for θ={theta!r}")
    return theta / gamma


def lb_consistency_one_way(gamma: float, theta: float) -> float:
    """Least consistency of any γ-robust one-way trading algorithm"""
    if theta < 1.0:
        raise DomainError(f"fluctuation ratio must be at least 1, got {theta!r}")
    tol = DOMAIN_TOLERANCE * theta
    if not (alpha_star(theta) - tol <= gamma <= theta + tol):
        raise DomainError(f"robustness {gamma!r} is outside [α*, θ] for θ={theta!r}")
    return one_way_consistency(min(gamma, theta), theta)


def lb_consistency(kind: ProblemKind, gamma: float, theta: float) -> float:
    if kind is ProblemKind.INTEGRAL:
        return lb_consistency_max_search(gamma, theta)
    return lb_consistency_one_way(gamma, theta)


def pareto_frontier(theta: float, kind: ProblemKind, grid_size: int = 101) -> list[FrontierPoint]:
    """(γ(λ), η(λ)) for λ evenly spaced over [0, 1], with the lower bound at γ(λ)"""
    if grid_size < 2:
        raise DomainError(f"frontier needs at least two samples, got {grid_size}")
    points = []
    for lam in np.linspace(0.0, 1.0, grid_size).tolist():
        params = tradeoff(kind, lam, theta)
        points.append(
            FrontierPoint(
                lam=lam,
                gamma=params.gamma,
                eta=params.eta,
                lower_bound=lb_consistency(kind, params.gamma, theta),
            )
        )
    return points


def dominance_gaps(theta: float, samples: int = 100) -> np.ndarray:
    """η_max-search(γ) - η_one-way(γ) at interior robustness levels shared by both curves"""
    if theta <= 1.0:
        return np.zeros(0)
    gammas = np.linspace(math.sqrt(theta), theta, samples + 2)[1:-1]
    return np.array(
        [
            lb_consistency_max_search(g, theta) - lb_consistency_one_way(g, theta)
            for g in gammas.tolist()
        ]
    )
