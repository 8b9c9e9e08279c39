"""Online threshold algorithm"""

from ota_cli.engine.policy import Policy, make_policy, naive_policy, pure_policy
from ota_cli.engine.runner import ota_step, replay_allocation_optimality, run_instance

__all__ = [
    "Policy",
    "make_policy",
    "naive_policy",
    "ota_step",
    "pure_policy",
    "replay_allocation_optimality",
    "run_instance",
]
