"""Adversarial certification and theory curves"""

from ota_cli.analysis.certify import CertificateReport, RatioRecord, certify, empirical_kappa
from ota_cli.analysis.conversion import (
    check_consistency_integral_constraint,
    conversion_function,
    conversion_lower_bound,
)
from ota_cli.analysis.frontier import (
    FrontierPoint,
    dominance_gaps,
    lb_consistency,
    lb_consistency_max_search,
    lb_consistency_one_way,
    pareto_frontier,
)
from ota_cli.analysis.instances import (
    PolicyFactory,
    constant_instance,
    evaluate_pair,
    evaluate_policy,
    instance_ratio,
    p_instance,
    spike_instance,
)
from ota_cli.analysis.sufficient import (
    Partition,
    PieceVerdict,
    SufficientConditionReport,
    check_sufficient_condition,
    design_partition,
)

__all__ = [
    "CertificateReport",
    "FrontierPoint",
    "Partition",
    "PieceVerdict",
    "PolicyFactory",
    "RatioRecord",
    "SufficientConditionReport",
    "certify",
    "check_consistency_integral_constraint",
    "check_sufficient_condition",
    "constant_instance",
    "conversion_function",
    "conversion_lower_bound",
    "design_partition",
    "dominance_gaps",
    "empirical_kappa",
    "evaluate_pair",
    "evaluate_policy",
    "instance_ratio",
    "lb_consistency",
    "lb_consistency_max_search",
    "lb_consistency_one_way",
    "p_instance",
    "pareto_frontier",
    "spike_instance",
]
