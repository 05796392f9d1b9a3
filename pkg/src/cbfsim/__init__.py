"""Coordinated multicell MISO downlink simulator.

Library for distributed linear precoding (DZF, DVSINR) with
semi-distributed user selection: channel deployment, precoder and
selection-metric kernels, central-unit scheduling strategies, numerical
proposition validators, and a seeded Monte Carlo harness.
"""

from .channel import ChannelRealization, NetworkConfig, deploy
from .harness import ExperimentConfig, ResultRow, evaluate_trial, run_sweep
from .metrics import alpha_weight, metric_mus, metric_mus2, metric_nspa
from .precoding import (
    DVSINR,
    DZF,
    LinkBudget,
    Precoder,
    dvsinr_precoder,
    dzf_precoder,
    link_budgets,
    sum_rate,
)
from .scheduler import (
    STRATEGIES,
    CandidateSet,
    SelectionOutcome,
    enumerate_sets,
    prune_pools,
    select_by_metric_product,
    select_max_snr,
    select_ogcsi,
)

__version__ = "0.1.0"

__all__ = [
    "ChannelRealization",
    "NetworkConfig",
    "deploy",
    "ExperimentConfig",
    "ResultRow",
    "evaluate_trial",
    "run_sweep",
    "alpha_weight",
    "metric_mus",
    "metric_mus2",
    "metric_nspa",
    "DVSINR",
    "DZF",
    "LinkBudget",
    "Precoder",
    "dvsinr_precoder",
    "dzf_precoder",
    "link_budgets",
    "sum_rate",
    "STRATEGIES",
    "CandidateSet",
    "SelectionOutcome",
    "enumerate_sets",
    "prune_pools",
    "select_by_metric_product",
    "select_max_snr",
    "select_ogcsi",
]
