"""Toolkit for finite tripartite distributions and secrecy-related measures:
information quantities, Eve channels, independence target values, linear
feasibility verifications, and an intrinsic-information upper-bound estimator."""

__version__ = "1.0.0"

from .dists import (
    Alphabet,
    JointDistribution,
    combine_axes,
    condition,
    marginal,
    n_fold,
)
from .measures import (
    conditional_mutual_information,
    entropy,
    kl_divergence,
    mutual_information,
    trace_distance,
)
from .channels import Binarization, Channel, apply_channel, binarize, zshape_decompose
from .candidates import grw, rw
from .itv import construct_ab, construct_eve_channel_n1, tau, tau2_targets
from .feasibility import random_feasibility_rate, solve_feasibility, verify_itvcounter
from .intrinsic import EstimatorConfig, estimate_intrinsic

__all__ = [
    "Alphabet",
    "JointDistribution",
    "combine_axes",
    "condition",
    "marginal",
    "n_fold",
    "entropy",
    "mutual_information",
    "conditional_mutual_information",
    "trace_distance",
    "kl_divergence",
    "Binarization",
    "Channel",
    "apply_channel",
    "binarize",
    "zshape_decompose",
    "grw",
    "rw",
    "tau",
    "construct_ab",
    "construct_eve_channel_n1",
    "tau2_targets",
    "solve_feasibility",
    "verify_itvcounter",
    "random_feasibility_rate",
    "EstimatorConfig",
    "estimate_intrinsic",
]
