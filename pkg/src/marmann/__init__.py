"""Margin-regularized active nearest-neighbor learning in metric spaces.

The library builds 1-nearest-neighbor classifiers from small compression
sets over a pool of unlabeled points, querying as few labels as possible:
a binary search over margin scales estimates per-scale error adaptively,
and net points are labeled by sampled majority votes.  Full-label passive
baselines, exact separation oracles, hard-instance generators, and a batch
experiment harness round out the toolkit.
"""

from .bounds import (BoundParams, GMinReference, f_budget, g_min_reference,
                     g_value, gamma, gamma_tilde, gb, phi)
from .classifier import (CompressionSet, NNClassifier, empirical_error,
                         ideal_majority_set, nu_bounds_multiclass,
                         nu_exact_binary, reconstruct)
from .dataset import Dataset, load_distance_matrix_csv, load_labeled_points_csv
from .driver import RunReport, run_marmann
from .estimation import EstBerConfig, EstimateOutcome, bernoulli_stream, est_ber
from .generators import (generate_adversarial, generate_planted,
                         generate_uniform_noisy_line)
from .lab import (AdversarialParams, UniformNoisyParams, bayes_check_fn,
                  bayes_fn, expected_minority_bounds, minority_count_nu,
                  sample_adversarial)
from .nets import (FarthestFirstIndex, NetView, Partition, build_fft,
                   candidate_scales, greedy_net, net_at, partition_at)
from .nnset import MarmannState, ScaleCache, full_nn_set, generate_nn_set, \
    query_budget
from .passive import PassiveResult, passive_relabel, passive_separation_binary
from .pool import LabeledPool, QueryLedger
from .selection import ConfigurationError, ScaleRecord, SearchTrace, select_scale

__version__ = "0.1.0"

__all__ = [
    "AdversarialParams", "BoundParams", "CompressionSet", "ConfigurationError",
    "Dataset", "EstBerConfig", "EstimateOutcome", "FarthestFirstIndex",
    "GMinReference", "LabeledPool", "MarmannState", "NNClassifier", "NetView",
    "Partition", "PassiveResult", "QueryLedger", "RunReport", "ScaleCache",
    "ScaleRecord", "SearchTrace", "UniformNoisyParams", "bayes_check_fn",
    "bayes_fn", "bernoulli_stream", "build_fft", "candidate_scales",
    "empirical_error", "est_ber", "expected_minority_bounds", "f_budget",
    "full_nn_set", "g_min_reference", "g_value", "gamma", "gamma_tilde", "gb",
    "generate_adversarial", "generate_nn_set", "generate_planted",
    "generate_uniform_noisy_line", "greedy_net", "ideal_majority_set",
    "load_distance_matrix_csv", "load_labeled_points_csv", "minority_count_nu",
    "net_at", "nu_bounds_multiclass", "nu_exact_binary", "partition_at",
    "passive_relabel", "passive_separation_binary", "phi", "query_budget",
    "reconstruct", "run_marmann", "sample_adversarial", "select_scale",
]
