"""Estimate beta-mixing coefficients of stationary time series from one sample path."""

__version__ = "0.1.0"

from .bounds import (
    BoundInputs,
    BoundValue,
    blocking_partition,
    markov_block_length,
    thm_main_bound,
    thm_one_bound,
)
from .errors import (
    BetaMixError,
    CapacityError,
    ConfigurationError,
    DomainError,
    HypothesisError,
    InsufficientDataError,
    NonErgodicError,
    PartitionError,
)
from .estimator import (
    EstimatorConfig,
    MixingEstimate,
    beta_from_histograms,
    estimate_beta,
    estimate_curve,
)
from .histogram import GridSpec, SparseHistogram, build, embed, embed_pairs, normalize
from .markov import MarkovChain, beta_d_exact, beta_exact, stationary, symmetric_two_state
from .schedule import Schedule, lambert_w0, make_schedule
from .synth import sample_ar1, sample_iid_uniform, sample_markov
