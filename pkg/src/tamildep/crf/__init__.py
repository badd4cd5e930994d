from .inference import Marginals, log_partition, posterior_marginals, sequence_score, viterbi
from .model import FORMAT_VERSION, AlphabetError, CrfModel
from .templates import BEGIN, FeatureTemplate, active_features, featurize
from .training import (
    CorpusError,
    TrainingDivergedError,
    TrainingParams,
    gradient_max_norm,
    log_likelihood_and_gradient,
    train,
)

__all__ = [
    "BEGIN",
    "FORMAT_VERSION",
    "AlphabetError",
    "CorpusError",
    "CrfModel",
    "FeatureTemplate",
    "Marginals",
    "TrainingDivergedError",
    "TrainingParams",
    "active_features",
    "featurize",
    "gradient_max_norm",
    "log_likelihood_and_gradient",
    "log_partition",
    "posterior_marginals",
    "sequence_score",
    "train",
    "viterbi",
]
