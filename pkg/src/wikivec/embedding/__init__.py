"""Joint word/concept skip-gram embeddings with negative sampling."""

from wikivec.embedding.model import EmbeddingModel, TrainingConfig, init_model
from wikivec.embedding.sampling import NoiseSampler, noise_distribution
from wikivec.embedding.train import pair_loss, sgd_step, train
from wikivec.embedding.vocab import Vocabulary, build_vocab

__all__ = [
    "EmbeddingModel",
    "NoiseSampler",
    "TrainingConfig",
    "Vocabulary",
    "build_vocab",
    "init_model",
    "noise_distribution",
    "pair_loss",
    "sgd_step",
    "train",
]
