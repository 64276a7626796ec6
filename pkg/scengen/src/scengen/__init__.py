"""Adversarial renewable-profile generation with gradient-penalty training
and generation-quality metrics (optimal transport, Frechet, MMD)."""

from .data import ColumnScaler, load_samples_csv, make_bimodal_profiles, \
    save_samples_csv
from .metrics import (
    empirical_wasserstein, fid, linear_kernel, median_bandwidth_kernel, mmd2,
    rbf_kernel, wasserstein_distance,
)
from .model import Critic, Generator, TrainConfig, gradient_penalty
from .train import GenerationReport, TrainingDiverged, generate, load_bundle, \
    save_bundle, train

__version__ = "0.1.0"
