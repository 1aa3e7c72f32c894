"""Python bindings for the maxiset signal-detection library."""

import json

from ._maxiset import (
    InfeasibleDesign,
    InvalidInput,
    IoFailure,
    MaxisetError,
    NumericFailure,
    Spectrum,
    besov_seminorm,
    chisq_statistic,
    cvm_population,
    cvm_statistic,
    haar_statistic,
    kernel_kappa2,
    project_besov,
    quadratic_test,
    sample_sequence_model,
    solve_design,
)
from . import _maxiset

__all__ = [
    "InfeasibleDesign",
    "InvalidInput",
    "IoFailure",
    "MaxisetError",
    "NumericFailure",
    "Spectrum",
    "besov_seminorm",
    "chisq_statistic",
    "config_hash",
    "cvm_population",
    "cvm_statistic",
    "haar_statistic",
    "kernel_kappa2",
    "power_curve",
    "project_besov",
    "quadratic_test",
    "sample_sequence_model",
    "simulate",
    "solve_design",
]


def _rows(text):
    doc = json.loads(text)
    return [dict(zip(doc["columns"], row)) for row in doc["rows"]]


def simulate(config):
    """Run the Monte Carlo described by a config dict; returns a list of row dicts."""
    return _rows(_maxiset._simulate(json.dumps(config)))


def power_curve(config):
    """Empirical and predicted power along the config's power_curve schedule."""
    return _rows(_maxiset._power_curve(json.dumps(config)))


def config_hash(config):
    """Hex FNV-1a hash of the resolved config (threads and output excluded)."""
    return _maxiset._config_hash(json.dumps(config))
