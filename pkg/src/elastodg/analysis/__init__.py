"""Diagnostics: energy, error norms, time-frequency misfits and reference solutions."""

import numpy as np

from .energy import EnergyTrace, discrete_energy, energy_monotone
from .misfit import (
    CLASS_LIMITS,
    MisfitReport,
    accuracy_class,
    dominant_frequency,
    gaussian_stft,
    tf_misfit,
)
from .norms import convergence_rate, error_norms
from .planewave import PlaneWave
from .seismograms import read_seismogram_csv, sample_interval


def interface_work_residual(Q: np.ndarray, operator) -> float:
    """Max |T^ . [[v^]]| over interface nodes of a spatial operator."""
    return operator.interface_work_residual(Q)


__all__ = [
    "EnergyTrace",
    "discrete_energy",
    "energy_monotone",
    "CLASS_LIMITS",
    "MisfitReport",
    "accuracy_class",
    "dominant_frequency",
    "gaussian_stft",
    "tf_misfit",
    "convergence_rate",
    "error_norms",
    "PlaneWave",
    "read_seismogram_csv",
    "sample_interval",
    "interface_work_residual",
]
