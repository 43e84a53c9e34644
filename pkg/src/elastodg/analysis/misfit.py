"""Time-frequency envelope and phase misfits between two seismograms."""

import logging
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np
from scipy import signal as sps

from ..exceptions import ConfigurationError

logger = logging.getLogger("elastodg")

CLASS_LIMITS = (("A", 0.05), ("B", 0.10), ("C", 0.20))
WINDOW_PERIODS = 4.0
FREQUENCY_SAMPLES = 64


def accuracy_class(value: float) -> Optional[str]:
    for name, limit in CLASS_LIMITS:
        if value <= limit:
            return name
    return None


@dataclass(frozen=True)
class MisfitReport:
    em: float
    pm: float
    band: Tuple[float, float]
    dominant_frequency: float

    @property
    def accuracy_class(self) -> Optional[str]:
        """Class of the worse of the two misfits."""
        return accuracy_class(max(self.em, self.pm))

    def render(self) -> str:
        label = self.accuracy_class or "none"
        lines = [
            f"Envelope misfit {self.em:.4f} ({accuracy_class(self.em) or 'none'}), "
            f"phase misfit {self.pm:.4f} ({accuracy_class(self.pm) or 'none'}): class {label}",
            "",
            f"em={self.em:.6e}",
            f"pm={self.pm:.6e}",
            f"band={self.band[0]:.6g},{self.band[1]:.6g}",
            f"dominant_frequency={self.dominant_frequency:.6g}",
            f"class={label}",
        ]
        return "\n".join(lines)


def _validate(signal, reference, dt, band):
    signal = np.asarray(signal, dtype=np.float64)
    reference = np.asarray(reference, dtype=np.float64)
    issues = []
    if signal.ndim != 1 or reference.ndim != 1:
        issues.append((None, "seismograms must be one-dimensional"))
    elif signal.size != reference.size:
        issues.append((None, f"length mismatch: {signal.size} vs {reference.size} samples"))
    elif signal.size < 4:
        issues.append((None, "need at least four samples"))
    if not dt > 0:
        issues.append((None, f"sample interval must be positive, got {dt}"))
    lo, hi = (float(b) for b in band)
    nyquist = 0.5 / dt if dt > 0 else np.inf
    if not (0 < lo < hi <= nyquist * (1 + 1e-12)):
        issues.append((None, f"band [{lo}, {hi}] is empty or beyond Nyquist {nyquist:.6g}"))
    if issues:
        raise ConfigurationError("Cannot compute misfit", issues)
    return signal, reference, (lo, hi)


def dominant_frequency(reference: np.ndarray, dt: float, band) -> float:
    """Peak of the reference amplitude spectrum inside the band."""
    freqs = np.fft.rfftfreq(reference.size, dt)
    spectrum = np.abs(np.fft.rfft(reference))
    inside = (freqs >= band[0]) & (freqs <= band[1])
    if not np.any(inside) or not np.any(spectrum[inside] > 0):
        return float(np.sqrt(band[0] * band[1]))
    return float(freqs[inside][np.argmax(spectrum[inside])])


def gaussian_stft(
    x: np.ndarray, dt: float, frequencies: np.ndarray, sigma: float
) -> np.ndarray:
    """Gaussian-windowed transform W(f, t), shaped (frequencies, samples)."""
    half = int(min(np.ceil(4.0 * sigma / dt), x.size))
    u = dt * np.arange(-half, half + 1)
    window = np.exp(-0.5 * (u / sigma) ** 2)
    kernels = window[None, :] * np.exp(2j * np.pi * frequencies[:, None] * u[None, :])
    return sps.fftconvolve(x[None, :], kernels, mode="same", axes=1) * dt


def tf_misfit(signal, reference, dt: float, band) -> MisfitReport:
    """Globally normalized envelope (EM) and phase (PM) misfits.

    The window is a Gaussian whose full width at half maximum spans four
    periods of the dominant reference frequency; frequencies are log-spaced
    over the band.

    Raises:
        ConfigurationError: length mismatch, too few samples or an empty band
    """
    signal, reference, band = _validate(signal, reference, dt, band)
    f_dom = dominant_frequency(reference, dt, band)
    fwhm = WINDOW_PERIODS / f_dom
    sigma = fwhm / (2.0 * np.sqrt(2.0 * np.log(2.0)))
    frequencies = np.logspace(np.log10(band[0]), np.log10(band[1]), FREQUENCY_SAMPLES)

    W = gaussian_stft(signal, dt, frequencies, sigma)
    Wr = gaussian_stft(reference, dt, frequencies, sigma)
    norm = np.sum(np.abs(Wr) ** 2)
    if not norm > 0:
        raise ConfigurationError("Reference seismogram has no energy in the band")

    envelope = np.abs(W) - np.abs(Wr)
    phase = np.angle(W * np.conj(Wr))
    phase = np.where(phase <= -np.pi, np.pi, phase)
    em = float(np.sqrt(np.sum(envelope**2) / norm))
    pm = float(np.sqrt(np.sum((np.abs(Wr) * phase / np.pi) ** 2) / norm))
    logger.debug(f"Misfit over {frequencies.size} frequencies: em={em:.4e}, pm={pm:.4e}")
    return MisfitReport(em=em, pm=pm, band=band, dominant_frequency=f_dom)
