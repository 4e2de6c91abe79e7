"""The six spectral features of a token-logprob signal.

Energies (e_dft, e_stft) track the amplitude of log-probability
fluctuation; flux tracks frame-to-frame energy movement; centroid,
entropy, and entropy variance describe the shape of the spectrum
independent of amplitude.  All are total functions: degenerate inputs
(zero power, fewer than two frames) return 0 by convention.

Entropies here are in bits (log2); powers are normalized to a
distribution before any entropy sum, which keeps the measure bounded and
scale-free.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .signal import TokenSignal, center
from .spectral import (DEFAULT_HOP, DEFAULT_WINDOW_LENGTH, Spectrogram,
                       Spectrum, dft_fast, stft)

FEATURE_NAMES = ("e_dft", "e_stft", "mean_flux", "centroid", "entropy",
                 "entropy_variance")


@dataclass(frozen=True)
class FeatureVector:
    e_dft: float
    e_stft: float
    mean_flux: float
    centroid: float
    entropy: float
    entropy_variance: float

    def as_array(self) -> np.ndarray:
        return np.array([self.e_dft, self.e_stft, self.mean_flux,
                         self.centroid, self.entropy, self.entropy_variance])


def dft_total_energy(spectrum: Spectrum) -> float:
    """Sum of half-spectrum powers, k = 0 .. floor(n/2)."""
    return float(np.sum(spectrum.half_power))


def stft_total_energy(sg: Spectrogram) -> float:
    """Total |frame|^2 power over every window and bin."""
    return float(np.sum(np.abs(sg.frames) ** 2))


def mean_spectral_flux(sg: Spectrogram) -> float:
    """Mean over consecutive frame pairs of summed magnitude change.

    Differences are taken between magnitude spectra, | |S(f,t)| -
    |S(f,t-1)| |, not raw complex values: complex differences would
    conflate phase drift with energy movement.  0 when T < 2.
    """
    T = sg.n_frames
    if T < 2:
        return 0.0
    mags = np.abs(sg.frames)
    return float(np.sum(np.abs(np.diff(mags, axis=0))) / (T - 1))


def spectral_centroid(spectrum: Spectrum) -> float:
    """Power-weighted mean frequency index over the half spectrum.

    0 for an all-zero spectrum.
    """
    power = spectrum.half_power
    total = float(np.sum(power))
    if total <= 0.0:
        return 0.0
    k = np.arange(power.shape[0], dtype=np.float64)
    return float(np.dot(k, power) / total)


def _entropy_bits(power: np.ndarray) -> float:
    # Shannon entropy of a power vector normalized to a distribution;
    # zero bins contribute 0, all-zero power returns 0.
    total = float(np.sum(power))
    if total <= 0.0:
        return 0.0
    p = power / total
    nz = p[p > 0.0]
    return float(-np.sum(nz * np.log2(nz)))


def spectral_entropy(spectrum: Spectrum) -> float:
    """Entropy in bits of the normalized half-spectrum power distribution."""
    return _entropy_bits(spectrum.half_power)


def spectral_entropy_variance(sg: Spectrogram) -> float:
    """Population variance over windows of per-window spectral entropy.

    Each window's entropy is computed over its own normalized power
    distribution across all L bins.  0 when T < 2.
    """
    T = sg.n_frames
    if T < 2:
        return 0.0
    power = np.abs(sg.frames) ** 2
    entropies = np.array([_entropy_bits(power[t]) for t in range(T)])
    return float(np.var(entropies))


def feature_vector(signal: TokenSignal,
                   L: int = DEFAULT_WINDOW_LENGTH,
                   h: int = DEFAULT_HOP) -> FeatureVector:
    """Center the signal, transform it, and fill all six features."""
    centered = center(signal)
    spectrum = dft_fast(centered)
    sg = stft(centered, L, h)
    return FeatureVector(
        e_dft=dft_total_energy(spectrum),
        e_stft=stft_total_energy(sg),
        mean_flux=mean_spectral_flux(sg),
        centroid=spectral_centroid(spectrum),
        entropy=spectral_entropy(spectrum),
        entropy_variance=spectral_entropy_variance(sg),
    )
