"""Discrete Fourier analysis of centered signals.

Provides the global DFT in two routes (a direct O(n^2) reference and a
fast O(n log n) transform that must agree with it) plus a Hann-windowed
short-time transform.  The half spectrum is inclusive, k = 0 .. floor(n/2),
so the Nyquist bin participates for even n; the DC bin is always ~0 for
centered input, making the inclusion decision inert at k=0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from . import backend
from .errors import EmptySignal, InvalidConfig, InvalidWindowLength
from .signal import CenteredSignal

DEFAULT_WINDOW_LENGTH = 20
DEFAULT_HOP = 10


@dataclass(frozen=True)
class Spectrum:
    """Full-length DFT coefficients and the half-spectrum power.

    ``half_power[k] = |coefficients[k]|^2`` for k = 0 .. floor(n/2).  When
    constructed with ``half_power=None`` the powers are derived from the
    coefficients; passing them explicitly is for test construction and is
    shape-checked only.
    """

    coefficients: np.ndarray
    n: int
    half_power: Optional[np.ndarray] = None

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coefficients, dtype=np.complex128)
        if coeffs.ndim != 1 or coeffs.shape[0] == 0:
            raise EmptySignal("coefficients must be a non-empty 1-d sequence")
        n = int(self.n)
        if coeffs.shape[0] != n:
            raise InvalidConfig(
                f"coefficients have length {coeffs.shape[0]}, expected n={n}")
        half = n // 2 + 1
        if self.half_power is None:
            hp = np.abs(coeffs[:half]) ** 2
        else:
            hp = np.asarray(self.half_power, dtype=np.float64)
            if hp.shape != (half,):
                raise InvalidConfig(
                    f"half_power has length {hp.shape[0]}, expected {half}")
        object.__setattr__(self, "coefficients", coeffs)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "half_power", hp)


@dataclass(frozen=True)
class Spectrogram:
    """Short-time transform frames: T rows (time) by L columns (frequency).

    ``window_length`` is the effective window length, which equals the
    requested L except in the short-signal fallback where it shrinks to
    the signal length.
    """

    frames: np.ndarray
    window_length: int
    hop: int
    window: np.ndarray

    def __post_init__(self) -> None:
        frames = np.asarray(self.frames, dtype=np.complex128)
        window = np.asarray(self.window, dtype=np.float64)
        if frames.ndim != 2:
            raise InvalidConfig("frames must be a 2-d matrix")
        if int(self.hop) < 1:
            raise InvalidConfig("hop must be >= 1")
        if window.shape[0] != int(self.window_length):
            raise InvalidConfig("window length does not match window_length")
        if frames.shape[1] != window.shape[0]:
            raise InvalidConfig("frames column count does not match window length")
        object.__setattr__(self, "frames", frames)
        object.__setattr__(self, "window", window)
        object.__setattr__(self, "window_length", int(self.window_length))
        object.__setattr__(self, "hop", int(self.hop))

    @property
    def n_frames(self) -> int:
        return int(self.frames.shape[0])


def _values_of(centered: CenteredSignal) -> np.ndarray:
    values = np.ascontiguousarray(centered.values, dtype=np.float64)
    if values.shape[0] == 0:
        raise EmptySignal("cannot transform an empty signal")
    return values


def dft_naive(centered: CenteredSignal) -> Spectrum:
    """Direct O(n^2) DFT: coefficients[k] = sum_m values[m] e^{-j2pi km/n}.

    This is the reference route used as the oracle for :func:`dft_fast`;
    it never delegates to a library FFT.
    """
    values = _values_of(centered)
    coeffs = backend.kernels().dft_direct(values)
    return Spectrum(coefficients=coeffs, n=values.shape[0])


def dft_fast(centered: CenteredSignal) -> Spectrum:
    """Fast transform, O(n log n) for arbitrary n, matching dft_naive.

    Lengths are never padded: the transform length always equals the
    signal length, because downstream energies depend on n.
    """
    values = _values_of(centered)
    coeffs = backend.kernels().fft(values)
    return Spectrum(coefficients=coeffs, n=values.shape[0])


def hann_window(L: int) -> np.ndarray:
    """Periodic Hann taper w_m = 0.5 (1 - cos(2 pi m / L)), m = 0 .. L-1.

    The periodic form (denominator L, not L-1) is the analysis convention
    for STFT work; numpy's np.hanning is the symmetric variant and is NOT
    this window.
    """
    if not isinstance(L, (int, np.integer)) or isinstance(L, bool) or L < 1:
        raise InvalidWindowLength(f"window length must be a positive integer, got {L!r}")
    m = np.arange(int(L), dtype=np.float64)
    return 0.5 * (1.0 - np.cos(2.0 * np.pi * m / float(L)))


def stft(centered: CenteredSignal,
         L: int = DEFAULT_WINDOW_LENGTH,
         h: int = DEFAULT_HOP) -> Spectrogram:
    """Hann-windowed short-time transform with hop h.

    Only full windows are emitted: T = floor((n - L)/h) + 1 when n >= L.
    When n < L a single frame is computed with an effective window of
    length n over the whole signal, so short texts still produce
    time-frequency features instead of failing.
    """
    values = _values_of(centered)
    if not isinstance(L, (int, np.integer)) or isinstance(L, bool) or L < 1:
        raise InvalidWindowLength(f"window length must be a positive integer, got {L!r}")
    if not isinstance(h, (int, np.integer)) or isinstance(h, bool) or h < 1:
        raise InvalidConfig(f"hop must be a positive integer, got {h!r}")

    n = values.shape[0]
    kern = backend.kernels()
    if n < L:
        window = hann_window(n)
        frames = kern.stft_frames(values, window, 1)
        return Spectrogram(frames=frames, window_length=n, hop=int(h), window=window)
    window = hann_window(int(L))
    frames = kern.stft_frames(values, window, int(h))
    return Spectrogram(frames=frames, window_length=int(L), hop=int(h), window=window)
