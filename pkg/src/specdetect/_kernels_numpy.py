"""Pure-numpy compute kernels.

Fallback lane used when numba is unavailable or when
``SPECDETECT_BACKEND=numpy`` is set.  Mirrors the numba lane's interface
exactly; see ``backend.py`` for dispatch.

``dft_direct`` is the O(n^2) oracle transform.  It must never delegate to a
library FFT: the acceptance suite relies on it being an independent route.
"""

from __future__ import annotations

import numpy as np

NAME = "numpy"


def dft_direct(values: np.ndarray) -> np.ndarray:
    """Direct O(n^2) DFT of a real signal.

    Row-by-row evaluation keeps memory at O(n).  The twiddle exponent is
    reduced mod n before the complex exponential so large k*m products do
    not lose angular precision.
    """
    n = values.shape[0]
    out = np.empty(n, dtype=np.complex128)
    m = np.arange(n)
    for k in range(n):
        ang = -2.0 * np.pi * ((k * m) % n) / n
        out[k] = np.dot(values, np.exp(1j * ang))
    return out


def fft(values: np.ndarray) -> np.ndarray:
    """Fast transform of a real signal, full length-n complex output."""
    return np.fft.fft(values)


def stft_frames(values: np.ndarray, window: np.ndarray, hop: int) -> np.ndarray:
    """Windowed frames transformed along the frequency axis.

    Caller guarantees len(values) >= len(window).  Output shape is
    (n_frames, len(window)) complex.
    """
    L = window.shape[0]
    n = values.shape[0]
    frames = np.lib.stride_tricks.sliding_window_view(values, L)[::hop]
    n_frames = (n - L) // hop + 1
    return np.fft.fft(frames[:n_frames] * window, axis=1)


def sample_indices(cdf: np.ndarray, lens: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Draw candidate indices from per-position cumulative distributions.

    cdf : (n_positions, k_max) float64, row i holds the cumulative
        probabilities of position i's candidates in cdf[i, :lens[i]];
        padding beyond lens[i] is ignored.
    uniforms : (n_samples, n_positions) float64 in [0, 1).

    Index = first j with cdf[j] > u (searchsorted right), clamped to
    lens[i]-1 so float shortfall in the final cumulative bin cannot
    overflow the candidate list.
    """
    n_samples, n_pos = uniforms.shape
    out = np.empty((n_samples, n_pos), dtype=np.int64)
    for i in range(n_pos):
        k = int(lens[i])
        idx = np.searchsorted(cdf[i, :k], uniforms[:, i], side="right")
        out[:, i] = np.minimum(idx, k - 1)
    return out


def batch_half_energy(centered_rows: np.ndarray) -> np.ndarray:
    """Half-spectrum power sum of each (already centered) row."""
    n = centered_rows.shape[1]
    spec = np.fft.fft(centered_rows, axis=1)[:, : n // 2 + 1]
    return np.sum(np.abs(spec) ** 2, axis=1)
