"""Numba-compiled compute kernels.

Hot lane selected by default when numba imports cleanly.  All transforms
are hand-written: an iterative radix-2 FFT for power-of-two lengths and a
Bluestein chirp-z reduction for everything else, so arbitrary signal
lengths are exact O(n log n) without zero-padding (padding would change n
and break the energy definitions).

``dft_direct`` is the O(n^2) oracle transform and must stay independent of
the fast path; it shares no code with ``fft``.

All kernels use ``cache=True`` so CLI subprocesses reuse the compiled
machine code instead of paying JIT cost per invocation.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NAME = "numba"


@njit(cache=True)
def dft_direct(values: np.ndarray) -> np.ndarray:
    """Direct O(n^2) DFT of a real signal.

    The twiddle exponent (k*m) is reduced mod n before the angle is
    formed; without the reduction, large k*m products lose the low-order
    angular bits that the 1e-9 oracle comparisons depend on.
    """
    n = values.shape[0]
    out = np.empty(n, dtype=np.complex128)
    for k in range(n):
        re = 0.0
        im = 0.0
        for m in range(n):
            ang = -2.0 * np.pi * ((k * m) % n) / n
            re += values[m] * np.cos(ang)
            im += values[m] * np.sin(ang)
        out[k] = complex(re, im)
    return out


@njit(cache=True)
def _fft_pow2(x: np.ndarray, inverse: bool) -> np.ndarray:
    """Iterative radix-2 FFT, n a power of two. Inverse is unnormalized."""
    n = x.shape[0]
    out = x.copy()
    if n == 1:
        return out

    # bit-reversal permutation
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            tmp = out[i]
            out[i] = out[j]
            out[j] = tmp

    # twiddle table over half the circle
    sign = 1.0 if inverse else -1.0
    half_n = n >> 1
    tw = np.empty(half_n, dtype=np.complex128)
    for t in range(half_n):
        ang = sign * 2.0 * np.pi * t / n
        tw[t] = complex(np.cos(ang), np.sin(ang))

    size = 2
    while size <= n:
        half = size >> 1
        step = n // size
        for start in range(0, n, size):
            ti = 0
            for k in range(start, start + half):
                t2 = tw[ti] * out[k + half]
                out[k + half] = out[k] - t2
                out[k] = out[k] + t2
                ti += step
        size <<= 1
    return out


@njit(cache=True)
def _bluestein(x: np.ndarray) -> np.ndarray:
    """Chirp-z FFT for arbitrary n via one circular convolution.

    X_k = w_k * sum_m (x_m w_m) conj(w_{k-m}) with w_j = e^{-i pi j^2 / n};
    the convolution runs in a power-of-two length M >= 2n-1 so no terms
    alias.  j^2 is reduced mod 2n (the chirp's true period) to keep the
    angle accurate for large j.
    """
    n = x.shape[0]
    two_n = 2 * n
    chirp = np.empty(n, dtype=np.complex128)
    for j in range(n):
        e = (j * j) % two_n
        ang = -np.pi * e / n
        chirp[j] = complex(np.cos(ang), np.sin(ang))

    m = 1
    while m < two_n - 1:
        m <<= 1

    a = np.zeros(m, dtype=np.complex128)
    for j in range(n):
        a[j] = x[j] * chirp[j]
    b = np.zeros(m, dtype=np.complex128)
    b[0] = np.conj(chirp[0])
    for j in range(1, n):
        c = np.conj(chirp[j])
        b[j] = c
        b[m - j] = c

    fa = _fft_pow2(a, False)
    fb = _fft_pow2(b, False)
    for j in range(m):
        fa[j] = fa[j] * fb[j]
    conv = _fft_pow2(fa, True)

    out = np.empty(n, dtype=np.complex128)
    inv_m = 1.0 / m
    for k in range(n):
        out[k] = conv[k] * inv_m * chirp[k]
    return out


@njit(cache=True)
def _fft_complex(x: np.ndarray) -> np.ndarray:
    n = x.shape[0]
    if n & (n - 1) == 0:
        return _fft_pow2(x, False)
    return _bluestein(x)


@njit(cache=True)
def fft(values: np.ndarray) -> np.ndarray:
    """Fast transform of a real signal, full length-n complex output."""
    return _fft_complex(values.astype(np.complex128))


@njit(cache=True)
def stft_frames(values: np.ndarray, window: np.ndarray, hop: int) -> np.ndarray:
    """Windowed frames transformed along the frequency axis.

    Caller guarantees len(values) >= len(window).  Output shape is
    (n_frames, len(window)) complex.
    """
    L = window.shape[0]
    n = values.shape[0]
    n_frames = (n - L) // hop + 1
    out = np.empty((n_frames, L), dtype=np.complex128)
    buf = np.empty(L, dtype=np.complex128)
    for t in range(n_frames):
        base = t * hop
        for m in range(L):
            buf[m] = complex(values[base + m] * window[m], 0.0)
        out[t, :] = _fft_complex(buf)
    return out


@njit(cache=True)
def sample_indices(cdf: np.ndarray, lens: np.ndarray, uniforms: np.ndarray) -> np.ndarray:
    """Draw candidate indices from per-position cumulative distributions.

    Semantics are identical to the numpy lane: index = first j with
    cdf[i, j] > u, clamped to lens[i]-1 (matches searchsorted side='right'
    followed by a clamp, so both lanes return bit-identical draws for the
    same uniforms).
    """
    n_samples, n_pos = uniforms.shape
    out = np.empty((n_samples, n_pos), dtype=np.int64)
    for s in range(n_samples):
        for i in range(n_pos):
            k = lens[i]
            u = uniforms[s, i]
            j = 0
            while j < k - 1 and u >= cdf[i, j]:
                j += 1
            out[s, i] = j
    return out


@njit(cache=True)
def batch_half_energy(centered_rows: np.ndarray) -> np.ndarray:
    """Half-spectrum power sum of each (already centered) row."""
    n_rows, n = centered_rows.shape
    half = n // 2 + 1
    out = np.empty(n_rows, dtype=np.float64)
    for r in range(n_rows):
        spec = fft(centered_rows[r].copy())
        acc = 0.0
        for k in range(half):
            acc += spec[k].real * spec[k].real + spec[k].imag * spec[k].imag
        out[r] = acc
    return out
