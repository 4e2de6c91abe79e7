"""Transforms: direct DFT, fast path, Hann window, short-time frames."""

import numpy as np
import pytest

from specdetect import (
    DEFAULT_HOP,
    DEFAULT_WINDOW_LENGTH,
    CenteredSignal,
    InvalidConfig,
    InvalidWindowLength,
    Spectrum,
    center,
    dft_fast,
    dft_naive,
    hann_window,
    stft,
)
from specdetect.signal import TokenSignal

# Mix of tiny, prime, composite and power-of-two lengths; both fft code paths.
ASSORTED_LENGTHS = [1, 2, 3, 4, 5, 6, 7, 8, 11, 13, 16, 17, 23, 31, 32, 45, 53,
                    64, 97, 100, 101, 127, 128, 251, 256]


def centered(values):
    return CenteredSignal(values=np.asarray(values, dtype=np.float64), original_mean=0.0)


def rand_centered(rng, n):
    return center(TokenSignal(values=rng.standard_normal(n) * 3.0))


def assert_spectra_close(a, b, tol=1e-9):
    scale = max(1.0, float(np.max(np.abs(a))))
    np.testing.assert_allclose(b, a, rtol=0, atol=tol * scale)


class TestDirectDft:
    def test_two_point_example(self, lane):
        s = dft_naive(centered([1.0, -1.0]))
        np.testing.assert_allclose(s.coefficients, [0.0, 2.0], atol=1e-12)
        np.testing.assert_allclose(s.half_power, [0.0, 4.0], atol=1e-12)

    def test_four_point_alternating(self, lane):
        s = dft_naive(centered([1.0, 0.0, -1.0, 0.0]))
        np.testing.assert_allclose(s.coefficients, [0.0, 2.0, 0.0, 2.0], atol=1e-12)
        np.testing.assert_allclose(s.half_power, [0.0, 4.0, 0.0], atol=1e-12)

    def test_zero_signal(self, lane):
        s = dft_naive(centered(np.zeros(4)))
        np.testing.assert_array_equal(np.abs(s.coefficients), np.zeros(4))

    def test_length_one(self, lane):
        s = dft_naive(centered([0.0]))
        assert s.n == 1
        assert s.half_power.tolist() == [0.0]

    def test_matches_numpy_fft(self, lane):
        rng = np.random.default_rng(11)
        for n in ASSORTED_LENGTHS:
            c = rand_centered(rng, n)
            assert_spectra_close(np.fft.fft(c.values), dft_naive(c).coefficients)


class TestFastDft:
    def test_matches_direct_route(self, lane):
        rng = np.random.default_rng(7)
        for n in ASSORTED_LENGTHS:
            c = rand_centered(rng, n)
            assert_spectra_close(dft_naive(c).coefficients, dft_fast(c).coefficients)

    def test_matches_numpy_fft(self, lane):
        rng = np.random.default_rng(13)
        for n in ASSORTED_LENGTHS:
            c = rand_centered(rng, n)
            assert_spectra_close(np.fft.fft(c.values), dft_fast(c).coefficients)

    def test_linearity(self, lane):
        rng = np.random.default_rng(17)
        for n in (8, 45, 97):
            x = rand_centered(rng, n).values
            y = rand_centered(rng, n).values
            a, b = 2.5, -0.75
            lhs = dft_fast(centered(a * x + b * y)).coefficients
            rhs = a * dft_fast(centered(x)).coefficients + b * dft_fast(centered(y)).coefficients
            assert_spectra_close(rhs, lhs)

    def test_conjugate_symmetry(self, lane):
        rng = np.random.default_rng(19)
        for n in (6, 31, 64, 101):
            coeffs = dft_fast(rand_centered(rng, n)).coefficients
            mirrored = np.conj(coeffs[(-np.arange(n)) % n])
            assert_spectra_close(coeffs, mirrored)

    def test_parseval(self, lane):
        rng = np.random.default_rng(23)
        for n in (5, 20, 64, 127):
            c = rand_centered(rng, n)
            total = float(np.sum(np.abs(dft_fast(c).coefficients) ** 2))
            direct = n * float(np.sum(c.values**2))
            assert total == pytest.approx(direct, rel=1e-9)

    def test_dc_coefficient_is_zero(self, lane):
        rng = np.random.default_rng(29)
        c = rand_centered(rng, 50)
        assert abs(dft_fast(c).coefficients[0]) <= 1e-9 * 50


class TestSpectrumContainer:
    def test_half_power_derived(self):
        s = Spectrum(coefficients=np.array([0.0, 2.0, 0.0, 2.0], dtype=complex), n=4)
        np.testing.assert_allclose(s.half_power, [0.0, 4.0, 0.0], atol=0)

    def test_half_power_length_inclusive(self):
        for n in (1, 2, 3, 4, 5, 8):
            s = Spectrum(coefficients=np.zeros(n, dtype=complex), n=n)
            assert len(s.half_power) == n // 2 + 1

    def test_explicit_half_power_shape_checked(self):
        with pytest.raises(InvalidConfig):
            Spectrum(
                coefficients=np.zeros(4, dtype=complex),
                n=4,
                half_power=np.array([1.0, 2.0]),
            )

    def test_coefficient_count_checked(self):
        with pytest.raises(InvalidConfig):
            Spectrum(coefficients=np.zeros(3, dtype=complex), n=4)


class TestHannWindow:
    def test_length_one(self):
        assert hann_window(1).tolist() == [0.0]

    def test_length_two(self):
        assert hann_window(2).tolist() == [0.0, 1.0]

    def test_length_four(self):
        np.testing.assert_allclose(hann_window(4), [0.0, 0.5, 1.0, 0.5], atol=1e-12)

    def test_periodic_not_symmetric(self):
        # Periodic variant: w[m] = 0.5 * (1 - cos(2 pi m / L)); last sample != 0.
        w = hann_window(20)
        m = np.arange(20)
        np.testing.assert_allclose(w, 0.5 * (1.0 - np.cos(2.0 * np.pi * m / 20)), atol=1e-12)
        assert w[-1] > 0.0

    def test_range(self):
        for length in range(1, 65):
            w = hann_window(length)
            assert np.all(w >= 0.0) and np.all(w <= 1.0)

    def test_invalid_lengths(self):
        for bad in (0, -3):
            with pytest.raises(InvalidWindowLength):
                hann_window(bad)
        with pytest.raises(InvalidWindowLength):
            hann_window(True)


class TestStft:
    def test_defaults(self):
        assert DEFAULT_WINDOW_LENGTH == 20
        assert DEFAULT_HOP == 10

    def test_frame_count_formula(self, lane):
        rng = np.random.default_rng(31)
        for n, expected in ((20, 1), (29, 1), (30, 2), (45, 3), (100, 9)):
            g = stft(rand_centered(rng, n))
            assert g.n_frames == expected
            assert g.frames.shape == (expected, 20)

    def test_frames_match_windowed_fft(self, lane):
        rng = np.random.default_rng(37)
        c = rand_centered(rng, 45)
        g = stft(c)
        w = hann_window(20)
        for t, offset in enumerate((0, 10, 20)):
            expected = np.fft.fft(w * c.values[offset : offset + 20])
            assert_spectra_close(expected, g.frames[t])

    def test_short_signal_fallback(self, lane):
        rng = np.random.default_rng(41)
        c = rand_centered(rng, 7)
        g = stft(c)
        assert g.n_frames == 1
        assert g.window_length == 7
        assert_spectra_close(np.fft.fft(hann_window(7) * c.values), g.frames[0])

    def test_zero_signal_zero_frames(self, lane):
        g = stft(centered(np.zeros(40)))
        assert np.all(np.abs(g.frames) == 0.0)

    def test_pure_tone_concentration(self, lane):
        # cos at bin f0=4 of a 20-sample window: the raised-cosine window
        # spreads the line over exactly three taps, peak at f0 and half
        # the peak at f0 +- 1; every other non-mirror bin is ~zero.
        f0 = 4
        t = np.arange(60, dtype=np.float64)
        tone = np.cos(2.0 * np.pi * f0 * t / 20.0)
        g = stft(center(TokenSignal(values=tone)))
        assert g.n_frames == 5
        for frame in g.frames:
            mags = np.abs(frame)
            assert mags[f0] >= mags.max() * (1.0 - 1e-9)
            for adjacent in (f0 - 1, f0 + 1):
                assert abs(mags[adjacent] - mags[f0] / 2.0) <= 1e-9 * mags[f0]
            keep = {f0 - 1, f0, f0 + 1, 19 - f0, 20 - f0, 21 - f0}
            others = np.delete(mags, sorted(keep))
            assert others.max() <= 1e-9 * mags[f0]

    def test_custom_window_and_hop(self, lane):
        rng = np.random.default_rng(43)
        c = rand_centered(rng, 30)
        g = stft(c, L=8, h=4)
        assert g.frames.shape == ((30 - 8) // 4 + 1, 8)
        assert g.hop == 4
        w = hann_window(8)
        assert_spectra_close(np.fft.fft(w * c.values[4:12]), g.frames[1])

    def test_invalid_hop(self, lane):
        c = centered([1.0, -1.0] * 15)
        with pytest.raises(InvalidConfig):
            stft(c, h=0)

    def test_invalid_window(self, lane):
        c = centered([1.0, -1.0] * 15)
        with pytest.raises(InvalidWindowLength):
            stft(c, L=0)
