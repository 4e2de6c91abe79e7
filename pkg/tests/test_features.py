"""The six spectral features and their invariances."""

import numpy as np
import pytest

from specdetect import (
    FEATURE_NAMES,
    CenteredSignal,
    FeatureVector,
    Spectrogram,
    Spectrum,
    TokenSignal,
    center,
    dft_naive,
    dft_total_energy,
    feature_vector,
    hann_window,
    mean_spectral_flux,
    spectral_centroid,
    spectral_entropy,
    spectral_entropy_variance,
    stft_total_energy,
)


def spec_hp(half_power):
    # Spectrum with prescribed half-spectrum powers; coefficients unused
    # by the features under test, only shape-checked.
    hp = np.asarray(half_power, dtype=np.float64)
    n = 2 * (len(hp) - 1)
    if n == 0:
        n = 1
    return Spectrum(coefficients=np.zeros(n, dtype=complex), n=n, half_power=hp)


def gram(frames, hop=10):
    frames = np.asarray(frames, dtype=complex)
    L = frames.shape[1]
    return Spectrogram(frames=frames, window_length=L, hop=hop, window=hann_window(L))


def tsig(values):
    return TokenSignal(values=np.asarray(values, dtype=np.float64))


class TestIndividualFeatures:
    def test_dft_energy_examples(self):
        assert dft_total_energy(spec_hp([0.0, 4.0])) == 4.0
        assert dft_total_energy(spec_hp([0.0, 4.0, 0.0])) == 4.0
        assert dft_total_energy(spec_hp([0.0, 0.0, 0.0])) == 0.0

    def test_stft_energy_examples(self):
        assert stft_total_energy(gram(np.zeros((2, 4)))) == 0.0
        assert stft_total_energy(gram([[2.0, 0.0]])) == 4.0
        assert stft_total_energy(gram([[1.0, 0.0], [0.0, 1.0]])) == 2.0
        assert stft_total_energy(gram([[3.0j, 4.0]])) == pytest.approx(25.0)

    def test_flux_examples(self):
        assert mean_spectral_flux(gram([[1.0, 2.0]])) == 0.0
        assert mean_spectral_flux(gram([[1.0, 2.0], [1.0, 2.0]])) == 0.0
        assert mean_spectral_flux(gram([[2.0, 0.0], [0.0, 2.0]])) == 4.0
        # Magnitude flux ignores pure phase rotation.
        assert mean_spectral_flux(gram([[2.0, 0.0], [-2.0, 0.0]])) == 0.0
        # Three frames: (|d1| + |d2|) / 2.
        assert mean_spectral_flux(
            gram([[1.0, 0.0], [3.0, 0.0], [0.0, 0.0]])
        ) == pytest.approx((2.0 + 3.0) / 2.0)

    def test_centroid_examples(self):
        assert spectral_centroid(spec_hp([0.0, 4.0, 0.0])) == 1.0
        assert spectral_centroid(spec_hp([0.0, 0.0, 0.0])) == 0.0
        assert spectral_centroid(spec_hp([0.0, 1.0, 1.0])) == 1.5
        assert spectral_centroid(spec_hp([1.0, 0.0, 0.0])) == 0.0

    def test_centroid_bounds(self):
        rng = np.random.default_rng(3)
        for _ in range(20):
            hp = rng.random(9)
            c = spectral_centroid(spec_hp(hp))
            assert 0.0 <= c <= 8.0

    def test_entropy_examples(self):
        assert spectral_entropy(spec_hp([0.0, 4.0, 0.0])) == 0.0
        assert spectral_entropy(spec_hp([0.0, 2.0, 2.0])) == 1.0
        assert spectral_entropy(spec_hp([0.0, 0.0, 0.0])) == 0.0
        assert spectral_entropy(spec_hp([1.0, 1.0, 1.0, 1.0])) == 2.0

    def test_entropy_scale_free(self):
        hp = np.array([0.5, 1.25, 0.25, 3.0, 1.0])
        a = spectral_entropy(spec_hp(hp))
        b = spectral_entropy(spec_hp(hp * 37.5))
        assert a == pytest.approx(b, rel=1e-12)

    def test_entropy_upper_bound(self):
        rng = np.random.default_rng(5)
        for bins in (2, 5, 11):
            hp = rng.random(bins)
            h = spectral_entropy(spec_hp(hp))
            assert h <= np.log2(bins) + 1e-12
        assert spectral_entropy(spec_hp(np.ones(8))) == pytest.approx(3.0)

    def test_entropy_variance_examples(self):
        assert spectral_entropy_variance(gram([[1.0, 2.0]])) == 0.0
        assert spectral_entropy_variance(gram([[1.0, 1.0], [2.0, 2.0]])) == 0.0
        # Window entropies 0 and 2 bits -> population variance 1.
        assert spectral_entropy_variance(
            gram([[2.0, 0.0, 0.0, 0.0], [1.0, 1.0, 1.0, 1.0]])
        ) == pytest.approx(1.0)


class TestFeatureVector:
    def test_names_and_order(self):
        assert FEATURE_NAMES == (
            "e_dft", "e_stft", "mean_flux", "centroid", "entropy",
            "entropy_variance",
        )
        fv = FeatureVector(1.0, 2.0, 3.0, 4.0, 5.0, 6.0)
        assert fv.as_array().tolist() == [1.0, 2.0, 3.0, 4.0, 5.0, 6.0]

    def test_constant_signal_all_zero(self, lane):
        fv = feature_vector(tsig([3.0] * 25))
        assert fv.as_array().tolist() == [0.0] * 6

    def test_two_token_example(self, lane):
        fv = feature_vector(tsig([1.0, -1.0]))
        assert fv.e_dft == pytest.approx(4.0, abs=1e-9)
        assert fv.centroid == pytest.approx(1.0, abs=1e-12)
        assert fv.entropy == pytest.approx(0.0, abs=1e-12)
        # Single fallback frame of length 2: windowed [0, -1] -> bins [-1, 1].
        assert fv.e_stft == pytest.approx(2.0, abs=1e-9)
        assert fv.mean_flux == 0.0
        assert fv.entropy_variance == 0.0

    def test_e_dft_matches_direct_route(self, lane):
        rng = np.random.default_rng(7)
        s = tsig(rng.standard_normal(64))
        fv = feature_vector(s)
        oracle = dft_total_energy(dft_naive(center(s)))
        assert fv.e_dft == pytest.approx(oracle, rel=1e-9)

    def test_amplitude_scaling_law(self, lane):
        rng = np.random.default_rng(9)
        for n in (5, 10, 30, 64, 101):
            base_values = rng.standard_normal(n)
            base = feature_vector(tsig(base_values))
            for c in (0.5, 2.0, 10.0):
                scaled = feature_vector(tsig(c * base_values))
                assert scaled.e_dft == pytest.approx(c * c * base.e_dft, rel=1e-9)
                assert scaled.e_stft == pytest.approx(c * c * base.e_stft, rel=1e-9)
                assert scaled.mean_flux == pytest.approx(abs(c) * base.mean_flux, rel=1e-9)
                assert scaled.centroid == pytest.approx(base.centroid, abs=1e-9)
                assert scaled.entropy == pytest.approx(base.entropy, abs=1e-9)
                assert scaled.entropy_variance == pytest.approx(
                    base.entropy_variance, abs=1e-9)

    def test_mean_shift_invariance(self, lane):
        rng = np.random.default_rng(11)
        values = rng.standard_normal(50) * 2.0
        base = feature_vector(tsig(values)).as_array()
        shifted = feature_vector(tsig(values + 123.25)).as_array()
        np.testing.assert_allclose(shifted[:3], base[:3], rtol=1e-9)
        np.testing.assert_allclose(shifted[3:], base[3:], atol=1e-9)

    def test_parseval_energy_bounds(self, lane):
        # Half-spectrum energy vs time-domain energy: e_dft <= n*sum(v^2)
        # <= 2*e_dft for centered signals, with equality 2*e_dft when the
        # Nyquist bin vanishes.
        rng = np.random.default_rng(13)
        for n in (9, 24, 64, 101):
            v = center(tsig(rng.standard_normal(n))).values
            e = dft_total_energy(dft_naive(cwrap(v)))
            t = n * float(np.sum(v * v))
            assert e <= t * (1.0 + 1e-12)
            assert t <= 2.0 * e * (1.0 + 1e-12)
        # Period-2 repetition with n/2 odd has a zero Nyquist bin.
        u = center(tsig(rng.standard_normal(5))).values
        v = np.concatenate([u, u])
        e = dft_total_energy(dft_naive(cwrap(v)))
        assert 2.0 * e == pytest.approx(10.0 * float(np.sum(v * v)), rel=1e-9)

    def test_short_signal_uses_fallback_frame(self, lane):
        fv = feature_vector(tsig([0.5, -1.0, 2.0, 0.25, -0.75]))
        assert fv.mean_flux == 0.0
        assert fv.entropy_variance == 0.0
        assert fv.e_stft > 0.0


def cwrap(values):
    return CenteredSignal(values=values, original_mean=0.0)
