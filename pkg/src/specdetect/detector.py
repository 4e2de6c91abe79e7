"""Detection scores over token-logprob signals.

SpecDetect: the half-spectrum energy of the zero-mean signal.  Human
text fluctuates harder than model text under the same scoring model, so
higher energy means more likely human; every other method here is
oriented the same way (higher => human) to keep AUC computation uniform.

SpecDetect++: the z-score of that energy against the energy distribution
of contrastive sequences resampled position-by-position from the stored
truncated conditional distributions.

Baselines: Likelihood, LogRank, Entropy, LRR over the per-token fields.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional, Sequence

import numpy as np

from . import backend
from .errors import (DegenerateRanks, DegenerateVariance, InsufficientSupport,
                     InvalidConfig, MissingDistributions, MissingField)
from .signal import TokenSignal, center
from .spectral import dft_fast
from .features import dft_total_energy


class Method(str, Enum):
    SPECDETECT = "specdetect"
    SPECDETECT_PP = "specdetect++"
    LIKELIHOOD = "likelihood"
    LOGRANK = "logrank"
    ENTROPY = "entropy"
    LRR = "lrr"


_BASELINES = (Method.LIKELIHOOD, Method.LOGRANK, Method.ENTROPY, Method.LRR)


@dataclass(frozen=True)
class SampleStats:
    """z-score decomposition: base energy, sample mean/std, sample count."""
    base_score: float
    sample_mean: float
    sample_std: float
    n_samples: int


@dataclass(frozen=True)
class DetectionResult:
    method: Method
    score: float
    raw: Optional[SampleStats] = None


@dataclass(frozen=True)
class SamplerConfig:
    """Contrastive-sampling knobs.

    n_samples >= 2 because a standard deviation over fewer samples is
    meaningless; min_std is the degenerate-variance floor.
    """
    n_samples: int = 100
    rng_seed: int = 0
    min_std: float = 1e-12

    def __post_init__(self) -> None:
        if not isinstance(self.n_samples, (int, np.integer)) or self.n_samples < 2:
            raise InvalidConfig(f"n_samples must be an integer >= 2, got {self.n_samples!r}")
        if not isinstance(self.rng_seed, (int, np.integer)) or not 0 <= self.rng_seed < 2 ** 64:
            raise InvalidConfig(f"rng_seed must be a 64-bit unsigned integer, got {self.rng_seed!r}")
        if not self.min_std > 0:
            raise InvalidConfig(f"min_std must be positive, got {self.min_std!r}")


def specdetect_score(signal: TokenSignal) -> DetectionResult:
    """Half-spectrum energy of the centered signal; higher => human."""
    energy = dft_total_energy(dft_fast(center(signal)))
    return DetectionResult(method=Method.SPECDETECT, score=energy)


def _candidate_arrays(signal: TokenSignal):
    """Pack ragged per-position candidates into padded matrices.

    Returns (vals, cdf, lens): vals[i, :lens[i]] are the candidate
    logprobs of position i, cdf[i, :lens[i]] the cumulative renormalized
    probabilities.  Renormalization is the max-shifted softmax over the
    stored candidate logprobs: p = exp(lp - max(lp)); p /= p.sum().
    """
    if signal.top_candidates is None:
        raise MissingDistributions(
            "signal has no top_candidates; supply them or a precomputed contrast set")
    n = len(signal)
    k_max = max(len(pos) for pos in signal.top_candidates)
    vals = np.zeros((n, k_max), dtype=np.float64)
    cdf = np.ones((n, k_max), dtype=np.float64)
    lens = np.empty(n, dtype=np.int64)
    for i, pos in enumerate(signal.top_candidates):
        k = len(pos)
        if k == 0:
            raise InsufficientSupport(f"position {i} has an empty candidate list")
        lp = np.array([c[1] for c in pos], dtype=np.float64)
        mx = float(np.max(lp))
        if not np.isfinite(mx):
            raise InsufficientSupport(
                f"position {i} has no usable probability mass after renormalization")
        # max shift leaves at least one unit weight, so the total is >= 1
        w = np.exp(lp - mx)
        p = w / float(w.sum())
        vals[i, :k] = lp
        cdf[i, :k] = np.cumsum(p)
        lens[i] = k
    return vals, cdf, lens


def _sample_matrix(signal: TokenSignal, cfg: SamplerConfig) -> np.ndarray:
    """(n_samples, n) matrix of sampled candidate logprobs.

    RNG contract (the replay oracle depends on it): uniforms are one
    ``numpy.random.default_rng(cfg.rng_seed).random((n_samples, n))``
    call, consumed positions-ascending within a sample, samples
    ascending; the index drawn for uniform u at position i is
    ``searchsorted(cdf_i, u, side='right')`` clamped to the last
    candidate.
    """
    vals, cdf, lens = _candidate_arrays(signal)
    rng = np.random.default_rng(cfg.rng_seed)
    uniforms = rng.random((cfg.n_samples, len(signal)))
    idx = backend.kernels().sample_indices(cdf, lens, uniforms)
    return vals[np.arange(len(signal))[None, :], idx]


def sample_contrastive(signal: TokenSignal, cfg: SamplerConfig) -> tuple[TokenSignal, ...]:
    """Draw cfg.n_samples contrastive signals of the same length.

    At each position a candidate is drawn independently from the stored
    truncated conditional distribution (renormalized over the position's
    top_candidates) and the sample's value there is that candidate's
    stored logprob.  Deterministic given cfg.rng_seed; see
    :func:`_sample_matrix` for the exact draw order.
    """
    matrix = _sample_matrix(signal, cfg)
    return tuple(TokenSignal(values=row) for row in matrix)


def zscore(base_score: float, sample_scores: Sequence[float],
           min_std: float = 1e-12) -> DetectionResult:
    """z-score of a base energy against contrastive sample energies.

    score = (base - mean) / std with the population (1/N) standard
    deviation; raises DegenerateVariance when the spread is below
    min_std.
    """
    scores = np.asarray(sample_scores, dtype=np.float64)
    if scores.ndim != 1 or scores.shape[0] < 2:
        raise InvalidConfig("sample_scores must hold at least 2 values")
    mu = float(np.mean(scores))
    sigma = float(np.std(scores))
    if sigma < min_std:
        raise DegenerateVariance(
            f"sample std {sigma!r} is below min_std {min_std!r}")
    stats = SampleStats(base_score=float(base_score), sample_mean=mu,
                        sample_std=sigma, n_samples=int(scores.shape[0]))
    return DetectionResult(method=Method.SPECDETECT_PP,
                           score=(float(base_score) - mu) / sigma, raw=stats)


def specdetect_pp_score(signal: TokenSignal, cfg: SamplerConfig,
                        contrast: Optional[Sequence[Sequence[float]]] = None) -> DetectionResult:
    """Sampling-discrepancy z-score; higher => human.

    The base energy is specdetect_score(signal); sample energies are the
    same statistic over contrastive sequences.  When ``contrast`` is
    given (precomputed sequences, each the signal's length, >= 2 of
    them) it takes precedence over sampling and cfg.n_samples is
    ignored; otherwise sequences are drawn per sample_contrastive.
    """
    base = specdetect_score(signal).score
    n = len(signal)
    if contrast is not None:
        rows = np.asarray(contrast, dtype=np.float64)
        if rows.ndim != 2 or rows.shape[0] < 2:
            raise InvalidConfig("contrast must hold at least 2 sequences")
        if rows.shape[1] != n:
            raise InvalidConfig(
                f"contrast sequences have length {rows.shape[1]}, expected {n}")
    else:
        rows = _sample_matrix(signal, cfg)
    centered_rows = rows - rows.mean(axis=1, keepdims=True)
    energies = backend.kernels().batch_half_energy(
        np.ascontiguousarray(centered_rows))
    return zscore(base, energies, cfg.min_std)


def baseline_score(signal: TokenSignal, method: Method) -> DetectionResult:
    """One of the four per-token baselines, oriented higher => human.

    Likelihood = -mean(values); LogRank = +mean(ln ranks);
    Entropy = +mean(entropies); LRR = sum(values) / sum(ln ranks),
    which is the negated likelihood/log-rank ratio.
    """
    method = Method(method)
    if method not in _BASELINES:
        raise InvalidConfig(f"{method.value} is not a baseline method")
    if method == Method.LIKELIHOOD:
        return DetectionResult(method=method, score=-float(np.mean(signal.values)))
    if method == Method.ENTROPY:
        if signal.entropies is None:
            raise MissingField("record has no entropies")
        return DetectionResult(method=method, score=float(np.mean(signal.entropies)))
    # rank-based methods
    if signal.ranks is None:
        raise MissingField("record has no ranks")
    log_ranks = np.log(signal.ranks)
    if method == Method.LOGRANK:
        return DetectionResult(method=method, score=float(np.mean(log_ranks)))
    denom = float(np.sum(log_ranks))
    if denom == 0.0:
        raise DegenerateRanks("all ranks are 1; log-rank sum is zero")
    return DetectionResult(method=method,
                           score=float(np.sum(signal.values)) / denom)


def derive_record_seed(base_seed: int, record_id: str) -> int:
    """Per-record RNG seed from (corpus seed, record id).

    The id is hashed with sha256 (process-stable, unlike Python's
    salted hash()) and folded with the base seed through a
    SeedSequence, giving records independent, reproducible streams so
    corpora can be scored in parallel in any order.
    """
    digest = hashlib.sha256(record_id.encode("utf-8")).digest()
    ident = int.from_bytes(digest[:8], "big")
    seq = np.random.SeedSequence([int(base_seed), ident])
    return int(seq.generate_state(1, np.uint64)[0])


def record_sampler_config(cfg: SamplerConfig, record_id: str) -> SamplerConfig:
    """cfg with its seed replaced by the record-derived stream seed."""
    return replace(cfg, rng_seed=derive_record_seed(cfg.rng_seed, record_id))
