"""Training-free detection of machine-generated text.

Scores a text's token log-probability sequence by the spectral energy of
its zero-mean form: human writing fluctuates harder, so its spectrum
carries more energy.  A contrastive variant z-scores that energy against
sequences resampled from the scoring model's own conditional
distributions.
"""

from .backend import active_name, available_backends, set_backend
from .detector import (DetectionResult, Method, SampleStats, SamplerConfig,
                       baseline_score, derive_record_seed,
                       record_sampler_config, sample_contrastive,
                       specdetect_pp_score, specdetect_score, zscore)
from .dataio import (DatasetRecord, SyntheticSpec, dumps_json_line,
                     format_float, generate_synthetic, read_corpus,
                     record_signal, truncate_record, write_corpus)
# Network-failure subclasses stay in specdetect.errors next to the client;
# one of them would shadow a builtin at this level.
from .errors import (ApiError, DegenerateRanks, DegenerateVariance,
                     DuplicateId, EmptyClass, EmptyCorpus, EmptySignal,
                     InsufficientSupport, InvalidConfig, InvalidWindowLength,
                     IoError, MissingDistributions, MissingField,
                     NonFiniteScore, ParseError, SpecDetectError,
                     TooFewSamples, ValidationError)
from .evalkit import (BenchRow, CorrelationMatrix, EvalReport, auc, benchmark,
                      evaluate, format_report, pearson_matrix, report_to_json,
                      score_record)
from .features import (FEATURE_NAMES, FeatureVector, dft_total_energy,
                       feature_vector, mean_spectral_flux, spectral_centroid,
                       spectral_entropy, spectral_entropy_variance,
                       stft_total_energy)
from .apiclient import (ApiClient, EndpointConfig, FetchResult, fetch_corpus,
                        fetch_logprobs)
from .signal import CenteredSignal, TokenSignal, center
from .spectral import (DEFAULT_HOP, DEFAULT_WINDOW_LENGTH, Spectrogram,
                       Spectrum, dft_fast, dft_naive, hann_window, stft)

__version__ = "0.1.0"

__all__ = [
    "ApiClient", "ApiError", "BenchRow", "CenteredSignal",
    "CorrelationMatrix", "DEFAULT_HOP", "DEFAULT_WINDOW_LENGTH",
    "DatasetRecord", "DegenerateRanks", "DegenerateVariance",
    "DetectionResult", "DuplicateId", "EmptyClass", "EmptyCorpus",
    "EmptySignal", "EndpointConfig", "EvalReport", "FEATURE_NAMES",
    "FeatureVector", "FetchResult", "InsufficientSupport", "InvalidConfig",
    "InvalidWindowLength", "IoError", "Method", "MissingDistributions",
    "MissingField", "NonFiniteScore", "ParseError", "SampleStats",
    "SamplerConfig", "SpecDetectError", "Spectrogram", "Spectrum",
    "SyntheticSpec", "TokenSignal", "TooFewSamples", "ValidationError",
    "__version__", "active_name", "auc", "available_backends",
    "baseline_score", "benchmark", "center", "derive_record_seed", "dft_fast",
    "dft_naive", "dft_total_energy", "dumps_json_line", "evaluate",
    "feature_vector", "fetch_corpus", "fetch_logprobs", "format_float",
    "format_report", "generate_synthetic", "hann_window", "mean_spectral_flux",
    "pearson_matrix", "read_corpus", "record_sampler_config", "record_signal",
    "report_to_json", "sample_contrastive", "score_record", "set_backend",
    "specdetect_pp_score", "specdetect_score", "spectral_centroid",
    "spectral_entropy", "spectral_entropy_variance", "stft",
    "stft_total_energy", "truncate_record", "write_corpus", "zscore",
]
