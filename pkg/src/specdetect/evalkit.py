"""Corpus-level evaluation: ROC-AUC, feature correlations, timing.

AUC uses the rank-based Mann-Whitney formulation with tied ranks
averaged (the 0.5 tie convention), human as the positive class.  Timing
covers scoring only; logprob extraction happens upstream and its cost is
deliberately excluded (the report says so on its first line).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

import numpy as np

from .dataio import DatasetRecord, record_signal
from .detector import (DetectionResult, Method, SamplerConfig, baseline_score,
                       record_sampler_config, specdetect_pp_score,
                       specdetect_score)
from .errors import (EmptyClass, EmptyCorpus, NonFiniteScore, SpecDetectError,
                     TooFewSamples)
from .features import FEATURE_NAMES, FeatureVector

_TIMING_NOTE = "timing covers scoring only; logprob extraction is excluded"


@dataclass(frozen=True)
class EvalReport:
    """AUC per method, label counts, per-record scoring time, failures.

    Maps are keyed by the method's CLI name (e.g. "specdetect").  A
    method missing from per_method_auc could not be evaluated (a label
    class ended up empty after failures); its records still appear in
    ``failures`` as (record id, method, error label) triples.
    """

    per_method_auc: dict[str, float]
    n_human: int
    n_machine: int
    runtime_ms_per_record: dict[str, float]
    failures: list[tuple[str, str, str]]


@dataclass(frozen=True)
class CorrelationMatrix:
    labels: tuple[str, ...]
    values: np.ndarray

    def of(self, a: str, b: str) -> float:
        return float(self.values[self.labels.index(a), self.labels.index(b)])


def auc(human_scores: Sequence[float], machine_scores: Sequence[float]) -> float:
    """Mann-Whitney AUC with human as the positive class.

    AUC = [#(h > m) + 0.5 #(h = m)] / (|H| |M|), computed from tied
    average ranks in O(n log n); the direct pairwise count is the test
    oracle, not the implementation.
    """
    h = np.asarray(human_scores, dtype=np.float64)
    m = np.asarray(machine_scores, dtype=np.float64)
    if h.size == 0 or m.size == 0:
        raise EmptyClass("both classes need at least one score")
    if not (np.all(np.isfinite(h)) and np.all(np.isfinite(m))):
        raise NonFiniteScore("scores must be finite")
    scores = np.concatenate([h, m])
    order = np.argsort(scores, kind="stable")
    ranks = np.empty(scores.size, dtype=np.float64)
    srt = scores[order]
    i = 0
    while i < srt.size:
        j = i
        while j + 1 < srt.size and srt[j + 1] == srt[i]:
            j += 1
        ranks[order[i:j + 1]] = 0.5 * (i + j) + 1.0  # average 1-based rank
        i = j + 1
    rank_sum = float(np.sum(ranks[:h.size]))
    return (rank_sum - h.size * (h.size + 1) / 2.0) / (h.size * m.size)


def pearson_matrix(vectors: Sequence[FeatureVector]) -> CorrelationMatrix:
    """Pairwise Pearson r over the six feature columns.

    A constant column correlates 0 with everything by convention; the
    diagonal is exactly 1.
    """
    if len(vectors) < 2:
        raise TooFewSamples("correlation needs at least 2 feature vectors")
    X = np.stack([v.as_array() for v in vectors])
    Xc = X - X.mean(axis=0)
    sd = np.sqrt(np.mean(Xc ** 2, axis=0))
    k = len(FEATURE_NAMES)
    values = np.eye(k)
    for a in range(k):
        for b in range(a + 1, k):
            if sd[a] == 0.0 or sd[b] == 0.0:
                r = 0.0
            else:
                r = float(np.mean(Xc[:, a] * Xc[:, b]) / (sd[a] * sd[b]))
                r = min(1.0, max(-1.0, r))
            values[a, b] = r
            values[b, a] = r
    return CorrelationMatrix(labels=FEATURE_NAMES, values=values)


def score_record(record: DatasetRecord, method: Method,
                 cfg: Optional[SamplerConfig] = None) -> DetectionResult:
    """Score one record with one method.

    For SpecDetect++ the RNG stream is derived from (cfg.rng_seed,
    record.id), so per-record results do not depend on corpus order; a
    record's stored contrast_logprobs take precedence over sampling.
    """
    signal = record_signal(record)
    method = Method(method)
    if method == Method.SPECDETECT:
        return specdetect_score(signal)
    if method == Method.SPECDETECT_PP:
        if cfg is None:
            cfg = SamplerConfig()
        per_record = record_sampler_config(cfg, record.id)
        return specdetect_pp_score(signal, per_record,
                                   contrast=record.contrast_logprobs)
    return baseline_score(signal, method)


def _ordered_methods(methods: Iterable[Method]) -> list[Method]:
    out: list[Method] = []
    for m in methods:
        m = Method(m)
        if m not in out:
            out.append(m)
    return out


def _score_corpus(corpus: Sequence[DatasetRecord], method: Method,
                  cfg: Optional[SamplerConfig]):
    """Score every record; returns (human, machine, failures, elapsed_ms)."""
    human: list[float] = []
    machine: list[float] = []
    failures: list[tuple[str, str, str]] = []
    t0 = time.perf_counter()
    for record in corpus:
        try:
            result = score_record(record, method, cfg)
        except SpecDetectError as exc:
            failures.append((record.id, method.value, exc.label))
            continue
        if not np.isfinite(result.score):
            failures.append((record.id, method.value, "NonFiniteScore"))
            continue
        (human if record.label == "human" else machine).append(result.score)
    elapsed_ms = (time.perf_counter() - t0) * 1000.0
    return human, machine, failures, elapsed_ms


def evaluate(corpus: Sequence[DatasetRecord], methods: Iterable[Method],
             cfg: Optional[SamplerConfig] = None) -> EvalReport:
    """Score the corpus with every method and report AUCs.

    Per-record failures are collected, never fatal: a record missing a
    field for one method still counts for every other method.
    """
    if len(corpus) == 0:
        raise EmptyCorpus("evaluation needs at least one record")
    per_method_auc: dict[str, float] = {}
    runtime: dict[str, float] = {}
    failures: list[tuple[str, str, str]] = []
    n_human = sum(1 for r in corpus if r.label == "human")
    n_machine = len(corpus) - n_human
    for method in _ordered_methods(methods):
        human, machine, method_failures, elapsed_ms = _score_corpus(
            corpus, method, cfg)
        failures.extend(method_failures)
        runtime[method.value] = elapsed_ms / len(corpus)
        if human and machine:
            per_method_auc[method.value] = auc(human, machine)
    return EvalReport(per_method_auc=per_method_auc, n_human=n_human,
                      n_machine=n_machine, runtime_ms_per_record=runtime,
                      failures=failures)


@dataclass(frozen=True)
class BenchRow:
    method: str
    n_records: int
    n_failures: int
    ms_per_record: float


def benchmark(corpus: Sequence[DatasetRecord], methods: Iterable[Method],
              cfg: Optional[SamplerConfig] = None) -> list[BenchRow]:
    """Scoring-only wall-clock per record for each method."""
    if len(corpus) == 0:
        raise EmptyCorpus("benchmark needs at least one record")
    rows = []
    for method in _ordered_methods(methods):
        _, _, failures, elapsed_ms = _score_corpus(corpus, method, cfg)
        rows.append(BenchRow(method=method.value, n_records=len(corpus),
                             n_failures=len(failures),
                             ms_per_record=elapsed_ms / len(corpus)))
    return rows


# ---------------------------------------------------------------------------
# report serialization (field names are fixed by the CLI manual in README)

def format_report(report: EvalReport, methods: Optional[Sequence[Method]] = None) -> str:
    """Key-value text form, one metric per line.

    When ``methods`` is given, a method without a computable AUC gets an
    explicit "auc.<method> unavailable" line instead of silence.
    """
    lines = [f"# {_TIMING_NOTE}"]
    lines.append(f"n_human {report.n_human}")
    lines.append(f"n_machine {report.n_machine}")
    names = ([Method(m).value for m in methods] if methods is not None
             else list(report.per_method_auc))
    for name in names:
        if name in report.per_method_auc:
            lines.append(f"auc.{name} {report.per_method_auc[name]:.12g}")
        else:
            lines.append(f"auc.{name} unavailable")
    for name, ms in report.runtime_ms_per_record.items():
        lines.append(f"runtime_ms_per_record.{name} {ms:.4g}")
    lines.append(f"failures {len(report.failures)}")
    for rid, method, label in report.failures:
        lines.append(f"failure {rid} {method} {label}")
    return "\n".join(lines) + "\n"


def report_to_json(report: EvalReport) -> dict:
    """Machine-readable form of the report."""
    return {
        "timing_note": _TIMING_NOTE,
        "n_human": report.n_human,
        "n_machine": report.n_machine,
        "auc": dict(report.per_method_auc),
        "runtime_ms_per_record": dict(report.runtime_ms_per_record),
        "failures": [list(f) for f in report.failures],
    }
