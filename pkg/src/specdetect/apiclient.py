"""Logprob extraction over an OpenAI-compatible completions endpoint.

POSTs ``{base_url}/completions`` with ``echo`` and ``logprobs`` set, so
the provider scores the prompt itself and returns per-token logprobs
plus up to k top alternatives per position (hosted APIs cap k at 20; the
local extractor exists for larger K).  The first prompt token has no
conditional logprob and is dropped, so a text of n provider tokens
yields a signal of length n - 1.

Request shape (de-facto completions schema):

    {"model": ..., "prompt": text, "max_tokens": 0, "echo": true,
     "logprobs": k}

Response fields consumed: ``choices[0].logprobs.tokens``,
``.token_logprobs`` (entry 0 may be null; nulls elsewhere are schema
errors), ``.top_logprobs`` (per-position {token: logprob} maps, may be
null when k = 0).

Credentials come from SPECDETECT_API_KEY unless set explicitly and are
never logged or serialized.
"""

from __future__ import annotations

import math
import os
import threading
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

import requests

from . import errors
from .dataio import LABELS, DatasetRecord
from .signal import TokenSignal

ENV_API_KEY = "SPECDETECT_API_KEY"
ENV_BASE_URL = "SPECDETECT_BASE_URL"

_RETRYABLE_STATUS = frozenset({429}) | frozenset(range(500, 600))


@dataclass
class EndpointConfig:
    """Connection and retry policy for one completions endpoint.

    api_key falls back to the SPECDETECT_API_KEY environment variable
    when left empty.  top_logprobs_k is capped at 20, the hosted-API
    ceiling; 0 disables candidate retrieval entirely.
    """

    base_url: str
    model: str
    api_key: str = ""
    top_logprobs_k: int = 20
    timeout_s: float = 30.0
    max_concurrent: int = 4
    max_retries: int = 3
    backoff_base_ms: int = 100

    def __post_init__(self) -> None:
        if not isinstance(self.base_url, str) or not self.base_url.startswith(("http://", "https://")):
            raise errors.InvalidConfig(
                f"base_url must be an absolute http(s) URL, got {self.base_url!r}")
        if not isinstance(self.model, str) or self.model == "":
            raise errors.InvalidConfig("model must be a non-empty string")
        if not isinstance(self.top_logprobs_k, int) or not 0 <= self.top_logprobs_k <= 20:
            raise errors.InvalidConfig(
                f"top_logprobs_k must be an integer in [0, 20], got {self.top_logprobs_k!r}")
        if not self.timeout_s > 0:
            raise errors.InvalidConfig("timeout_s must be positive")
        if not isinstance(self.max_concurrent, int) or self.max_concurrent < 1:
            raise errors.InvalidConfig("max_concurrent must be >= 1")
        if not isinstance(self.max_retries, int) or self.max_retries < 0:
            raise errors.InvalidConfig("max_retries must be >= 0")
        if not isinstance(self.backoff_base_ms, int) or self.backoff_base_ms < 1:
            raise errors.InvalidConfig("backoff_base_ms must be a positive integer")
        if self.api_key == "":
            self.api_key = os.environ.get(ENV_API_KEY, "")

    def __repr__(self) -> str:  # never leak the credential
        masked = "***" if self.api_key else "(unset)"
        return (f"EndpointConfig(base_url={self.base_url!r}, model={self.model!r}, "
                f"api_key={masked}, top_logprobs_k={self.top_logprobs_k}, "
                f"timeout_s={self.timeout_s}, max_concurrent={self.max_concurrent}, "
                f"max_retries={self.max_retries}, backoff_base_ms={self.backoff_base_ms})")


@dataclass
class ClientMetrics:
    """Observable request counters, updated under the client's lock."""
    requests_sent: int = 0
    retries: int = 0
    failures: int = 0


@dataclass(frozen=True)
class FetchResult:
    """Records in input order plus (id, error label) failure entries."""
    records: list[DatasetRecord]
    failures: list[tuple[str, str]] = field(default_factory=list)


class ApiClient:
    """Shared-session client; safe for concurrent callers."""

    def __init__(self, cfg: EndpointConfig):
        self.cfg = cfg
        self.metrics = ClientMetrics()
        self._session = requests.Session()
        self._lock = threading.Lock()
        self._sleep = time.sleep  # injectable for tests

    def close(self) -> None:
        self._session.close()

    def __enter__(self) -> "ApiClient":
        return self

    def __exit__(self, *exc) -> None:
        self.close()

    # -- transport ---------------------------------------------------------

    def _bump(self, counter: str) -> None:
        with self._lock:
            setattr(self.metrics, counter, getattr(self.metrics, counter) + 1)

    def _backoff(self, attempt: int) -> None:
        self._bump("retries")
        self._sleep(self.cfg.backoff_base_ms * (2 ** attempt) / 1000.0)

    def _post(self, payload: dict) -> dict:
        """POST with bounded retries; returns the decoded JSON body."""
        url = self.cfg.base_url.rstrip("/") + "/completions"
        headers = {"Content-Type": "application/json"}
        if self.cfg.api_key:
            headers["Authorization"] = f"Bearer {self.cfg.api_key}"
        attempt = 0
        while True:
            self._bump("requests_sent")
            try:
                resp = self._session.post(url, json=payload, headers=headers,
                                          timeout=self.cfg.timeout_s)
            except requests.Timeout:
                if attempt < self.cfg.max_retries:
                    self._backoff(attempt)
                    attempt += 1
                    continue
                self._bump("failures")
                raise errors.TimeoutError(
                    f"no response within {self.cfg.timeout_s}s after {attempt} retries")
            except requests.ConnectionError as exc:
                if attempt < self.cfg.max_retries:
                    self._backoff(attempt)
                    attempt += 1
                    continue
                self._bump("failures")
                raise errors.HttpError(None, str(exc))

            if resp.status_code == 200:
                try:
                    return resp.json()
                except ValueError as exc:
                    self._bump("failures")
                    raise errors.SchemaError(f"response body is not JSON: {exc}")
            if resp.status_code in (401, 403):
                self._bump("failures")
                raise errors.AuthError(f"endpoint rejected the credential (HTTP {resp.status_code})")
            if resp.status_code in _RETRYABLE_STATUS:
                if attempt < self.cfg.max_retries:
                    self._backoff(attempt)
                    attempt += 1
                    continue
                self._bump("failures")
                if resp.status_code == 429:
                    raise errors.RateLimited(f"still rate-limited after {attempt} retries")
                raise errors.HttpError(resp.status_code, "retries exhausted")
            self._bump("failures")
            raise errors.HttpError(resp.status_code, resp.text[:200])

    # -- parsing -----------------------------------------------------------

    def _parse_signal(self, body: dict) -> TokenSignal:
        try:
            lp = body["choices"][0]["logprobs"]
            all_tokens = lp["tokens"]
            all_logprobs = lp["token_logprobs"]
        except (KeyError, IndexError, TypeError) as exc:
            raise errors.SchemaError(f"response missing logprob fields: {exc}")
        if not isinstance(all_tokens, list) or not isinstance(all_logprobs, list):
            raise errors.SchemaError("tokens/token_logprobs must be lists")
        if len(all_tokens) != len(all_logprobs):
            raise errors.SchemaError("tokens and token_logprobs lengths differ")
        if len(all_logprobs) < 2:
            raise errors.SchemaError(
                "need at least 2 provider tokens; the first has no conditional logprob")

        # position 0 is dropped: no conditional exists for the first token
        values = []
        for i, v in enumerate(all_logprobs[1:], start=1):
            if not isinstance(v, (int, float)) or isinstance(v, bool):
                raise errors.SchemaError(f"token_logprobs[{i}] is not a number")
            if not math.isfinite(float(v)):
                raise errors.SchemaError(f"token_logprobs[{i}] is not finite")
            values.append(float(v))
        tokens = tuple(str(t) for t in all_tokens[1:])

        candidates = None
        ranks = None
        raw_top = lp.get("top_logprobs")
        if self.cfg.top_logprobs_k > 0 and isinstance(raw_top, list):
            if len(raw_top) != len(all_tokens):
                raise errors.SchemaError("top_logprobs length differs from tokens")
            kept = raw_top[1:]
            if all(isinstance(m, dict) and m for m in kept):
                candidates = tuple(
                    tuple(sorted(((str(t), float(v)) for t, v in m.items()),
                                 key=lambda e: -e[1]))[:self.cfg.top_logprobs_k]
                    for m in kept)
                # ranks only when every realized token appears in its list;
                # a partial rank column would silently change meaning
                rank_list = []
                for tok, cands in zip(tokens, candidates):
                    names = [t for t, _ in cands]
                    if tok not in names:
                        rank_list = None
                        break
                    rank_list.append(names.index(tok) + 1)
                if rank_list is not None:
                    ranks = rank_list

        return TokenSignal(values=values, tokens=tokens,
                           ranks=ranks, top_candidates=candidates)

    # -- public operations -------------------------------------------------

    def fetch_logprobs(self, text: str) -> TokenSignal:
        """Score one text; entropies stay absent (hosted APIs only expose
        truncated distributions)."""
        if not isinstance(text, str) or text == "":
            raise errors.InvalidInput("text must be a non-empty string")
        payload = {"model": self.cfg.model, "prompt": text, "max_tokens": 0,
                   "echo": True, "logprobs": self.cfg.top_logprobs_k}
        return self._parse_signal(self._post(payload))

    def fetch_corpus(self, texts: Sequence[tuple[str, str, str]]) -> FetchResult:
        """Fetch (id, label, text) triples with bounded concurrency.

        Output order equals input order; per-text failures are recorded
        and skipped, never fatal.
        """
        ids = [t[0] for t in texts]
        if len(set(ids)) != len(ids):
            raise errors.DuplicateId("input ids must be unique")
        for tid, label, _ in texts:
            if label not in LABELS:
                raise errors.ValidationError(None, "label",
                                             f"id {tid!r}: must be one of {LABELS}")
        records: list[DatasetRecord] = []
        failures: list[tuple[str, str]] = []
        if not texts:
            return FetchResult(records=records, failures=failures)
        with ThreadPoolExecutor(max_workers=self.cfg.max_concurrent) as pool:
            futures = [pool.submit(self.fetch_logprobs, text)
                       for _, _, text in texts]
        for (tid, label, text), future in zip(texts, futures):
            try:
                signal = future.result()
            except errors.SpecDetectError as exc:
                failures.append((tid, exc.label))
                continue
            records.append(DatasetRecord(
                id=tid, label=label, source_model=self.cfg.model,
                logprobs=[float(v) for v in signal.values],
                text=text,
                tokens=list(signal.tokens) if signal.tokens is not None else None,
                ranks=[int(r) for r in signal.ranks] if signal.ranks is not None else None,
                top_logprobs=None if signal.top_candidates is None
                else [[(t, lp) for t, lp in pos] for pos in signal.top_candidates],
                extra={"logprob_source": "api-echo",
                       "top_logprobs_k": self.cfg.top_logprobs_k}))
        return FetchResult(records=records, failures=failures)


def fetch_logprobs(text: str, cfg: EndpointConfig) -> TokenSignal:
    """One-shot form of :meth:`ApiClient.fetch_logprobs`."""
    with ApiClient(cfg) as client:
        return client.fetch_logprobs(text)


def fetch_corpus(texts: Sequence[tuple[str, str, str]],
                 cfg: EndpointConfig) -> FetchResult:
    """One-shot form of :meth:`ApiClient.fetch_corpus`."""
    with ApiClient(cfg) as client:
        return client.fetch_corpus(texts)
