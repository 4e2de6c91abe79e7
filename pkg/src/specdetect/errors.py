"""Exception taxonomy for specdetect.

Every error carries a stable ``label`` (the class name) used in failure
entries of evaluation reports and score files, so downstream tooling can
match on it without parsing messages.
"""

from __future__ import annotations


class SpecDetectError(Exception):
    """Base class for all specdetect errors."""

    @property
    def label(self) -> str:
        return type(self).__name__


class InvalidConfig(SpecDetectError, ValueError):
    """A constructed object or configuration violates one of its invariants."""


class BackendUnavailable(SpecDetectError):
    """The requested compute backend cannot be loaded."""


# signal / spectral

class EmptySignal(SpecDetectError):
    """A signal of length zero was supplied where length >= 1 is required."""


class InvalidWindowLength(SpecDetectError):
    """Window length must be a positive integer."""


# detector

class MissingDistributions(SpecDetectError):
    """Contrastive sampling needs per-position candidate lists and none exist."""


class InsufficientSupport(SpecDetectError):
    """A position's candidate distribution has no usable probability mass."""


class DegenerateVariance(SpecDetectError):
    """Contrastive sample scores have (near-)zero spread; no z-score exists."""


class MissingField(SpecDetectError):
    """A baseline needs a per-token field the record does not carry."""


class DegenerateRanks(SpecDetectError):
    """All ranks are 1, so the log-rank denominator is zero."""


# evalkit

class EmptyClass(SpecDetectError):
    """AUC needs at least one score in each class."""


class NonFiniteScore(SpecDetectError):
    """A score list contains NaN or infinity."""


class TooFewSamples(SpecDetectError):
    """Correlation needs at least two observations."""


class EmptyCorpus(SpecDetectError):
    """Evaluation over zero records is undefined."""


# dataio

class ParseError(SpecDetectError):
    """A corpus line is not valid JSON."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class ValidationError(SpecDetectError):
    """A parsed record violates the schema; names the offending field."""

    def __init__(self, line: int | None, field: str, message: str):
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}field '{field}': {message}")
        self.line = line
        self.field = field


class DuplicateId(SpecDetectError):
    """Record ids must be unique within a corpus."""


class IoError(SpecDetectError):
    """Reading or writing a corpus file failed at the OS level."""


# apiclient

class ApiError(SpecDetectError):
    """Base class for logprob-endpoint failures."""


class InvalidInput(ApiError):
    """The request violates a client precondition (e.g. empty text)."""


class HttpError(ApiError):
    """Non-retryable HTTP failure, or retries exhausted on a retryable one."""

    def __init__(self, status: int | None, message: str = ""):
        detail = f"HTTP {status}" if status is not None else "connection failed"
        super().__init__(f"{detail}{': ' + message if message else ''}")
        self.status = status


class AuthError(ApiError):
    """The endpoint rejected the credential; never retried."""


class RateLimited(ApiError):
    """HTTP 429 persisted past max_retries."""


class TimeoutError(ApiError):
    """The request timed out past max_retries."""


class SchemaError(ApiError):
    """The endpoint answered 200 but the payload lacks logprob fields."""
