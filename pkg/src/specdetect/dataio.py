"""The JSONL corpus format, validation, and synthetic-signal generation.

One JSON object per line, UTF-8, snake_case keys, labels exactly
"human" / "machine".  Floats are written with 17 significant digits,
which round-trips IEEE doubles bit-exactly; unknown top-level keys are
preserved across read/write.  CPython's json module cannot customize
float formatting, so the writer serializes records with a small
recursive emitter (strings still go through json.dumps for escaping).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional, Sequence, Union

import numpy as np

from .errors import (DuplicateId, InvalidConfig, IoError, ParseError,
                     ValidationError)
from .signal import TokenSignal

LABELS = ("human", "machine")

# wire keys in canonical order; anything else lands in `extra`
_FIELD_ORDER = ("id", "label", "source_model", "text", "tokens", "logprobs",
                "ranks", "entropies", "top_logprobs", "contrast_logprobs")

_SYNTH_BASE_MEAN = -3.0
_SYNTH_N_CANDIDATES = 5


@dataclass
class DatasetRecord:
    """One labeled corpus row.

    ``top_logprobs`` is stored per position as (token, logprob) tuples,
    serialized as {"token": ..., "logprob": ...} objects on the wire.
    ``extra`` holds unknown top-level keys, round-tripped untouched.
    """

    id: str
    label: str
    source_model: str
    logprobs: list[float]
    text: Optional[str] = None
    tokens: Optional[list[str]] = None
    ranks: Optional[list[int]] = None
    entropies: Optional[list[float]] = None
    top_logprobs: Optional[list[list[tuple[str, float]]]] = None
    contrast_logprobs: Optional[list[list[float]]] = None
    extra: dict = field(default_factory=dict)


@dataclass(frozen=True)
class SyntheticSpec:
    """Parameters of the AR(1) Gaussian synthetic corpus.

    Each record's logprobs follow a seeded stationary order-1
    autoregressive process around a common mean, with innovation std
    human_sigma or machine_sigma by class.  The generator exists to give
    the acceptance suite the one property the detector needs: a
    class-wise amplitude contrast.  ``with_candidates`` additionally
    emits synthetic top_logprobs (5 per position) so SpecDetect++ can
    run on the corpus.
    """

    n_records_per_class: int
    length: int
    human_sigma: float
    machine_sigma: float
    ar_coefficient: float = 0.0
    rng_seed: int = 0
    with_candidates: bool = False

    def __post_init__(self) -> None:
        if not isinstance(self.n_records_per_class, (int, np.integer)) or self.n_records_per_class < 1:
            raise InvalidConfig("n_records_per_class must be a positive integer")
        if not isinstance(self.length, (int, np.integer)) or self.length < 1:
            raise InvalidConfig("length must be a positive integer")
        if not self.human_sigma >= 0 or not self.machine_sigma >= 0:
            raise InvalidConfig("sigmas must be non-negative reals")
        if not -1.0 < self.ar_coefficient < 1.0:
            raise InvalidConfig("ar_coefficient must lie in (-1, 1)")
        if not isinstance(self.rng_seed, (int, np.integer)) or not 0 <= self.rng_seed < 2 ** 64:
            raise InvalidConfig("rng_seed must be a 64-bit unsigned integer")


# ---------------------------------------------------------------------------
# validation

def _is_number(v) -> bool:
    return isinstance(v, (int, float)) and not isinstance(v, bool)


def _finite_number(v) -> bool:
    return _is_number(v) and math.isfinite(v)


def record_from_json(obj: dict, line: int | None = None) -> DatasetRecord:
    """Validate a parsed JSON object and build a DatasetRecord.

    Raises ValidationError naming the offending field (with the source
    line number when reading from a file).
    """
    def bad(field_name: str, message: str):
        raise ValidationError(line, field_name, message)

    rid = obj.get("id")
    if not isinstance(rid, str) or rid == "":
        bad("id", "must be a non-empty string")
    label = obj.get("label")
    if label not in LABELS:
        bad("label", f"must be one of {LABELS}, got {label!r}")
    source_model = obj.get("source_model")
    if not isinstance(source_model, str):
        bad("source_model", "must be a string")

    logprobs = obj.get("logprobs")
    if not isinstance(logprobs, list) or len(logprobs) == 0:
        bad("logprobs", "must be a non-empty list")
    if not all(_finite_number(v) for v in logprobs):
        bad("logprobs", "every entry must be a finite number")
    n = len(logprobs)
    logprobs = [float(v) for v in logprobs]

    text = obj.get("text")
    if text is not None and not isinstance(text, str):
        bad("text", "must be a string")

    tokens = obj.get("tokens")
    if tokens is not None:
        if not isinstance(tokens, list) or not all(isinstance(t, str) for t in tokens):
            bad("tokens", "must be a list of strings")
        if len(tokens) != n:
            bad("tokens", f"length {len(tokens)} does not match logprobs length {n}")

    ranks = obj.get("ranks")
    if ranks is not None:
        if not isinstance(ranks, list):
            bad("ranks", "must be a list")
        if len(ranks) != n:
            bad("ranks", f"length {len(ranks)} does not match logprobs length {n}")
        for v in ranks:
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                bad("ranks", "every entry must be an integer >= 1")
        ranks = list(ranks)

    entropies = obj.get("entropies")
    if entropies is not None:
        if not isinstance(entropies, list):
            bad("entropies", "must be a list")
        if len(entropies) != n:
            bad("entropies", f"length {len(entropies)} does not match logprobs length {n}")
        for v in entropies:
            if not _finite_number(v) or v < 0:
                bad("entropies", "every entry must be a finite number >= 0")
        entropies = [float(v) for v in entropies]

    top_logprobs = obj.get("top_logprobs")
    if top_logprobs is not None:
        if not isinstance(top_logprobs, list):
            bad("top_logprobs", "must be a list")
        if len(top_logprobs) != n:
            bad("top_logprobs", f"length {len(top_logprobs)} does not match logprobs length {n}")
        parsed = []
        for i, pos in enumerate(top_logprobs):
            if not isinstance(pos, list) or len(pos) == 0:
                bad("top_logprobs", f"position {i} must be a non-empty list")
            entries = []
            for entry in pos:
                if (not isinstance(entry, dict)
                        or set(entry.keys()) != {"token", "logprob"}
                        or not isinstance(entry.get("token"), str)
                        or not _finite_number(entry.get("logprob"))):
                    bad("top_logprobs",
                        f"position {i} entries must be objects with exactly "
                        "'token' (string) and 'logprob' (finite number)")
                entries.append((entry["token"], float(entry["logprob"])))
            lps = [lp for _, lp in entries]
            if any(a < b for a, b in zip(lps, lps[1:])):
                bad("top_logprobs", f"position {i} not sorted descending by logprob")
            parsed.append(entries)
        top_logprobs = parsed

    contrast = obj.get("contrast_logprobs")
    if contrast is not None:
        if not isinstance(contrast, list) or len(contrast) == 0:
            bad("contrast_logprobs", "must be a non-empty list of sequences")
        parsed_rows = []
        for i, row in enumerate(contrast):
            if not isinstance(row, list) or len(row) != n:
                bad("contrast_logprobs",
                    f"sequence {i} must be a list of length {n}")
            if not all(_finite_number(v) for v in row):
                bad("contrast_logprobs", f"sequence {i} entries must be finite numbers")
            parsed_rows.append([float(v) for v in row])
        contrast = parsed_rows

    extra = {k: v for k, v in obj.items() if k not in _FIELD_ORDER}

    return DatasetRecord(id=rid, label=label, source_model=source_model,
                         logprobs=logprobs, text=text, tokens=tokens,
                         ranks=ranks, entropies=entropies,
                         top_logprobs=top_logprobs, contrast_logprobs=contrast,
                         extra=extra)


def _record_to_json(record: DatasetRecord) -> dict:
    obj: dict = {"id": record.id, "label": record.label,
                 "source_model": record.source_model}
    if record.text is not None:
        obj["text"] = record.text
    if record.tokens is not None:
        obj["tokens"] = list(record.tokens)
    obj["logprobs"] = list(record.logprobs)
    if record.ranks is not None:
        obj["ranks"] = list(record.ranks)
    if record.entropies is not None:
        obj["entropies"] = list(record.entropies)
    if record.top_logprobs is not None:
        obj["top_logprobs"] = [[{"token": t, "logprob": lp} for t, lp in pos]
                               for pos in record.top_logprobs]
    if record.contrast_logprobs is not None:
        obj["contrast_logprobs"] = [list(row) for row in record.contrast_logprobs]
    for k, v in record.extra.items():
        if k not in _FIELD_ORDER:
            obj[k] = v
    return obj


def _validate_record(record: DatasetRecord) -> None:
    # route through the JSON-side validator so both paths enforce the
    # same schema; errors name the field without a line number
    record_from_json(_record_to_json(record), line=None)


# ---------------------------------------------------------------------------
# serialization with 17-significant-digit floats

def format_float(x: float) -> str:
    """17-significant-digit decimal form that parses back bit-exactly."""
    s = format(float(x), ".17g")
    if "." not in s and "e" not in s and "E" not in s:
        s += ".0"
    return s


def dumps_json_line(value) -> str:
    """Compact JSON with the corpus float convention, no trailing newline."""
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(dumps_json_line(v) for v in value) + "]"
    if isinstance(value, dict):
        parts = []
        for k, v in value.items():
            if not isinstance(k, str):
                raise InvalidConfig(f"JSON object keys must be strings, got {k!r}")
            parts.append(json.dumps(k, ensure_ascii=False) + ":" + dumps_json_line(v))
        return "{" + ",".join(parts) + "}"
    raise InvalidConfig(f"value of type {type(value).__name__} is not JSON-serializable")


# ---------------------------------------------------------------------------
# corpus I/O

def read_corpus(path: Union[str, Path]) -> list[DatasetRecord]:
    """Parse and validate a JSONL corpus; errors carry line numbers.

    Blank lines are tolerated; an empty file is a valid empty corpus.
    """
    try:
        content = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    records: list[DatasetRecord] = []
    seen: set[str] = set()
    # split on newline only: splitlines() also breaks on NEL and friends,
    # which can appear raw inside JSON strings
    for line_no, raw in enumerate(content.split("\n"), start=1):
        if raw.strip() == "":
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise ParseError(line_no, str(exc)) from exc
        if not isinstance(obj, dict):
            raise ParseError(line_no, "expected a JSON object")
        record = record_from_json(obj, line_no)
        if record.id in seen:
            raise DuplicateId(f"line {line_no}: duplicate id {record.id!r}")
        seen.add(record.id)
        records.append(record)
    return records


def write_corpus(records: Sequence[DatasetRecord], path: Union[str, Path]) -> None:
    """Write records as JSONL such that read_corpus returns them field-for-field."""
    seen: set[str] = set()
    lines = []
    for record in records:
        _validate_record(record)
        if record.id in seen:
            raise DuplicateId(f"duplicate id {record.id!r}")
        seen.add(record.id)
        lines.append(dumps_json_line(_record_to_json(record)))
    payload = "".join(line + "\n" for line in lines)
    try:
        Path(path).write_text(payload, encoding="utf-8")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


# ---------------------------------------------------------------------------
# synthetic corpora

def _ar1_path(rng: np.random.Generator, length: int, sigma: float,
              ar: float) -> np.ndarray:
    # stationary init: var of x_t is sigma^2 / (1 - ar^2)
    z = rng.standard_normal(length)
    x = np.empty(length, dtype=np.float64)
    x[0] = z[0] * sigma / math.sqrt(1.0 - ar * ar)
    for t in range(1, length):
        x[t] = ar * x[t - 1] + sigma * z[t]
    return x


def generate_synthetic(spec: SyntheticSpec) -> list[DatasetRecord]:
    """Deterministic AR(1) Gaussian corpus, n_records_per_class per label.

    Draw order (fixed, part of the determinism contract): classes in the
    order human then machine, records ascending; per record, `length`
    standard normals for the AR path, then, when with_candidates, a
    (length x 5) block of standard normals for candidate offsets.
    """
    rng = np.random.default_rng(spec.rng_seed)
    records: list[DatasetRecord] = []
    for label, sigma in (("human", spec.human_sigma),
                         ("machine", spec.machine_sigma)):
        for i in range(spec.n_records_per_class):
            values = _SYNTH_BASE_MEAN + _ar1_path(rng, spec.length, sigma,
                                                  spec.ar_coefficient)
            top = None
            if spec.with_candidates:
                offsets = rng.standard_normal((spec.length, _SYNTH_N_CANDIDATES))
                top = []
                for pos in range(spec.length):
                    lps = np.sort(values[pos] + offsets[pos])[::-1]
                    top.append([(f"c{j}", float(lp)) for j, lp in enumerate(lps)])
            records.append(DatasetRecord(
                id=f"{label}-{i:04d}", label=label,
                source_model="synthetic-ar1",
                logprobs=[float(v) for v in values],
                top_logprobs=top))
    return records


def truncate_record(record: DatasetRecord, n_tokens: int) -> DatasetRecord:
    """Prefix of a record with every parallel field cut to n_tokens.

    The id is always suffixed with "@<n_tokens>" (the requested study
    length, even when it exceeds the record) so truncated records stay
    unique when mixed with their originals in one corpus.
    """
    if not isinstance(n_tokens, (int, np.integer)) or n_tokens < 1:
        raise InvalidConfig(f"n_tokens must be a positive integer, got {n_tokens!r}")
    n = min(int(n_tokens), len(record.logprobs))

    def cut(seq):
        return None if seq is None else list(seq[:n])

    return replace(
        record,
        id=f"{record.id}@{int(n_tokens)}",
        logprobs=list(record.logprobs[:n]),
        tokens=cut(record.tokens),
        ranks=cut(record.ranks),
        entropies=cut(record.entropies),
        top_logprobs=None if record.top_logprobs is None
        else [list(pos) for pos in record.top_logprobs[:n]],
        contrast_logprobs=None if record.contrast_logprobs is None
        else [list(row[:n]) for row in record.contrast_logprobs],
        extra=dict(record.extra),
    )


def record_signal(record: DatasetRecord) -> TokenSignal:
    """The record's per-token fields as a TokenSignal."""
    return TokenSignal(
        values=np.array(record.logprobs, dtype=np.float64),
        tokens=None if record.tokens is None else tuple(record.tokens),
        ranks=None if record.ranks is None else np.array(record.ranks, dtype=np.float64),
        entropies=None if record.entropies is None
        else np.array(record.entropies, dtype=np.float64),
        top_candidates=None if record.top_logprobs is None
        else tuple(tuple((t, lp) for t, lp in pos) for pos in record.top_logprobs),
    )
