"""Corpus wire format: JSONL with 17-significant-digit floats.

This mirrors the detector side's serialization convention exactly, so a
file written here re-serializes byte-for-byte after a read/write cycle
over there. The two packages share the format, not code.
"""

import json
from pathlib import Path

from . import errors

LABELS = ("human", "machine")


def format_float(x: float) -> str:
    """Shortest decimal form that parses back to the identical double."""
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
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, str):
        return json.dumps(value, ensure_ascii=False)
    if isinstance(value, (list, tuple)):
        return "[" + ",".join(dumps_json_line(v) for v in value) + "]"
    if isinstance(value, dict):
        parts = []
        for k, v in value.items():
            if not isinstance(k, str):
                raise errors.InvalidConfig(
                    f"JSON object keys must be strings, got {k!r}")
            parts.append(json.dumps(k, ensure_ascii=False) + ":" + dumps_json_line(v))
        return "{" + ",".join(parts) + "}"
    raise errors.InvalidConfig(
        f"value of type {type(value).__name__} is not JSON-serializable")


def write_corpus(records, path) -> None:
    payload = "".join(dumps_json_line(r) + "\n" for r in records)
    try:
        Path(path).write_text(payload, encoding="utf-8")
    except OSError as exc:
        raise errors.IoError(f"cannot write {path}: {exc}") from exc


def read_texts(path) -> list[tuple[str, str, str]]:
    """Read input rows {id, label, text}; errors carry line numbers."""
    try:
        content = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.IoError(f"cannot read {path}: {exc}") from exc
    texts = []
    seen = set()
    # newline-only split; splitlines() would also break on NEL inside strings
    for line_no, raw in enumerate(content.split("\n"), start=1):
        if raw.strip() == "":
            continue
        try:
            obj = json.loads(raw)
        except json.JSONDecodeError as exc:
            raise errors.ParseError(line_no, str(exc)) from exc
        if not isinstance(obj, dict):
            raise errors.ParseError(line_no, "expected a JSON object")
        for key in ("id", "label", "text"):
            if not isinstance(obj.get(key), str) or obj[key] == "":
                raise errors.ValidationError(line_no, key, "must be a non-empty string")
        if obj["label"] not in LABELS:
            raise errors.ValidationError(line_no, "label", f"must be one of {LABELS}")
        if obj["id"] in seen:
            raise errors.ValidationError(line_no, "id", "duplicates an earlier id")
        seen.add(obj["id"])
        texts.append((obj["id"], obj["label"], obj["text"]))
    return texts
