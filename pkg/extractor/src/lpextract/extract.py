"""Full-fidelity per-token extraction from a local causal language model.

For each text, one record with logprobs[i] = log p(token_{i+1} | prefix)
for every position after the first (the first token has no conditioning
prefix), the realized token's 1-based rank over the full vocabulary, the
full-vocabulary Shannon entropy in nats, and the top-K candidate
distribution per position. All values are natural-log and model-native;
any base conversion belongs downstream.
"""

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np
import torch

from . import errors, tokenizer
from .wire import LABELS


@dataclass(frozen=True)
class ExtractorConfig:
    """Extraction knobs.

    top_k must be at least 2 if the output is meant to feed contrastive
    resampling downstream; 1 is allowed for pure logprob corpora.
    source_model names the model on the emitted records and defaults to
    model_id; set it when model_id is a filesystem path that should not
    leak into the corpus.
    """

    model_id: str
    device: str = "cpu"
    top_k: int = 50
    batch_size: int = 8
    max_length: int = 512
    emit_entropy: bool = True
    emit_ranks: bool = True
    source_model: Optional[str] = None

    def __post_init__(self) -> None:
        if not isinstance(self.model_id, str) or self.model_id == "":
            raise errors.InvalidConfig("model_id must be a non-empty string")
        for name in ("top_k", "batch_size"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool) or v < 1:
                raise errors.InvalidConfig(f"{name} must be a positive integer")
        if not isinstance(self.max_length, int) or self.max_length < 2:
            raise errors.InvalidConfig(
                "max_length must be an integer >= 2; one conditional needs two tokens")
        try:
            torch.device(self.device)
        except (RuntimeError, ValueError) as exc:
            raise errors.InvalidConfig(f"unusable device {self.device!r}: {exc}") from exc

    @property
    def record_source(self) -> str:
        return self.source_model if self.source_model is not None else self.model_id


def load_model(cfg: ExtractorConfig):
    """Load the model in eval mode on cfg.device; vocabulary must match."""
    from transformers import AutoModelForCausalLM
    from transformers.utils import logging as hf_logging

    hf_logging.set_verbosity_error()
    hf_logging.disable_progress_bar()
    try:
        model = AutoModelForCausalLM.from_pretrained(cfg.model_id)
        model.to(torch.device(cfg.device))
    except (OSError, ValueError, RuntimeError, EnvironmentError) as exc:
        raise errors.ModelLoadError(f"cannot load {cfg.model_id!r}: {exc}") from exc
    model.eval()
    vocab = int(model.config.vocab_size)
    if vocab != tokenizer.VOCAB_SIZE:
        raise errors.ModelLoadError(
            f"model vocab size {vocab} does not match the character "
            f"tokenizer's {tokenizer.VOCAB_SIZE}")
    return model


def _context_limit(model) -> int:
    limit = getattr(model.config, "max_position_embeddings", None)
    if limit is None:
        limit = getattr(model.config, "n_positions", None)
    return int(limit) if limit else 1 << 30


def extract(texts: Sequence[tuple[str, str, str]], cfg: ExtractorConfig,
            model=None) -> list[dict]:
    """Score (id, label, text) triples; returns wire-ready record dicts.

    Deterministic: inference runs no-sampling with a fixed reduction
    order, so identical inputs and config reproduce identical bytes.
    """
    if len(texts) == 0:
        raise errors.InvalidConfig("texts must be non-empty")
    seen = set()
    for tid, label, text in texts:
        if tid in seen:
            raise errors.InvalidConfig(f"duplicate text id {tid!r}")
        seen.add(tid)
        if label not in LABELS:
            raise errors.InvalidConfig(f"{tid}: label must be one of {LABELS}")
        if not isinstance(text, str) or text == "":
            raise errors.InvalidConfig(f"{tid}: text must be a non-empty string")

    if model is None:
        model = load_model(cfg)
    eff_max = min(cfg.max_length, _context_limit(model))

    records = []
    # single-threaded torch: a fixed reduction order keeps logits
    # bit-stable across runs and batch compositions
    prev_threads = torch.get_num_threads()
    torch.set_num_threads(1)
    try:
        for start in range(0, len(texts), cfg.batch_size):
            batch = texts[start:start + cfg.batch_size]
            records.extend(_extract_batch(model, batch, cfg, eff_max))
    finally:
        torch.set_num_threads(prev_threads)
    return records


def _extract_batch(model, batch, cfg: ExtractorConfig, eff_max: int) -> list[dict]:
    encoded = []
    for tid, label, text in batch:
        ids = tokenizer.encode(text)
        original = len(ids)
        if original < 2:
            raise errors.TokenizationError(
                tid, f"tokenizes to {original} token(s); need at least 2 "
                     "for one conditional logprob")
        encoded.append((tid, label, text, ids[:eff_max], original))

    width = max(len(ids) for _, _, _, ids, _ in encoded)
    device = torch.device(cfg.device)
    input_ids = torch.zeros((len(encoded), width), dtype=torch.long, device=device)
    mask = torch.zeros((len(encoded), width), dtype=torch.long, device=device)
    for row, (_, _, _, ids, _) in enumerate(encoded):
        input_ids[row, :len(ids)] = torch.tensor(ids, dtype=torch.long)
        mask[row, :len(ids)] = 1

    try:
        with torch.no_grad():
            logits = model(input_ids, attention_mask=mask).logits
    except RuntimeError as exc:  # torch.OutOfMemoryError subclasses this
        if "out of memory" in str(exc).lower():
            raise errors.InferenceError(
                "out of memory during batched inference; reduce batch_size "
                "or max_length") from exc
        raise
    logits = logits.to("cpu")

    records = []
    for row, (tid, label, text, ids, original) in enumerate(encoded):
        n = len(ids)
        logp = torch.log_softmax(logits[row, :n - 1], dim=-1)
        realized = torch.tensor(ids[1:], dtype=torch.long)
        lp_vals = logp.gather(1, realized.unsqueeze(1)).squeeze(1)

        record = {
            "id": tid,
            "label": label,
            "source_model": cfg.record_source,
            "text": text,
            "tokens": [tokenizer.decode_id(t) for t in ids[1:]],
            "logprobs": [float(v) for v in lp_vals],
        }
        if cfg.emit_ranks:
            # ties on the realized value share the better rank
            greater = (logp > lp_vals.unsqueeze(1)).sum(dim=1)
            record["ranks"] = [int(g) + 1 for g in greater]
        if cfg.emit_entropy:
            ent = -(logp.exp() * logp).sum(dim=1)
            record["entropies"] = [float(v) for v in ent]
        record["top_logprobs"] = _top_candidates(logp.numpy(), cfg.top_k)
        record["logprob_source"] = "local-model"
        record["top_logprobs_k"] = cfg.top_k
        if original > n:
            record["truncated"] = True
            record["original_tokens"] = original
        records.append(record)
    return records


def _top_candidates(logp: np.ndarray, top_k: int) -> list[list[dict]]:
    k = min(top_k, logp.shape[1])
    out = []
    for row in logp:
        # stable sort on the negated row: descending logprob, ties by
        # token id, so candidate order is pinned, not kernel-dependent
        order = np.argsort(-row, kind="stable")[:k]
        out.append([{"token": tokenizer.decode_id(int(j)),
                     "logprob": float(row[j])} for j in order])
    return out
