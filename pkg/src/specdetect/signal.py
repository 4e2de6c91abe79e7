"""Token log-probability sequences as discrete-time signals.

A text is represented by the natural-log probability its scoring model
assigned to each token given the preceding tokens.  Detection treats that
sequence as a signal; the only transformation owned by this module is mean
removal, which every spectral step downstream assumes.

All values are natural log.  Entropy fields are in nats; any base
conversion happens in the features module.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .errors import EmptySignal, InvalidConfig

Candidates = Sequence[tuple[str, float]]


@dataclass(frozen=True)
class TokenSignal:
    """Per-token logprobs plus optional per-token metadata.

    Parameters
    ----------
    values : sequence of float
        Natural-log probability of each token given its prefix.  Model
        extractions are <= 0 everywhere; synthetic signals are unconstrained.
    tokens : sequence of str, optional
        Token strings, parallel to ``values``.
    ranks : sequence of float, optional
        1-based rank of the realized token by descending probability,
        parallel to ``values``.  Ranks are >= 1; integer on the wire format,
        but real-valued ranks are accepted in memory.
    entropies : sequence of float, optional
        Per-position full-vocabulary Shannon entropy in nats, >= 0.
    top_candidates : sequence of candidate lists, optional
        Per position, (token, logprob) pairs sorted non-increasing by
        logprob: the truncated conditional distribution at that position.
        Candidate logprobs may be -inf (zero-probability markers);
        positions with no usable mass fail at sampling time.
    """

    values: np.ndarray
    tokens: Optional[tuple[str, ...]] = None
    ranks: Optional[np.ndarray] = None
    entropies: Optional[np.ndarray] = None
    top_candidates: Optional[tuple[Candidates, ...]] = None

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.shape[0] == 0:
            raise EmptySignal("values must be a non-empty 1-d sequence")
        if not np.all(np.isfinite(values)):
            raise InvalidConfig("values must be finite")
        object.__setattr__(self, "values", values)
        n = values.shape[0]

        if self.tokens is not None:
            tokens = tuple(self.tokens)
            _check_len("tokens", len(tokens), n)
            object.__setattr__(self, "tokens", tokens)
        if self.ranks is not None:
            ranks = np.asarray(self.ranks, dtype=np.float64)
            _check_len("ranks", ranks.shape[0], n)
            # isfinite first: NaN slips through a bare < comparison
            if not np.all(np.isfinite(ranks)) or np.any(ranks < 1):
                raise InvalidConfig("ranks must be finite and >= 1")
            object.__setattr__(self, "ranks", ranks)
        if self.entropies is not None:
            ent = np.asarray(self.entropies, dtype=np.float64)
            _check_len("entropies", ent.shape[0], n)
            if not np.all(np.isfinite(ent)) or np.any(ent < 0):
                raise InvalidConfig("entropies must be finite and >= 0")
            object.__setattr__(self, "entropies", ent)
        if self.top_candidates is not None:
            cands = tuple(tuple((str(t), float(lp)) for t, lp in pos)
                          for pos in self.top_candidates)
            _check_len("top_candidates", len(cands), n)
            for i, pos in enumerate(cands):
                if len(pos) == 0:
                    raise InvalidConfig(
                        f"top_candidates[{i}] is empty; every position needs >= 1 entry")
                lps = [lp for _, lp in pos]
                if any(a < b for a, b in zip(lps, lps[1:])):
                    raise InvalidConfig(
                        f"top_candidates[{i}] not sorted non-increasing by logprob")
            object.__setattr__(self, "top_candidates", cands)

    def __len__(self) -> int:
        return int(self.values.shape[0])


@dataclass(frozen=True)
class CenteredSignal:
    """A zero-mean signal and the mean that was removed from it."""

    values: np.ndarray
    original_mean: float

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1 or values.shape[0] == 0:
            raise EmptySignal("values must be a non-empty 1-d sequence")
        # sum must vanish within 1e-9 per element of length
        if abs(float(values.sum())) > 1e-9 * values.shape[0]:
            raise InvalidConfig("centered signal does not sum to zero")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return int(self.values.shape[0])


def _check_len(name: str, got: int, expected: int) -> None:
    if got != expected:
        raise InvalidConfig(f"{name} has length {got}, expected {expected}")


def center(signal: TokenSignal) -> CenteredSignal:
    """Remove the mean of a signal.

    Returns a :class:`CenteredSignal` whose values are
    ``signal.values - mean(signal.values)`` and whose ``original_mean``
    is the removed mean.  Length is preserved; a single-element signal
    centers to ``[0]``.
    """
    mean = float(np.mean(signal.values))
    return CenteredSignal(values=signal.values - mean, original_mean=mean)
