"""Per-token logprob extraction from local causal language models.

Produces the JSONL corpus format the spectral detector consumes: for
each text, the conditional log-probability of every token after the
first, its full-vocabulary rank, the full-vocabulary entropy in nats,
and the top-K candidate distribution per position.
"""

from .errors import (ExtractorError, InferenceError, InvalidConfig, IoError,
                     ModelLoadError, ParseError, TokenizationError,
                     ValidationError)
from .extract import ExtractorConfig, extract, load_model
from .tokenizer import ALPHABET, UNK_ID, UNK_TOKEN, VOCAB_SIZE, decode_id, encode
from .wire import dumps_json_line, format_float, read_texts, write_corpus

__version__ = "0.1.0"

__all__ = [
    "ALPHABET", "ExtractorConfig", "ExtractorError", "InferenceError",
    "InvalidConfig", "IoError", "ModelLoadError", "ParseError",
    "TokenizationError", "UNK_ID", "UNK_TOKEN", "VOCAB_SIZE",
    "ValidationError", "__version__", "decode_id", "dumps_json_line",
    "encode", "extract", "format_float", "load_model", "read_texts",
    "write_corpus",
]
