"""Character tokenizer over a fixed 64-symbol vocabulary.

Deterministic by construction and needs no vocabulary files, which keeps
the committed test model self-contained. Id 0 is the unknown symbol;
ids 1..63 cover lowercase, space, uppercase, and digits. Any model this
package scores with must have vocab_size 64.
"""

UNK_ID = 0
UNK_TOKEN = "<unk>"
ALPHABET = ("abcdefghijklmnopqrstuvwxyz"
            " "
            "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
            "0123456789")

_CHAR_TO_ID = {ch: i + 1 for i, ch in enumerate(ALPHABET)}

VOCAB_SIZE = len(ALPHABET) + 1


def encode(text: str) -> list[int]:
    """Map text to token ids; characters outside the alphabet become UNK_ID."""
    return [_CHAR_TO_ID.get(ch, UNK_ID) for ch in text]


def decode_id(token_id: int) -> str:
    if token_id == UNK_ID:
        return UNK_TOKEN
    if not 1 <= token_id < VOCAB_SIZE:
        raise ValueError(f"token id {token_id} outside vocabulary")
    return ALPHABET[token_id - 1]
