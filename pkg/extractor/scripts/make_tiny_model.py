"""Generate the committed test model: a tiny 2-layer GPT-2 over 64 tokens.

Run once from the extractor root:

    python scripts/make_tiny_model.py

The weights are random but seeded; the committed copy under models/tiny
is the reference, and rerunning this under a different torch version may
produce different initializations. Do not regenerate casually: the
golden corpus under tests/golden is tied to the committed weights.
"""

import sys

import torch
from transformers import GPT2Config, GPT2LMHeadModel


def main() -> None:
    torch.manual_seed(20260821)
    config = GPT2Config(
        vocab_size=64,
        n_positions=64,
        n_embd=32,
        n_layer=2,
        n_head=2,
        bos_token_id=0,
        eos_token_id=0,
    )
    model = GPT2LMHeadModel(config)
    model.eval()
    out = sys.argv[1] if len(sys.argv) > 1 else "models/tiny"
    model.save_pretrained(out)
    n_params = sum(p.numel() for p in model.parameters())
    print(f"wrote {n_params} parameters -> {out}")


if __name__ == "__main__":
    main()
