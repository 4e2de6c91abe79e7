"""Shared fixtures: repo paths and the session-scoped tiny model."""

from pathlib import Path

import pytest
import torch

from lpextract import ExtractorConfig, load_model

# fixed reduction order; keeps test-side forwards bit-equal to extract()
torch.set_num_threads(1)

ROOT = Path(__file__).resolve().parent.parent
MODEL_DIR = ROOT / "models" / "tiny"
GOLDEN_TEXTS = ROOT / "tests" / "golden" / "texts.jsonl"
GOLDEN_CORPUS = ROOT / "tests" / "golden" / "corpus.jsonl"


def golden_config(**overrides) -> ExtractorConfig:
    base = dict(model_id=str(MODEL_DIR), top_k=5, batch_size=2,
                max_length=64, source_model="tiny-gpt2")
    base.update(overrides)
    return ExtractorConfig(**base)


@pytest.fixture(scope="session")
def tiny_model():
    return load_model(golden_config())
