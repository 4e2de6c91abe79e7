"""Command line: extract a corpus from a local model.

Exit codes: 0 success, 1 configuration and data errors, 2 file and
model-environment errors.
"""

import argparse
import sys

from . import errors
from .extract import ExtractorConfig, extract
from .wire import read_texts, write_corpus


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # argparse exits 2 by default; 2 is reserved for I/O failures here
        self.print_usage(sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lpextract",
                description="Extract per-token logprobs, ranks, entropies, and "
                            "top-K candidates from a local causal language model.")
    p.add_argument("--model", required=True,
                   help="model directory or identifier to load")
    p.add_argument("--input", required=True,
                   help="JSONL of {id, label, text} rows")
    p.add_argument("--out", required=True, help="output corpus JSONL")
    p.add_argument("--top-k", type=int, default=50,
                   help="candidates kept per position (default 50)")
    p.add_argument("--device", default="cpu", help="torch device (default cpu)")
    p.add_argument("--batch-size", type=int, default=8)
    p.add_argument("--max-length", type=int, default=512,
                   help="token cap per text; longer texts are truncated and flagged")
    p.add_argument("--source-model", default=None,
                   help="name stamped on records (default: the --model value)")
    p.add_argument("--no-ranks", action="store_true", help="skip rank extraction")
    p.add_argument("--no-entropies", action="store_true",
                   help="skip entropy extraction")
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = ExtractorConfig(
            model_id=args.model,
            device=args.device,
            top_k=args.top_k,
            batch_size=args.batch_size,
            max_length=args.max_length,
            emit_entropy=not args.no_entropies,
            emit_ranks=not args.no_ranks,
            source_model=args.source_model,
        )
        texts = read_texts(args.input)
        if not texts:
            print("lpextract: error: no texts in input", file=sys.stderr)
            return 1
        records = extract(texts, cfg)
        write_corpus(records, args.out)
    except (errors.IoError, errors.ModelLoadError) as exc:
        print(f"lpextract: error: {exc}", file=sys.stderr)
        return 2
    except errors.ExtractorError as exc:
        print(f"lpextract: error: {exc}", file=sys.stderr)
        return 1
    print(f"extracted {len(records)} texts -> {args.out}")
    return 0


def entry() -> None:
    raise SystemExit(main())
