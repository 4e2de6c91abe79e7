"""Command-line entry point.

Subcommands: extract, score, detect, eval, bench, synth.  Exit codes:
0 success, 1 validation or usage error, 2 I/O or network failure.
Heavy imports happen inside handlers so --help stays instant.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path
from typing import Optional

from . import errors

_METHOD_CHOICES = ("specdetect", "specdetect++", "likelihood", "logrank",
                   "entropy", "lrr")


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the CLI contract reserves 2 for
    # I/O and network failures, so usage errors exit 1 instead
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="specdetect",
                     description="Spectral detection of machine-generated text "
                                 "from token log-probability sequences.")
    sub = parser.add_subparsers(dest="cmd", metavar="subcommand",
                                parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("extract", help="fetch logprobs from a completions API")
    p.add_argument("--input", required=True, help="JSONL of {id, label, text} rows")
    p.add_argument("--out", required=True, help="corpus JSONL to write")
    p.add_argument("--base-url", default=None,
                   help="endpoint root (default: $SPECDETECT_BASE_URL)")
    p.add_argument("--model", required=True, help="model identifier to score with")
    p.add_argument("--top-k", type=int, default=20,
                   help="top alternatives per position, 0..20 (default 20)")
    p.add_argument("--timeout", type=float, default=30.0)
    p.add_argument("--max-concurrent", type=int, default=4)
    p.add_argument("--max-retries", type=int, default=3)
    p.add_argument("--backoff-base-ms", type=int, default=100)

    p = sub.add_parser("score", help="write per-record detection scores")
    p.add_argument("--input", required=True)
    p.add_argument("--method", required=True, choices=_METHOD_CHOICES)
    p.add_argument("--out", required=True, help="scores JSONL to write")
    _sampler_flags(p)

    p = sub.add_parser("detect", help="threshold scores into verdicts")
    p.add_argument("--input", required=True)
    p.add_argument("--threshold", required=True, type=float,
                   help="score >= threshold is called human")
    p.add_argument("--method", default="specdetect", choices=_METHOD_CHOICES)
    p.add_argument("--out", default=None, help="verdicts JSONL (default stdout)")
    _sampler_flags(p)

    p = sub.add_parser("eval", help="AUC evaluation over a labeled corpus")
    p.add_argument("--input", required=True)
    p.add_argument("--methods", required=True, nargs="+", choices=_METHOD_CHOICES)
    p.add_argument("--out", default=None, help="also write the text report here")
    p.add_argument("--json", default=None, help="also write a JSON report here")
    _sampler_flags(p)

    p = sub.add_parser("bench", help="scoring-only runtime table")
    p.add_argument("--input", required=True)
    p.add_argument("--methods", required=True, nargs="+", choices=_METHOD_CHOICES)
    _sampler_flags(p)

    p = sub.add_parser("synth", help="generate a synthetic AR(1) corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--per-class", required=True, type=int)
    p.add_argument("--length", required=True, type=int)
    p.add_argument("--human-sigma", required=True, type=float)
    p.add_argument("--machine-sigma", required=True, type=float)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ar", type=float, default=0.0, help="AR(1) coefficient in (-1, 1)")
    p.add_argument("--with-candidates", action="store_true",
                   help="emit synthetic top_logprobs so specdetect++ can run")

    return parser


def _sampler_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n-samples", type=int, default=100,
                   help="contrastive samples for specdetect++ (default 100)")
    p.add_argument("--seed", type=int, default=0, help="base RNG seed (default 0)")
    p.add_argument("--min-std", type=float, default=1e-12, help=argparse.SUPPRESS)


def _sampler_config(args):
    from .detector import SamplerConfig
    return SamplerConfig(n_samples=args.n_samples, rng_seed=args.seed,
                         min_std=args.min_std)


def _write_lines(lines: list[str], out: Optional[str]) -> None:
    payload = "".join(line + "\n" for line in lines)
    if out is None:
        sys.stdout.write(payload)
        return
    try:
        Path(out).write_text(payload, encoding="utf-8")
    except OSError as exc:
        raise errors.IoError(f"cannot write {out}: {exc}") from exc


def _result_line(record_id: str, method: str, result) -> str:
    from .dataio import dumps_json_line
    obj = {"id": record_id, "method": method, "score": result.score}
    if result.raw is not None:
        obj["raw"] = {"base_score": result.raw.base_score,
                      "sample_mean": result.raw.sample_mean,
                      "sample_std": result.raw.sample_std,
                      "n_samples": result.raw.n_samples}
    return dumps_json_line(obj)


def cmd_score(args) -> int:
    from .dataio import dumps_json_line, read_corpus
    from .detector import Method
    from .evalkit import score_record
    corpus = read_corpus(args.input)
    cfg = _sampler_config(args)
    method = Method(args.method)
    lines = []
    failures = 0
    for record in corpus:
        try:
            result = score_record(record, method, cfg)
        except errors.SpecDetectError as exc:
            failures += 1
            lines.append(dumps_json_line(
                {"id": record.id, "method": method.value, "error": exc.label}))
            continue
        lines.append(_result_line(record.id, method.value, result))
    _write_lines(lines, args.out)
    print(f"scored {len(corpus)} records with {method.value} "
          f"({failures} failures) -> {args.out}")
    return 0


def cmd_detect(args) -> int:
    from .dataio import dumps_json_line, read_corpus
    from .detector import Method
    from .evalkit import score_record
    corpus = read_corpus(args.input)
    cfg = _sampler_config(args)
    method = Method(args.method)
    lines = []
    for record in corpus:
        try:
            result = score_record(record, method, cfg)
        except errors.SpecDetectError as exc:
            lines.append(dumps_json_line({"id": record.id, "error": exc.label}))
            continue
        verdict = "human" if result.score >= args.threshold else "machine"
        lines.append(dumps_json_line(
            {"id": record.id, "score": result.score, "verdict": verdict}))
    _write_lines(lines, args.out)
    return 0


def cmd_eval(args) -> int:
    from .dataio import read_corpus
    from .detector import Method
    from .evalkit import evaluate, format_report, report_to_json
    corpus = read_corpus(args.input)
    methods = [Method(m) for m in args.methods]
    report = evaluate(corpus, methods, _sampler_config(args))
    text = format_report(report, methods)
    sys.stdout.write(text)
    if args.out is not None:
        try:
            Path(args.out).write_text(text, encoding="utf-8")
        except OSError as exc:
            raise errors.IoError(f"cannot write {args.out}: {exc}") from exc
    if args.json is not None:
        try:
            Path(args.json).write_text(
                json.dumps(report_to_json(report), indent=2) + "\n",
                encoding="utf-8")
        except OSError as exc:
            raise errors.IoError(f"cannot write {args.json}: {exc}") from exc
    return 0


def cmd_bench(args) -> int:
    from .dataio import read_corpus
    from .detector import Method
    from .evalkit import benchmark
    corpus = read_corpus(args.input)
    rows = benchmark(corpus, [Method(m) for m in args.methods],
                     _sampler_config(args))
    print(f"{'method':<14} {'records':>8} {'failures':>9} {'ms_per_record':>14}")
    for row in rows:
        print(f"{row.method:<14} {row.n_records:>8} {row.n_failures:>9} "
              f"{row.ms_per_record:>14.4f}")
    return 0


def cmd_synth(args) -> int:
    from .dataio import SyntheticSpec, generate_synthetic, write_corpus
    spec = SyntheticSpec(n_records_per_class=args.per_class, length=args.length,
                         human_sigma=args.human_sigma,
                         machine_sigma=args.machine_sigma,
                         ar_coefficient=args.ar, rng_seed=args.seed,
                         with_candidates=args.with_candidates)
    records = generate_synthetic(spec)
    write_corpus(records, args.out)
    print(f"wrote {len(records)} records -> {args.out}")
    return 0


def _read_texts(path: str) -> list[tuple[str, str, str]]:
    try:
        content = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.IoError(f"cannot read {path}: {exc}") from exc
    texts = []
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
        texts.append((obj["id"], obj["label"], obj["text"]))
    return texts


def cmd_extract(args) -> int:
    from .apiclient import ENV_BASE_URL, ApiClient, EndpointConfig
    from .dataio import write_corpus
    base_url = args.base_url or os.environ.get(ENV_BASE_URL, "")
    if not base_url:
        raise errors.InvalidConfig(
            f"no endpoint: pass --base-url or set {ENV_BASE_URL}")
    texts = _read_texts(args.input)
    cfg = EndpointConfig(base_url=base_url, model=args.model,
                         top_logprobs_k=args.top_k, timeout_s=args.timeout,
                         max_concurrent=args.max_concurrent,
                         max_retries=args.max_retries,
                         backoff_base_ms=args.backoff_base_ms)
    with ApiClient(cfg) as client:
        result = client.fetch_corpus(texts)
    write_corpus(result.records, args.out)
    for tid, label in result.failures:
        print(f"extract failed id={tid} error={label}", file=sys.stderr)
    print(f"extracted {len(result.records)} of {len(texts)} texts -> {args.out}")
    if texts and not result.records:
        return 2  # nothing succeeded; treat as a network-level failure
    return 0


_HANDLERS = {"extract": cmd_extract, "score": cmd_score, "detect": cmd_detect,
             "eval": cmd_eval, "bench": cmd_bench, "synth": cmd_synth}


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return _HANDLERS[args.cmd](args)
    except errors.IoError as exc:
        print(f"specdetect: error: {exc}", file=sys.stderr)
        return 2
    except errors.ApiError as exc:
        print(f"specdetect: error: {exc}", file=sys.stderr)
        return 2
    except errors.SpecDetectError as exc:
        print(f"specdetect: error: {exc}", file=sys.stderr)
        return 1


def entry() -> None:
    raise SystemExit(main())
