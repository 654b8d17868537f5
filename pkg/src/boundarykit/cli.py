"""Command-line surface: validate, stats, augment, align, score, anomalies,
and baseline subcommands over the JSON-lines formats.

Exit codes: 0 success, 1 data error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import corpus_io
from .align import Tokenization, fallback_tokenize, word_label_to_boundary_subtoken
from .anomalies import AnomalyConfig, detect_anomalies
from .augment import AugmentConfig, generate_corpus
from .records import LabeledText, SegmentationMode, segment_words, validate_record
from .scoring import (
    AnomalyFirst,
    Fixed,
    ScoringError,
    TrainMedian,
    baseline_predict,
    bucket_errors,
    compute_mae,
)
from .stats import boundary_histogram, length_histogram, subtoken_lengths

logger = logging.getLogger(__name__)


def _mode(args: argparse.Namespace) -> SegmentationMode:
    return SegmentationMode(args.mode)


def _tokenizations(
    corpus: list[LabeledText], sidecar: str | None, mode: SegmentationMode
) -> dict[str, Tokenization]:
    if sidecar:
        return corpus_io.read_tokenizations(sidecar)
    return {r.id: fallback_tokenize(r.text, mode) for r in corpus}


def _cmd_validate(args: argparse.Namespace) -> int:
    mode = _mode(args)
    records = corpus_io.read_corpus_raw(args.corpus, field_map=args.field_map)
    errors = warnings = 0
    for record in records:
        report = validate_record(record, mode)
        for violation in report.violations:
            print(f"{record.id}\t{violation.severity}\t{violation.code}\t{violation.message}")
            if violation.severity == "error":
                errors += 1
            else:
                warnings += 1
        if args.require_labels and record.label is None:
            print(f"{record.id}\terror\tmissing_label\trecord has no label")
            errors += 1
    print(
        f"checked {len(records)} records under mode={mode.value}: "
        f"{errors} errors, {warnings} warnings"
    )
    return 1 if errors else 0


def _cmd_stats(args: argparse.Namespace) -> int:
    mode = _mode(args)
    corpus = corpus_io.read_corpus(args.corpus, require_labels=False, mode=mode,
                                   field_map=args.field_map)
    toks = _tokenizations(corpus, args.tokenization, mode)
    length = length_histogram(corpus, toks, args.bin_width)
    labeled = [r for r in corpus if r.label is not None]
    boundary = None
    boundary_errors: list[tuple[str, str]] = []
    if labeled:
        boundary, boundary_errors = boundary_histogram(labeled, toks, args.bin_width, mode)
    report = {
        "mode": mode.value,
        "length": length.to_dict(),
        "boundary": boundary.to_dict() if boundary else None,
        "boundary_errors": [{"id": i, "reason": r} for i, r in boundary_errors],
    }
    if args.csv:
        _write_stats_csv(args.csv, corpus, toks, mode)
    print(json.dumps(report, indent=2, sort_keys=False))
    return 0


def _write_stats_csv(
    path: str,
    corpus: list[LabeledText],
    toks: dict[str, Tokenization],
    mode: SegmentationMode,
) -> None:
    lengths = subtoken_lengths(corpus, toks)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write("id,subtokens,boundary_subtoken\n")
        for record in corpus:
            boundary = ""
            if record.label is not None:
                word_map = segment_words(record.text, mode)
                try:
                    boundary = str(
                        word_label_to_boundary_subtoken(word_map, record.label, toks[record.id])
                    )
                except (IndexError, ValueError):
                    boundary = ""
            handle.write(f"{record.id},{lengths[record.id]},{boundary}\n")


def _cmd_augment(args: argparse.Namespace) -> int:
    mode = _mode(args)
    corpus = corpus_io.read_corpus(args.corpus, require_labels=True, mode=mode,
                                   field_map=args.field_map)
    config = AugmentConfig(
        per_record=args.per_record,
        max_left=args.max_left,
        max_right=args.max_right,
        seed=args.seed,
        min_human_words=args.min_human,
        min_machine_words=args.min_machine,
        mode=mode,
    )
    augmented = generate_corpus(corpus, config, workers=args.workers)
    corpus_io.write_augmented(augmented, args.out)
    print(f"wrote {len(augmented)} augmented records to {args.out}")
    return 0


def _cmd_align(args: argparse.Namespace) -> int:
    mode = _mode(args)
    corpus = corpus_io.read_corpus(args.corpus, require_labels=True, mode=mode,
                                   field_map=args.field_map)
    toks = _tokenizations(corpus, args.tokenization, mode)
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    failed = 0
    try:
        for record in corpus:
            word_map = segment_words(record.text, mode)
            try:
                subtoken = word_label_to_boundary_subtoken(
                    word_map, record.label or 0, toks[record.id]
                )
            except (KeyError, IndexError, ValueError) as exc:
                logger.warning("record %s: %s", record.id, exc)
                failed += 1
                continue
            line = json.dumps(
                {"id": record.id, "boundary_subtoken": subtoken},
                ensure_ascii=False,
                separators=(",", ":"),
            )
            out.write(line + "\n")
    finally:
        if args.out:
            out.close()
    if failed:
        logger.warning("%d records failed alignment", failed)
    return 0


def _cmd_score(args: argparse.Namespace) -> int:
    mode = _mode(args)
    golds = corpus_io.read_corpus(args.gold, require_labels=True, mode=mode,
                                  field_map=args.field_map)
    preds = corpus_io.read_predictions(args.pred)
    report = compute_mae(
        preds,
        golds,
        group_by=args.group_by,
        big_error_threshold=args.threshold,
        mode=mode,
    )
    if args.json == "-":
        print(json.dumps(report.to_dict(), indent=2, sort_keys=False))
        return 0
    if args.json:
        Path(args.json).write_text(
            json.dumps(report.to_dict(), indent=2, sort_keys=False) + "\n",
            encoding="utf-8",
        )
    print(f"MAE: {report.mae:.4f} over {report.count} records")
    print(f"{'group':<24}{'mae':>12}{'count':>8}")
    for key, score in sorted(report.per_group.items()):
        print(f"{key:<24}{score.mae:>12.4f}{score.count:>8}")
    over = bucket_errors(preds, golds, args.threshold)
    print(f"errors > {args.threshold}: {len(over)}")
    for record_id, distance in over[:20]:
        print(f"  {record_id}\t{distance}")
    if report.range_violation_ids:
        print(f"predictions beyond word count: {len(report.range_violation_ids)}")
    return 0


def _cmd_anomalies(args: argparse.Namespace) -> int:
    corpus = corpus_io.read_corpus(args.corpus, require_labels=False, mode=_mode(args),
                                   field_map=args.field_map)
    config = AnomalyConfig(
        ngram_repeats=args.ngram_repeats,
        ngram_window=args.ngram_window,
        list_min_lines=args.list_min_lines,
        json_min_lines=args.json_min_lines,
        json_density=args.json_density,
    )
    out = open(args.out, "w", encoding="utf-8") if args.out else sys.stdout
    try:
        for record in corpus:
            spans = detect_anomalies(record.text, config)
            line = json.dumps(
                {
                    "id": record.id,
                    "anomalies": [
                        {
                            "kind": s.kind.value,
                            "start": s.start,
                            "end": s.end,
                            "score": round(s.score, 4),
                        }
                        for s in spans
                    ],
                },
                ensure_ascii=False,
                separators=(",", ":"),
            )
            out.write(line + "\n")
    finally:
        if args.out:
            out.close()
    return 0


def _cmd_baseline(args: argparse.Namespace) -> int:
    mode = _mode(args)
    corpus = corpus_io.read_corpus(args.corpus, require_labels=False, mode=mode,
                                   field_map=args.field_map)
    if args.strategy == "fixed":
        strategy = Fixed(args.k)
    elif args.strategy == "median":
        if not args.train:
            raise ScoringError("the median strategy needs --train")
        train = corpus_io.read_corpus(args.train, require_labels=True, mode=mode)
        strategy = TrainMedian(tuple(train))
    else:
        fallback: Fixed | TrainMedian = Fixed(args.k)
        if args.train:
            train = corpus_io.read_corpus(args.train, require_labels=True, mode=mode)
            fallback = TrainMedian(tuple(train))
        strategy = AnomalyFirst(fallback=fallback, mode=mode)
    preds = baseline_predict(corpus, strategy)
    corpus_io.write_predictions(preds, args.out)
    print(f"wrote {len(preds)} predictions to {args.out}")
    return 0


def _parse_field_map(value: str) -> dict[str, str]:
    mapping: dict[str, str] = {}
    for piece in value.split(","):
        if "=" not in piece:
            raise argparse.ArgumentTypeError(
                f"field-map entries must look like canonical=actual, got {piece!r}"
            )
        canonical, actual = piece.split("=", 1)
        mapping[canonical.strip()] = actual.strip()
    return mapping


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="boundarykit",
        description="Corpus toolkit and MAE harness for authorship boundary detection",
    )
    parser.add_argument("--verbose", action="store_true", help="log at INFO level")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--mode", choices=["space", "whitespace"], default="space",
                       help="word separator convention (default: space)")
        p.add_argument("--field-map", type=_parse_field_map, default=None,
                       help="rename corpus fields, e.g. id=uuid,text=document")

    p = sub.add_parser("validate", help="check labels and report violations")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--require-labels", action="store_true")
    p.set_defaults(func=_cmd_validate)

    p = sub.add_parser("stats", help="length and boundary-position histograms")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--tokenization", help="sidecar JSONL of subtoken spans")
    p.add_argument("--bin-width", type=int, default=100)
    p.add_argument("--csv", help="write raw per-record values to this CSV")
    p.set_defaults(func=_cmd_stats)

    p = sub.add_parser("augment", help="generate label-correct augmented records")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--per-record", type=int, default=8)
    p.add_argument("--max-left", type=int, default=4)
    p.add_argument("--max-right", type=int, default=4)
    p.add_argument("--min-human", type=int, default=1)
    p.add_argument("--min-machine", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=_cmd_augment)

    p = sub.add_parser("align", help="boundary word to boundary subtoken per record")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--tokenization", help="sidecar JSONL; fallback tokenizer if omitted")
    p.add_argument("--out")
    p.set_defaults(func=_cmd_align)

    p = sub.add_parser("score", help="MAE, per-group breakdown, and big errors")
    common(p)
    p.add_argument("--pred", required=True)
    p.add_argument("--gold", required=True)
    p.add_argument("--threshold", type=int, default=100)
    p.add_argument("--group-by", choices=["domain", "generator"], default="domain")
    p.add_argument("--json", help="write the JSON report here ('-' for stdout only)")
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("anomalies", help="audit generation artifacts per record")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out")
    p.add_argument("--ngram-repeats", type=int, default=4)
    p.add_argument("--ngram-window", type=int, default=100)
    p.add_argument("--list-min-lines", type=int, default=4)
    p.add_argument("--json-min-lines", type=int, default=2)
    p.add_argument("--json-density", type=float, default=0.5)
    p.set_defaults(func=_cmd_anomalies)

    p = sub.add_parser("baseline", help="label-free baseline predictions")
    common(p)
    p.add_argument("--corpus", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--strategy", choices=["fixed", "median", "anomaly"], default="median")
    p.add_argument("--k", type=int, default=0, help="label for the fixed strategy")
    p.add_argument("--train", help="labeled corpus for the median strategy")
    p.set_defaults(func=_cmd_baseline)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return args.func(args)
    except (corpus_io.CorpusFormatError, ScoringError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
