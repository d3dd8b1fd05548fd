"""Command line front end.

    postedit train CORPUS -o INDEX [--order 3]
    postedit correct INPUT -o OUTPUT --provider {ngram,replay,web} [...]
    postedit record INPUT -o CASSETTE --provider {ngram,web} [...]
    postedit evaluate (--paper-fixtures | --before F --after F (--annotations A B | --reference R))
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path

from postedit import evaluate as ev
from postedit.fixtures import LANGUAGES, load_fixture
from postedit.ngram import NGramIndex, NGramSuggester, SuggesterConfig, train
from postedit.pipeline import REPLACED, PipelineConfig, PipelineError, post_edit, write_audit
from postedit.suggest import Cassette, RecordingSuggester, ReplaySuggester, cassette_record
from postedit.transcript import tokenize
from postedit.web import WebProviderConfig, WebSuggester


class CliError(Exception):
    pass


def _read(path) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}") from exc


def _write(path, text: str):
    try:
        Path(path).write_text(text, encoding="utf-8", newline="\n")
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}") from exc


def run_train(corpus_path, index_path, order=3) -> int:
    text = _read(corpus_path)
    if not text.split():
        raise CliError(f"corpus {corpus_path} is empty")
    index = train(text, order)
    _write(index_path, index.dumps())
    print(f"vocabulary={len(index.surface)} ngrams={len(index.counts)} tokens={index.total_unigrams}")
    return 0


def make_provider(args):
    if args.provider == "replay":
        if not args.cassette:
            raise CliError("provider 'replay' needs --cassette")
        try:
            return ReplaySuggester(Cassette.loads(_read(args.cassette)), strict=True)
        except ValueError as exc:
            raise CliError(f"bad cassette {args.cassette}: {exc}") from exc
    if args.provider == "ngram":
        if not args.index:
            raise CliError("provider 'ngram' needs --index")
        try:
            index = NGramIndex.loads(_read(args.index))
        except (ValueError, KeyError) as exc:
            raise CliError(f"bad index {args.index}: {exc}") from exc
        config = SuggesterConfig(
            max_edit_distance=args.max_edit_distance,
            backoff_alpha=args.alpha,
            min_exact_count=args.min_exact_count,
            score_margin=args.margin,
            nearest_only=args.nearest_only,
        )
        return NGramSuggester(index, config)
    if args.provider == "web":
        overrides = {}
        if args.endpoint:
            overrides["endpoint_url_template"] = args.endpoint
        if args.delay is not None:
            overrides["request_delay"] = args.delay
        return WebSuggester(WebProviderConfig.from_env(**overrides))
    raise CliError(f"unknown provider {args.provider!r}")


def run_correct(args) -> int:
    text = _read(args.input)
    provider = make_provider(args)
    recorder = None
    if args.record:
        recorder = provider = RecordingSuggester(provider)
    config = PipelineConfig(window_W=args.window, workers_p=args.workers, strict_provider_errors=args.strict)
    audit_path = args.audit or f"{args.output}.audit.jsonl"
    try:
        corrected, records = post_edit(text, provider, config)
    except PipelineError as exc:
        write_audit(exc.records, audit_path)
        raise CliError(f"provider error at token_index {exc.token_index}: {exc.cause}") from exc
    finally:
        if recorder is not None:
            recorder.cassette.save(args.record)
    _write(args.output, corrected + "\n")
    write_audit(records, audit_path)
    replaced = sum(r.action == REPLACED for r in records)
    print(f"tokens={len(records)} replaced={replaced} output={args.output} audit={audit_path}")
    return 0


def run_record(args) -> int:
    text = _read(args.input)
    provider = make_provider(args)
    queries = [w.text for w in tokenize(text, args.window)]
    cassette = cassette_record(provider, queries)
    cassette.save(args.output)
    with_s = sum(v is not None for v in cassette.entries.values())
    print(f"recorded={len(cassette)} suggestions={with_s} cassette={args.output}")
    return 0


def _emit_report(table: ev.ReportTable, csv_path):
    sys.stdout.write(table.to_text())
    if csv_path:
        _write(csv_path, table.to_csv())


def run_evaluate(args) -> int:
    mode = args.rounding
    if args.paper_fixtures:
        rows = []
        for lang in LANGUAGES:
            fx = load_fixture(lang)
            rows.append((
                {"en": "English", "fr": "French"}[lang],
                fx.asr_annotation.total_words,
                ev.count_errors_annotated(fx.asr_annotation),
                ev.count_errors_annotated(fx.corrected_annotation),
            ))
        _emit_report(ev.build_report(rows, mode), args.csv)
        return 0

    if not (args.before and args.after):
        raise CliError("evaluate needs --paper-fixtures or both --before and --after")
    before, after = _read(args.before), _read(args.after)
    label = args.label or Path(args.before).stem
    if args.annotations:
        try:
            ann_b, ann_a = (ev.ErrorAnnotation.load(p) for p in args.annotations)
        except (OSError, ValueError, KeyError) as exc:
            raise CliError(f"bad annotation file: {exc}") from exc
        for ann, text in ((ann_b, before), (ann_a, after)):
            try:
                ann.check_against(text.split())
            except ValueError as exc:
                raise CliError(str(exc)) from exc
        row = (label, ann_b.total_words, ev.count_errors_annotated(ann_b), ev.count_errors_annotated(ann_a))
    elif args.reference:
        ref = _read(args.reference)
        if not ref.split() or not before.split() or not after.split():
            raise CliError("alignment mode needs non-empty texts")
        row = (label, len(ref.split()), ev.count_errors_aligned(before, ref), ev.count_errors_aligned(after, ref))
    else:
        raise CliError("evaluate needs --annotations BEFORE AFTER or --reference")
    _emit_report(ev.build_report([row], mode), args.csv)
    return 0


def _provider_options(p):
    p.add_argument("--provider", choices=("ngram", "replay", "web"), required=True)
    p.add_argument("--index", help="n-gram index file (provider ngram)")
    p.add_argument("--cassette", help="cassette file (provider replay)")
    p.add_argument("--endpoint", help="URL template with one {} placeholder (provider web)")
    p.add_argument("--delay", type=float, help="ms between web requests")
    p.add_argument("--window", type=int, default=6)
    p.add_argument("--margin", type=float, default=1.5)
    p.add_argument("--min-exact-count", type=int, default=1)
    p.add_argument("--max-edit-distance", type=int, default=2)
    p.add_argument("--alpha", type=float, default=0.4)
    p.add_argument("--nearest-only", action="store_true",
                   help="leave known words alone; expand unknown words to their closest known words")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="postedit", description="Post-edit ASR transcripts with spelling suggestions.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("train", help="build an n-gram index from a corpus")
    p.add_argument("corpus")
    p.add_argument("-o", "--output", required=True, help="index file to write")
    p.add_argument("--order", type=int, default=3)

    p = sub.add_parser("correct", help="post-edit a transcript")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--audit", help="audit trail path (default OUTPUT.audit.jsonl)")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--record", metavar="CASSETTE", help="also record provider answers to a cassette")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--strict", dest="strict", action="store_true", default=True)
    mode.add_argument("--lenient", dest="strict", action="store_false")
    _provider_options(p)

    p = sub.add_parser("record", help="record a provider's answers for every window of a transcript")
    p.add_argument("input")
    p.add_argument("-o", "--output", required=True, help="cassette file to write")
    _provider_options(p)

    p = sub.add_parser("evaluate", help="error rates and improvement ratio")
    p.add_argument("--paper-fixtures", action="store_true", help="report on the bundled English and French fixtures")
    p.add_argument("--before", help="transcript before post-editing")
    p.add_argument("--after", help="transcript after post-editing")
    p.add_argument("--annotations", nargs=2, metavar=("BEFORE_JSON", "AFTER_JSON"))
    p.add_argument("--reference", help="reference transcript (alignment counting)")
    p.add_argument("--label")
    p.add_argument("--rounding", choices=ev.MODES, default=ev.PAPER)
    p.add_argument("--csv", help="also write the table as CSV")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "window", 1) < 1:
        parser.error("--window must be >= 1")
    if getattr(args, "workers", 1) < 1:
        parser.error("--workers must be >= 1")
    try:
        if args.command == "train":
            if args.order < 1:
                parser.error("--order must be >= 1")
            return run_train(args.corpus, args.output, args.order)
        if args.command == "correct":
            return run_correct(args)
        if args.command == "record":
            return run_record(args)
        return run_evaluate(args)
    except CliError as exc:
        print(f"postedit: error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"postedit: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
