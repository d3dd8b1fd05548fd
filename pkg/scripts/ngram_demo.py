"""Local n-gram provider on the English experiment transcript.

Trains on the bundled ~1 MB corpus, post-edits the recognizer output, and
reports which annotated errors now match the reference word exactly.

    python scripts/ngram_demo.py [--all-candidates] [--max-edit-distance 2]
"""

import argparse
import time

from postedit.evaluate import count_errors_aligned
from postedit.fixtures import data_dir, load_fixture
from postedit.ngram import NGramSuggester, SuggesterConfig, train
from postedit.pipeline import REPLACED, post_edit

CORPUS = data_dir() / "corpus" / "en_tech_corpus.txt"
DEMO_CONFIG = SuggesterConfig(nearest_only=True)


def corrected_errors(annotation, asr_words, out_words):
    """Annotated errors whose output word now equals the reference word.

    Only meaningful for providers that keep the word count of every window.
    """
    if len(out_words) != len(asr_words):
        raise ValueError("output changed the word count; per-position comparison is undefined")
    return [
        e for e in annotation.error_words
        if e.reference and e.reference != e.surface_form and out_words[e.word_index] == e.reference
    ]


def run(config=DEMO_CONFIG, order=3):
    index = train(CORPUS.read_text(encoding="utf-8"), order)
    fx = load_fixture("en")
    out, records = post_edit(fx.asr, NGramSuggester(index, config))
    fixed = corrected_errors(fx.asr_annotation, fx.asr.split(), out.split())
    return fx, index, out, records, fixed


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--all-candidates", action="store_true", help="expand every word, not just unknown ones")
    parser.add_argument("--max-edit-distance", type=int, default=2)
    parser.add_argument("--order", type=int, default=3)
    args = parser.parse_args()
    config = SuggesterConfig(max_edit_distance=args.max_edit_distance, nearest_only=not args.all_candidates)

    t0 = time.perf_counter()
    fx, index, out, records, fixed = run(config, args.order)
    elapsed = time.perf_counter() - t0

    print(f"index: vocabulary={len(index.surface)} tokens={index.total_unigrams} order={index.order}")
    for r in records:
        if r.action == REPLACED:
            print(f"  [{r.token_index:2d}] {r.original_text}\n       -> {r.replacement_text}")
    total = len(fx.asr_annotation.error_words)
    print(f"annotated errors corrected: {len(fixed)} of {total}: {[e.surface_form for e in fixed]}")
    print(f"alignment errors vs reference: before={count_errors_aligned(fx.asr, fx.reference)} "
          f"after={count_errors_aligned(out, fx.reference)}")
    print(f"elapsed {elapsed:.2f}s")


if __name__ == "__main__":
    main()
