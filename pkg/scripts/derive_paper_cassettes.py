"""Rebuild the bundled replay cassettes from the experiment transcripts.

    python scripts/derive_paper_cassettes.py [--show]
"""

import argparse

from postedit.fixtures import LANGUAGES, derive_cassette, load_fixture, window_slices


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--window", type=int, default=6)
    parser.add_argument("--show", action="store_true", help="print the window alignment")
    args = parser.parse_args()

    for lang in LANGUAGES:
        fx = load_fixture(lang)
        if args.show:
            for i, (q, s) in enumerate(window_slices(fx.asr, fx.corrected, args.window)):
                mark = " " if q == s else "*"
                print(f"{lang} {i:3d} {mark} {q!r}\n{'':8}-> {s!r}")
        cassette = derive_cassette(fx.asr, fx.corrected, args.window)
        cassette.save(fx.cassette_path)
        changed = sum(v is not None for v in cassette.entries.values())
        print(f"{lang}: {len(cassette)} windows, {changed} with suggestions -> {fx.cassette_path}")


if __name__ == "__main__":
    main()
