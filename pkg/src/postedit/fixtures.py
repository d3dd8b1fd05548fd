"""Bundled experiment transcripts and replay cassettes derived from them.

Each language ships a reference text, the recognizer output, and the
published post-edited output, plus error annotations for the recognizer and
post-edited texts.  A replay cassette is reconstructed by aligning recognizer
output with post-edited output word by word and cutting the alignment at
window boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from postedit.evaluate import DEL, INS, ErrorAnnotation, align
from postedit.suggest import Cassette
from postedit.transcript import tokenize

LANGUAGES = ("en", "fr")
DERIVED_PROVIDER_ID = "paper-replay"
DERIVED_CREATED = "2011-01-01T00:00:00Z"


def data_dir() -> Path:
    return Path(str(resources.files("postedit") / "data"))


def fixture_path(name: str) -> Path:
    return data_dir() / "fixtures" / name


def read_text(name: str) -> str:
    return fixture_path(name).read_text(encoding="utf-8").strip()


@dataclass(frozen=True)
class LanguageFixture:
    language: str
    reference: str
    asr: str
    corrected: str
    asr_annotation: ErrorAnnotation
    corrected_annotation: ErrorAnnotation

    @property
    def cassette_path(self) -> Path:
        return data_dir() / "cassettes" / f"{self.language}_paper.jsonl"


def load_fixture(language: str) -> LanguageFixture:
    if language not in LANGUAGES:
        raise ValueError(f"no fixture for language {language!r}")
    return LanguageFixture(
        language,
        read_text(f"{language}_reference.txt"),
        read_text(f"{language}_asr.txt"),
        read_text(f"{language}_corrected.txt"),
        ErrorAnnotation.load(fixture_path(f"{language}_asr.errors.json")),
        ErrorAnnotation.load(fixture_path(f"{language}_corrected.errors.json")),
    )


def window_slices(source: str, target: str, width: int) -> list[tuple[str, str]]:
    """Pair every window of `source` with the `target` words aligned to it.

    Target words inserted between two source words go with the window of the
    preceding source word (with the first window when at the very start).
    """
    src, tgt = source.split(), target.split()
    ops = align(src, tgt)
    owner = []  # target index -> source index it belongs to
    last_src = 0
    for op, i, j in ops:
        if i is not None:
            last_src = i
        if op == INS:
            owner.append((j, last_src))
        elif op != DEL:
            owner.append((j, i))
    by_src: dict[int, list[str]] = {}
    for j, i in owner:
        by_src.setdefault(i, []).append(tgt[j])

    out = []
    for window in tokenize(source, width):
        start = window.index * width
        words = [w for i in range(start, start + len(window.words)) for w in by_src.get(i, [])]
        out.append((window.text, " ".join(words)))
    return out


def derive_cassette(source: str, target: str, width: int = 6,
                    provider_id: str = DERIVED_PROVIDER_ID, created: str = DERIVED_CREATED) -> Cassette:
    """Cassette that makes the pipeline turn `source` into `target`.

    Windows whose aligned slice is unchanged record "no suggestion".  A window
    whose aligned slice is empty cannot be expressed as a suggestion and is an
    error.
    """
    cassette = Cassette(provider_id=provider_id, created=created)
    for query, slice_text in window_slices(source, target, width):
        if not slice_text:
            raise ValueError(f"window {query!r} aligns to no output words")
        cassette.add(query, None if slice_text == query else slice_text)
    return cassette


def load_paper_cassette(language: str) -> Cassette:
    return Cassette.load(load_fixture(language).cassette_path)
