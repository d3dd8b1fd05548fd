"""Word-level transcript model and fixed-width tokenization."""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence


@dataclass(frozen=True)
class Transcript:
    """A recognized transcript as an ordered word sequence.

    Words are whitespace-delimited; punctuation stays attached to its word.
    """

    raw_text: str
    language: str = "en"
    words: tuple[str, ...] = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "words", tuple(self.raw_text.split()))

    @classmethod
    def from_file(cls, path: str | Path, language: str = "en") -> "Transcript":
        return cls(Path(path).read_text(encoding="utf-8"), language)

    @property
    def text(self) -> str:
        return " ".join(self.words)

    def __len__(self):
        return len(self.words)


@dataclass(frozen=True)
class TokenWindow:
    index: int
    words: tuple[str, ...]

    @property
    def text(self) -> str:
        return " ".join(self.words)


def tokenize(text: str | Transcript, width: int) -> list[TokenWindow]:
    """Cut `text` into consecutive, non-overlapping windows of `width` words.

    The last window holds the remaining words and may be shorter.
    """
    if width < 1:
        raise ValueError(f"window width must be >= 1, got {width}")
    words = text.words if isinstance(text, Transcript) else tuple(text.split())
    return [
        TokenWindow(i, words[start:start + width])
        for i, start in enumerate(range(0, len(words), width))
    ]


def concatenate(pieces: Iterable[str]) -> str:
    return " ".join(pieces)


def windows_cover(windows: Sequence[TokenWindow]) -> tuple[str, ...]:
    """Flatten windows back into their word sequence."""
    return tuple(w for window in windows for w in window.words)
