"""Local n-gram suggestion provider.

Emulates a search engine's did-you-mean behaviour at desk scale:

1. a query whose exact phrase is frequent enough in the training text is
   accepted as correct;
2. otherwise every word is expanded to the vocabulary words within a small
   edit distance, and the highest-scoring combination under a backoff n-gram
   score is chosen;
3. the rewrite is offered only if it beats the original query's score by a
   fixed margin.

The index is always case-folded; the dominant surface casing of each word is
kept so rewrites come out as "John Kennedy" rather than "john kennedy".
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, Sequence

from rapidfuzz import process
from rapidfuzz.distance import Levenshtein

from postedit.suggest import Suggester, Suggestion, check_query

HEADER_PREFIX = "NGRAMIDX v1"
EXHAUSTIVE_LIMIT = 10**6
BEAM_WIDTH = 8


def fold(word: str) -> str:
    return word.casefold()


@dataclass
class NGramIndex:
    order: int
    counts: dict[tuple[str, ...], int] = field(default_factory=dict)
    surface: dict[str, str] = field(default_factory=dict)  # folded word -> dominant casing
    total_unigrams: int = 0

    @property
    def vocabulary(self) -> set[str]:
        return set(self.surface)

    def count(self, words: Sequence[str]) -> int:
        return self.counts.get(tuple(words), 0)

    def __eq__(self, other):
        if not isinstance(other, NGramIndex):
            return NotImplemented
        return (
            self.order == other.order
            and self.total_unigrams == other.total_unigrams
            and self.counts == other.counts
            and self.surface == other.surface
        )

    def dumps(self) -> str:
        rows = []
        for gram, n in self.counts.items():
            words = (self.surface[gram[0]],) if len(gram) == 1 else gram
            rows.append((" ".join(words), n))
        rows.sort(key=lambda r: r[0].encode("utf-8"))
        header = f"{HEADER_PREFIX} order={self.order} vocab={len(self.surface)} total={self.total_unigrams}"
        return "\n".join([header] + [f"{n}\t{text}" for text, n in rows]) + "\n"

    @classmethod
    def loads(cls, text: str) -> "NGramIndex":
        lines = text.split("\n")
        fields = lines[0].split()
        if " ".join(fields[:2]) != HEADER_PREFIX:
            raise ValueError(f"not an n-gram index: {lines[0][:40]!r}")
        meta = dict(f.split("=", 1) for f in fields[2:])
        index = cls(order=int(meta["order"]), total_unigrams=int(meta["total"]))
        for lineno, line in enumerate(lines[1:], start=2):
            if not line:
                continue
            n, _, gram_text = line.partition("\t")
            words = gram_text.split(" ")
            if len(words) == 1:
                key = fold(words[0])
                index.surface[key] = words[0]
                gram = (key,)
            else:
                gram = tuple(words)
            if gram in index.counts:
                raise ValueError(f"line {lineno}: duplicate n-gram {gram_text!r}")
            index.counts[gram] = int(n)
        if len(index.surface) != int(meta["vocab"]):
            raise ValueError("vocabulary size does not match header")
        return index

    def save(self, path):
        Path(path).write_text(self.dumps(), encoding="utf-8", newline="\n")

    @classmethod
    def load(cls, path) -> "NGramIndex":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def train(corpus_text: str, order: int = 3) -> NGramIndex:
    """Count every contiguous 1..order word window of the corpus."""
    if order < 1:
        raise ValueError("order must be >= 1")
    tokens = corpus_text.split()
    if not tokens:
        raise ValueError("cannot train on an empty corpus")
    keys = [fold(t) for t in tokens]

    counts: Counter = Counter()
    for n in range(1, order + 1):
        counts.update(zip(*(keys[i:] for i in range(n))))

    by_key: dict[str, Counter] = {}
    for tok, key in zip(tokens, keys):
        by_key.setdefault(key, Counter())[tok] += 1
    # most frequent casing, ties to the smallest string
    surface = {k: min(c, key=lambda s: (-c[s], s)) for k, c in by_key.items()}

    return NGramIndex(order=order, counts=dict(counts), surface=surface, total_unigrams=len(tokens))


class _CandidateCache:
    """Sorted vocabulary list per index, reused across candidate lookups."""

    def __init__(self):
        self._vocab: dict[int, tuple[NGramIndex, list[str]]] = {}

    def vocab(self, index):
        hit = self._vocab.get(id(index))
        if hit is None or hit[0] is not index:
            hit = (index, sorted(index.surface))
            self._vocab[id(index)] = hit
        return hit[1]


_cache = _CandidateCache()


def candidates(word: str, index: NGramIndex, max_edit_distance: int = 2) -> set[str]:
    """Vocabulary words (folded) within `max_edit_distance` Levenshtein edits of `word`."""
    check_query(word)
    key = fold(word)
    vocab = _cache.vocab(index)
    hits = process.extract(
        key, vocab, scorer=Levenshtein.distance, score_cutoff=max_edit_distance, limit=None
    )
    return {w for w, _, _ in hits}


def _position_score(index: NGramIndex, history: Sequence[str], word: str, alpha: float) -> float:
    """Backoff conditional score of `word` after up to order-1 words of history."""
    top = min(index.order, len(history) + 1)
    for n in range(top, 0, -1):
        gram = tuple(history[len(history) - n + 1:]) + (word,)
        num = index.counts.get(gram, 0)
        if num:
            den = index.counts[gram[:-1]] if n > 1 else index.total_unigrams
            return num / den * alpha ** (top - n)
    return alpha ** (top - 1) / (index.total_unigrams * len(index.surface))


def score(phrase_words: Sequence[str], index: NGramIndex, backoff_alpha: float = 0.4) -> float:
    """Backoff n-gram score of a phrase: product of per-position scores.

    At each position the highest order with a nonzero count is used, times
    `backoff_alpha` per order dropped.  Unseen unigrams score
    1 / (total_unigrams * vocabulary_size).
    """
    if not phrase_words:
        raise ValueError("phrase must be non-empty")
    keys = [fold(w) for w in phrase_words]
    ctx = index.order - 1
    total = 1.0
    for i, w in enumerate(keys):
        total *= _position_score(index, keys[max(0, i - ctx):i], w, backoff_alpha)
    return total


def phrase_count(words: Sequence[str], index: NGramIndex) -> int:
    """Occurrences of a phrase, bounded by its least frequent n-gram when longer than the order."""
    keys = tuple(fold(w) for w in words)
    if len(keys) <= index.order:
        return index.count(keys)
    n = index.order
    return min(index.count(keys[i:i + n]) for i in range(len(keys) - n + 1))


def _exact_search(lattice, index, alpha):
    """Best path by dynamic programming over the last order-1 words.

    Equivalent to scoring every path: a position's score depends only on the
    preceding order-1 words, and ties keep the lexicographically smaller
    prefix, which stays smaller under any common suffix.
    """
    ctx = index.order - 1
    beams: dict[tuple, tuple[float, tuple]] = {(): (1.0, ())}
    for options in lattice:
        nxt: dict[tuple, tuple[float, tuple]] = {}
        for s, (p, path) in beams.items():
            for w in options:
                q = p * _position_score(index, path[-ctx:] if ctx else (), w, alpha)
                cand = path + (w,)
                state = cand[-ctx:] if ctx else ()
                best = nxt.get(state)
                if best is None or q > best[0] or (q == best[0] and cand < best[1]):
                    nxt[state] = (q, cand)
        beams = nxt
    return min(beams.values(), key=lambda sp: (-sp[0], sp[1]))


def _beam_search(lattice, index, alpha, width=BEAM_WIDTH):
    ctx = index.order - 1
    beam = [(1.0, ())]
    for options in lattice:
        grown = []
        for p, path in beam:
            hist = path[-ctx:] if ctx else ()
            for w in options:
                grown.append((p * _position_score(index, hist, w, alpha), path + (w,)))
        grown.sort(key=lambda sp: (-sp[0], sp[1]))
        beam = grown[:width]
    return beam[0]


@dataclass(frozen=True)
class SuggesterConfig:
    max_edit_distance: int = 2
    backoff_alpha: float = 0.4
    min_exact_count: int = 1
    score_margin: float = 1.5
    case_fold: bool = True
    # Expand to the closest edit-distance tier only (distance-1 words if any exist).
    nearest_only: bool = False

    def __post_init__(self):
        for name in ("max_edit_distance", "backoff_alpha", "min_exact_count", "score_margin"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be > 0")


class UntrainedIndexError(RuntimeError):
    pass


class NGramSuggester(Suggester):
    """Provider backed by a trained `NGramIndex`.

    Immutable after construction, so one instance may serve many threads.
    """

    provider_id = "ngram"
    concurrent_safe = True

    def __init__(self, index: Optional[NGramIndex], config: SuggesterConfig | None = None):
        self.index = index
        self.config = config or SuggesterConfig()

    def lattice(self, words: Sequence[str]) -> list[list[str]]:
        """Per-position candidate lists; a word with no candidates stands for itself.

        With `nearest_only`, a known word is its own only candidate (distance 0)
        and an unknown word expands to its closest tier of known words.
        """
        out = []
        for w in words:
            options = candidates(w, self.index, self.config.max_edit_distance)
            if self.config.nearest_only and options:
                key = fold(w)
                dist = {c: Levenshtein.distance(key, c) for c in options}
                closest = min(dist.values())
                options = {c for c, d in dist.items() if d == closest}
            out.append(sorted(options) if options else [fold(w)])
        return out

    def best_path(self, words: Sequence[str]) -> tuple[float, tuple[str, ...]]:
        lat = self.lattice(words)
        alpha = self.config.backoff_alpha
        if math.prod(len(opts) for opts in lat) <= EXHAUSTIVE_LIMIT:
            return _exact_search(lat, self.index, alpha)
        return _beam_search(lat, self.index, alpha)

    def render(self, words: Sequence[str], path: Sequence[str]) -> str:
        out = []
        for orig, key in zip(words, path):
            if self.config.case_fold and key == fold(orig):
                out.append(orig)
            else:
                out.append(self.index.surface.get(key, orig))
        return " ".join(out)

    def _same(self, a: str, b: str) -> bool:
        return fold(a) == fold(b) if self.config.case_fold else a == b

    def suggest(self, query):
        if self.index is None or not self.index.counts:
            raise UntrainedIndexError("n-gram suggester has no trained index")
        words = check_query(query).split()
        cfg = self.config

        accepted = phrase_count(words, self.index) >= cfg.min_exact_count
        if accepted and cfg.case_fold:
            return None
        if accepted and self.render(words, [fold(w) for w in words]) == " ".join(words):
            return None

        best_score, path = self.best_path(words)
        text = self.render(words, path)
        if self._same(text, " ".join(words)):
            return None
        if best_score < cfg.score_margin * score(words, self.index, cfg.backoff_alpha):
            return None
        return Suggestion(query, text, self.provider_id)
