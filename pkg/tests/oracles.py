"""Independent reference implementations used to check the package.

Nothing here imports the code under test except where a test explicitly
needs the same scoring formula (the suggester oracle reuses `score`).
"""

import itertools
from functools import lru_cache

UNRESERVED = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-._~")


def levenshtein(a, b):
    """Recursive edit distance over any two sequences."""

    @lru_cache(maxsize=None)
    def d(i, j):
        if i == 0:
            return j
        if j == 0:
            return i
        return min(d(i - 1, j) + 1, d(i, j - 1) + 1, d(i - 1, j - 1) + (a[i - 1] != b[j - 1]))

    return d(len(a), len(b))


def brute_candidates(word, vocabulary, max_dist):
    w = word.casefold()
    return {v for v in vocabulary if levenshtein(w, v) <= max_dist}


def percent_encode(text):
    out = []
    for ch in text:
        if ch in UNRESERVED:
            out.append(ch)
        else:
            out.extend(f"%{b:02X}" for b in ch.encode("utf-8"))
    return "".join(out)


def count_ngrams(tokens, order):
    counts = {}
    for n in range(1, order + 1):
        for i in range(len(tokens) - n + 1):
            g = tuple(tokens[i:i + n])
            counts[g] = counts.get(g, 0) + 1
    return counts


def brute_suggest(query, index, config, score):
    """Exhaustive argmax over every lattice path, with the suggester's gates.

    Candidate sets come from a brute-force Levenshtein scan of the vocabulary.
    """
    words = query.split()
    keys = [w.casefold() for w in words]
    vocab = set(index.surface)

    # phrase gate
    n = index.order
    if len(keys) <= n:
        pc = index.counts.get(tuple(keys), 0)
    else:
        pc = min(index.counts.get(tuple(keys[i:i + n]), 0) for i in range(len(keys) - n + 1))
    if pc >= config.min_exact_count:
        return None

    lattice = []
    for k in keys:
        cands = brute_candidates(k, vocab, config.max_edit_distance)
        if config.nearest_only and cands:
            best = min(levenshtein(k, c) for c in cands)
            cands = {c for c in cands if levenshtein(k, c) == best}
        lattice.append(sorted(cands) if cands else [k])

    best_key = None
    for path in itertools.product(*lattice):
        s = score(path, index, config.backoff_alpha)
        key = (-s, path)
        if best_key is None or key < best_key:
            best_key = key
    best_score, path = -best_key[0], best_key[1]

    text = " ".join(w if p == w.casefold() else index.surface.get(p, w) for w, p in zip(words, path))
    if text.casefold() == " ".join(words).casefold():
        return None
    if best_score < config.score_margin * score(words, index, config.backoff_alpha):
        return None
    return text
