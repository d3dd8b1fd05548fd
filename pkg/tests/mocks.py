"""Deterministic in-memory providers for pipeline tests."""

import hashlib
import random
import threading

from postedit.suggest import ProviderError, Suggester, Suggestion


class CountingProvider(Suggester):
    """Never suggests; counts calls."""

    provider_id = "counting"
    concurrent_safe = True

    def __init__(self):
        self.calls = []
        self._lock = threading.Lock()

    def suggest(self, query):
        with self._lock:
            self.calls.append((query, threading.current_thread().name))
        return None


class HashProvider(Suggester):
    """Pure function of the query: rewrites some windows, keeps others.

    With `fail_rate` > 0 it also raises ProviderError for a fixed subset.
    """

    provider_id = "hash"
    concurrent_safe = True

    def __init__(self, seed=0, fail_rate=0.0):
        self.seed = seed
        self.fail_rate = fail_rate

    def _roll(self, query, salt):
        h = hashlib.sha256(f"{self.seed}|{salt}|{query}".encode()).digest()
        return int.from_bytes(h[:8], "big") / 2**64

    def suggest(self, query):
        if self._roll(query, "fail") < self.fail_rate:
            raise ProviderError(f"refused {query!r}")
        r = self._roll(query, "edit")
        if r < 0.4:
            return None
        words = query.split()
        i = int(r * 1000) % len(words)
        words[i] = words[i].upper() + "x"
        return Suggestion(query, " ".join(words), self.provider_id)


class FailAt(Suggester):
    """Raises for queries containing one of the given marker words."""

    provider_id = "failat"
    concurrent_safe = True

    def __init__(self, markers):
        self.markers = set(markers)

    def suggest(self, query):
        if self.markers & set(query.split()):
            raise ProviderError(f"boom {query!r}")
        return Suggestion(query, query + " !", self.provider_id)


def random_text(rng: random.Random, max_words=300):
    alphabet = "abcdefghijklmnopqrstuvwxyzéàüß-'.,"
    n = rng.randint(0, max_words)
    words = ["".join(rng.choice(alphabet) for _ in range(rng.randint(1, 8))) for _ in range(n)]
    seps = [rng.choice([" ", "  ", "\n", "\t", " \n "]) for _ in range(n)]
    return rng.choice(["", " ", "\n"]) + "".join(w + s for w, s in zip(words, seps))
