"""Suggestion-provider contract and cassette record/replay.

A provider answers one question per query: is this text misspelled, and if so
what should replace it.  "No suggestion" (the text is fine) and a transport
failure are different outcomes; providers raise `ProviderError` for the latter.

Cassettes are stored as UTF-8 JSON Lines: a header object, then one
``{"q": query, "s": suggestion-or-null}`` record per line.
"""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Optional

CASSETTE_FORMAT = "postedit-cassette/1"


class ProviderError(Exception):
    """A provider could not answer (distinct from answering "no suggestion")."""


class TransportError(ProviderError):
    pass


class CassetteMiss(ProviderError, KeyError):
    """Strict replay was asked for a query the cassette never recorded."""

    def __str__(self):
        return f"query not in cassette: {self.args[0]!r}"


@dataclass(frozen=True)
class Suggestion:
    query: str
    corrected: str
    provider_id: str

    def __post_init__(self):
        if not self.corrected.strip():
            raise ValueError("suggestion text must be non-empty")
        if self.corrected == self.query:
            raise ValueError("suggestion must differ from the query")


class Suggester:
    """Base class for providers.

    Subclasses set `provider_id` and implement `suggest`.  `concurrent_safe`
    declares whether one instance may be called from several threads at once;
    the parallel pipeline refuses providers that leave it False.
    """

    provider_id = "base"
    concurrent_safe = False

    def suggest(self, query: str) -> Optional[Suggestion]:
        raise NotImplementedError

    def __call__(self, query: str) -> Optional[Suggestion]:
        return self.suggest(query)


def check_query(query: str) -> str:
    if not query or not query.strip():
        raise ValueError("query must be non-empty")
    return query


def _utc_now() -> str:
    return datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")


@dataclass
class Cassette:
    """Recorded query -> suggestion answers of one provider.

    Entries keep insertion (recording) order so a saved file reloads and
    re-saves to the same bytes.
    """

    provider_id: str
    created: str = field(default_factory=_utc_now)
    entries: dict[str, Optional[str]] = field(default_factory=dict)

    def add(self, query: str, suggestion: Optional[str]):
        if query in self.entries and self.entries[query] != suggestion:
            raise ValueError(f"conflicting answers recorded for {query!r}")
        self.entries[query] = suggestion

    def __contains__(self, query):
        return query in self.entries

    def __len__(self):
        return len(self.entries)

    def dumps(self) -> str:
        header = {"format": CASSETTE_FORMAT, "provider_id": self.provider_id, "created": self.created}
        lines = [json.dumps(header, ensure_ascii=False, sort_keys=True)]
        for q, s in self.entries.items():
            lines.append(json.dumps({"q": q, "s": s}, ensure_ascii=False))
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "Cassette":
        # only LF separates records; JSON strings may hold U+2028 and friends raw
        lines = text.split("\n")
        if not lines[0].strip():
            raise ValueError("empty cassette file")
        header = json.loads(lines[0])
        if header.get("format") != CASSETTE_FORMAT:
            raise ValueError(f"not a cassette file (header {lines[0][:60]!r})")
        cassette = cls(provider_id=header["provider_id"], created=header["created"])
        for lineno, line in enumerate(lines[1:], start=2):
            if not line.strip():
                continue
            record = json.loads(line)
            if record["q"] in cassette.entries:
                raise ValueError(f"line {lineno}: duplicate query {record['q']!r}")
            cassette.entries[record["q"]] = record["s"]
        return cassette

    def save(self, path: str | Path):
        Path(path).write_text(self.dumps(), encoding="utf-8", newline="\n")

    @classmethod
    def load(cls, path: str | Path) -> "Cassette":
        return cls.loads(Path(path).read_text(encoding="utf-8"))


def cassette_lookup(cassette: Cassette, query: str, strict: bool = True) -> Optional[Suggestion]:
    if query not in cassette.entries:
        if strict:
            raise CassetteMiss(query)
        return None
    corrected = cassette.entries[query]
    if corrected is None or corrected == query:
        return None
    return Suggestion(query, corrected, cassette.provider_id)


def cassette_record(provider: Suggester, queries: Iterable[str], cassette: Cassette | None = None) -> Cassette:
    """Ask `provider` every query and store its answers."""
    if cassette is None:
        cassette = Cassette(provider_id=provider.provider_id)
    for q in queries:
        if q in cassette:
            continue
        s = provider.suggest(q)
        cassette.add(q, s.corrected if s is not None else None)
    return cassette


class ReplaySuggester(Suggester):
    """Answers from a cassette; unrecorded queries raise in strict mode."""

    provider_id = "replay"
    concurrent_safe = True

    def __init__(self, cassette: Cassette, strict: bool = True):
        self.cassette = cassette
        self.strict = strict

    @classmethod
    def from_file(cls, path, strict=True):
        return cls(Cassette.load(path), strict=strict)

    def suggest(self, query):
        return cassette_lookup(self.cassette, check_query(query), self.strict)


class RecordingSuggester(Suggester):
    """Pass-through wrapper that records every answered query.

    Transport errors propagate and are not recorded.
    """

    def __init__(self, inner: Suggester, cassette: Cassette | None = None):
        self.inner = inner
        self.cassette = cassette if cassette is not None else Cassette(inner.provider_id)
        self.provider_id = inner.provider_id
        self.concurrent_safe = inner.concurrent_safe
        self._lock = threading.Lock()

    def suggest(self, query):
        s = self.inner.suggest(query)
        with self._lock:
            self.cassette.add(query, s.corrected if s is not None else None)
        return s
