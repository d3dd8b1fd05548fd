"""Search-engine backed provider.

A token is sent as a search query; the results page is scanned for the
"Including results for" marker, and the text that follows it is taken as the
suggested rewrite.
"""

from __future__ import annotations

import html
import os
import re
import threading
import time
import urllib.error
import urllib.request
from dataclasses import dataclass
from typing import Callable, Optional
from urllib.parse import quote

from postedit.suggest import Suggester, Suggestion, TransportError, check_query

ENDPOINT_ENV = "POSTEDIT_WEB_ENDPOINT"
DEFAULT_ENDPOINT = "https://www.bing.com/search?q={}"
PLACEHOLDER = "{}"

# Tags that end the suggestion text.  Inline tags (a, strong, em, b, i, span)
# are stripped instead.
_BLOCK_TAGS = (
    "address|article|aside|blockquote|br|dd|div|dl|dt|fieldset|figure|footer|form"
    "|h[1-6]|header|hr|li|main|nav|ol|p|pre|section|table|tbody|td|th|tr|ul|script|style"
)
_BLOCK_RE = re.compile(rf"</?(?:{_BLOCK_TAGS})\b[^>]*>|\r|\n", re.IGNORECASE)
_ANCHOR_RE = re.compile(r"<a\b[^>]*>(.*?)</a\s*>", re.IGNORECASE | re.DOTALL)
_TAG_RE = re.compile(r"<[^>]*>")


@dataclass(frozen=True)
class WebProviderConfig:
    endpoint_url_template: str = DEFAULT_ENDPOINT
    marker_text: str = "Including results for"
    request_delay: float = 1000.0  # ms between request starts
    timeout: float = 10000.0  # ms

    def __post_init__(self):
        if self.endpoint_url_template.count(PLACEHOLDER) != 1:
            raise ValueError("endpoint template needs exactly one '{}' placeholder")
        if self.request_delay < 0:
            raise ValueError("request_delay must be >= 0")
        if self.timeout <= 0:
            raise ValueError("timeout must be > 0")
        if not self.marker_text:
            raise ValueError("marker_text must be non-empty")

    @classmethod
    def from_env(cls, **overrides) -> "WebProviderConfig":
        endpoint = os.environ.get(ENDPOINT_ENV)
        if endpoint and "endpoint_url_template" not in overrides:
            overrides["endpoint_url_template"] = endpoint
        return cls(**overrides)


def build_query(template: str, token_text: str) -> str:
    check_query(token_text)
    return template.replace(PLACEHOLDER, quote(token_text, safe=""), 1)


def _clean(fragment: str) -> str:
    text = html.unescape(_TAG_RE.sub("", fragment))
    return " ".join(text.split())


def parse_suggestion(response_body: str, marker_text: str = "Including results for") -> Optional[str]:
    """Extract the suggested rewrite that follows `marker_text`.

    Matching is case-sensitive.  The suggestion runs to the next block-level
    tag or line end; if that span holds a link, the link text is the
    suggestion.  Returns None when the marker is missing or nothing usable
    follows it.
    """
    if not response_body:
        return None
    start = response_body.find(marker_text)
    if start < 0:
        return None
    tail = response_body[start + len(marker_text):]
    end = _BLOCK_RE.search(tail)
    span = tail[:end.start()] if end else tail

    anchor = _ANCHOR_RE.search(span)
    if anchor:
        text = _clean(anchor.group(1))
    else:
        text = _clean(span)
        text = text.strip(" :\"'“”")
        if text.endswith("."):
            text = text[:-1].rstrip()
    return text or None


def _urllib_fetch(url: str, timeout_s: float) -> str:
    req = urllib.request.Request(url, headers={"User-Agent": "Mozilla/5.0 (postedit)"})
    with urllib.request.urlopen(req, timeout=timeout_s) as resp:
        charset = resp.headers.get_content_charset() or "utf-8"
        return resp.read().decode(charset, errors="replace")


class WebSuggester(Suggester):
    """Provider that queries a search engine over HTTP.

    Requests from one instance are serialized and spaced by at least
    `config.request_delay` ms between starts.  `fetch`, `clock` and `sleep`
    can be swapped for tests.
    """

    provider_id = "web"
    concurrent_safe = True

    def __init__(
        self,
        config: WebProviderConfig | None = None,
        fetch: Callable[[str, float], str] | None = None,
        clock: Callable[[], float] = time.monotonic,
        sleep: Callable[[float], None] = time.sleep,
    ):
        self.config = config or WebProviderConfig.from_env()
        self._fetch = fetch or _urllib_fetch
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._last_start: float | None = None
        self.request_starts: list[float] = []

    def _wait_turn(self):
        delay = self.config.request_delay / 1000.0
        if self._last_start is not None:
            wait = self._last_start + delay - self._clock()
            if wait > 0:
                self._sleep(wait)
        self._last_start = self._clock()
        self.request_starts.append(self._last_start)

    def suggest(self, query):
        check_query(query)
        url = build_query(self.config.endpoint_url_template, query)
        with self._lock:
            self._wait_turn()
            try:
                body = self._fetch(url, self.config.timeout / 1000.0)
            except (urllib.error.URLError, OSError, ValueError) as exc:
                raise TransportError(f"request for {query!r} failed: {exc}") from exc
        corrected = parse_suggestion(body, self.config.marker_text)
        if corrected is None or corrected == query:
            return None
        return Suggestion(query, corrected, self.provider_id)
