"""The post-editing pass: one provider query per token window.

Every window is queried exactly once.  A window that draws a suggestion is
replaced wholesale by it; other windows are kept.  Replacements are never
re-queried and later windows are not re-cut, so n windows cost exactly n
provider calls.
"""

from __future__ import annotations

import json
import threading
from dataclasses import asdict, dataclass
from typing import Iterable, Optional, Sequence

from postedit.suggest import ProviderError, Suggester
from postedit.transcript import TokenWindow, concatenate, tokenize

KEPT = "kept"
REPLACED = "replaced"
ERRORED = "errored"


@dataclass(frozen=True)
class PipelineConfig:
    window_W: int = 6
    workers_p: int = 1
    strict_provider_errors: bool = True

    def __post_init__(self):
        if self.window_W < 1:
            raise ValueError("window_W must be >= 1")
        if self.workers_p < 1:
            raise ValueError("workers_p must be >= 1")


@dataclass(frozen=True)
class CorrectionRecord:
    token_index: int
    original_text: str
    replacement_text: Optional[str]
    action: str

    def __post_init__(self):
        if self.action == REPLACED:
            if not self.replacement_text or self.replacement_text == self.original_text:
                raise ValueError("a replaced record needs a differing replacement")
        elif self.action not in (KEPT, ERRORED):
            raise ValueError(f"unknown action {self.action!r}")

    @property
    def output_text(self) -> str:
        return self.replacement_text if self.action == REPLACED else self.original_text

    def to_json(self) -> str:
        return json.dumps(asdict(self), ensure_ascii=False)

    @classmethod
    def from_json(cls, line: str) -> "CorrectionRecord":
        return cls(**json.loads(line))


class PipelineError(RuntimeError):
    """A provider failed in strict mode.

    `records` holds the audit trail for every token before `token_index`.
    """

    def __init__(self, token_index: int, records: list[CorrectionRecord], cause: BaseException):
        super().__init__(f"provider failed at token {token_index}: {cause}")
        self.token_index = token_index
        self.records = records
        self.cause = cause


def _correct_window(window: TokenWindow, provider: Suggester, strict: bool) -> CorrectionRecord:
    try:
        s = provider.suggest(window.text)
    except ProviderError:
        if strict:
            raise
        return CorrectionRecord(window.index, window.text, None, ERRORED)
    if s is not None:
        replacement = " ".join(s.corrected.split())
        if replacement and replacement != window.text:
            return CorrectionRecord(window.index, window.text, replacement, REPLACED)
    return CorrectionRecord(window.index, window.text, None, KEPT)


def _finish(records: Sequence[CorrectionRecord]) -> tuple[str, list[CorrectionRecord]]:
    return concatenate(r.output_text for r in records), list(records)


def post_edit(text: str, provider: Suggester, config: PipelineConfig | None = None):
    """Correct `text` window by window.

    Returns ``(corrected_text, records)``.  In strict mode a provider error
    raises `PipelineError` carrying the records made so far; in lenient mode
    the window is kept and its record marked errored.
    """
    config = config or PipelineConfig()
    if config.workers_p > 1:
        return post_edit_parallel(text, provider, config)
    records = []
    for window in tokenize(text, config.window_W):
        try:
            records.append(_correct_window(window, provider, config.strict_provider_errors))
        except ProviderError as exc:
            raise PipelineError(window.index, records, exc) from exc
    return _finish(records)


def schedule(n_tokens: int, workers: int) -> list[range]:
    """Split token indices into `workers` contiguous blocks of near-equal size.

    Block sizes differ by at most one; empty blocks are dropped.
    """
    base, extra = divmod(n_tokens, workers)
    blocks, start = [], 0
    for k in range(workers):
        size = base + (1 if k < extra else 0)
        if size:
            blocks.append(range(start, start + size))
        start += size
    return blocks


def post_edit_parallel(text: str, provider: Suggester, config: PipelineConfig):
    """Parallel variant of `post_edit` with identical output.

    Windows are split into `workers_p` contiguous blocks, each worked by its
    own thread.  Results are merged by token index.  If several tokens fail in
    strict mode, the lowest token index is reported, as the sequential pass
    would.
    """
    if not provider.concurrent_safe:
        raise ValueError(f"provider {provider.provider_id!r} is not safe for concurrent use")
    windows = tokenize(text, config.window_W)
    results: list[Optional[CorrectionRecord]] = [None] * len(windows)
    failures: dict[int, BaseException] = {}
    strict = config.strict_provider_errors

    def work(block: range):
        for i in block:
            try:
                results[i] = _correct_window(windows[i], provider, strict)
            except ProviderError as exc:
                failures[i] = exc
                return
            except BaseException as exc:  # surfaced after join
                failures[i] = exc
                return

    threads = [
        threading.Thread(target=work, args=(block,), name=f"postedit-worker-{k}")
        for k, block in enumerate(schedule(len(windows), config.workers_p))
    ]
    for t in threads:
        t.start()
    for t in threads:
        t.join()

    if failures:
        first = min(failures)
        exc = failures[first]
        if not isinstance(exc, ProviderError):
            raise exc
        raise PipelineError(first, list(results[:first]), exc) from exc
    return _finish(results)


def write_audit(records: Iterable[CorrectionRecord], path):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for r in records:
            fh.write(r.to_json() + "\n")


def read_audit(path) -> list[CorrectionRecord]:
    with open(path, encoding="utf-8") as fh:
        return [CorrectionRecord.from_json(line) for line in fh if line.strip()]
