"""Error counting, error rate, improvement ratio and before/after report tables.

Two rounding modes.  ``full`` keeps exact ratios.  ``paper`` truncates error
rates to 3 decimals and improvement ratios to 2 decimals, which is how the
published figures were derived (23/161 -> 0.142, 0.142/0.031 -> 4.58).
Truncation is done in exact decimal arithmetic so no value is nudged across a
digit boundary by binary floating point.
"""

from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass
from decimal import Decimal
from fractions import Fraction
from pathlib import Path
from typing import Sequence

PAPER = "paper"
FULL = "full"
MODES = (PAPER, FULL)


class Outcome(enum.Enum):
    ALL_CORRECTED = "all errors corrected"

    def __str__(self):
        return self.value


ALL_CORRECTED = Outcome.ALL_CORRECTED


@dataclass(frozen=True)
class ErrorWord:
    word_index: int
    surface_form: str
    reference: str | None = None


@dataclass(frozen=True)
class ErrorAnnotation:
    transcript_id: str
    total_words: int
    error_words: tuple[ErrorWord, ...]

    def __post_init__(self):
        idx = [e.word_index for e in self.error_words]
        if any(i < 0 for i in idx) or any(a >= b for a, b in zip(idx, idx[1:])):
            raise ValueError(f"{self.transcript_id}: word indices must be >= 0 and strictly increasing")
        if self.total_words <= 0:
            raise ValueError(f"{self.transcript_id}: total_words must be positive")

    def check_against(self, words: Sequence[str]):
        """Raise if an annotated index or surface form does not match `words`."""
        for e in self.error_words:
            if e.word_index >= len(words) or words[e.word_index] != e.surface_form:
                raise ValueError(
                    f"{self.transcript_id}: word {e.word_index} is not {e.surface_form!r}"
                )

    @classmethod
    def from_dict(cls, data: dict) -> "ErrorAnnotation":
        errors = tuple(
            ErrorWord(e["word_index"], e["surface_form"], e.get("reference"))
            for e in data["error_words"]
        )
        return cls(data["transcript_id"], int(data["total_words"]), errors)

    @classmethod
    def load(cls, path) -> "ErrorAnnotation":
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def count_errors_annotated(annotation: ErrorAnnotation) -> int:
    return len(annotation.error_words)


SUB, INS, DEL, MATCH = "sub", "ins", "del", "match"


def align(hyp: Sequence[str], ref: Sequence[str]) -> list[tuple[str, int | None, int | None]]:
    """Minimal word-level edit alignment of `hyp` onto `ref`.

    Returns ``(op, hyp_index, ref_index)`` triples in order.  On equal cost the
    backtrace prefers match/substitution, then deletion, then insertion.
    """
    n, m = len(hyp), len(ref)
    d = [[0] * (m + 1) for _ in range(n + 1)]
    for i in range(n + 1):
        d[i][0] = i
    for j in range(m + 1):
        d[0][j] = j
    for i in range(1, n + 1):
        row, prev = d[i], d[i - 1]
        h = hyp[i - 1]
        for j in range(1, m + 1):
            row[j] = min(prev[j - 1] + (h != ref[j - 1]), prev[j] + 1, row[j - 1] + 1)

    ops = []
    i, j = n, m
    while i or j:
        if i and j and d[i][j] == d[i - 1][j - 1] + (hyp[i - 1] != ref[j - 1]):
            ops.append((MATCH if hyp[i - 1] == ref[j - 1] else SUB, i - 1, j - 1))
            i, j = i - 1, j - 1
        elif i and d[i][j] == d[i - 1][j] + 1:
            ops.append((DEL, i - 1, None))
            i -= 1
        else:
            ops.append((INS, None, j - 1))
            j -= 1
    ops.reverse()
    return ops


def count_errors_aligned(hypothesis: str | Sequence[str], reference: str | Sequence[str]) -> int:
    """Substitutions + insertions + deletions between two word sequences (case-sensitive)."""
    hyp = hypothesis.split() if isinstance(hypothesis, str) else list(hypothesis)
    ref = reference.split() if isinstance(reference, str) else list(reference)
    return sum(op != MATCH for op, _, _ in align(hyp, ref))


def _exact(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(Decimal(repr(x)))
    return Fraction(x)


def _truncate(x: Fraction, places: int) -> float:
    scale = 10**places
    return math.floor(x * scale) / scale


def _check_mode(mode):
    if mode not in MODES:
        raise ValueError(f"rounding mode must be one of {MODES}, got {mode!r}")


def error_rate(errors: int, total_words: int, mode: str = FULL) -> float:
    _check_mode(mode)
    if total_words <= 0:
        raise ValueError("total_words must be positive")
    if errors < 0:
        raise ValueError("errors must be >= 0")
    ratio = Fraction(errors, total_words)
    return _truncate(ratio, 3) if mode == PAPER else float(ratio)


def improvement(e_before: float, e_after: float, mode: str = FULL) -> float | Outcome:
    """Improvement ratio E_before / E_after, or ALL_CORRECTED when E_after is 0."""
    _check_mode(mode)
    if e_after < 0 or e_before < 0:
        raise ValueError("error rates must be >= 0")
    if e_after == 0:
        return ALL_CORRECTED
    ratio = _exact(e_before) / _exact(e_after)
    return _truncate(ratio, 2) if mode == PAPER else float(ratio)


@dataclass(frozen=True)
class ErrorReport:
    label: str
    total_words: int
    errors_before: int
    errors_after: int
    E_before: float
    E_after: float
    improvement_I: float | Outcome
    rounding_mode: str = PAPER

    @classmethod
    def from_counts(cls, label, total_words, errors_before, errors_after, mode=PAPER):
        e_b = error_rate(errors_before, total_words, mode)
        e_a = error_rate(errors_after, total_words, mode)
        return cls(label, total_words, errors_before, errors_after, e_b, e_a, improvement(e_b, e_a, mode), mode)


def format_rate(e: float, mode: str = PAPER) -> str:
    pct = _exact(e) * 100
    if mode == PAPER:
        return f"{Decimal(pct.numerator) / Decimal(pct.denominator):.1f}%"
    return f"{float(pct):.4f}%"


def format_ratio(i: float | Outcome, mode: str = PAPER) -> str:
    if isinstance(i, Outcome):
        return str(i)
    return f"{i:.2f}" if mode == PAPER else f"{i:.4f}"


def format_percent(i: float | Outcome) -> str:
    """Ratio as a whole percentage, truncated (4.975 -> 497%)."""
    if isinstance(i, Outcome):
        return str(i)
    return f"{math.floor(_exact(i) * 100)}%"


@dataclass(frozen=True)
class ReportTable:
    rows: tuple[ErrorReport, ...]
    average_improvement: float | Outcome | None

    def cells(self) -> list[list[str]]:
        header = [""] + [f"{r.label} (total words = {r.total_words})" for r in self.rows]
        lines = [
            ("Number of errors before post-editing", lambda r: str(r.errors_before)),
            ("Number of errors after post-editing", lambda r: str(r.errors_after)),
            ("Error rate before post-editing", lambda r: format_rate(r.E_before, r.rounding_mode)),
            ("Error rate after post-editing", lambda r: format_rate(r.E_after, r.rounding_mode)),
            (
                "Improvement ratio",
                lambda r: f"{format_ratio(r.improvement_I, r.rounding_mode)} ({format_percent(r.improvement_I)})"
                if not isinstance(r.improvement_I, Outcome) else str(r.improvement_I),
            ),
        ]
        return [header] + [[name] + [f(r) for r in self.rows] for name, f in lines]

    def footer(self) -> str:
        if self.average_improvement is None:
            return ""
        avg = self.average_improvement
        if isinstance(avg, Outcome):
            return f"Average improvement: {avg}"
        return f"Average improvement: {avg:g} ({format_percent(avg)})"

    def to_text(self) -> str:
        cells = self.cells()
        widths = [max(len(row[c]) for row in cells) for c in range(len(cells[0]))]
        out = ["  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in cells]
        if self.footer():
            out.append(self.footer())
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerows(self.cells())
        if self.average_improvement is not None:
            avg = self.average_improvement
            writer.writerow(["Average improvement", str(avg) if isinstance(avg, Outcome) else f"{avg:g}", format_percent(avg)])
        return buf.getvalue()


def build_report(fixture_set: Sequence[tuple[str, int, int, int]], mode: str = PAPER) -> ReportTable:
    """Table of before/after results plus the mean improvement.

    `fixture_set` holds ``(label, total_words, errors_before, errors_after)``
    tuples.  The mean is the plain arithmetic mean of the per-row ratios as
    reported (4.58 and 5.37 average to 4.975).  It is undefined when any row
    has all errors corrected.
    """
    rows = tuple(ErrorReport.from_counts(label, t, b, a, mode) for label, t, b, a in fixture_set)
    average = None
    if rows:
        ratios = [r.improvement_I for r in rows]
        if any(isinstance(i, Outcome) for i in ratios):
            average = ALL_CORRECTED if all(isinstance(i, Outcome) for i in ratios) else None
        else:
            average = float(sum(_exact(i) for i in ratios) / len(ratios))
    return ReportTable(rows, average)
