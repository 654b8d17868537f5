"""Heuristic detectors for generation artifacts: repetition loops, triple
double-quote markers, list loops with a shared line prefix, and JSON-shaped
hallucination blocks.

Detectors report character spans, not whole-text classifications, so an
anomaly position can seed a boundary guess.  Thresholds default to values
that catch the known artifact shapes while leaving plain prose untouched;
all are configurable.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .records import SegmentationMode, segment_words


class AnomalyKind(enum.Enum):
    REPETITION = "repetition"
    TRIPLE_QUOTE = "triple_quote"
    LIST_LOOP = "list_loop"
    JSON_BLOB = "json_blob"


@dataclass(frozen=True)
class AnomalySpan:
    kind: AnomalyKind
    start: int
    end: int
    score: float


@dataclass(frozen=True)
class AnomalyConfig:
    # Repetition: an exact word n-gram (case-folded) repeating at least
    # ngram_repeats times within a window of ngram_window words.  Bigrams
    # are included because looping generations often cycle a two-word stem
    # with a varying tail.
    ngram_sizes: tuple[int, ...] = (2, 3)
    ngram_repeats: int = 4
    ngram_window: int = 100
    # List loop: consecutive lines sharing their first list_prefix_words
    # words.
    list_min_lines: int = 4
    list_prefix_words: int = 2
    # JSON blob: a cluster of lines starting with a quote, colon, or brace.
    json_min_lines: int = 2
    json_density: float = 0.5
    json_max_gap: int = 1


_TRIPLE_QUOTE_RE = re.compile('"{3,}')
_JSON_LINE_STARTS = frozenset('":{}')


def _merge_spans(spans: list[tuple[int, int, float]]) -> list[tuple[int, int, float]]:
    """Merge overlapping or touching (start, end, score) spans, keeping the
    maximum score of each merged group."""
    merged: list[tuple[int, int, float]] = []
    for start, end, score in sorted(spans):
        if merged and start <= merged[-1][1]:
            last_start, last_end, last_score = merged[-1]
            merged[-1] = (last_start, max(last_end, end), max(last_score, score))
        else:
            merged.append((start, end, score))
    return merged


def _detect_triple_quotes(text: str) -> list[AnomalySpan]:
    return [
        AnomalySpan(AnomalyKind.TRIPLE_QUOTE, m.start(), m.end(), 1.0)
        for m in _TRIPLE_QUOTE_RE.finditer(text)
    ]


def _detect_repetition(text: str, config: AnomalyConfig) -> list[AnomalySpan]:
    words = segment_words(text, SegmentationMode.ALL_WHITESPACE).words
    tokens = [text[w.start : w.end].casefold() for w in words]
    raw: list[tuple[int, int, float]] = []
    for n in config.ngram_sizes:
        if len(tokens) < n:
            continue
        positions: dict[tuple[str, ...], list[int]] = {}
        for i in range(len(tokens) - n + 1):
            positions.setdefault(tuple(tokens[i : i + n]), []).append(i)
        for pos in positions.values():
            if len(pos) < config.ngram_repeats:
                continue
            hi = 0
            for lo in range(len(pos)):
                hi = max(hi, lo)
                while (
                    hi + 1 < len(pos)
                    and pos[hi + 1] + n - pos[lo] <= config.ngram_window
                ):
                    hi += 1
                count = hi - lo + 1
                if count >= config.ngram_repeats:
                    start = words[pos[lo]].start
                    end = words[pos[hi] + n - 1].end
                    raw.append((start, end, min(1.0, count / (2 * config.ngram_repeats))))
    return [
        AnomalySpan(AnomalyKind.REPETITION, start, end, score)
        for start, end, score in _merge_spans(raw)
    ]


def _line_spans(text: str) -> list[tuple[int, int]]:
    spans = []
    start = 0
    for line in text.split("\n"):
        spans.append((start, start + len(line)))
        start += len(line) + 1
    return spans


def _detect_list_loops(text: str, config: AnomalyConfig) -> list[AnomalySpan]:
    lines = _line_spans(text)
    keys: list[tuple[str, ...] | None] = []
    for start, end in lines:
        parts = text[start:end].split()
        keys.append(
            tuple(parts[: config.list_prefix_words])
            if len(parts) >= config.list_prefix_words
            else None
        )
    out: list[AnomalySpan] = []
    i = 0
    while i < len(keys):
        if keys[i] is None:
            i += 1
            continue
        j = i
        while j + 1 < len(keys) and keys[j + 1] == keys[i]:
            j += 1
        run = j - i + 1
        if run >= config.list_min_lines:
            out.append(
                AnomalySpan(
                    AnomalyKind.LIST_LOOP,
                    lines[i][0],
                    lines[j][1],
                    min(1.0, run / (2 * config.list_min_lines)),
                )
            )
        i = j + 1
    return out


def _detect_json_blobs(text: str, config: AnomalyConfig) -> list[AnomalySpan]:
    lines = _line_spans(text)
    jsonish = []
    for index, (start, end) in enumerate(lines):
        stripped = text[start:end].lstrip()
        if stripped and stripped[0] in _JSON_LINE_STARTS:
            jsonish.append(index)
    out: list[AnomalySpan] = []
    cluster: list[int] = []
    for index in jsonish + [len(lines) + config.json_max_gap + 1]:
        if cluster and index - cluster[-1] > config.json_max_gap + 1:
            first, last = cluster[0], cluster[-1]
            density = len(cluster) / (last - first + 1)
            if len(cluster) >= config.json_min_lines and density >= config.json_density:
                out.append(
                    AnomalySpan(
                        AnomalyKind.JSON_BLOB, lines[first][0], lines[last][1], density
                    )
                )
            cluster = []
        cluster.append(index)
    return out


def detect_anomalies(text: str, config: AnomalyConfig = AnomalyConfig()) -> list[AnomalySpan]:
    """All anomaly spans in a text, sorted by start position."""
    spans = (
        _detect_repetition(text, config)
        + _detect_triple_quotes(text)
        + _detect_list_loops(text, config)
        + _detect_json_blobs(text, config)
    )
    spans.sort(key=lambda s: (s.start, s.end, s.kind.value))
    return spans
