"""Mapping between word-level boundary labels and subtoken positions.

Tokenizations arrive as character spans (from a sidecar file produced by
any external tokenizer, or from the built-in class-transition fallback);
this module never implements subword vocabularies itself.
"""

from __future__ import annotations

import logging
from bisect import bisect_right
from dataclasses import dataclass

from .records import SegmentationMode, WordMap, segment_words, word_index_at

logger = logging.getLogger(__name__)

SIDECAR = "sidecar"
FALLBACK = "fallback"


class NoCoveringSubtoken(ValueError):
    """The tokenization ends before the requested character position."""


@dataclass(frozen=True)
class Tokenization:
    """Ordered, non-overlapping subtoken character spans over one text."""

    spans: tuple[tuple[int, int], ...]
    record_ref: str | None = None
    source: str = SIDECAR


def word_label_to_boundary_subtoken(
    word_map: WordMap, label: int, tok: Tokenization
) -> int:
    """Index of the boundary word's first subtoken.

    Prefers a span starting exactly at the word's start character; falls
    back to the span containing it (some tokenizers absorb preceding
    whitespace into a token).
    """
    if label < 0 or label >= word_map.total_count:
        raise IndexError(f"label {label} out of range for {word_map.total_count} words")
    target = word_map.words[label].start
    starts = [s for s, _ in tok.spans]
    i = bisect_right(starts, target) - 1
    if i >= 0 and starts[i] == target:
        while i > 0 and starts[i - 1] == target:
            i -= 1
        return i
    if i >= 0 and tok.spans[i][1] > target:
        return i
    raise NoCoveringSubtoken(
        f"no subtoken covers character {target} (boundary of word {label})"
    )


def subtoken_to_word_label(word_map: WordMap, tok: Tokenization, index: int) -> int:
    """Word index for a subtoken: the word containing the subtoken's start
    character, or the next word when the start lies in an inter-word gap.

    A subtoken past the last word clamps to the last word with a warning,
    since truncated tokenizations are expected for long texts.
    """
    if index < 0 or index >= len(tok.spans):
        raise IndexError(f"subtoken index {index} out of range for {len(tok.spans)} spans")
    start = tok.spans[index][0]
    word, clamped = word_index_at(word_map, start)
    if clamped:
        logger.warning(
            "subtoken %d starts past the last word; clamping to word %d", index, word
        )
    return word


def fallback_tokenize(text: str, mode: SegmentationMode) -> Tokenization:
    """Split each word into spans at letter/digit/other class transitions.

    A deterministic stand-in when no sidecar tokenization is supplied; the
    spans of one word tile it exactly.
    """

    def char_class(c: str) -> str:
        if c.isalpha():
            return "alpha"
        if c.isdigit():
            return "digit"
        return "other"

    spans: list[tuple[int, int]] = []
    for word in segment_words(text, mode).words:
        piece_start = word.start
        prev = char_class(text[word.start])
        for i in range(word.start + 1, word.end):
            cls = char_class(text[i])
            if cls != prev:
                spans.append((piece_start, i))
                piece_start = i
                prev = cls
        spans.append((piece_start, word.end))
    return Tokenization(spans=tuple(spans), source=FALLBACK)
