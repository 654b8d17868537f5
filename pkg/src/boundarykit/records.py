"""Core data types: corpus records, word segmentation, and record validation.

The boundary label of a record counts the whitespace-split words in the
human-written prefix, so every downstream computation (augmentation,
alignment, scoring) runs in the word-index coordinate system defined here.
Word spans are character ranges over the original text; text is never
copied with normalized whitespace.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field


class SegmentationMode(enum.Enum):
    """Which characters separate words.

    SPACE_ONLY: only runs of U+0020 separate words; line breaks and tabs
    are word-internal characters.  This matches the label convention of
    corpora where newline-joined word sequences count as one word.
    ALL_WHITESPACE: any Unicode whitespace separates words (str.split()
    semantics).
    """

    SPACE_ONLY = "space"
    ALL_WHITESPACE = "whitespace"

    def is_separator(self, char: str) -> bool:
        if self is SegmentationMode.SPACE_ONLY:
            return char == " "
        return char.isspace()


@dataclass(frozen=True)
class WordSpan:
    """One word as a character range; end is exclusive.

    sentences holds the indices of every sentence span the word overlaps,
    populated by reconciliation (empty until then).
    """

    start: int
    end: int
    sentences: tuple[int, ...] = ()


@dataclass(frozen=True)
class WordMap:
    """Ordered word spans over one text under one segmentation mode."""

    words: tuple[WordSpan, ...]
    mode: SegmentationMode

    @property
    def total_count(self) -> int:
        return len(self.words)

    def word_text(self, text: str, index: int) -> str:
        span = self.words[index]
        return text[span.start : span.end]


@dataclass(frozen=True)
class LabeledText:
    """One corpus record.

    label is the boundary word index: the number of whitespace-split words
    in the human-written prefix.  None marks an unlabeled (test) record.
    """

    id: str
    text: str
    label: int | None = None
    domain_tag: str | None = None
    generator_tag: str | None = None


class LabelOutOfRange(ValueError):
    """A word index fell outside [0, total_count)."""


def segment_words(text: str, mode: SegmentationMode) -> WordMap:
    """Split text into word spans at the mode's separator characters.

    Words are maximal runs of non-separator characters.  Deterministic;
    empty text yields an empty WordMap.
    """
    words: list[WordSpan] = []
    start: int | None = None
    for i, char in enumerate(text):
        if mode.is_separator(char):
            if start is not None:
                words.append(WordSpan(start, i))
                start = None
        elif start is None:
            start = i
    if start is not None:
        words.append(WordSpan(start, len(text)))
    return WordMap(words=tuple(words), mode=mode)


def word_index_at(word_map: WordMap, char: int) -> tuple[int, bool]:
    """Map a character position to a word index.

    Returns (index, clamped).  A position inside a word maps to that word;
    a position in an inter-word gap maps to the next word; a position past
    the last word clamps to the last word (clamped=True).  Raises
    LabelOutOfRange when the map is empty.
    """
    words = word_map.words
    if not words:
        raise LabelOutOfRange("cannot map a character position over an empty word map")
    lo, hi = 0, len(words)
    while lo < hi:
        mid = (lo + hi) // 2
        if words[mid].end <= char:
            lo = mid + 1
        else:
            hi = mid
    if lo == len(words):
        return len(words) - 1, True
    return lo, False


SEVERITY_ERROR = "error"
SEVERITY_WARNING = "warning"


@dataclass(frozen=True)
class Violation:
    code: str
    message: str
    severity: str


@dataclass(frozen=True)
class ValidationReport:
    record_id: str
    violations: tuple[Violation, ...] = field(default=())

    @property
    def ok(self) -> bool:
        """True when there are no error-severity violations (warnings pass)."""
        return not self.errors

    @property
    def errors(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity == SEVERITY_ERROR)

    @property
    def warnings(self) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.severity == SEVERITY_WARNING)


def validate_record(record: LabeledText, mode: SegmentationMode) -> ValidationReport:
    """Check a record against the label invariants; never mutates it.

    Degenerate endpoint labels (0 or the word count) leave either the human
    prefix or the machine suffix empty; they are warnings, not errors, so
    exploratory corpora still load.
    """
    violations: list[Violation] = []
    if not record.text:
        violations.append(
            Violation("empty_text", "text is empty", SEVERITY_ERROR)
        )
    if record.label is not None:
        count = segment_words(record.text, mode).total_count
        label = record.label
        if label < 0 or label > count:
            violations.append(
                Violation(
                    "label_out_of_range",
                    f"label {label} exceeds word count {count}"
                    if label > count
                    else f"label {label} is negative",
                    SEVERITY_ERROR,
                )
            )
        elif label == 0:
            violations.append(
                Violation(
                    "degenerate_no_human_prefix",
                    "label 0 leaves no human-written prefix",
                    SEVERITY_WARNING,
                )
            )
        elif label == count:
            violations.append(
                Violation(
                    "degenerate_no_machine_suffix",
                    f"label {label} equals the word count; no machine suffix",
                    SEVERITY_WARNING,
                )
            )
    return ValidationReport(record_id=record.id, violations=tuple(violations))
