"""Punctuation-based sentence splitting over character spans, plus
reconciliation of per-sentence word attribution against the whole-text
word map.

Sentences are character ranges; the text is never re-joined from pieces,
so reconciliation can only annotate, never lose whitespace.  The one real
mismatch between sentence-level and text-level splits is a word sequence
joined across a sentence break by non-space whitespace (a newline after a
terminator); such words are flagged as discrepancies.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .records import (
    LabeledText,
    LabelOutOfRange,
    SegmentationMode,
    WordMap,
    WordSpan,
    segment_words,
)

# Sentence terminators; the ellipsis is included by default but callers can
# override the set.
DEFAULT_TERMINATORS = ".!?…"


@dataclass(frozen=True)
class SentenceSpan:
    """One sentence as a character range; terminator punctuation included,
    inter-sentence whitespace excluded."""

    index: int
    start: int
    end: int


class DiscrepancyKind(enum.Enum):
    LOST_WHITESPACE = "lost_whitespace"
    NEWLINE_JOINED_SEQUENCE = "newline_joined_sequence"


@dataclass(frozen=True)
class Discrepancy:
    kind: DiscrepancyKind
    start: int
    end: int


@dataclass(frozen=True)
class ReconciledText:
    """A record with sentence spans, a sentence-annotated word map, and the
    discrepancies between per-sentence and whole-text word splits."""

    record_ref: str
    text: str
    mode: SegmentationMode
    sentences: tuple[SentenceSpan, ...]
    word_map: WordMap
    discrepancies: tuple[Discrepancy, ...]


def split_sentences(text: str, terminators: str = DEFAULT_TERMINATORS) -> tuple[SentenceSpan, ...]:
    """Split text into sentence spans.

    A sentence ends after a maximal run of terminator punctuation that is
    followed by whitespace or end of text.  A final unterminated fragment
    is its own sentence.  Inter-sentence whitespace belongs to the gaps
    between spans.  Abbreviations are deliberately not special-cased.
    """
    spans: list[SentenceSpan] = []
    n = len(text)
    i = 0
    while i < n:
        while i < n and text[i].isspace():
            i += 1
        if i == n:
            break
        start = i
        end = None
        while i < n:
            if text[i] in terminators:
                run_end = i + 1
                while run_end < n and text[run_end] in terminators:
                    run_end += 1
                if run_end == n or text[run_end].isspace():
                    end = run_end
                    i = run_end
                    break
                i = run_end
            else:
                i += 1
        if end is None:
            # Unterminated fragment: trim trailing whitespace into the gap.
            end = n
            while end > start and text[end - 1].isspace():
                end -= 1
        spans.append(SentenceSpan(index=len(spans), start=start, end=end))
    return tuple(spans)


def _covered_sentences(word: WordSpan, sentences: tuple[SentenceSpan, ...]) -> tuple[int, ...]:
    covered = [
        s.index for s in sentences if s.start < word.end and word.start < s.end
    ]
    return tuple(covered)


def home_sentence_index(
    word: WordSpan, sentences: tuple[SentenceSpan, ...]
) -> int | None:
    """The sentence a word is attributed to.

    Normally the sentence containing the word's start character.  A word
    starting inside an inter-sentence gap (possible in SPACE_ONLY mode,
    where a word may begin with a newline) is attributed to the next
    sentence, or the last one if none follows.  None only for texts with
    no sentences at all.
    """
    if not sentences:
        return None
    if word.sentences:
        return word.sentences[0]
    for s in sentences:
        if s.start >= word.start:
            return s.index
    return sentences[-1].index


def reconcile(
    record: LabeledText,
    mode: SegmentationMode,
    terminators: str = DEFAULT_TERMINATORS,
) -> ReconciledText:
    """Annotate each word with the sentences it covers and flag words that
    span more than one sentence.

    The word map is identical in count and spans to segment_words on the
    full text; reconciliation only adds sentence coverage.  Lost whitespace
    cannot occur because sentences are spans of the original text, so the
    only discrepancy produced is NEWLINE_JOINED_SEQUENCE.  Idempotent.
    """
    sentences = split_sentences(record.text, terminators)
    plain = segment_words(record.text, mode)
    annotated: list[WordSpan] = []
    discrepancies: list[Discrepancy] = []
    for word in plain.words:
        covered = _covered_sentences(word, sentences)
        annotated.append(WordSpan(word.start, word.end, covered))
        if len(covered) > 1:
            discrepancies.append(
                Discrepancy(DiscrepancyKind.NEWLINE_JOINED_SEQUENCE, word.start, word.end)
            )
    return ReconciledText(
        record_ref=record.id,
        text=record.text,
        mode=mode,
        sentences=sentences,
        word_map=WordMap(words=tuple(annotated), mode=mode),
        discrepancies=tuple(discrepancies),
    )


def locate_boundary_sentence(rec: ReconciledText, label: int) -> int:
    """Index of the sentence containing the start of word[label].

    Words starting in an inter-sentence gap attribute to the next sentence.
    """
    if label < 0 or label >= rec.word_map.total_count:
        raise LabelOutOfRange(
            f"label {label} out of range for {rec.word_map.total_count} words"
        )
    word = rec.word_map.words[label]
    home = home_sentence_index(word, rec.sentences)
    if home is None:
        raise LabelOutOfRange(
            f"record {rec.record_ref!r} has no sentences to locate the boundary in"
        )
    return home


def per_sentence_word_counts(rec: ReconciledText) -> dict[int, int]:
    """Words attributed to each sentence (by home sentence).

    Summing the counts recovers the whole-text word count whenever the text
    has at least one sentence; this is the structural form of the check that
    per-sentence word lists agree with the whole-text split.
    """
    counts: dict[int, int] = {s.index: 0 for s in rec.sentences}
    for word in rec.word_map.words:
        home = home_sentence_index(word, rec.sentences)
        if home is not None:
            counts[home] += 1
    return counts
