from __future__ import annotations

import random

import pytest
from hypothesis import given, strategies as st

from boundarykit import (
    LabeledText,
    SegmentationMode,
    locate_boundary_sentence,
    reconcile,
    split_sentences,
)
from boundarykit.records import LabelOutOfRange
from boundarykit.sentences import (
    DiscrepancyKind,
    per_sentence_word_counts,
)
from helpers import oracle_words, random_text

SPACE = SegmentationMode.SPACE_ONLY
WHITESPACE = SegmentationMode.ALL_WHITESPACE


def sentence_texts(text):
    return [text[s.start : s.end] for s in split_sentences(text)]


class TestSplitSentences:
    def test_three_terminated_sentences(self):
        assert sentence_texts("Alpha beta. Gamma delta! Eps?") == [
            "Alpha beta.",
            "Gamma delta!",
            "Eps?",
        ]

    def test_terminator_without_following_whitespace_does_not_split(self):
        assert sentence_texts("Hi.There") == ["Hi.There"]

    def test_maximal_punctuation_run(self):
        assert sentence_texts("Wait... ok.") == ["Wait...", "ok."]

    def test_abbreviations_are_not_special_cased(self):
        assert sentence_texts("Dr. Smith came.") == ["Dr.", "Smith came."]

    def test_final_unterminated_fragment(self):
        assert sentence_texts("One done. still going") == ["One done.", "still going"]

    def test_trailing_whitespace_belongs_to_gap(self):
        assert sentence_texts("ok \t ") == ["ok"]

    def test_ellipsis_character_terminates_by_default(self):
        assert sentence_texts("Wait… ok.") == ["Wait…", "ok."]

    def test_custom_terminator_set(self):
        spans = split_sentences("Wait… ok.", terminators=".!?")
        assert [s.start for s in spans] == [0]

    def test_empty_text(self):
        assert split_sentences("") == ()

    def test_whitespace_only_text(self):
        assert split_sentences(" \n\t") == ()

    def test_mixed_terminator_run(self):
        assert sentence_texts("Really?! Yes.") == ["Really?!", "Yes."]

    @given(st.text(max_size=300))
    def test_coverage_and_order(self, text):
        spans = split_sentences(text)
        previous_end = -1
        for span in spans:
            assert span.start > previous_end
            assert span.end > span.start
            previous_end = span.end
        inside = set()
        for span in spans:
            inside.update(range(span.start, span.end))
        for i, char in enumerate(text):
            if i not in inside:
                assert char.isspace()

    @given(st.text(max_size=200))
    def test_deterministic(self, text):
        assert split_sentences(text) == split_sentences(text)


class TestReconcile:
    def test_newline_joined_word_covers_two_sentences(self):
        text = "Alpha beta.\nGamma."
        rec = reconcile(LabeledText("r", text, 1), SPACE)
        assert len(rec.sentences) == 2
        words = [text[w.start : w.end] for w in rec.word_map.words]
        assert words == oracle_words(text, SPACE) == ["Alpha", "beta.\nGamma."]
        assert rec.word_map.words[1].sentences == (0, 1)
        assert [d.kind for d in rec.discrepancies] == [
            DiscrepancyKind.NEWLINE_JOINED_SEQUENCE
        ]
        assert (rec.discrepancies[0].start, rec.discrepancies[0].end) == (6, 18)

    def test_space_separated_sentences_have_no_discrepancies(self):
        text = "Alpha beta. Gamma."
        rec = reconcile(LabeledText("r", text, 1), SPACE)
        assert len(rec.sentences) == 2
        assert rec.word_map.total_count == len(oracle_words(text, SPACE)) == 3
        assert rec.discrepancies == ()

    def test_empty_text(self):
        rec = reconcile(LabeledText("r", "", None), SPACE)
        assert rec.sentences == ()
        assert rec.word_map.total_count == 0
        assert rec.discrepancies == ()

    def test_word_map_matches_whole_text_segmentation(self):
        rng = random.Random(11)
        for _ in range(60):
            text = random_text(rng)
            for mode in (SPACE, WHITESPACE):
                rec = reconcile(LabeledText("r", text, None), mode)
                assert [
                    text[w.start : w.end] for w in rec.word_map.words
                ] == oracle_words(text, mode)

    def test_idempotent_and_deterministic(self):
        text = "Alpha beta.\nGamma. Delta eps."
        record = LabeledText("r", text, 1)
        first = reconcile(record, SPACE)
        again = reconcile(record, SPACE)
        assert first == again
        rebuilt = reconcile(LabeledText("r", first.text, 1), SPACE)
        assert rebuilt.sentences == first.sentences
        assert rebuilt.word_map == first.word_map
        assert rebuilt.discrepancies == first.discrepancies

    def test_per_sentence_attribution_sums_to_total(self):
        rng = random.Random(23)
        for _ in range(80):
            text = random_text(rng)
            if not text.strip():
                continue
            for mode in (SPACE, WHITESPACE):
                rec = reconcile(LabeledText("r", text, None), mode)
                counts = per_sentence_word_counts(rec)
                assert sum(counts.values()) == rec.word_map.total_count

    def test_multi_sentence_words_are_flagged(self):
        text = "One two.\nthree four. Five six.\nseven."
        rec = reconcile(LabeledText("r", text, 1), SPACE)
        flagged = {(d.start, d.end) for d in rec.discrepancies}
        for word in rec.word_map.words:
            if len(word.sentences) > 1:
                assert (word.start, word.end) in flagged

    def test_words_never_split(self):
        rng = random.Random(31)
        for _ in range(40):
            text = random_text(rng)
            rec = reconcile(LabeledText("r", text, None), SPACE)
            whole = {(w.start, w.end) for w in rec.word_map.words}
            from boundarykit import segment_words

            assert {(w.start, w.end) for w in segment_words(text, SPACE).words} == whole


class TestLocateBoundarySentence:
    TEXT = "Alpha beta. Gamma delta epsilon. Zeta eta."

    def rec(self, label=3):
        return reconcile(LabeledText("r", self.TEXT, label), SPACE)

    def test_boundary_in_middle_sentence(self):
        assert locate_boundary_sentence(self.rec(), 3) == 1

    def test_first_word(self):
        assert locate_boundary_sentence(self.rec(), 0) == 0

    def test_out_of_range(self):
        with pytest.raises(LabelOutOfRange):
            locate_boundary_sentence(self.rec(), 7)

    def test_word_joined_across_sentences_attributes_to_start(self):
        text = "Alpha beta.\nGamma. Delta."
        rec = reconcile(LabeledText("r", text, 1), SPACE)
        assert locate_boundary_sentence(rec, 1) == 0

    def test_word_starting_in_gap_attributes_to_next_sentence(self):
        text = "a. \nb c."
        rec = reconcile(LabeledText("r", text, 1), SPACE)
        words = [text[w.start : w.end] for w in rec.word_map.words]
        assert words == ["a.", "\nb", "c."]
        assert locate_boundary_sentence(rec, 1) == 1
