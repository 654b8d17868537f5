from __future__ import annotations

import random

import pytest

from boundarykit import (
    AugmentConfig,
    LabeledText,
    SegmentationMode,
    WindowLacksHumanPrefix,
    WindowLacksMachineSuffix,
    WindowSpec,
    augment_record,
    generate_corpus,
    reconcile,
)
from boundarykit.augment import WindowError
from boundarykit.records import LabelOutOfRange
from helpers import oracle_words, random_labeled_text

SPACE = SegmentationMode.SPACE_ONLY
WHITESPACE = SegmentationMode.ALL_WHITESPACE

TEXT = "Alpha beta. Gamma delta epsilon. Zeta eta."


def make_rec(text=TEXT, label=3, mode=SPACE):
    return reconcile(LabeledText("src", text, label), mode)


def all_windows(rec, label, config):
    """Brute-force enumeration of every distinct valid window."""
    windows = {}
    for left in range(config.max_left + 1):
        for right in range(config.max_right + 1):
            spec = WindowSpec(left, right, config.min_human_words, config.min_machine_words)
            try:
                aug = augment_record(rec, label, spec)
            except WindowError:
                continue
            key = (aug.provenance.window_start, aug.provenance.window_end)
            windows[key] = (aug.text, aug.label)
    return windows


class TestAugmentRecord:
    def test_boundary_sentence_only(self):
        aug = augment_record(make_rec(), 3, WindowSpec(0, 0))
        assert aug.text == "Gamma delta epsilon."
        assert aug.label == 1

    def test_one_sentence_left(self):
        aug = augment_record(make_rec(), 3, WindowSpec(1, 0))
        assert aug.text == "Alpha beta. Gamma delta epsilon."
        assert aug.label == 3

    def test_window_lacking_human_prefix(self):
        with pytest.raises(WindowLacksHumanPrefix):
            augment_record(make_rec(label=2), 2, WindowSpec(0, 0))

    def test_window_lacking_machine_suffix(self):
        with pytest.raises(WindowLacksMachineSuffix):
            augment_record(make_rec(label=5), 5, WindowSpec(0, 0))

    def test_whole_text_window_is_identity(self):
        aug = augment_record(make_rec(), 3, WindowSpec(10, 10))
        assert aug.text == TEXT
        assert aug.label == 3

    def test_label_out_of_range(self):
        with pytest.raises(LabelOutOfRange):
            augment_record(make_rec(), 7, WindowSpec(0, 0))

    def test_snapping_keeps_joined_words_whole(self):
        text = "Alpha beta.\nGamma delta. Zeta eta."
        rec = make_rec(text, label=3)
        aug = augment_record(rec, 3, WindowSpec(0, 0))
        assert aug.text in text
        words = oracle_words(aug.text, SPACE)
        assert words[aug.label] == oracle_words(text, SPACE)[3]

    def test_text_is_contiguous_substring_at_provenance_span(self):
        rng = random.Random(3)
        for _ in range(50):
            record = random_labeled_text(rng, "r")
            rec = reconcile(record, SPACE)
            for (start, end), (text, _) in all_windows(
                rec, record.label, AugmentConfig()
            ).items():
                assert record.text[start:end] == text

    def test_label_monotone_and_bounded(self):
        rng = random.Random(5)
        for _ in range(50):
            record = random_labeled_text(rng, "r")
            rec = reconcile(record, SPACE)
            for _, (text, label) in all_windows(rec, record.label, AugmentConfig()).items():
                assert 1 <= label <= record.label
                assert label <= len(oracle_words(text, SPACE)) - 1

    def test_min_word_requirements(self):
        spec = WindowSpec(10, 10, min_human_words=4, min_machine_words=4)
        with pytest.raises(WindowLacksMachineSuffix):
            augment_record(make_rec(label=4), 4, spec)
        with pytest.raises(WindowLacksHumanPrefix):
            augment_record(make_rec(label=2), 2, spec)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            WindowSpec(-1, 0)
        with pytest.raises(ValueError):
            WindowSpec(0, 0, min_human_words=0)


class TestGenerateCorpus:
    def corpus(self):
        return [LabeledText("src", TEXT, 3)]

    def test_matches_brute_force_enumeration(self):
        config = AugmentConfig(per_record=10, max_left=2, max_right=2, seed=9)
        out = generate_corpus(self.corpus(), config)
        rec = make_rec()
        expected = all_windows(rec, 3, config)
        got = {
            (a.provenance.window_start, a.provenance.window_end): (a.text, a.label)
            for a in out
        }
        assert got == expected
        assert len(out) <= 9

    def test_boundary_sentence_only_config(self):
        config = AugmentConfig(per_record=1, max_left=0, max_right=0, seed=1)
        out = generate_corpus(self.corpus(), config)
        assert [a.text for a in out] == ["Gamma delta epsilon."]

    def test_empty_corpus(self):
        assert generate_corpus([], AugmentConfig()) == []

    def test_outputs_are_valid_records(self):
        rng = random.Random(17)
        corpus = [random_labeled_text(rng, f"r{i}") for i in range(30)]
        config = AugmentConfig(per_record=6, seed=2)
        for mode in (SPACE, WHITESPACE):
            for aug in generate_corpus(corpus, AugmentConfig(per_record=6, seed=2, mode=mode)):
                words = oracle_words(aug.text, mode)
                assert 1 <= aug.label <= len(words) - 1
        assert config.mode is SPACE

    def test_deterministic_for_fixed_seed(self):
        rng = random.Random(19)
        corpus = [random_labeled_text(rng, f"r{i}") for i in range(20)]
        config = AugmentConfig(per_record=5, seed=42)
        assert generate_corpus(corpus, config) == generate_corpus(corpus, config)

    def test_seed_changes_output(self):
        rng = random.Random(29)
        corpus = [random_labeled_text(rng, f"r{i}", max_sentences=8) for i in range(20)]
        first = generate_corpus(corpus, AugmentConfig(per_record=2, seed=1))
        second = generate_corpus(corpus, AugmentConfig(per_record=2, seed=2))
        assert first != second

    def test_workers_do_not_change_output(self):
        rng = random.Random(37)
        corpus = [random_labeled_text(rng, f"r{i}") for i in range(12)]
        config = AugmentConfig(per_record=4, seed=7)
        assert generate_corpus(corpus, config, workers=1) == generate_corpus(
            corpus, config, workers=2
        )

    def test_skips_records_without_valid_windows(self, caplog):
        corpus = [LabeledText("tiny", "one two.", 0)]
        out = generate_corpus(corpus, AugmentConfig(per_record=2, seed=0))
        assert out == []

    def test_skips_invalid_and_unlabeled_records(self):
        corpus = [
            LabeledText("bad", "a b.", 9),
            LabeledText("unlabeled", "a b.", None),
            LabeledText("good", "Alpha beta. Gamma delta.", 2),
        ]
        out = generate_corpus(corpus, AugmentConfig(per_record=2, seed=0))
        assert out and all(a.provenance.source_id == "good" for a in out)

    def test_round_trip_property_with_random_whitespace(self):
        rng = random.Random(41)
        for _ in range(60):
            record = random_labeled_text(rng, "r")
            for mode in (SPACE, WHITESPACE):
                rec = reconcile(record, mode)
                src_words = oracle_words(record.text, mode)
                for _, (text, label) in all_windows(
                    rec, record.label, AugmentConfig(max_left=3, max_right=3)
                ).items():
                    assert oracle_words(text, mode)[label] == src_words[record.label]
