"""Label-correct augmentation: sample contiguous sentence windows around the
boundary sentence and recompute the boundary word index for each window.

Windows are contiguous character spans of the source text (original
inter-sentence whitespace included), never re-joined sentence strings, so
the recomputed label is provably consistent: every word of the window is a
word of the source, and the boundary word survives verbatim.  Window edges
snap outward so that a word joined across sentences by non-space whitespace
is never cut.
"""

from __future__ import annotations

import logging
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

from .records import (
    LabeledText,
    LabelOutOfRange,
    SegmentationMode,
    segment_words,
    validate_record,
)
from .sentences import ReconciledText, locate_boundary_sentence, reconcile

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class WindowSpec:
    """How many sentences to take on each side of the boundary sentence and
    the minimum word counts both authorship parts must keep."""

    left_k: int
    right_k: int
    min_human_words: int = 1
    min_machine_words: int = 1

    def __post_init__(self) -> None:
        if self.left_k < 0 or self.right_k < 0:
            raise ValueError("left_k and right_k must be >= 0")
        if self.min_human_words < 1 or self.min_machine_words < 1:
            raise ValueError("min_human_words and min_machine_words must be >= 1")


@dataclass(frozen=True)
class Provenance:
    source_id: str
    window_start: int
    window_end: int
    left_k: int
    right_k: int
    seed: int | None


@dataclass(frozen=True)
class AugmentedRecord:
    """A window extracted as a new training record with a recomputed label."""

    new_id: str
    text: str
    label: int
    provenance: Provenance
    mode: SegmentationMode
    domain_tag: str | None = None
    generator_tag: str | None = None


class WindowError(ValueError):
    """A sampled window cannot form a valid record."""


class WindowLacksHumanPrefix(WindowError):
    """The window would keep fewer human-prefix words than required."""


class WindowLacksMachineSuffix(WindowError):
    """The window would keep fewer machine-suffix words than required."""


@dataclass(frozen=True)
class AugmentConfig:
    per_record: int = 8
    max_left: int = 4
    max_right: int = 4
    seed: int = 0
    min_human_words: int = 1
    min_machine_words: int = 1
    mode: SegmentationMode = SegmentationMode.SPACE_ONLY

    def __post_init__(self) -> None:
        if self.per_record < 1:
            raise ValueError("per_record must be >= 1")
        if self.max_left < 0 or self.max_right < 0:
            raise ValueError("max_left and max_right must be >= 0")
        if self.min_human_words < 1 or self.min_machine_words < 1:
            raise ValueError("min_human_words and min_machine_words must be >= 1")


def _snap_window(rec: ReconciledText, start: int, end: int) -> tuple[int, int]:
    """Extend a char span outward until no word is cut by either edge."""
    for word in rec.word_map.words:
        if word.start < start < word.end:
            start = word.start
        if word.start < end < word.end:
            end = word.end
        if word.start >= end:
            break
    return start, end


def augment_record(
    rec: ReconciledText,
    source_label: int,
    spec: WindowSpec,
    seed: int | None = None,
) -> AugmentedRecord:
    """Extract the window of sentences [b-left_k, b+right_k] around the
    boundary sentence b and recompute the label inside it.

    The new label is the source label minus the number of words starting
    before the window.  Raises WindowLacksHumanPrefix or
    WindowLacksMachineSuffix when a part falls below its minimum.
    """
    word_map = rec.word_map
    if source_label < 0 or source_label >= word_map.total_count:
        raise LabelOutOfRange(
            f"label {source_label} out of range for {word_map.total_count} words"
        )
    b = locate_boundary_sentence(rec, source_label)
    lo = max(0, b - spec.left_k)
    hi = min(len(rec.sentences) - 1, b + spec.right_k)
    start, end = _snap_window(rec, rec.sentences[lo].start, rec.sentences[hi].end)

    words_before = sum(1 for w in word_map.words if w.start < start)
    words_inside = sum(1 for w in word_map.words if start <= w.start and w.end <= end)
    new_label = source_label - words_before
    if new_label < spec.min_human_words:
        raise WindowLacksHumanPrefix(
            f"window keeps {max(new_label, 0)} human words; "
            f"need {spec.min_human_words}"
        )
    machine_words = words_inside - new_label
    if machine_words < spec.min_machine_words:
        raise WindowLacksMachineSuffix(
            f"window keeps {machine_words} machine words; "
            f"need {spec.min_machine_words}"
        )

    suffix = f"#s{seed}" if seed is not None else ""
    return AugmentedRecord(
        new_id=f"{rec.record_ref}@{start}-{end}{suffix}",
        text=rec.text[start:end],
        label=new_label,
        provenance=Provenance(
            source_id=rec.record_ref,
            window_start=start,
            window_end=end,
            left_k=spec.left_k,
            right_k=spec.right_k,
            seed=seed,
        ),
        mode=rec.mode,
    )


def _record_seed(global_seed: int, record_id: str) -> int:
    rng = random.Random(f"{global_seed}:{record_id}")
    return rng.getrandbits(63)


def augment_one(record: LabeledText, config: AugmentConfig) -> list[AugmentedRecord]:
    """All augmented windows for one record, in sampling order.

    (left_k, right_k) pairs are drawn uniformly and rejection-sampled until
    per_record distinct windows are found or every pair has been tried, so
    small texts are enumerated exhaustively.  The RNG stream depends only on
    (config.seed, record.id), which makes the output independent of how
    records are scheduled across workers.
    """
    report = validate_record(record, config.mode)
    if not report.ok or record.label is None:
        reasons = [v.code for v in report.errors] or ["missing_label"]
        logger.warning("skipping record %s: %s", record.id, ", ".join(reasons))
        return []
    rec = reconcile(record, config.mode)
    seed = _record_seed(config.seed, record.id)
    rng = random.Random(seed)

    out: list[AugmentedRecord] = []
    seen_windows: set[tuple[int, int]] = set()
    tried_pairs: set[tuple[int, int]] = set()
    total_pairs = (config.max_left + 1) * (config.max_right + 1)
    while len(out) < config.per_record and len(tried_pairs) < total_pairs:
        left_k = rng.randint(0, config.max_left)
        right_k = rng.randint(0, config.max_right)
        if (left_k, right_k) in tried_pairs:
            continue
        tried_pairs.add((left_k, right_k))
        spec = WindowSpec(
            left_k=left_k,
            right_k=right_k,
            min_human_words=config.min_human_words,
            min_machine_words=config.min_machine_words,
        )
        try:
            aug = augment_record(rec, record.label, spec, seed=seed)
        except WindowError:
            continue
        window = (aug.provenance.window_start, aug.provenance.window_end)
        if window in seen_windows:
            continue
        seen_windows.add(window)
        out.append(
            AugmentedRecord(
                new_id=aug.new_id,
                text=aug.text,
                label=aug.label,
                provenance=aug.provenance,
                mode=aug.mode,
                domain_tag=record.domain_tag,
                generator_tag=record.generator_tag,
            )
        )
    if not out:
        logger.warning("record %s produced no valid window; skipped", record.id)
    return out


def _augment_one_star(args: tuple[LabeledText, AugmentConfig]) -> list[AugmentedRecord]:
    return augment_one(*args)


def generate_corpus(
    corpus: list[LabeledText],
    config: AugmentConfig,
    workers: int = 1,
) -> list[AugmentedRecord]:
    """Augment every record; output order follows the input corpus and is
    identical for identical (corpus, config, seed) regardless of workers."""
    if workers <= 1:
        batches = [augment_one(record, config) for record in corpus]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            batches = list(
                pool.map(_augment_one_star, [(r, config) for r in corpus], chunksize=8)
            )
    return [aug for batch in batches for aug in batch]
