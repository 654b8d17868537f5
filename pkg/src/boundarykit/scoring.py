"""MAE scoring over prediction files, per-group breakdowns, error bucketing,
and trivial baselines for end-to-end runs without a trained model.

Records are matched by id, never by order.  Missing, duplicate, and unknown
ids are hard errors: silent skips would corrupt leaderboard-style
comparisons.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field

from .anomalies import AnomalyConfig, detect_anomalies
from .records import (
    LabeledText,
    SegmentationMode,
    segment_words,
    word_index_at,
)

BIG_ERROR_THRESHOLD = 100

GROUP_DOMAIN = "domain"
GROUP_GENERATOR = "generator"
UNKNOWN_GROUP = "unknown"


class ScoringError(ValueError):
    pass


class MissingPrediction(ScoringError):
    """A gold record has no prediction."""


class DuplicatePrediction(ScoringError):
    """An id appears more than once in the prediction file."""


class UnknownId(ScoringError):
    """A prediction has no matching gold record."""


@dataclass(frozen=True)
class PredictionRecord:
    id: str
    predicted_label: int

    def __post_init__(self) -> None:
        if self.predicted_label < 0:
            raise ValueError(f"predicted label must be >= 0, got {self.predicted_label}")


@dataclass(frozen=True)
class GroupScore:
    mae: float
    count: int


@dataclass(frozen=True)
class ScoreReport:
    mae: float
    count: int
    per_group: dict[str, GroupScore]
    big_error_ids: tuple[str, ...]
    big_error_threshold: int
    group_by: str
    range_violation_ids: tuple[str, ...] = field(default=())

    def to_dict(self) -> dict:
        return {
            "mae": self.mae,
            "count": self.count,
            "group_by": self.group_by,
            "per_group": {
                key: {"mae": score.mae, "count": score.count}
                for key, score in sorted(self.per_group.items())
            },
            "big_error_threshold": self.big_error_threshold,
            "big_error_ids": list(self.big_error_ids),
            "range_violation_ids": list(self.range_violation_ids),
        }


def _match(
    preds: list[PredictionRecord], golds: list[LabeledText]
) -> dict[str, tuple[int, LabeledText]]:
    """Pair predictions with gold records by id, enforcing exact coverage."""
    by_id: dict[str, int] = {}
    for pred in preds:
        if pred.id in by_id:
            raise DuplicatePrediction(f"duplicate prediction for id {pred.id!r}")
        by_id[pred.id] = pred.predicted_label
    gold_ids = set()
    for gold in golds:
        if gold.id in gold_ids:
            raise ScoringError(f"duplicate gold id {gold.id!r}")
        gold_ids.add(gold.id)
        if gold.label is None:
            raise ScoringError(f"gold record {gold.id!r} has no label")
        if gold.id not in by_id:
            raise MissingPrediction(f"no prediction for gold id {gold.id!r}")
    for pred_id in by_id:
        if pred_id not in gold_ids:
            raise UnknownId(f"prediction for unknown id {pred_id!r}")
    return {gold.id: (by_id[gold.id], gold) for gold in golds}


def _group_key(gold: LabeledText, group_by: str) -> str:
    tag = gold.domain_tag if group_by == GROUP_DOMAIN else gold.generator_tag
    return tag if tag else UNKNOWN_GROUP


def compute_mae(
    preds: list[PredictionRecord],
    golds: list[LabeledText],
    group_by: str = GROUP_DOMAIN,
    big_error_threshold: int = BIG_ERROR_THRESHOLD,
    mode: SegmentationMode | None = None,
) -> ScoreReport:
    """Mean absolute distance between predicted and gold boundary word
    indices, with per-group breakdown and big-error ids.

    When mode is given, predictions exceeding the gold text's word count are
    reported in range_violation_ids (they still score; the scorer accepts
    any non-negative integer).
    """
    if group_by not in (GROUP_DOMAIN, GROUP_GENERATOR):
        raise ValueError(f"group_by must be 'domain' or 'generator', got {group_by!r}")
    matched = _match(preds, golds)
    abs_sum = 0
    group_sums: dict[str, list[int]] = {}
    big: list[tuple[int, str]] = []
    range_violations: list[str] = []
    for record_id, (pred, gold) in matched.items():
        distance = abs(pred - (gold.label or 0))
        abs_sum += distance
        group_sums.setdefault(_group_key(gold, group_by), []).append(distance)
        if distance > big_error_threshold:
            big.append((distance, record_id))
        if mode is not None and pred > segment_words(gold.text, mode).total_count:
            range_violations.append(record_id)
    count = len(matched)
    big.sort(key=lambda item: (-item[0], item[1]))
    return ScoreReport(
        mae=abs_sum / count if count else 0.0,
        count=count,
        per_group={
            key: GroupScore(mae=sum(ds) / len(ds), count=len(ds))
            for key, ds in group_sums.items()
        },
        big_error_ids=tuple(record_id for _, record_id in big),
        big_error_threshold=big_error_threshold,
        group_by=group_by,
        range_violation_ids=tuple(range_violations),
    )


def bucket_errors(
    preds: list[PredictionRecord],
    golds: list[LabeledText],
    threshold: int = BIG_ERROR_THRESHOLD,
) -> list[tuple[str, int]]:
    """(id, distance) for every record with distance strictly above the
    threshold, sorted by descending distance (ties by id)."""
    matched = _match(preds, golds)
    over = [
        (record_id, abs(pred - (gold.label or 0)))
        for record_id, (pred, gold) in matched.items()
        if abs(pred - (gold.label or 0)) > threshold
    ]
    over.sort(key=lambda item: (-item[1], item[0]))
    return over


@dataclass(frozen=True)
class Fixed:
    """Predict the same label for every record."""

    label: int


@dataclass(frozen=True)
class TrainMedian:
    """Predict the median gold label of a training corpus."""

    train: tuple[LabeledText, ...]


@dataclass(frozen=True)
class AnomalyFirst:
    """Predict the word index of the first detected generation anomaly,
    falling back to another strategy when a text has none."""

    fallback: Fixed | TrainMedian
    mode: SegmentationMode = SegmentationMode.SPACE_ONLY
    config: AnomalyConfig = AnomalyConfig()


Strategy = Fixed | TrainMedian | AnomalyFirst


def _median_label(train: tuple[LabeledText, ...]) -> int:
    labels = [r.label for r in train if r.label is not None]
    if not labels:
        raise ScoringError("TrainMedian needs a non-empty labeled training corpus")
    return int(statistics.median_low(labels))


def baseline_predict(
    corpus: list[LabeledText], strategy: Strategy
) -> list[PredictionRecord]:
    """Apply a baseline strategy to every record (labels not required)."""
    if isinstance(strategy, Fixed):
        return [PredictionRecord(r.id, strategy.label) for r in corpus]
    if isinstance(strategy, TrainMedian):
        median = _median_label(strategy.train)
        return [PredictionRecord(r.id, median) for r in corpus]
    if isinstance(strategy, AnomalyFirst):
        fallback = {
            p.id: p.predicted_label
            for p in baseline_predict(corpus, strategy.fallback)
        }
        out: list[PredictionRecord] = []
        for record in corpus:
            spans = detect_anomalies(record.text, strategy.config)
            label = fallback[record.id]
            if spans:
                word_map = segment_words(record.text, strategy.mode)
                if word_map.total_count:
                    label, _ = word_index_at(word_map, spans[0].start)
            out.append(PredictionRecord(record.id, label))
        return out
    raise TypeError(f"unknown strategy {strategy!r}")
