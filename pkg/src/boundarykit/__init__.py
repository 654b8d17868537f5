"""Corpus toolkit and evaluation harness for the human/machine authorship
boundary task: whitespace-exact word segmentation, label validation,
label-correct window augmentation, word/subtoken alignment, MAE scoring,
and generation-anomaly audits.
"""

from .align import (
    Tokenization,
    fallback_tokenize,
    subtoken_to_word_label,
    word_label_to_boundary_subtoken,
)
from .anomalies import AnomalyConfig, AnomalyKind, AnomalySpan, detect_anomalies
from .augment import (
    AugmentConfig,
    AugmentedRecord,
    WindowLacksHumanPrefix,
    WindowLacksMachineSuffix,
    WindowSpec,
    augment_record,
    generate_corpus,
)
from .records import (
    LabeledText,
    SegmentationMode,
    ValidationReport,
    WordMap,
    WordSpan,
    segment_words,
    validate_record,
)
from .scoring import (
    AnomalyFirst,
    Fixed,
    PredictionRecord,
    ScoreReport,
    TrainMedian,
    baseline_predict,
    bucket_errors,
    compute_mae,
)
from .sentences import (
    ReconciledText,
    SentenceSpan,
    locate_boundary_sentence,
    reconcile,
    split_sentences,
)
from .stats import Histogram, boundary_histogram, length_histogram

__version__ = "0.1.0"

__all__ = [
    "AnomalyConfig",
    "AnomalyFirst",
    "AnomalyKind",
    "AnomalySpan",
    "AugmentConfig",
    "AugmentedRecord",
    "Fixed",
    "Histogram",
    "LabeledText",
    "PredictionRecord",
    "ReconciledText",
    "ScoreReport",
    "SegmentationMode",
    "SentenceSpan",
    "Tokenization",
    "TrainMedian",
    "ValidationReport",
    "WindowLacksHumanPrefix",
    "WindowLacksMachineSuffix",
    "WindowSpec",
    "WordMap",
    "WordSpan",
    "augment_record",
    "baseline_predict",
    "boundary_histogram",
    "bucket_errors",
    "compute_mae",
    "detect_anomalies",
    "fallback_tokenize",
    "generate_corpus",
    "length_histogram",
    "locate_boundary_sentence",
    "reconcile",
    "segment_words",
    "split_sentences",
    "subtoken_to_word_label",
    "validate_record",
    "word_label_to_boundary_subtoken",
]
