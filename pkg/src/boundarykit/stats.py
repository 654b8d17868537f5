"""Corpus statistics: tokenized-length distribution and boundary-subtoken
position distribution, as numeric histograms (plot rendering is left to
external tools).
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass
from typing import Iterable, Mapping

from .align import Tokenization, word_label_to_boundary_subtoken
from .records import LabeledText, SegmentationMode, segment_words

# Encoder context limit that long records are checked against.
CONTEXT_LIMIT = 512
# Boundary positions at or below this are "early"; the training skew the
# histogram summary quantifies.
EARLY_REGION = 200


class MissingTokenization(KeyError):
    """A record has no tokenization in the supplied sidecar mapping."""


@dataclass(frozen=True)
class Histogram:
    bin_width: int
    bins: dict[int, int]
    total: int
    summary: dict[str, float]

    @classmethod
    def from_values(cls, values: Iterable[int], bin_width: int) -> "Histogram":
        if bin_width < 1:
            raise ValueError("bin_width must be >= 1")
        observed = list(values)
        bins: dict[int, int] = {}
        for value in observed:
            start = (value // bin_width) * bin_width
            bins[start] = bins.get(start, 0) + 1
        summary: dict[str, float] = {}
        if observed:
            summary = {
                "min": float(min(observed)),
                "max": float(max(observed)),
                "mean": statistics.fmean(observed),
                "median": float(statistics.median(observed)),
            }
        return cls(bin_width=bin_width, bins=bins, total=len(observed), summary=summary)

    def with_summary(self, **extra: float) -> "Histogram":
        return Histogram(
            bin_width=self.bin_width,
            bins=self.bins,
            total=self.total,
            summary={**self.summary, **extra},
        )

    def to_dict(self) -> dict:
        return {
            "bin_width": self.bin_width,
            "total": self.total,
            "bins": {str(start): self.bins[start] for start in sorted(self.bins)},
            "summary": dict(sorted(self.summary.items())),
        }


def _tokenization_for(
    record: LabeledText, tokenizations: Mapping[str, Tokenization]
) -> Tokenization:
    try:
        return tokenizations[record.id]
    except KeyError:
        raise MissingTokenization(f"no tokenization for record {record.id!r}") from None


def subtoken_lengths(
    corpus: list[LabeledText], tokenizations: Mapping[str, Tokenization]
) -> dict[str, int]:
    return {r.id: len(_tokenization_for(r, tokenizations).spans) for r in corpus}


def boundary_positions(
    corpus: list[LabeledText],
    tokenizations: Mapping[str, Tokenization],
    mode: SegmentationMode,
) -> tuple[dict[str, int], list[tuple[str, str]]]:
    """Boundary subtoken index per labeled record, plus (id, reason) pairs
    for records whose boundary could not be aligned."""
    positions: dict[str, int] = {}
    errors: list[tuple[str, str]] = []
    for record in corpus:
        if record.label is None:
            errors.append((record.id, "record has no label"))
            continue
        tok = _tokenization_for(record, tokenizations)
        word_map = segment_words(record.text, mode)
        try:
            positions[record.id] = word_label_to_boundary_subtoken(
                word_map, record.label, tok
            )
        except (IndexError, ValueError) as exc:
            errors.append((record.id, str(exc)))
    return positions, errors


def length_histogram(
    corpus: list[LabeledText],
    tokenizations: Mapping[str, Tokenization],
    bin_width: int = 100,
) -> Histogram:
    """Histogram of subtoken counts; the summary counts records exceeding
    the encoder context limit."""
    lengths = subtoken_lengths(corpus, tokenizations)
    hist = Histogram.from_values(lengths.values(), bin_width)
    over = sum(1 for n in lengths.values() if n > CONTEXT_LIMIT)
    return hist.with_summary(over_context_limit=float(over))


def boundary_histogram(
    corpus: list[LabeledText],
    tokenizations: Mapping[str, Tokenization],
    bin_width: int = 100,
    mode: SegmentationMode = SegmentationMode.SPACE_ONLY,
) -> tuple[Histogram, list[tuple[str, str]]]:
    """Histogram of boundary subtoken positions; the summary reports the
    fraction of boundaries within the early region.  Records that fail
    alignment are skipped and returned as errors."""
    positions, errors = boundary_positions(corpus, tokenizations, mode)
    hist = Histogram.from_values(positions.values(), bin_width)
    if positions:
        early = sum(1 for p in positions.values() if p <= EARLY_REGION)
        hist = hist.with_summary(fraction_early=early / len(positions))
    return hist, errors
