"""JSON-lines corpus, prediction, augmented-record, and tokenization-sidecar
formats.

All files are UTF-8; all character indices are Unicode scalar positions
(Python string indices), which sidecar producers must match.  Writers emit
keys in a fixed order with one record per line so identical inputs yield
byte-identical files.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Iterable, Mapping

from .align import Tokenization
from .augment import AugmentedRecord
from .records import LabeledText, SegmentationMode, validate_record
from .scoring import PredictionRecord

logger = logging.getLogger(__name__)

CORPUS_FIELDS = ("id", "text", "label", "domain", "generator")


class CorpusFormatError(ValueError):
    """A corpus, prediction, or sidecar file violates its format."""


def _parse_lines(path: str | Path) -> Iterable[tuple[int, dict]]:
    with open(path, encoding="utf-8") as handle:
        for line_no, line in enumerate(handle, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusFormatError(f"{path}:{line_no}: invalid JSON: {exc}") from None
            if not isinstance(obj, dict):
                raise CorpusFormatError(f"{path}:{line_no}: expected a JSON object")
            yield line_no, obj


def _require_str(obj: dict, key: str, where: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str):
        raise CorpusFormatError(f"{where}: field {key!r} must be a string")
    return value


def _optional_int(obj: dict, key: str, where: str) -> int | None:
    if key not in obj or obj[key] is None:
        return None
    value = obj[key]
    if isinstance(value, bool) or not isinstance(value, int):
        raise CorpusFormatError(f"{where}: field {key!r} must be an integer")
    return value


def read_corpus_raw(
    path: str | Path,
    require_labels: bool = False,
    field_map: Mapping[str, str] | None = None,
) -> list[LabeledText]:
    """Read corpus records in file order without label validation.

    Format problems (bad JSON, duplicate or missing ids, wrong field types,
    missing required labels) still raise with their line number.  field_map
    renames canonical fields to the file's keys, e.g. {"id": "uuid"}.
    """
    names = {field: field for field in CORPUS_FIELDS}
    if field_map:
        unknown = set(field_map) - set(CORPUS_FIELDS)
        if unknown:
            raise CorpusFormatError(f"unknown field-map keys: {sorted(unknown)}")
        names.update(field_map)

    records: list[LabeledText] = []
    seen: set[str] = set()
    for line_no, obj in _parse_lines(path):
        where = f"{path}:{line_no}"
        record_id = _require_str(obj, names["id"], where)
        if record_id in seen:
            raise CorpusFormatError(f"{where}: duplicate id {record_id!r}")
        seen.add(record_id)
        text = _require_str(obj, names["text"], where)
        label = _optional_int(obj, names["label"], where)
        if require_labels and label is None:
            raise CorpusFormatError(f"{where}: missing label for id {record_id!r}")
        domain = obj.get(names["domain"])
        generator = obj.get(names["generator"])
        records.append(
            LabeledText(
                id=record_id,
                text=text,
                label=label,
                domain_tag=domain if isinstance(domain, str) else None,
                generator_tag=generator if isinstance(generator, str) else None,
            )
        )
    return records


def read_corpus(
    path: str | Path,
    require_labels: bool = True,
    mode: SegmentationMode = SegmentationMode.SPACE_ONLY,
    field_map: Mapping[str, str] | None = None,
) -> list[LabeledText]:
    """Read and validate corpus records in file order.

    Records with hard label violations are rejected with their id;
    degenerate-endpoint labels are loaded with a logged warning.
    """
    records = read_corpus_raw(path, require_labels=require_labels, field_map=field_map)
    for record in records:
        report = validate_record(record, mode)
        if not report.ok:
            details = "; ".join(v.message for v in report.errors)
            raise CorpusFormatError(f"{path}: invalid record {record.id!r}: {details}")
        for warning in report.warnings:
            logger.warning("%s: record %s: %s", path, record.id, warning.message)
    return records


def _dump(obj: dict) -> str:
    return json.dumps(obj, ensure_ascii=False, separators=(",", ":"))


def write_corpus(records: Iterable[LabeledText], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            obj: dict = {"id": record.id, "text": record.text}
            if record.label is not None:
                obj["label"] = record.label
            if record.domain_tag is not None:
                obj["domain"] = record.domain_tag
            if record.generator_tag is not None:
                obj["generator"] = record.generator_tag
            handle.write(_dump(obj) + "\n")


def read_predictions(path: str | Path) -> list[PredictionRecord]:
    predictions: list[PredictionRecord] = []
    for line_no, obj in _parse_lines(path):
        where = f"{path}:{line_no}"
        record_id = _require_str(obj, "id", where)
        label = _optional_int(obj, "label", where)
        if label is None:
            raise CorpusFormatError(f"{where}: missing label")
        if label < 0:
            raise CorpusFormatError(f"{where}: label must be >= 0")
        predictions.append(PredictionRecord(id=record_id, predicted_label=label))
    return predictions


def write_predictions(preds: Iterable[PredictionRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for pred in preds:
            handle.write(_dump({"id": pred.id, "label": pred.predicted_label}) + "\n")


def write_augmented(records: Iterable[AugmentedRecord], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record in records:
            obj = {
                "id": record.new_id,
                "text": record.text,
                "label": record.label,
                "source_id": record.provenance.source_id,
                "window_start": record.provenance.window_start,
                "window_end": record.provenance.window_end,
                "left_k": record.provenance.left_k,
                "right_k": record.provenance.right_k,
                "seed": record.provenance.seed,
                "mode": record.mode.value,
            }
            if record.domain_tag is not None:
                obj["domain"] = record.domain_tag
            if record.generator_tag is not None:
                obj["generator"] = record.generator_tag
            handle.write(_dump(obj) + "\n")


def read_tokenizations(path: str | Path) -> dict[str, Tokenization]:
    """Read a tokenization sidecar: one {"id", "spans"} object per line,
    spans as [start, end] character pairs, end-exclusive."""
    sidecars: dict[str, Tokenization] = {}
    for line_no, obj in _parse_lines(path):
        where = f"{path}:{line_no}"
        record_id = _require_str(obj, "id", where)
        if record_id in sidecars:
            raise CorpusFormatError(f"{where}: duplicate id {record_id!r}")
        raw = obj.get("spans")
        if not isinstance(raw, list):
            raise CorpusFormatError(f"{where}: field 'spans' must be a list")
        spans: list[tuple[int, int]] = []
        for pair in raw:
            if (
                not isinstance(pair, list)
                or len(pair) != 2
                or not all(isinstance(v, int) and not isinstance(v, bool) for v in pair)
            ):
                raise CorpusFormatError(f"{where}: spans must be [start, end] integer pairs")
            spans.append((pair[0], pair[1]))
        sidecars[record_id] = Tokenization(
            spans=tuple(spans), record_ref=record_id, source="sidecar"
        )
    return sidecars


def write_tokenizations(sidecars: Mapping[str, Tokenization], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8") as handle:
        for record_id in sidecars:
            spans = [[s, e] for s, e in sidecars[record_id].spans]
            handle.write(_dump({"id": record_id, "spans": spans}) + "\n")
