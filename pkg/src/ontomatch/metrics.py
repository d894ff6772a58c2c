"""Alignment scoring (precision/recall/F1) and diagnostic quantities."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import asdict, dataclass

from ontomatch.errors import EmptyInput
from ontomatch.model import Alignment, OntologyDoc


@dataclass(frozen=True)
class EvalReport:
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    alignment_size: int
    reference_size: int


def evaluate(alignment: Alignment, reference: Alignment) -> EvalReport:
    """Score by (entity1, entity2) pair identity; zero denominators give 0."""
    produced = alignment.pairs()
    gold = reference.pairs()
    tp = len(produced & gold)
    fp = len(produced - gold)
    fn = len(gold - produced)
    precision = tp / (tp + fp) if (tp + fp) > 0 else 0.0
    recall = tp / (tp + fn) if (tp + fn) > 0 else 0.0
    f1 = 2 * precision * recall / (precision + recall) if (precision + recall) > 0 else 0.0
    return EvalReport(
        tp=tp,
        fp=fp,
        fn=fn,
        precision=precision,
        recall=recall,
        f1=f1,
        alignment_size=len(produced),
        reference_size=len(gold),
    )


def improvement_condition(delta_tp: int, delta_fp: int, tp: int, fp: int) -> bool:
    """Would adding (delta_tp, delta_fp) strictly raise precision?"""
    before = tp / (tp + fp)
    denominator = tp + delta_tp + fp + delta_fp
    if denominator == 0:
        return False
    after = (tp + delta_tp) / denominator
    return after > before


def discovery_rate(verdicts, expected) -> float:
    """Fraction of verdicts whose answer equals ``expected``."""
    verdicts = list(verdicts)
    if not verdicts:
        raise EmptyInput("discovery_rate needs at least one verdict")
    hits = sum(1 for v in verdicts if v.answer == expected)
    return hits / len(verdicts)


def reserved_density(reserved, source: OntologyDoc, target: OntologyDoc) -> float:
    """Reserved words per 100 entities across both ontologies."""
    total = len(source.entities) + len(target.entities)
    if total == 0:
        raise EmptyInput("reserved_density needs at least one entity")
    return 100.0 * len(reserved) / total


def report_to_json(report: EvalReport, provenance: str = "") -> str:
    payload = asdict(report)
    payload["provenance"] = provenance
    return json.dumps(payload, sort_keys=True)


CSV_COLUMNS = ("track", "alignment_id", "config_id", "tp", "fp", "fn", "precision", "recall", "f1")


def csv_row(report: EvalReport, track: str, alignment_id: str, config_id: str) -> dict:
    return {
        "track": track,
        "alignment_id": alignment_id,
        "config_id": config_id,
        "tp": report.tp,
        "fp": report.fp,
        "fn": report.fn,
        "precision": repr(report.precision),
        "recall": repr(report.recall),
        "f1": repr(report.f1),
    }


def write_csv(rows: list[dict]) -> str:
    buffer = io.StringIO()
    writer = csv.DictWriter(buffer, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buffer.getvalue()
