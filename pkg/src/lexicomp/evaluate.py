"""Scoring threshold predictions against human same/different annotations.

Gold files are tab-separated with columns language_pair_id, concept_id,
form_a_id, form_b_id, label (same|different). The positive class defaults to
"same word" (a prediction of Identical or Similar); precision, recall and
F-score are reported per language pair plus a TOTAL row over pooled counts.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from .errors import (
    DuplicateRecord,
    MalformedRow,
    MissingFile,
    MissingPrediction,
    UnknownLabel,
)
from .metrics import PairCategory

LABELS = ("same", "different")


@dataclass(frozen=True)
class GoldRecord:
    language_pair_id: str
    concept_id: str
    form_a: str
    form_b: str
    label: str  # "same" or "different"


@dataclass(frozen=True)
class GoldAnnotations:
    records: tuple[GoldRecord, ...]

    def language_pairs(self):
        seen = []
        for r in self.records:
            if r.language_pair_id not in seen:
                seen.append(r.language_pair_id)
        return seen


@dataclass(frozen=True)
class EvalRow:
    language_pair_id: str
    tp: int
    fp: int
    fn: int
    tn: int
    flagged: bool  # a zero denominator was reported as 0

    @property
    def precision(self):
        return self.tp / (self.tp + self.fp) if self.tp + self.fp else 0.0

    @property
    def recall(self):
        return self.tp / (self.tp + self.fn) if self.tp + self.fn else 0.0

    @property
    def f_score(self):
        p, r = self.precision, self.recall
        return 2 * p * r / (p + r) if p + r > 0 else 0.0


@dataclass(frozen=True)
class EvalResult:
    rows: tuple[EvalRow, ...]
    total: EvalRow


def load_gold(path):
    """Load and validate a gold annotation file."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(str(path))
    records = []
    seen = set()
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise MalformedRow(f"{path}:{lineno}: expected 5 columns, got {len(parts)}")
        pair_id, concept_id, form_a, form_b, label = parts
        if label not in LABELS:
            raise UnknownLabel(f"{path}:{lineno}: label {label!r}")
        key = (pair_id, form_a, form_b)
        if key in seen or (pair_id, form_b, form_a) in seen:
            raise DuplicateRecord(f"{path}:{lineno}: duplicate pair ({form_a}, {form_b})")
        seen.add(key)
        records.append(GoldRecord(pair_id, concept_id, form_a, form_b, label))
    if not records:
        raise MalformedRow(f"{path}: no gold records")
    return GoldAnnotations(tuple(records))


def evaluate_predictions(predictions, gold, positive="same"):
    """Confusion-matrix evaluation of predicted categories against gold.

    predictions maps (language_pair_id, form_a_id, form_b_id) to a
    PairCategory (either orientation of the form pair may be present).
    """
    if positive not in LABELS:
        raise ValueError(f"positive class must be one of {LABELS}")
    counts = {}
    for rec in gold.records:
        cat = predictions.get((rec.language_pair_id, rec.form_a, rec.form_b))
        if cat is None:
            cat = predictions.get((rec.language_pair_id, rec.form_b, rec.form_a))
        if cat is None:
            raise MissingPrediction(
                f"pair ({rec.form_a}, {rec.form_b}) of {rec.language_pair_id} "
                "was never compared")
        predicted = "same" if cat is not PairCategory.DIFFERENT else "different"
        c = counts.setdefault(rec.language_pair_id, {"tp": 0, "fp": 0, "fn": 0, "tn": 0})
        if predicted == positive:
            c["tp" if rec.label == positive else "fp"] += 1
        else:
            c["fn" if rec.label == positive else "tn"] += 1

    rows = []
    pooled = {"tp": 0, "fp": 0, "fn": 0, "tn": 0}
    for pair_id in gold.language_pairs():
        c = counts[pair_id]
        for k in pooled:
            pooled[k] += c[k]
        rows.append(EvalRow(language_pair_id=pair_id, flagged=_flag(c), **c))
    total = EvalRow(language_pair_id="TOTAL", flagged=_flag(pooled), **pooled)
    return EvalResult(rows=tuple(rows), total=total)


def _flag(c):
    return c["tp"] + c["fp"] == 0 or c["tp"] + c["fn"] == 0


def predictions_from_records(records):
    """Index (pair_id, concept, form_a, form_b, category) prediction tuples."""
    return {(pair_id, fa, fb): cat for pair_id, _, fa, fb, cat in records}


def load_predictions(path):
    """Read a predictions file (same shape as gold, category in column 5)."""
    path = Path(path)
    if not path.is_file():
        raise MissingFile(str(path))
    by_name = {c.value: c for c in PairCategory}
    records = []
    for lineno, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 5:
            raise MalformedRow(f"{path}:{lineno}: expected 5 columns, got {len(parts)}")
        pair_id, concept_id, form_a, form_b, category = parts
        if category not in by_name:
            raise UnknownLabel(f"{path}:{lineno}: category {category!r}")
        records.append((pair_id, concept_id, form_a, form_b, by_name[category]))
    return records


def render_eval_tsv(result):
    lines = ["Language\tPrecision\tRecall\tF-Score"]
    for row in list(result.rows) + [result.total]:
        lines.append("\t".join([
            row.language_pair_id,
            f"{row.precision:.2f}",
            f"{row.recall:.2f}",
            f"{row.f_score:.2f}",
        ]))
    return "\n".join(lines) + "\n"
