"""Score predictions against hand annotations.

Covers the classification side (confusion matrix, per-class and macro
precision/recall/F1) and the grouping side (was every post's author,
timestamp, and body associated correctly). Internal values stay full
precision; display rounding is half-up to two decimals.

Two macro-F1 conventions exist and disagree in general, so the report
carries both: ``f1`` is the harmonic mean of macro precision and macro
recall, ``mean_f1`` the plain average of per-class F1 values.
"""

from __future__ import annotations

import csv
import datetime as dt
import enum
import json
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from pathlib import Path
from typing import Sequence

from .errors import EmptyInput, IdMismatch, NoSupportedClasses, SchemaViolation
from .grouping import ScreenshotParse
from .structure import CANONICAL_ORDER, InternalStructure, classify_structure
from .textnorm import normalize_body

REPORT_SCHEMA_VERSION = 1


@dataclass(frozen=True)
class AnnotationUnit:
    """Ground truth for one post: author handle (no @), date, body text."""

    author: str
    date: dt.date | None
    body: str


@dataclass(frozen=True)
class Annotation:
    """Hand annotation for one screenshot."""

    screenshot_id: str
    true_structure: InternalStructure
    units: tuple[AnnotationUnit, ...]

    def __post_init__(self):
        if not self.units:
            raise ValueError("annotation has no units")
        if self.true_structure is InternalStructure.INDETERMINATE:
            raise ValueError("annotated items must have a determinate structure")


@dataclass(frozen=True)
class ConfusionMatrix:
    """Rows are true classes, columns predicted, in canonical order."""

    classes: tuple[str, ...]
    counts: tuple[tuple[int, ...], ...]

    def count(self, true_cls: str, predicted_cls: str) -> int:
        return self.counts[self.classes.index(true_cls)][self.classes.index(predicted_cls)]

    def row_sum(self, cls: str) -> int:
        return sum(self.counts[self.classes.index(cls)])

    def col_sum(self, cls: str) -> int:
        j = self.classes.index(cls)
        return sum(row[j] for row in self.counts)

    @property
    def total(self) -> int:
        return sum(sum(row) for row in self.counts)


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float
    support: int


@dataclass(frozen=True)
class MacroMetrics:
    precision: float
    recall: float
    f1: float
    mean_f1: float


@dataclass(frozen=True)
class GroupingAccuracy:
    overall: float
    per_class: dict[str, float]


@dataclass(frozen=True)
class EvalReport:
    matrix: ConfusionMatrix
    per_class: dict[str, ClassMetrics]
    macro: MacroMetrics
    grouping: GroupingAccuracy
    total: int


class BodyMatch(enum.Enum):
    """How unit body text is compared against the annotation."""

    EXACT = "exact"
    NORMALIZED = "normalized"
    TOKEN_JACCARD = "token_jaccard"


def round_half_up(value: float, places: int = 2) -> float:
    """Display rounding; Python's round() would go half-to-even."""
    exp = Decimal(1).scaleb(-places)
    return float(Decimal(repr(value)).quantize(exp, rounding=ROUND_HALF_UP))


def confusion_matrix(
    pairs: Sequence[tuple[InternalStructure, InternalStructure]],
) -> ConfusionMatrix:
    """Count (true, predicted) pairs over the observed categories."""
    observed = {t for t, _ in pairs} | {p for _, p in pairs}
    classes = tuple(c.value for c in CANONICAL_ORDER if c in observed)
    index = {c: i for i, c in enumerate(classes)}
    grid = [[0] * len(classes) for _ in classes]
    for true_cls, predicted_cls in pairs:
        grid[index[true_cls.value]][index[predicted_cls.value]] += 1
    return ConfusionMatrix(classes=classes, counts=tuple(tuple(row) for row in grid))


def per_class_metrics(matrix: ConfusionMatrix) -> dict[str, ClassMetrics]:
    """Precision, recall, F1, and support for every matrix class."""
    out = {}
    for cls in matrix.classes:
        tp = matrix.count(cls, cls)
        predicted = matrix.col_sum(cls)
        support = matrix.row_sum(cls)
        precision = tp / predicted if predicted else 0.0
        recall = tp / support if support else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
        out[cls] = ClassMetrics(precision=precision, recall=recall, f1=f1, support=support)
    return out


def macro_metrics(per_class: dict[str, ClassMetrics]) -> MacroMetrics:
    """Unweighted means over classes with support; zero-support classes
    (predicted-only columns) do not dilute the averages."""
    supported = [m for m in per_class.values() if m.support > 0]
    if not supported:
        raise NoSupportedClasses("no class has support > 0")
    precision = sum(m.precision for m in supported) / len(supported)
    recall = sum(m.recall for m in supported) / len(supported)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall else 0.0
    mean_f1 = sum(m.f1 for m in supported) / len(supported)
    return MacroMetrics(precision=precision, recall=recall, f1=f1, mean_f1=mean_f1)


def _body_matches(parsed: str, annotated: str, mode: BodyMatch, threshold: float) -> bool:
    if mode is BodyMatch.EXACT:
        return parsed == annotated
    if mode is BodyMatch.NORMALIZED:
        return normalize_body(parsed) == normalize_body(annotated)
    left = set(normalize_body(parsed).split())
    right = set(normalize_body(annotated).split())
    if not left and not right:
        return True
    union = left | right
    return len(left & right) / len(union) >= threshold


def grouping_correct(
    parse: ScreenshotParse,
    ann: Annotation,
    body_match: BodyMatch = BodyMatch.NORMALIZED,
    jaccard_threshold: float = 0.8,
) -> bool:
    """True when every post was grouped right: unit count matches and each
    unit's author (case-insensitive), date (day precision, absent matches
    absent), and body text line up with the annotation in order."""
    if parse.screenshot_id != ann.screenshot_id:
        raise IdMismatch(f"{parse.screenshot_id!r} vs {ann.screenshot_id!r}")
    if len(parse.units) != len(ann.units):
        return False
    for unit, truth in zip(parse.units, ann.units):
        if unit.author is None or unit.author.key() != truth.author.lower():
            return False
        parsed_date = unit.timestamp.date if unit.timestamp else None
        if parsed_date != truth.date:
            return False
        if not _body_matches(unit.body_text, truth.body, body_match, jaccard_threshold):
            return False
    return True


def grouping_accuracy(
    results: Sequence[tuple[ScreenshotParse, Annotation]],
    body_match: BodyMatch = BodyMatch.NORMALIZED,
    jaccard_threshold: float = 0.8,
) -> GroupingAccuracy:
    """Fraction grouped correctly, overall and split by true structure."""
    if not results:
        raise EmptyInput("no results to score")
    verdicts = []
    by_class: dict[str, list[bool]] = {}
    for parse, ann in results:
        ok = grouping_correct(parse, ann, body_match, jaccard_threshold)
        verdicts.append(ok)
        by_class.setdefault(ann.true_structure.value, []).append(ok)
    per_class = {
        cls: sum(flags) / len(flags)
        for cls, flags in sorted(by_class.items())
    }
    return GroupingAccuracy(overall=sum(verdicts) / len(verdicts), per_class=per_class)


def evaluate_batch(
    items: Sequence[tuple[ScreenshotParse, Annotation]],
    body_match: BodyMatch = BodyMatch.NORMALIZED,
    jaccard_threshold: float = 0.8,
) -> EvalReport:
    """Classify every parse and score classification plus grouping."""
    if not items:
        raise EmptyInput("no items to evaluate")
    pairs = [(ann.true_structure, classify_structure(parse)) for parse, ann in items]
    matrix = confusion_matrix(pairs)
    per_class = per_class_metrics(matrix)
    macro = macro_metrics(per_class)
    grouping = grouping_accuracy(items, body_match, jaccard_threshold)
    return EvalReport(
        matrix=matrix, per_class=per_class, macro=macro,
        grouping=grouping, total=len(items),
    )


def report_to_dict(report: EvalReport) -> dict:
    return {
        "schema_version": REPORT_SCHEMA_VERSION,
        "total": report.total,
        "classes": list(report.matrix.classes),
        "matrix": [list(row) for row in report.matrix.counts],
        "per_class": {
            cls: {
                "precision": m.precision,
                "recall": m.recall,
                "f1": m.f1,
                "support": m.support,
                "grouping_accuracy": report.grouping.per_class.get(cls),
            }
            for cls, m in report.per_class.items()
        },
        "macro": {
            "precision": report.macro.precision,
            "recall": report.macro.recall,
            "macro_f1": report.macro.f1,
            "mean_f1": report.macro.mean_f1,
        },
        "grouping_accuracy": report.grouping.overall,
    }


def validate_report_dict(data: dict) -> None:
    """Schema check for a serialized report; raises SchemaViolation."""
    required = {
        "schema_version", "total", "classes", "matrix",
        "per_class", "macro", "grouping_accuracy",
    }
    missing = required - data.keys()
    if missing:
        raise SchemaViolation(f"missing keys: {sorted(missing)}")
    classes = data["classes"]
    matrix = data["matrix"]
    if len(matrix) != len(classes) or any(len(row) != len(classes) for row in matrix):
        raise SchemaViolation("matrix shape does not match classes", field="matrix")
    if any(cell < 0 for row in matrix for cell in row):
        raise SchemaViolation("negative matrix cell", field="matrix")
    if sum(sum(row) for row in matrix) != data["total"]:
        raise SchemaViolation("matrix total != total", field="total")
    for cls in classes:
        if cls not in data["per_class"]:
            raise SchemaViolation(f"class {cls} missing", field="per_class")
        for key in ("precision", "recall", "f1"):
            value = data["per_class"][cls][key]
            if not 0.0 <= value <= 1.0:
                raise SchemaViolation(f"{cls}.{key} out of [0,1]", field="per_class")
    for key in ("precision", "recall", "macro_f1", "mean_f1"):
        if not 0.0 <= data["macro"][key] <= 1.0:
            raise SchemaViolation(f"macro.{key} out of [0,1]", field="macro")
    if not 0.0 <= data["grouping_accuracy"] <= 1.0:
        raise SchemaViolation("grouping_accuracy out of [0,1]", field="grouping_accuracy")


def write_report(report: EvalReport, json_path: str | Path, csv_path: str | Path) -> None:
    """Write the JSON report plus a CSV confusion matrix for plotting."""
    json_path = Path(json_path)
    json_path.write_text(
        json.dumps(report_to_dict(report), indent=2, sort_keys=True) + "\n",
        encoding="utf-8",
    )
    with Path(csv_path).open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(["true\\predicted", *report.matrix.classes])
        for cls, row in zip(report.matrix.classes, report.matrix.counts):
            writer.writerow([cls, *row])


def render_table(report: EvalReport) -> str:
    """Per-class and overall scores, rounded half-up to two decimals."""
    lines = [f"{'Category':<18}{'Precision':>10}{'Recall':>8}{'F1':>6}"]
    for cls in report.matrix.classes:
        m = report.per_class[cls]
        if m.support == 0:
            continue
        label = f"{cls} (k={m.support})"
        lines.append(
            f"{label:<18}{round_half_up(m.precision):>10.2f}"
            f"{round_half_up(m.recall):>8.2f}{round_half_up(m.f1):>6.2f}"
        )
    label = f"Overall (k={report.total})"
    lines.append(
        f"{label:<18}{round_half_up(report.macro.precision):>10.2f}"
        f"{round_half_up(report.macro.recall):>8.2f}{round_half_up(report.macro.f1):>6.2f}"
    )
    lines.append(f"Grouping accuracy: {round_half_up(report.grouping.overall, 4):.4f}")
    return "\n".join(lines)
