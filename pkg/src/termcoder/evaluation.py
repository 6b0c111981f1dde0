"""Benchmark harness: compare automatic encodings against gold annotations.

Gold cases carry the terms a human expert chose. Comparison happens at the
preferred-term (PT) level, so two different low level terms under the same
PT count as agreement. Cases are grouped into five classes by raw
character length of the description (0-20, 21-40, 41-100, 101-255, >255)
and counts are pooled per class (micro-average).

Mirrors the original benchmarking protocol: cases where the engine ranked
more candidates than ``max_terms`` (counted after synonym merging) are
excluded, since their truncated answer is not comparable to a bounded
human encoding. Note the harness measures agreement with the human
encoding, not ground truth: a defensible extra term the human skipped as
redundant still counts as a false positive, so real performance is
understated.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .coder import TermCoder
from .selection import EncodingResult
from .terminology import Terminology

LENGTH_CLASS_BOUNDS = (20, 40, 100, 255)
CSV_FIELDS = ("class", "chars", "reports", "common_pt", "fn", "fp", "recall", "precision")
_CLASS_LABELS = {1: "0-20", 2: "21-40", 3: "41-100", 4: "101-255", 5: ">255"}


class EvaluationError(ValueError):
    """Raised for corpus problems or unmappable gold/auto terms."""


@dataclass(frozen=True)
class GoldCase:
    case_id: str
    text: str
    gold_llt_ids: frozenset[str]


def load_corpus(path: str | Path) -> list[GoldCase]:
    """Read a JSON-lines corpus: {"id", "text", "gold_llt_ids"} per line."""
    path = Path(path)
    cases: list[GoldCase] = []
    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise EvaluationError(f"{path}:{line_no}: invalid JSON ({exc})") from None
            try:
                cases.append(
                    GoldCase(
                        case_id=str(obj["id"]),
                        text=str(obj["text"]),
                        gold_llt_ids=frozenset(str(i) for i in obj["gold_llt_ids"]),
                    )
                )
            except KeyError as exc:
                raise EvaluationError(f"{path}:{line_no}: missing field {exc}") from None
    return cases


def length_class(text: str) -> int:
    """Class 1..5 by raw character count of the description."""
    n = len(text)
    for cls, bound in enumerate(LENGTH_CLASS_BOUNDS, start=1):
        if n <= bound:
            return cls
    return 5


def _gold_pt_set(gold: GoldCase, terminology: Terminology) -> set[str]:
    pts = set()
    for llt_id in gold.gold_llt_ids:
        entry = terminology.get(llt_id)
        if entry is None:
            raise EvaluationError(f"case {gold.case_id}: unknown gold llt_id {llt_id!r}")
        pts.add(entry.pt_id)
    return pts


def compare_case(
    gold: GoldCase, auto: EncodingResult, terminology: Terminology
) -> tuple[set[str], set[str], set[str]]:
    """Project both encodings to PT sets; returns (TP, FP, FN)."""
    gold_pts = _gold_pt_set(gold, terminology)
    auto_pts = auto.pt_ids()
    return auto_pts & gold_pts, auto_pts - gold_pts, gold_pts - auto_pts


@dataclass
class ClassReport:
    """Pooled counts and derived percentages for one length class."""

    reports: int = 0
    excluded: int = 0
    tp: int = 0
    fp: int = 0
    fn: int = 0
    common_pt_sum: float = 0.0
    common_pt_cases: int = 0

    @staticmethod
    def _pct(num: float, den: float) -> float:
        # Vacuous agreement (nothing to find, nothing found) reports 100.
        return 100.0 * num / den if den else 100.0

    @property
    def recall(self) -> float:
        return self._pct(self.tp, self.tp + self.fn)

    @property
    def precision(self) -> float:
        return self._pct(self.tp, self.tp + self.fp)

    @property
    def fn_pct(self) -> float:
        return self._pct(self.fn, self.tp + self.fn)

    @property
    def fp_pct(self) -> float:
        return self._pct(self.fp, self.tp + self.fp)

    @property
    def common_pt(self) -> float:
        """Mean per-case share of the human PTs that were also returned."""
        if not self.common_pt_cases:
            return 100.0
        return 100.0 * self.common_pt_sum / self.common_pt_cases

    def add_case(self, tp: set, fp: set, fn: set) -> None:
        self.reports += 1
        self.tp += len(tp)
        self.fp += len(fp)
        self.fn += len(fn)
        gold_size = len(tp) + len(fn)
        if gold_size:
            self.common_pt_sum += len(tp) / gold_size
            self.common_pt_cases += 1

    def merge(self, other: "ClassReport") -> None:
        self.reports += other.reports
        self.excluded += other.excluded
        self.tp += other.tp
        self.fp += other.fp
        self.fn += other.fn
        self.common_pt_sum += other.common_pt_sum
        self.common_pt_cases += other.common_pt_cases

    def to_dict(self) -> dict:
        return {
            "reports": self.reports,
            "excluded": self.excluded,
            "tp": self.tp,
            "fp": self.fp,
            "fn": self.fn,
            "common_pt": round(self.common_pt, 4),
            "fn_pct": round(self.fn_pct, 4),
            "fp_pct": round(self.fp_pct, 4),
            "recall": round(self.recall, 4),
            "precision": round(self.precision, 4),
        }


@dataclass
class EvalReport:
    per_class: dict[int, ClassReport]
    overall: ClassReport

    def to_dict(self) -> dict:
        return {
            "classes": {
                str(cls): dict(chars=_CLASS_LABELS[cls], **report.to_dict())
                for cls, report in sorted(self.per_class.items())
            },
            "overall": self.overall.to_dict(),
        }


def run_benchmark(corpus: Sequence[GoldCase], coder: TermCoder) -> EvalReport:
    """Encode every case and aggregate agreement per length class."""
    if not corpus:
        raise EvaluationError("empty corpus")
    per_class = {cls: ClassReport() for cls in range(1, 6)}
    overall = ClassReport()
    for case in corpus:
        cls = length_class(case.text)
        result = coder.encode(case.text)
        if result.candidates_total > coder.max_terms:
            per_class[cls].excluded += 1
            overall.excluded += 1
            continue
        tp, fp, fn = compare_case(case, result, coder.terminology_)
        per_class[cls].add_case(tp, fp, fn)
        overall.add_case(tp, fp, fn)
    return EvalReport(per_class=per_class, overall=overall)


def write_report_csv(report: EvalReport, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(CSV_FIELDS)
        for cls in sorted(report.per_class):
            r = report.per_class[cls]
            writer.writerow(_csv_row(str(cls), _CLASS_LABELS[cls], r))
        writer.writerow(_csv_row("overall", "", report.overall))


def _csv_row(label: str, chars: str, r: ClassReport) -> list:
    if r.reports == 0:
        return [label, chars, 0, "", "", "", "", ""]
    return [
        label,
        chars,
        r.reports,
        f"{r.common_pt:.4f}",
        f"{r.fn_pct:.4f}",
        f"{r.fp_pct:.4f}",
        f"{r.recall:.4f}",
        f"{r.precision:.4f}",
    ]


def write_report_json(report: EvalReport, path: str | Path) -> None:
    Path(path).write_text(json.dumps(report.to_dict(), indent=2) + "\n", encoding="utf-8")
