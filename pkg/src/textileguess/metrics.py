"""Aggregation of completed sessions into alignment measurements.

Success rates, attempt-count statistics, validity/similarity score
statistics and distributions (failed attempts only; a correct guess is
implicitly rated 10/10 and excluded), and the target-vs-predicted
confusion matrix. Conventions: standard deviations are sample std
(divide by n-1); empty subsets yield absent values, never silent zeros;
the confusion matrix counts every attempt by default, with a final-only
mode behind a flag.
"""

from __future__ import annotations

import csv
import json
import os
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .catalog import Catalog

__all__ = [
    "AttemptOutcome",
    "TaskRecord",
    "ScoreStats",
    "MetricsReport",
    "success_rate",
    "attempt_stats",
    "score_stats",
    "confusion_matrix",
    "build_report",
    "export_report",
]

RATING_BINS = tuple(range(1, 11))


@dataclass(frozen=True)
class AttemptOutcome:
    predicted_id: int
    judgment: str  # "correct" | "incorrect"
    validity: int
    similarity: int

    def __post_init__(self):
        if self.judgment not in ("correct", "incorrect"):
            raise ValueError(f"bad judgment {self.judgment!r}")
        for name, value in (("validity", self.validity), ("similarity", self.similarity)):
            if not 1 <= int(value) <= 10:
                raise ValueError(f"{name} out of range: {value}")


@dataclass(frozen=True)
class TaskRecord:
    session_id: str
    target_id: int
    initial_reference_id: int
    outcome: str  # "won" | "lost"
    attempts: tuple[AttemptOutcome, ...]

    def __post_init__(self):
        if self.outcome not in ("won", "lost"):
            raise ValueError(f"bad outcome {self.outcome!r}")
        if not self.attempts:
            raise ValueError("a task record needs at least one attempt")
        final_correct = self.attempts[-1].judgment == "correct"
        if final_correct != (self.outcome == "won"):
            raise ValueError("outcome inconsistent with the final judgment")
        for attempt in self.attempts[:-1]:
            if attempt.judgment == "correct":
                raise ValueError("a session ends at its first correct guess")


def _require_records(records: Sequence[TaskRecord]) -> Sequence[TaskRecord]:
    if not records:
        raise ValueError("no records to aggregate")
    return records


def _mean_std(values: list[float]) -> tuple[float, float | None]:
    mean = float(np.mean(values))
    std = float(np.std(values, ddof=1)) if len(values) > 1 else None
    return mean, std


def success_rate(records: Sequence[TaskRecord]) -> tuple[float, dict[int, float]]:
    """Overall and per-target fraction of tasks won."""
    _require_records(records)
    wins = sum(1 for r in records if r.outcome == "won")
    overall = wins / len(records)
    per_target: dict[int, float] = {}
    targets = sorted({r.target_id for r in records})
    for target in targets:
        mine = [r for r in records if r.target_id == target]
        per_target[target] = sum(1 for r in mine if r.outcome == "won") / len(mine)
    return overall, per_target


def attempt_stats(records: Sequence[TaskRecord]) -> dict[str, float | None]:
    """Attempt-count mean/std over all tasks and over won tasks.

    The successful-subset entries are None when nothing was won; std is
    None below two observations (sample convention).
    """
    _require_records(records)
    counts_all = [len(r.attempts) for r in records]
    counts_won = [len(r.attempts) for r in records if r.outcome == "won"]
    avg_all, std_all = _mean_std(counts_all)
    if counts_won:
        avg_won, std_won = _mean_std(counts_won)
    else:
        avg_won, std_won = None, None
    return {
        "avg_all": avg_all,
        "std_all": std_all,
        "avg_successful": avg_won,
        "std_successful": std_won,
    }


@dataclass(frozen=True)
class ScoreStats:
    mean: float
    std: float | None
    histogram: dict[int, int]  # rating 1..10 -> count
    count: int

    def to_dict(self) -> dict:
        return {
            "mean": self.mean,
            "std": self.std,
            "histogram": {str(k): v for k, v in self.histogram.items()},
            "count": self.count,
        }


def _failed_attempts(records: Sequence[TaskRecord]) -> list[AttemptOutcome]:
    return [a for r in records for a in r.attempts if a.judgment == "incorrect"]


def _stats_for(values: list[int]) -> ScoreStats | None:
    if not values:
        return None
    mean, std = _mean_std([float(v) for v in values])
    histogram = {b: 0 for b in RATING_BINS}
    for v in values:
        histogram[v] += 1
    return ScoreStats(mean=mean, std=std, histogram=histogram, count=len(values))


def score_stats(records: Sequence[TaskRecord]) -> tuple[ScoreStats | None, ScoreStats | None]:
    """Validity and similarity statistics over failed attempts only.

    Implicit 10/10 ratings from correct guesses are excluded; with no
    failed attempts both results are None (absent, not zero).
    """
    _require_records(records)
    failed = _failed_attempts(records)
    validity = _stats_for([a.validity for a in failed])
    similarity = _stats_for([a.similarity for a in failed])
    return validity, similarity


def confusion_matrix(
    records: Sequence[TaskRecord],
    catalog: Catalog,
    per_attempt: bool = True,
) -> np.ndarray:
    """Counts of (actual target, predicted) pairs, catalog id order.

    Rows index the actual target, columns the prediction. Every attempt is
    counted by default; per_attempt=False counts only each task's final
    attempt.
    """
    _require_records(records)
    ids = catalog.ids()
    index = {cid: i for i, cid in enumerate(ids)}
    matrix = np.zeros((len(ids), len(ids)), dtype=np.int64)
    for record in records:
        if record.target_id not in index:
            raise KeyError(f"unknown target id {record.target_id}")
        attempts = record.attempts if per_attempt else record.attempts[-1:]
        for attempt in attempts:
            if attempt.predicted_id not in index:
                raise KeyError(f"unknown predicted id {attempt.predicted_id}")
            matrix[index[record.target_id], index[attempt.predicted_id]] += 1
    return matrix


@dataclass
class MetricsReport:
    total_tasks: int
    wins: int
    total_attempts: int
    overall_success_rate: float
    per_textile: list[dict]  # id, name, targeted, success_rate, mean_validity, mean_similarity
    attempts: dict[str, float | None]
    validity: ScoreStats | None
    similarity: ScoreStats | None
    confusion_ids: list[int]
    confusion: list[list[int]]
    metadata: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "total_tasks": self.total_tasks,
            "wins": self.wins,
            "total_attempts": self.total_attempts,
            "overall_success_rate": self.overall_success_rate,
            "per_textile": self.per_textile,
            "attempts": self.attempts,
            "validity": self.validity.to_dict() if self.validity else None,
            "similarity": self.similarity.to_dict() if self.similarity else None,
            "confusion_ids": self.confusion_ids,
            "confusion": self.confusion,
            "metadata": self.metadata,
        }


def build_report(
    records: Sequence[TaskRecord],
    catalog: Catalog,
    per_attempt: bool = True,
    synthetic_ratings: bool = False,
) -> MetricsReport:
    """Aggregate records into one report covering every measurement."""
    _require_records(records)
    overall, per_target_rate = success_rate(records)
    stats = attempt_stats(records)
    validity, similarity = score_stats(records)
    matrix = confusion_matrix(records, catalog, per_attempt=per_attempt)

    per_textile = []
    for sample in catalog:
        mine = [r for r in records if r.target_id == sample.id]
        failed = _failed_attempts(mine)
        v = _stats_for([a.validity for a in failed])
        s = _stats_for([a.similarity for a in failed])
        per_textile.append(
            {
                "id": sample.id,
                "name": sample.name,
                "targeted": len(mine),
                "success_rate": per_target_rate.get(sample.id),
                "mean_validity": v.mean if v else None,
                "mean_similarity": s.mean if s else None,
            }
        )

    return MetricsReport(
        total_tasks=len(records),
        wins=sum(1 for r in records if r.outcome == "won"),
        total_attempts=sum(len(r.attempts) for r in records),
        overall_success_rate=overall,
        per_textile=per_textile,
        attempts=stats,
        validity=validity,
        similarity=similarity,
        confusion_ids=catalog.ids(),
        confusion=matrix.tolist(),
        metadata={
            "std_convention": "sample (ddof=1)",
            "confusion_mode": "per_attempt" if per_attempt else "final_only",
            "synthetic_ratings": synthetic_ratings,
        },
    )


def _cell(value: float | None) -> str:
    # Absent statistics stay empty in CSV; zero would fabricate a value.
    return "" if value is None else repr(value)


def export_report(report: MetricsReport, destination: str) -> list[str]:
    """Write per_textile.csv, histograms.json, confusion.csv and summary.json.

    Output is byte-deterministic for equal reports: fixed key order, repr
    floats, '\\n' line endings.
    """
    os.makedirs(destination, exist_ok=True)
    written = []

    per_textile_path = os.path.join(destination, "per_textile.csv")
    with open(per_textile_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["id", "name", "success_rate", "mean_validity", "mean_similarity"])
        for row in report.per_textile:
            writer.writerow(
                [
                    row["id"],
                    row["name"],
                    _cell(row["success_rate"]),
                    _cell(row["mean_validity"]),
                    _cell(row["mean_similarity"]),
                ]
            )
    written.append(per_textile_path)

    histograms_path = os.path.join(destination, "histograms.json")
    with open(histograms_path, "w", encoding="utf-8") as fh:
        json.dump(
            {
                "validity": report.validity.to_dict() if report.validity else None,
                "similarity": report.similarity.to_dict() if report.similarity else None,
                "metadata": report.metadata,
            },
            fh,
            indent=1,
            sort_keys=True,
        )
        fh.write("\n")
    written.append(histograms_path)

    confusion_path = os.path.join(destination, "confusion.csv")
    with open(confusion_path, "w", encoding="utf-8", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["actual_id"] + [f"predicted_{cid}" for cid in report.confusion_ids])
        for cid, row in zip(report.confusion_ids, report.confusion):
            writer.writerow([cid] + list(row))
    written.append(confusion_path)

    summary_path = os.path.join(destination, "summary.json")
    with open(summary_path, "w", encoding="utf-8") as fh:
        json.dump(report.to_dict(), fh, indent=1, sort_keys=True)
        fh.write("\n")
    written.append(summary_path)

    return written
