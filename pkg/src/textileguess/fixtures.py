"""Deterministic synthetic session data for demos and dashboard smoke runs.

Builds a reference log over the bundled catalog: 80 tasks (every sample
targeted four times), 362 attempts in total, 18 of the tasks won, so the
overall success rate is exactly 18/80 = 0.225. Ratings are pseudo-random
but fixed; two invocations produce identical records.
"""

from __future__ import annotations

import sys

from .catalog import Catalog, load_bundled_catalog
from .engine import plan_assignments
from .metrics import AttemptOutcome, TaskRecord
from .rng import SplitMix64
from .sessionlog import SessionLog

__all__ = ["make_reference_records", "write_reference_log"]

PLAN_SEED = 7

# Every task targeting silk satin (id 8) is won, matching a catalog item
# with perfect alignment; these other targets win once each. 4 + 14 = 18.
ALWAYS_WON_TARGET = 8
SINGLE_WIN_TARGETS = (2, 3, 5, 6, 9, 11, 12, 13, 14, 15, 16, 17, 19, 20)

# Attempt counts for the 18 winning tasks, in plan order. Sum = 52, so with
# 62 losses at the 5-attempt cap the log holds 62*5 + 52 = 362 attempts.
WON_ATTEMPT_COUNTS = (2, 3, 4, 1, 3, 3, 2, 4, 3, 3, 5, 2, 3, 4, 3, 2, 3, 2)


def make_reference_records(catalog: Catalog | None = None) -> list[TaskRecord]:
    catalog = catalog or load_bundled_catalog()
    plan = plan_assignments(catalog, seed=PLAN_SEED)
    rng = SplitMix64(0xF1C)
    ids = catalog.ids()

    won_seen: set[int] = set()
    won_counts = iter(WON_ATTEMPT_COUNTS)
    records: list[TaskRecord] = []
    for i, pair in enumerate(plan.pairs):
        target, reference = pair.target_id, pair.reference_id
        win = target == ALWAYS_WON_TARGET or (
            target in SINGLE_WIN_TARGETS and target not in won_seen
        )
        won_seen.add(target)
        n_attempts = next(won_counts) if win else 5

        used = {target, reference}
        attempts: list[AttemptOutcome] = []
        for attempt_index in range(1, n_attempts + 1):
            if win and attempt_index == n_attempts:
                attempts.append(
                    AttemptOutcome(predicted_id=target, judgment="correct", validity=10, similarity=10)
                )
                continue
            candidates = [cid for cid in ids if cid not in used]
            predicted = candidates[rng.next_below(len(candidates))]
            used.add(predicted)
            attempts.append(
                AttemptOutcome(
                    predicted_id=predicted,
                    judgment="incorrect",
                    validity=1 + rng.next_below(10),
                    similarity=1 + rng.next_below(10),
                )
            )
        records.append(
            TaskRecord(
                session_id=f"fixture-{i:04d}",
                target_id=target,
                initial_reference_id=reference,
                outcome="won" if win else "lost",
                attempts=tuple(attempts),
            )
        )
    return records


def write_reference_log(path: str, catalog: Catalog | None = None) -> list[TaskRecord]:
    """Serialise the reference records as a session log at `path`."""
    records = make_reference_records(catalog)
    with SessionLog(path) as log:
        for record in records:
            log.session_start(record.session_id, record.target_id, record.initial_reference_id)
            query = ""
            for index, attempt in enumerate(record.attempts, start=1):
                text = f"fixture description {attempt.predicted_id}"
                query = f"{query} {text}".strip()
                log.attempt(
                    record.session_id,
                    attempt_index=index,
                    new_description=text,
                    accumulated_query=query,
                    predicted_id=attempt.predicted_id,
                    scores={},
                )
                correct = attempt.judgment == "correct"
                log.judgment(
                    record.session_id,
                    attempt_index=index,
                    correct=correct,
                    validity=None if correct else attempt.validity,
                    similarity=None if correct else attempt.similarity,
                    synthetic=True,
                )
            log.session_end(record.session_id, record.outcome)
    return records


if __name__ == "__main__":
    out = sys.argv[1] if len(sys.argv) > 1 else "reference_log.jsonl"
    written = write_reference_log(out)
    print(f"wrote {len(written)} sessions to {out}")
