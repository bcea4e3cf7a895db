"""Append-only JSONL session log.

One event per line: session_start, attempt, judgment, session_end. The log
is the single source of truth for metrics; anything the aggregator reports
must be recomputable from these lines alone. Sessions without a won/lost
session_end (abandoned or errored) are kept in the file but excluded from
replay.
"""

from __future__ import annotations

import json
import threading
from datetime import datetime, timezone
from typing import IO, Iterable, Iterator

from .metrics import AttemptOutcome, TaskRecord

__all__ = ["SessionLog", "read_events", "replay_events", "replay_log"]


def _now() -> str:
    return datetime.now(timezone.utc).isoformat()


class SessionLog:
    """Serialised appender: one writer lock, flush after every event."""

    def __init__(self, path: str):
        self.path = path
        self._lock = threading.Lock()
        self._fh: IO[str] | None = open(path, "a", encoding="utf-8")

    def append(self, event: dict) -> None:
        if self._fh is None:
            raise RuntimeError("session log is closed")
        record = {"ts": _now(), **event}
        line = json.dumps(record, ensure_ascii=False)
        with self._lock:
            self._fh.write(line + "\n")
            self._fh.flush()

    def session_start(self, session_id: str, target_id: int, reference_id: int) -> None:
        self.append(
            {
                "event": "session_start",
                "session_id": session_id,
                "target_id": target_id,
                "reference_id": reference_id,
            }
        )

    def attempt(
        self,
        session_id: str,
        attempt_index: int,
        new_description: str,
        accumulated_query: str,
        predicted_id: int,
        scores: dict[int, float],
    ) -> None:
        self.append(
            {
                "event": "attempt",
                "session_id": session_id,
                "attempt_index": attempt_index,
                "new_description": new_description,
                "accumulated_query": accumulated_query,
                "predicted_id": predicted_id,
                "scores": {str(k): v for k, v in scores.items()},
            }
        )

    def judgment(
        self,
        session_id: str,
        attempt_index: int,
        correct: bool,
        validity: int | None,
        similarity: int | None,
        synthetic: bool = False,
    ) -> None:
        event = {
            "event": "judgment",
            "session_id": session_id,
            "attempt_index": attempt_index,
            "correct": correct,
            "validity": validity,
            "similarity": similarity,
        }
        if synthetic:
            event["synthetic"] = True
        self.append(event)

    def session_end(self, session_id: str, outcome: str, detail: str | None = None) -> None:
        event = {"event": "session_end", "session_id": session_id, "outcome": outcome}
        if detail:
            event["detail"] = detail
        self.append(event)

    def close(self) -> None:
        with self._lock:
            if self._fh is not None:
                self._fh.flush()
                self._fh.close()
                self._fh = None

    def __enter__(self) -> "SessionLog":
        return self

    def __exit__(self, *exc) -> None:
        self.close()


def read_events(path: str) -> Iterator[dict]:
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                yield json.loads(line)
            except json.JSONDecodeError as exc:
                raise ValueError(f"{path}:{lineno}: malformed log line: {exc}") from exc


def replay_events(events: Iterable[dict]) -> list[TaskRecord]:
    """Rebuild completed TaskRecords from raw log events.

    Events may interleave across sessions. Only sessions that ended in won
    or lost become records; abandoned and errored sessions are skipped.
    Records come out in the order the sessions ended.
    """
    starts: dict[str, dict] = {}
    attempts: dict[str, dict[int, dict]] = {}
    judgments: dict[str, dict[int, dict]] = {}
    ended: list[tuple[str, str]] = []
    for event in events:
        kind = event.get("event")
        sid = event.get("session_id")
        if not sid:
            raise ValueError(f"log event without session_id: {event!r}")
        if kind == "session_start":
            starts[sid] = event
        elif kind == "attempt":
            attempts.setdefault(sid, {})[int(event["attempt_index"])] = event
        elif kind == "judgment":
            judgments.setdefault(sid, {})[int(event["attempt_index"])] = event
        elif kind == "session_end":
            ended.append((sid, event["outcome"]))
        else:
            raise ValueError(f"unknown log event type: {kind!r}")

    records: list[TaskRecord] = []
    for sid, outcome in ended:
        if outcome not in ("won", "lost"):
            continue
        start = starts.get(sid)
        if start is None:
            raise ValueError(f"session {sid} ended without a session_start event")
        session_attempts = attempts.get(sid, {})
        session_judgments = judgments.get(sid, {})
        outcomes = []
        for index in sorted(session_attempts):
            attempt = session_attempts[index]
            verdict = session_judgments.get(index)
            if verdict is None:
                raise ValueError(f"session {sid}: attempt {index} has no judgment")
            correct = bool(verdict["correct"])
            outcomes.append(
                AttemptOutcome(
                    predicted_id=int(attempt["predicted_id"]),
                    judgment="correct" if correct else "incorrect",
                    validity=10 if correct else int(verdict["validity"]),
                    similarity=10 if correct else int(verdict["similarity"]),
                )
            )
        records.append(
            TaskRecord(
                session_id=sid,
                target_id=int(start["target_id"]),
                initial_reference_id=int(start["reference_id"]),
                outcome=outcome,
                attempts=tuple(outcomes),
            )
        )
    return records


def replay_log(path: str) -> list[TaskRecord]:
    return replay_events(read_events(path))
