"""Closed-loop batch simulation with scripted stand-in players.

An oracle player emits the target's rendered description (optionally
degraded by truncation or token dropout) at every attempt; judgment is
automatic (predicted id == target id). Ratings on wrong guesses are a
documented synthetic convention so the metrics pipeline sees realistic
data: round(1 + 9 * (cos + 1) / 2) of the guess/target cosine, clamped to
1..10. They are machine scores, not human judgments, and are labelled
synthetic everywhere they surface.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .backends import BackendError
from .catalog import Catalog, EmbeddingStore, render_description
from .engine import (
    AssignmentPlan,
    GameSession,
    SessionConfig,
    SessionState,
    judge,
    start_session,
    submit_description,
)
from .metrics import AttemptOutcome, TaskRecord
from .rng import SplitMix64
from .sessionlog import SessionLog
from .vectors import cosine

__all__ = ["OracleStrategy", "simulate", "synthetic_rating"]

STRATEGY_KINDS = ("verbatim", "truncate", "token_dropout")


@dataclass(frozen=True)
class OracleStrategy:
    kind: str = "verbatim"
    param: float = 0.0  # truncate: fraction kept; token_dropout: fraction dropped
    seed: int = 0

    def __post_init__(self):
        if self.kind not in STRATEGY_KINDS:
            raise ValueError(f"unknown strategy kind {self.kind!r}")
        if not 0.0 <= self.param <= 1.0:
            raise ValueError("param must be in [0, 1]")

    def emit(self, description: str, rng: SplitMix64) -> str:
        if self.kind == "verbatim":
            return description
        words = description.split()
        if self.kind == "truncate":
            keep = max(1, math.floor(self.param * len(words) + 0.5))
            return " ".join(words[:keep])
        kept = [w for w in words if rng.next_unit() >= self.param]
        return " ".join(kept)


def synthetic_rating(guess_vec, target_vec) -> int:
    """Map the guess/target cosine onto the 1..10 rating scale (half-up)."""
    normalized = (cosine(guess_vec, target_vec) + 1.0) / 2.0
    return min(10, max(1, math.floor(1.0 + 9.0 * normalized + 0.5)))


def simulate(
    plan: AssignmentPlan,
    strategy: OracleStrategy,
    catalog: Catalog,
    store: EmbeddingStore,
    backend,
    config: SessionConfig | None = None,
    log: SessionLog | None = None,
) -> list[TaskRecord]:
    """Play every plan pair to termination and return the completed records.

    Failures inside one task (backend errors, or a strategy that degrades
    the description to nothing) end that task with a logged error outcome
    and the simulation moves on. Output is deterministic for a fixed plan,
    strategy and the mock backend.
    """
    config = config or SessionConfig()
    rng = SplitMix64(strategy.seed)
    records: list[TaskRecord] = []

    for task_index, assignment in enumerate(plan.pairs):
        session_id = f"sim-{plan.seed}-{task_index:04d}"
        session = start_session(assignment, store, config, session_id=session_id)
        if log:
            log.session_start(session_id, assignment.target_id, assignment.reference_id)
        base_description = render_description(catalog.by_id(assignment.target_id))
        error: str | None = None

        while session.state is SessionState.AWAITING_DESCRIPTION:
            text = strategy.emit(base_description, rng)
            try:
                predicted_id, scores = submit_description(session, text, store, backend, config)
            except (ValueError, BackendError) as exc:
                error = str(exc)
                break
            attempt = session.attempts[-1]
            if log:
                log.attempt(
                    session_id,
                    attempt_index=attempt.index,
                    new_description=text,
                    accumulated_query=attempt.accumulated_query,
                    predicted_id=predicted_id,
                    scores=scores,
                )
            if predicted_id == assignment.target_id:
                judge(session, correct=True)
                if log:
                    log.judgment(session_id, attempt.index, True, None, None, synthetic=True)
            else:
                rating = synthetic_rating(store[predicted_id], store[assignment.target_id])
                judge(session, correct=False, validity=rating, similarity=rating)
                if log:
                    log.judgment(session_id, attempt.index, False, rating, rating, synthetic=True)

        if error is not None:
            if log:
                log.session_end(session_id, "error", detail=error)
            continue
        outcome = "won" if session.state is SessionState.WON else "lost"
        if log:
            log.session_end(session_id, outcome)
        records.append(_to_record(session, outcome))
    return records


def _to_record(session: GameSession, outcome: str) -> TaskRecord:
    attempts = tuple(
        AttemptOutcome(
            predicted_id=a.predicted_id,
            judgment=a.judgment.value,
            validity=a.validity,
            similarity=a.similarity,
        )
        for a in session.attempts
    )
    return TaskRecord(
        session_id=session.session_id,
        target_id=session.assignment.target_id,
        initial_reference_id=session.assignment.reference_id,
        outcome=outcome,
        attempts=attempts,
    )
