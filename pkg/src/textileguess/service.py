"""HTTP surface for live play and the metrics dashboard.

Every mutating endpoint maps 1:1 onto one engine transition; illegal
transitions come back as 4xx with neither the session registry nor the
log touched. The JSONL log is the single source of truth: GET /metrics
replays it rather than trusting any in-memory tally, and sessions still
open at shutdown are logged as abandoned (excluded from metrics).
"""

from __future__ import annotations

import threading
from contextlib import asynccontextmanager

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from .backends import BackendError
from .catalog import Catalog, EmbeddingStore
from .engine import (
    Assignment,
    GameSession,
    PlanError,
    SessionConfig,
    SessionState,
    WrongStateError,
    judge,
    plan_assignments,
    start_session,
    submit_description,
)
from .metrics import build_report
from .sessionlog import SessionLog, replay_log

__all__ = ["SessionRegistry", "create_app"]


class SessionRegistry:
    """Live sessions with single-writer locking per session."""

    def __init__(self):
        self._sessions: dict[str, GameSession] = {}
        self._locks: dict[str, threading.Lock] = {}
        self._registry_lock = threading.Lock()

    def add(self, session: GameSession) -> None:
        with self._registry_lock:
            self._sessions[session.session_id] = session
            self._locks[session.session_id] = threading.Lock()

    def get(self, session_id: str) -> tuple[GameSession, threading.Lock]:
        with self._registry_lock:
            session = self._sessions.get(session_id)
            lock = self._locks.get(session_id)
        if session is None or lock is None:
            raise KeyError(session_id)
        return session, lock

    def all_sessions(self) -> list[GameSession]:
        with self._registry_lock:
            return list(self._sessions.values())


class StartRequest(BaseModel):
    target_id: int
    reference_id: int


class DescribeRequest(BaseModel):
    text: str


class JudgeRequest(BaseModel):
    correct: bool
    validity: int | None = Field(default=None, ge=1, le=10)
    similarity: int | None = Field(default=None, ge=1, le=10)


class PlanRequest(BaseModel):
    seed: int = 0


def _session_view(session: GameSession) -> dict:
    return {
        "session_id": session.session_id,
        "target_id": session.assignment.target_id,
        "reference_id": session.assignment.reference_id,
        "shown_reference_id": session.shown_reference_id,
        "state": session.state.value,
        "max_attempts": session.config.max_attempts,
        "attempts": [
            {
                "index": a.index,
                "new_description": a.new_description,
                "predicted_id": a.predicted_id,
                "judgment": a.judgment.value,
                "validity": a.validity,
                "similarity": a.similarity,
            }
            for a in session.attempts
        ],
    }


def create_app(
    catalog: Catalog,
    store: EmbeddingStore,
    backend,
    session_config: SessionConfig | None = None,
    log_path: str = "sessions.jsonl",
) -> FastAPI:
    session_config = session_config or SessionConfig()
    registry = SessionRegistry()
    log = SessionLog(log_path)

    @asynccontextmanager
    async def lifespan(app: FastAPI):
        yield
        for session in registry.all_sessions():
            if session.state not in (SessionState.WON, SessionState.LOST):
                log.session_end(session.session_id, "abandoned", detail="service shutdown")
        log.close()

    app = FastAPI(title="textile guessing service", lifespan=lifespan)
    app.add_middleware(
        CORSMiddleware, allow_origins=["*"], allow_methods=["*"], allow_headers=["*"]
    )

    @app.post("/sessions", status_code=201)
    def start(request: StartRequest):
        try:
            assignment = Assignment(target_id=request.target_id, reference_id=request.reference_id)
            session = start_session(assignment, store, session_config)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        registry.add(session)
        log.session_start(session.session_id, assignment.target_id, assignment.reference_id)
        return _session_view(session)

    def _locked_session(session_id: str) -> tuple[GameSession, threading.Lock]:
        try:
            return registry.get(session_id)
        except KeyError as exc:
            raise HTTPException(status_code=404, detail=f"unknown session {session_id}") from exc

    @app.post("/sessions/{session_id}/describe")
    def describe(session_id: str, request: DescribeRequest):
        session, lock = _locked_session(session_id)
        with lock:
            try:
                predicted_id, scores = submit_description(
                    session, request.text, store, backend, session_config
                )
            except WrongStateError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            except BackendError as exc:
                raise HTTPException(status_code=502, detail=str(exc)) from exc
            attempt = session.attempts[-1]
            log.attempt(
                session_id,
                attempt_index=attempt.index,
                new_description=request.text,
                accumulated_query=attempt.accumulated_query,
                predicted_id=predicted_id,
                scores=scores,
            )
            return {
                "session_id": session_id,
                "predicted_id": predicted_id,
                "attempt_index": attempt.index,
                "state": session.state.value,
            }

    @app.post("/sessions/{session_id}/judge")
    def judge_attempt(session_id: str, request: JudgeRequest):
        session, lock = _locked_session(session_id)
        with lock:
            try:
                judge(session, request.correct, request.validity, request.similarity)
            except WrongStateError as exc:
                raise HTTPException(status_code=409, detail=str(exc)) from exc
            except ValueError as exc:
                raise HTTPException(status_code=422, detail=str(exc)) from exc
            attempt = session.attempts[-1]
            log.judgment(
                session_id, attempt.index, request.correct, request.validity, request.similarity
            )
            if session.state is SessionState.WON:
                log.session_end(session_id, "won")
            elif session.state is SessionState.LOST:
                log.session_end(session_id, "lost")
            return _session_view(session)

    @app.get("/sessions/{session_id}")
    def show(session_id: str):
        session, lock = _locked_session(session_id)
        with lock:
            return _session_view(session)

    @app.get("/catalog")
    def show_catalog():
        return {
            "samples": [
                {"id": s.id, "name": s.name, "fibre_category": s.fibre_category.value}
                for s in catalog
            ]
        }

    @app.get("/metrics")
    def metrics():
        records = replay_log(log_path)
        if not records:
            return {"total_tasks": 0, "report": None}
        report = build_report(records, catalog)
        return {"total_tasks": len(records), "report": report.to_dict()}

    @app.post("/plan")
    def plan(request: PlanRequest):
        try:
            result = plan_assignments(catalog, request.seed)
        except PlanError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from exc
        return {
            "seed": result.seed,
            "pairs": [
                {"target_id": p.target_id, "reference_id": p.reference_id} for p in result.pairs
            ],
        }

    return app
