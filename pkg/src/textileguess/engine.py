"""Guessing-session state machine and assignment planner.

A session walks a fixed loop: the player describes the hidden target,
the engine embeds the accumulated description, blends it with the
reference anchor, retrieves the nearest catalog vector, and waits for a
correctness judgment. Wrong guesses collect 1-10 validity/similarity
ratings and hand the guessed textile to the player as the new shown
reference; the session ends on a correct guess or at the attempt cap.

The planner builds the balanced task list: every sample is the target
exactly four times, once against a reference from each fibre category.
"""

from __future__ import annotations

import uuid
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .catalog import Catalog, EmbeddingStore, FibreCategory
from .rng import SplitMix64
from .vectors import blend, cosine, top_k

__all__ = [
    "BRIDGE_SENTENCE",
    "ExclusionPolicy",
    "RebasePolicy",
    "SessionState",
    "Judgment",
    "SessionConfig",
    "Assignment",
    "Attempt",
    "GameSession",
    "AssignmentPlan",
    "WrongStateError",
    "PlanError",
    "accumulate_query",
    "start_session",
    "submit_description",
    "judge",
    "plan_assignments",
]

# Appended between the previous accumulated query and each follow-up
# description. Byte-exact: downstream prompts and the tests depend on it.
BRIDGE_SENTENCE = (
    "You were asked to guess with the following additional information "
    "because your previous answer was wrong."
)


class WrongStateError(RuntimeError):
    """Operation not legal in the session's current state."""


class PlanError(ValueError):
    """Assignment plan cannot satisfy the category-coverage rule."""


class ExclusionPolicy(str, Enum):
    REFERENCE_AND_PRIOR_GUESSES = "reference_and_prior_guesses"
    PRIOR_GUESSES_ONLY = "prior_guesses_only"
    NONE = "none"


class RebasePolicy(str, Enum):
    FIXED_START = "fixed_start"
    REBASE_TO_LAST_GUESS = "rebase_to_last_guess"


class SessionState(str, Enum):
    AWAITING_DESCRIPTION = "awaiting_description"
    AWAITING_JUDGMENT = "awaiting_judgment"
    WON = "won"
    LOST = "lost"


class Judgment(str, Enum):
    PENDING = "pending"
    CORRECT = "correct"
    INCORRECT = "incorrect"


@dataclass(frozen=True)
class SessionConfig:
    max_attempts: int = 5
    k: int = 1
    exclusion_policy: ExclusionPolicy = ExclusionPolicy.REFERENCE_AND_PRIOR_GUESSES
    rebase_policy: RebasePolicy = RebasePolicy.FIXED_START

    def __post_init__(self):
        if self.max_attempts < 1:
            raise ValueError("max_attempts must be >= 1")
        if self.k < 1:
            raise ValueError("k must be >= 1")


@dataclass(frozen=True)
class Assignment:
    target_id: int
    reference_id: int

    def __post_init__(self):
        if self.target_id == self.reference_id:
            raise ValueError("target and reference must differ")


@dataclass
class Attempt:
    index: int  # 1-based
    new_description: str
    accumulated_query: str
    predicted_id: int
    score_snapshot: dict[int, float]
    judgment: Judgment = Judgment.PENDING
    validity: int | None = None
    similarity: int | None = None


@dataclass
class GameSession:
    session_id: str
    assignment: Assignment
    shown_reference_id: int
    config: SessionConfig
    attempts: list[Attempt] = field(default_factory=list)
    state: SessionState = SessionState.AWAITING_DESCRIPTION

    @property
    def accumulated_query(self) -> str:
        return self.attempts[-1].accumulated_query if self.attempts else ""


@dataclass(frozen=True)
class AssignmentPlan:
    pairs: tuple[Assignment, ...]
    seed: int


def accumulate_query(previous: str, new_description: str) -> str:
    """Append a follow-up description to the running query.

    The first description is taken verbatim; later ones are joined with the
    bridge sentence, single spaces throughout. Append-only: the previous
    query is always an exact prefix of the result.
    """
    if not new_description or not new_description.strip():
        raise ValueError("new description must be nonempty")
    if not previous:
        return new_description
    return f"{previous} {BRIDGE_SENTENCE} {new_description}"


def start_session(
    assignment: Assignment,
    store: EmbeddingStore,
    config: SessionConfig | None = None,
    session_id: str | None = None,
) -> GameSession:
    """Open a fresh session awaiting its first description."""
    config = config or SessionConfig()
    for sample_id in (assignment.target_id, assignment.reference_id):
        if sample_id not in store:
            raise KeyError(f"unknown catalog id {sample_id}")
    return GameSession(
        session_id=session_id or uuid.uuid4().hex,
        assignment=assignment,
        shown_reference_id=assignment.reference_id,
        config=config,
    )


def _excluded_ids(session: GameSession) -> set[int]:
    policy = session.config.exclusion_policy
    if policy is ExclusionPolicy.NONE:
        return set()
    excluded = {a.predicted_id for a in session.attempts}
    if policy is ExclusionPolicy.REFERENCE_AND_PRIOR_GUESSES:
        excluded.add(session.assignment.reference_id)
    return excluded


def _anchor_vector(session: GameSession, store: EmbeddingStore) -> np.ndarray:
    if session.config.rebase_policy is RebasePolicy.REBASE_TO_LAST_GUESS and session.attempts:
        return store[session.attempts[-1].predicted_id]
    return store[session.assignment.reference_id]


def submit_description(
    session: GameSession,
    text: str,
    store: EmbeddingStore,
    backend,
    config: SessionConfig | None = None,
) -> tuple[int, dict[int, float]]:
    """Run one describe->predict step and move to awaiting_judgment.

    The accumulated query (not just the newest sentence) is embedded, blended
    with the anchor vector, and matched against the store. All failures leave
    the session untouched; the attempt is appended only once the prediction
    exists.
    """
    cfg = config or session.config
    if session.state is not SessionState.AWAITING_DESCRIPTION:
        raise WrongStateError(f"cannot submit a description in state {session.state.value}")
    if len(session.attempts) >= cfg.max_attempts:
        raise WrongStateError("attempt cap already reached")
    accumulated = accumulate_query(session.accumulated_query, text)
    v_query = backend.embed(accumulated)
    v_predict = blend(_anchor_vector(session, store), v_query)
    matches = top_k(v_predict, store, k=cfg.k, excluded=_excluded_ids(session))
    snapshot = {cid: cosine(v_predict, vec) for cid, vec in store.items()}
    predicted_id = matches[0].id
    session.attempts.append(
        Attempt(
            index=len(session.attempts) + 1,
            new_description=text,
            accumulated_query=accumulated,
            predicted_id=predicted_id,
            score_snapshot=snapshot,
        )
    )
    session.state = SessionState.AWAITING_JUDGMENT
    return predicted_id, snapshot


def _check_rating(name: str, value) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ValueError(f"{name} must be an integer from 1 to 10")
    if not 1 <= value <= 10:
        raise ValueError(f"{name} must be between 1 and 10, got {value}")
    return value


def judge(
    session: GameSession,
    correct: bool,
    validity: int | None = None,
    similarity: int | None = None,
) -> GameSession:
    """Record the player's verdict on the pending guess.

    A correct guess carries implicit top ratings and wins the session; an
    incorrect one requires explicit 1-10 validity and similarity ratings,
    hands the guessed textile over as the new shown reference, and loses the
    session once the attempt cap is reached.
    """
    if session.state is not SessionState.AWAITING_JUDGMENT:
        raise WrongStateError(f"cannot judge in state {session.state.value}")
    attempt = session.attempts[-1]
    if correct:
        if validity is not None or similarity is not None:
            raise ValueError("ratings are implicit (10, 10) on a correct guess")
        attempt.judgment = Judgment.CORRECT
        attempt.validity = 10
        attempt.similarity = 10
        session.state = SessionState.WON
        return session
    checked_validity = _check_rating("validity", validity)
    checked_similarity = _check_rating("similarity", similarity)
    attempt.judgment = Judgment.INCORRECT
    attempt.validity = checked_validity
    attempt.similarity = checked_similarity
    if len(session.attempts) >= session.config.max_attempts:
        session.state = SessionState.LOST
    else:
        session.state = SessionState.AWAITING_DESCRIPTION
        session.shown_reference_id = attempt.predicted_id
    return session


CATEGORY_ORDER = (
    FibreCategory.NATURAL,
    FibreCategory.ANIMAL,
    FibreCategory.REGENERATED,
    FibreCategory.SYNTHETIC,
)


def plan_assignments(catalog: Catalog, seed: int) -> AssignmentPlan:
    """Build the balanced task list for one full run over the catalog.

    Each sample is the target four times, paired with one reference drawn
    from every fibre category (its own category is allowed as long as the
    reference is a different sample). Reference picks and the final pair
    order are driven by a splitmix64 stream, so equal seeds give equal
    plans.
    """
    by_category = {
        category: sorted(catalog.in_category(category), key=lambda s: s.id)
        for category in CATEGORY_ORDER
    }
    for category, members in by_category.items():
        if not members:
            raise PlanError(f"no samples in category {category.value}")
    rng = SplitMix64(seed)
    pairs: list[Assignment] = []
    for target in catalog:
        for category in CATEGORY_ORDER:
            candidates = [s for s in by_category[category] if s.id != target.id]
            if not candidates:
                raise PlanError(
                    f"target {target.id} has no {category.value} reference other than itself"
                )
            pick = candidates[rng.next_below(len(candidates))]
            pairs.append(Assignment(target_id=target.id, reference_id=pick.id))
    rng.shuffle(pairs)
    return AssignmentPlan(pairs=tuple(pairs), seed=seed)
