"""Embedding-based textile guessing: engine, measurement and corpus tools."""

from .backends import BackendConfig, BackendError, MockEmbeddingBackend, RemoteEmbeddingBackend, make_backend
from .catalog import (
    Catalog,
    CatalogError,
    EmbeddingStore,
    FibreCategory,
    TextileSample,
    build_embedding_store,
    load_bundled_catalog,
    load_catalog,
    load_store,
    render_description,
    save_store,
)
from .corpus import KeywordList, ScanResult, builtin_color_keywords, scan, textile_keywords_from
from .engine import (
    Assignment,
    AssignmentPlan,
    Attempt,
    ExclusionPolicy,
    GameSession,
    Judgment,
    RebasePolicy,
    SessionConfig,
    SessionState,
    WrongStateError,
    accumulate_query,
    judge,
    plan_assignments,
    start_session,
    submit_description,
)
from .metrics import (
    AttemptOutcome,
    MetricsReport,
    TaskRecord,
    attempt_stats,
    build_report,
    confusion_matrix,
    export_report,
    score_stats,
    success_rate,
)
from .sessionlog import SessionLog, replay_events, replay_log
from .simulate import OracleStrategy, simulate
from .vectors import RankedMatch, blend, cosine, normalize, top_k

__version__ = "0.1.0"
