"""JSON configuration for the service and CLI.

Shape: {"backend": {...}, "session": {...}, "service": {...}}; every
section and key is optional and falls back to defaults (mock backend,
bundled catalog, standard session rules).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .backends import BackendConfig
from .engine import ExclusionPolicy, RebasePolicy, SessionConfig

__all__ = ["ServiceConfig", "AppConfig", "load_config"]


@dataclass(frozen=True)
class ServiceConfig:
    host: str = "127.0.0.1"
    port: int = 8077
    log_path: str = "sessions.jsonl"
    catalog_path: str | None = None  # None -> bundled catalog
    store_path: str | None = None  # None -> build from the backend at startup


@dataclass(frozen=True)
class AppConfig:
    backend: BackendConfig = field(default_factory=BackendConfig)
    session: SessionConfig = field(default_factory=SessionConfig)
    service: ServiceConfig = field(default_factory=ServiceConfig)


def _session_from(doc: dict) -> SessionConfig:
    kwargs = dict(doc)
    if "exclusion_policy" in kwargs:
        kwargs["exclusion_policy"] = ExclusionPolicy(kwargs["exclusion_policy"])
    if "rebase_policy" in kwargs:
        kwargs["rebase_policy"] = RebasePolicy(kwargs["rebase_policy"])
    return SessionConfig(**kwargs)


def load_config(path: str | None) -> AppConfig:
    if path is None:
        return AppConfig()
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    if not isinstance(doc, dict):
        raise ValueError("config file must hold a JSON object")
    return AppConfig(
        backend=BackendConfig(**doc.get("backend", {})),
        session=_session_from(doc.get("session", {})),
        service=ServiceConfig(**doc.get("service", {})),
    )
