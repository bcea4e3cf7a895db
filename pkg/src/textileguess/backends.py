"""Text -> vector providers.

Two interchangeable backends sit behind one `embed` interface:

* MockEmbeddingBackend: a fully deterministic local embedder. Each token is
  hashed (FNV-1a 64) and the hash seeds a splitmix64 stream that fills the
  token's vector; the text vector is the count-weighted sum of its token
  vectors, normalised. Identical text gives bitwise-identical vectors in
  every process, which is what offline tests and fixtures rely on.

* RemoteEmbeddingBackend: an OpenAI-compatible HTTP client
  (POST {"model", "input"} -> {"data": [{"index": 0, "embedding": [...]}]}).
  Determinism is NOT assumed for remote models.
"""

from __future__ import annotations

import os
import threading
import time
from collections import Counter
from dataclasses import dataclass, field

import numpy as np
import requests

from .rng import fnv1a_64, splitmix64_fill, units_from_u64
from .textsplit import split_words

__all__ = [
    "BackendConfig",
    "BackendError",
    "MockEmbeddingBackend",
    "RemoteEmbeddingBackend",
    "make_backend",
]

DEFAULT_MODEL = "text-embedding-3-small"


class BackendError(RuntimeError):
    """Embedding provider failure: network, HTTP status or malformed body."""


@dataclass(frozen=True)
class BackendConfig:
    kind: str = "mock"  # "mock" or "remote"
    endpoint_url: str = ""
    model_name: str = DEFAULT_MODEL
    api_key_env: str = ""
    timeout: float = 30.0
    mock_dim: int = 256
    max_in_flight: int = 4

    def __post_init__(self):
        if self.kind not in ("mock", "remote"):
            raise ValueError(f"unknown backend kind: {self.kind!r}")
        if self.kind == "remote":
            if not self.endpoint_url:
                raise ValueError("remote backend requires endpoint_url")
            if not self.api_key_env:
                raise ValueError("remote backend requires api_key_env")
        if self.kind == "mock" and self.mock_dim < 8:
            raise ValueError("mock_dim must be >= 8")


def _require_text(text: str) -> str:
    if not isinstance(text, str) or not text.strip():
        raise ValueError("text to embed must be nonempty")
    return text


class MockEmbeddingBackend:
    """Deterministic bag-of-tokens embedder; see module docstring."""

    def __init__(self, config: BackendConfig | None = None, dim: int | None = None):
        if config is None:
            config = BackendConfig(kind="mock", mock_dim=dim if dim is not None else 256)
        if config.kind != "mock":
            raise ValueError("MockEmbeddingBackend requires a mock config")
        self.config = config
        self.dim = config.mock_dim
        self._token_cache: dict[str, np.ndarray] = {}

    @property
    def provenance(self) -> tuple[str, str]:
        return ("mock", f"fnv1a-splitmix64-{self.dim}d")

    def _token_vector(self, token: str) -> np.ndarray:
        vec = self._token_cache.get(token)
        if vec is None:
            seed = fnv1a_64(token.encode("utf-8"))
            vec = units_from_u64(splitmix64_fill(seed, self.dim))
            vec.flags.writeable = False
            self._token_cache[token] = vec
        return vec

    def embed(self, text: str) -> np.ndarray:
        _require_text(text)
        counts = Counter(split_words(text))
        if not counts:
            raise ValueError("text has no alphanumeric tokens to embed")
        total = np.zeros(self.dim, dtype=np.float64)
        # Sorted token order makes the sum independent of token position in
        # the input, bit for bit.
        for token in sorted(counts):
            total += counts[token] * self._token_vector(token)
        norm = float(np.linalg.norm(total))
        if norm == 0.0:
            raise ValueError("degenerate text embedding (token vectors cancelled)")
        return total / norm


class RemoteEmbeddingBackend:
    """OpenAI-compatible embeddings client over HTTP POST."""

    RETRY_ATTEMPTS = 2
    RETRY_SPACING = 1.0

    def __init__(self, config: BackendConfig, session: requests.Session | None = None):
        if config.kind != "remote":
            raise ValueError("RemoteEmbeddingBackend requires a remote config")
        self.config = config
        self._session = session or requests.Session()
        self._gate = threading.Semaphore(max(1, config.max_in_flight))

    @property
    def dim(self) -> int | None:
        return None  # determined by the provider's first response

    @property
    def provenance(self) -> tuple[str, str]:
        return ("remote", self.config.model_name)

    def _api_key(self) -> str:
        key = os.environ.get(self.config.api_key_env, "")
        if not key:
            raise BackendError(f"environment variable {self.config.api_key_env} is not set")
        return key

    def embed(self, text: str) -> np.ndarray:
        _require_text(text)
        payload = {"model": self.config.model_name, "input": text}
        headers = {"Authorization": f"Bearer {self._api_key()}"}
        last_error: Exception | None = None
        for attempt in range(self.RETRY_ATTEMPTS):
            if attempt:
                time.sleep(self.RETRY_SPACING)
            try:
                with self._gate:
                    response = self._session.post(
                        self.config.endpoint_url,
                        json=payload,
                        headers=headers,
                        timeout=self.config.timeout,
                    )
            except requests.RequestException as exc:
                last_error = BackendError(f"embedding request failed: {exc}")
                continue
            if 500 <= response.status_code < 600:
                last_error = BackendError(f"embedding server error: HTTP {response.status_code}")
                continue
            if not 200 <= response.status_code < 300:
                # Client errors are not retried; the provider's verdict stands.
                raise BackendError(
                    f"embedding request rejected: HTTP {response.status_code}: {response.text[:200]}"
                )
            return self._parse(response)
        assert last_error is not None
        raise last_error

    def _parse(self, response: requests.Response) -> np.ndarray:
        try:
            body = response.json()
            values = body["data"][0]["embedding"]
            vec = np.asarray(values, dtype=np.float64)
        except (ValueError, KeyError, IndexError, TypeError) as exc:
            raise BackendError(f"malformed embedding response: {exc}") from exc
        if vec.ndim != 1 or vec.size == 0 or not np.all(np.isfinite(vec)):
            raise BackendError("malformed embedding response: not a finite vector")
        return vec


def make_backend(config: BackendConfig, session: requests.Session | None = None):
    if config.kind == "mock":
        return MockEmbeddingBackend(config)
    return RemoteEmbeddingBackend(config, session=session)
