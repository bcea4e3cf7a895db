"""Vector math for the guessing engine.

Normalisation, cosine similarity, the reference+query blend and exact
top-k retrieval over a small store of unit vectors. Catalog-scale stores
(tens of entries) make an exhaustive scan both correct and fast, so there
is deliberately no ANN index here.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple, Sequence

import numpy as np

__all__ = ["RankedMatch", "as_vector", "normalize", "cosine", "blend", "top_k"]


class RankedMatch(NamedTuple):
    id: int
    score: float


def as_vector(v: Sequence[float] | np.ndarray) -> np.ndarray:
    """Validate and convert to a float64 1-D array.

    Raises ValueError for empty input or non-finite components.
    """
    arr = np.asarray(v, dtype=np.float64)
    if arr.ndim != 1 or arr.size == 0:
        raise ValueError("vector must be 1-D with at least one component")
    if not np.all(np.isfinite(arr)):
        raise ValueError("vector has non-finite components")
    return arr


def normalize(v: Sequence[float] | np.ndarray) -> np.ndarray:
    """Divide v by its Euclidean norm. Direction is preserved.

    Raises ValueError on a zero vector (no direction to preserve).
    """
    arr = as_vector(v)
    norm = float(np.linalg.norm(arr))
    if norm == 0.0:
        raise ValueError("cannot normalize a zero vector")
    return arr / norm


def cosine(a: Sequence[float] | np.ndarray, b: Sequence[float] | np.ndarray) -> float:
    """Cosine similarity (a.b)/(|a||b|), clamped to [-1, 1].

    The dot product is computed once, so cosine(a, b) and cosine(b, a) are
    bitwise identical. Floating point can overshoot +/-1 by ~1e-16 for
    near-parallel vectors; the clamp removes that.
    """
    va = as_vector(a)
    vb = as_vector(b)
    if va.shape != vb.shape:
        raise ValueError(f"dimension mismatch: {va.size} vs {vb.size}")
    na = float(np.linalg.norm(va))
    nb = float(np.linalg.norm(vb))
    if na == 0.0 or nb == 0.0:
        raise ValueError("cosine undefined for a zero vector")
    value = float(np.dot(va, vb)) / (na * nb)
    return min(1.0, max(-1.0, value))


def blend(v_start: Sequence[float] | np.ndarray, v_query: Sequence[float] | np.ndarray) -> np.ndarray:
    """normalize(v_start + v_query): the query pulled toward the reference.

    Raises ValueError when the sum is the zero vector (v_query exactly
    opposes v_start), which has no meaningful direction.
    """
    vs = as_vector(v_start)
    vq = as_vector(v_query)
    if vs.shape != vq.shape:
        raise ValueError(f"dimension mismatch: {vs.size} vs {vq.size}")
    total = vs + vq
    if float(np.linalg.norm(total)) == 0.0:
        raise ValueError("degenerate blend: query exactly cancels the start vector")
    return normalize(total)


def top_k(
    probe: Sequence[float] | np.ndarray,
    store: "Mapping[int, np.ndarray]",
    k: int,
    excluded: Iterable[int] = (),
) -> list[RankedMatch]:
    """Exact top-k retrieval by cosine similarity over a store of vectors.

    `store` is anything mapping id -> vector (an EmbeddingStore works:
    it exposes the mapping protocol). Results are sorted by descending
    score with ties broken by ascending id, so retrieval is fully
    deterministic. Excluded ids never appear.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    probe_v = as_vector(probe)
    skip = set(excluded)
    scored: list[RankedMatch] = []
    for cid, vec in store.items():
        if cid in skip:
            continue
        scored.append(RankedMatch(cid, cosine(probe_v, vec)))
    if not scored:
        raise ValueError("no candidates remain after exclusion")
    scored.sort(key=lambda m: (-m.score, m.id))
    return scored[:k]
