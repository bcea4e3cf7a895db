"""The textile sample pool and its embedding store.

A catalog is a validated list of samples, each carrying a fibre
meta-category and the nine template fields that expand into its
natural-language description. The embedding store maps sample ids to
unit vectors built from those descriptions; it is produced once and then
reused read-only by every game session.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from typing import IO, Iterator

import numpy as np

from .backends import BackendError
from .vectors import as_vector

__all__ = [
    "FibreCategory",
    "TextileSample",
    "Catalog",
    "EmbeddingStore",
    "CatalogError",
    "load_catalog",
    "load_bundled_catalog",
    "render_description",
    "build_embedding_store",
    "load_store",
    "save_store",
]


class CatalogError(ValueError):
    """Malformed or inconsistent catalog document."""


class FibreCategory(str, Enum):
    NATURAL = "natural"
    ANIMAL = "animal"
    REGENERATED = "regenerated"
    SYNTHETIC = "synthetic"


TEMPLATE_FIELDS = (
    "characteristic",
    "sample_book_info",
    "composition",
    "raw_material",
    "fibre_characteristic",
    "fabric",
    "produce_method",
    "fabric_characteristic",
    "application",
)

# Every template field must be present and nonempty except the sample-book
# note, which some sample books simply do not provide.
OPTIONAL_FIELDS = ("sample_book_info",)


@dataclass(frozen=True)
class TextileSample:
    id: int
    name: str
    fibre_category: FibreCategory
    template_fields: dict[str, str]

    def __post_init__(self):
        if not isinstance(self.id, int) or self.id < 1:
            raise CatalogError(f"sample id must be a positive integer, got {self.id!r}")
        if not self.name or not self.name.strip():
            raise CatalogError(f"sample {self.id}: name is empty")
        unknown = set(self.template_fields) - set(TEMPLATE_FIELDS)
        if unknown:
            raise CatalogError(f"sample {self.id}: unknown template fields {sorted(unknown)}")
        for key in TEMPLATE_FIELDS:
            if key in OPTIONAL_FIELDS:
                continue
            if not str(self.template_fields.get(key, "")).strip():
                raise CatalogError(f"sample {self.id}: missing template field {key!r}")


@dataclass(frozen=True)
class Catalog:
    samples: tuple[TextileSample, ...]

    def __post_init__(self):
        ids = [s.id for s in self.samples]
        if len(ids) != len(set(ids)):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise CatalogError(f"duplicate sample ids: {dupes}")

    def __len__(self) -> int:
        return len(self.samples)

    def __iter__(self) -> Iterator[TextileSample]:
        return iter(self.samples)

    def ids(self) -> list[int]:
        return [s.id for s in self.samples]

    def by_id(self, sample_id: int) -> TextileSample:
        for s in self.samples:
            if s.id == sample_id:
                return s
        raise KeyError(f"no sample with id {sample_id}")

    def in_category(self, category: FibreCategory) -> list[TextileSample]:
        return [s for s in self.samples if s.fibre_category == category]


def load_catalog(source: IO[bytes] | bytes | str) -> Catalog:
    """Parse and validate a catalog JSON document.

    Accepts raw bytes/str or a readable binary stream. The document shape is
    {"samples": [{"id", "name", "fibre_category", "template_fields": {...}}]}.
    """
    if hasattr(source, "read"):
        raw = source.read()
    else:
        raw = source
    try:
        doc = json.loads(raw)
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise CatalogError(f"malformed catalog document: {exc}") from exc
    if not isinstance(doc, dict) or not isinstance(doc.get("samples"), list):
        raise CatalogError("catalog document must be an object with a 'samples' list")
    samples = []
    for entry in doc["samples"]:
        if not isinstance(entry, dict):
            raise CatalogError(f"sample entry is not an object: {entry!r}")
        try:
            sample_id = entry["id"]
            name = entry["name"]
            category_raw = entry["fibre_category"]
            fields = entry["template_fields"]
        except KeyError as exc:
            raise CatalogError(f"sample entry missing key {exc}") from exc
        try:
            category = FibreCategory(category_raw)
        except ValueError:
            raise CatalogError(f"sample {sample_id}: unknown fibre category {category_raw!r}") from None
        if not isinstance(fields, dict):
            raise CatalogError(f"sample {sample_id}: template_fields must be an object")
        samples.append(
            TextileSample(
                id=sample_id,
                name=name,
                fibre_category=category,
                template_fields={k: str(v) for k, v in fields.items()},
            )
        )
    return Catalog(samples=tuple(samples))


def load_bundled_catalog() -> Catalog:
    """The 20-sample catalog shipped with the package (5 per fibre category)."""
    data = resources.files("textileguess").joinpath("data/catalog.json").read_bytes()
    return load_catalog(data)


def render_description(sample: TextileSample) -> str:
    """Expand a sample into its templated description.

    Byte-deterministic for equal inputs. The optional sample-book sentence is
    omitted entirely when the field is empty.
    """
    f = {key: str(sample.template_fields.get(key, "")).strip() for key in TEMPLATE_FIELDS}
    for key in TEMPLATE_FIELDS:
        if key in OPTIONAL_FIELDS:
            continue
        if not f[key]:
            raise CatalogError(f"sample {sample.id}: empty template field {key!r}")
    parts = [f"{sample.name} is {f['characteristic']}."]
    if f["sample_book_info"]:
        parts.append(f"{f['sample_book_info']}.")
    parts.append(
        f"{f['composition']}, is a {sample.fibre_category.value} produced by "
        f"{f['raw_material']}, {f['fibre_characteristic']}."
    )
    parts.append(f"{f['fabric']} is {f['produce_method']} and {f['fabric_characteristic']}.")
    parts.append(f"{sample.name} is commonly used for {f['application']}.")
    return " ".join(parts)


@dataclass
class EmbeddingStore:
    """Immutable id -> unit-vector map with provenance.

    Exposes the read-only mapping protocol so retrieval helpers can consume
    it directly.
    """

    entries: dict[int, np.ndarray]
    dim: int
    model: str
    backend: str = ""

    def __post_init__(self):
        for sample_id, vec in self.entries.items():
            arr = as_vector(vec).copy()
            if arr.size != self.dim:
                raise ValueError(f"entry {sample_id}: dimension {arr.size} != store dim {self.dim}")
            norm = float(np.linalg.norm(arr))
            if abs(norm - 1.0) > 1e-9:
                raise ValueError(f"entry {sample_id}: vector is not unit norm ({norm})")
            arr.flags.writeable = False
            self.entries[sample_id] = arr

    def __len__(self) -> int:
        return len(self.entries)

    def __contains__(self, sample_id: int) -> bool:
        return sample_id in self.entries

    def __getitem__(self, sample_id: int) -> np.ndarray:
        return self.entries[sample_id]

    def keys(self):
        return self.entries.keys()

    def items(self):
        return self.entries.items()


def build_embedding_store(catalog: Catalog, backend) -> EmbeddingStore:
    """Embed every sample's rendered description into one unit-vector store.

    Raw backend output is re-normalised on ingestion even if the provider
    claims unit norm; the blend and similarity formulas assume unit vectors.
    Any backend failure aborts the build, naming the failing sample, so a
    partial store can never escape.
    """
    if len(catalog) == 0:
        raise CatalogError("cannot build a store from an empty catalog")
    entries: dict[int, np.ndarray] = {}
    dim: int | None = None
    for sample in catalog:
        text = render_description(sample)
        try:
            raw = backend.embed(text)
        except (BackendError, ValueError) as exc:
            raise BackendError(f"embedding failed for sample {sample.id}: {exc}") from exc
        vec = as_vector(raw)
        if dim is None:
            dim = vec.size
        elif vec.size != dim:
            raise BackendError(
                f"dimension drift: sample {sample.id} returned {vec.size}, expected {dim}"
            )
        norm = float(np.linalg.norm(vec))
        if norm == 0.0:
            raise BackendError(f"embedding failed for sample {sample.id}: zero vector")
        entries[sample.id] = vec / norm
    backend_kind, model = backend.provenance
    assert dim is not None
    return EmbeddingStore(entries=entries, dim=dim, model=model, backend=backend_kind)


def save_store(store: EmbeddingStore, path: str) -> None:
    """Write the store cache file: {"model", "dim", "entries"}.

    Floats are serialised at full repr precision so a load round-trips
    exactly; equal stores produce byte-identical files.
    """
    doc = {
        "model": store.model,
        "dim": store.dim,
        "entries": {str(k): [float(x) for x in v] for k, v in sorted(store.entries.items())},
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(doc, fh, indent=1)
        fh.write("\n")


def load_store(path: str) -> EmbeddingStore:
    with open(path, "r", encoding="utf-8") as fh:
        doc = json.load(fh)
    try:
        entries = {int(k): np.asarray(v, dtype=np.float64) for k, v in doc["entries"].items()}
        return EmbeddingStore(entries=entries, dim=int(doc["dim"]), model=str(doc["model"]), backend="cache")
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed store cache {path}: {exc}") from exc
