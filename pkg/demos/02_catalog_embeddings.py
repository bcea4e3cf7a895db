"""Load the bundled textile catalog and build its embedding store.

Run: python3 demos/02_catalog_embeddings.py
"""

import tempfile
from pathlib import Path

from textileguess import (
    MockEmbeddingBackend,
    build_embedding_store,
    load_bundled_catalog,
    load_store,
    render_description,
    save_store,
    top_k,
)

catalog = load_bundled_catalog()
print(f"catalog: {len(catalog)} samples")
for category in ("natural", "animal", "regenerated", "synthetic"):
    names = [s.name for s in catalog if s.fibre_category.value == category]
    print(f"  {category:12s}: {', '.join(names)}")

print("\n=== templated description (id 8) ===")
print(render_description(catalog.by_id(8)))

print("\n=== building the embedding store (deterministic mock backend) ===")
backend = MockEmbeddingBackend(dim=256)
store = build_embedding_store(catalog, backend)
print(f"store: {len(store)} unit vectors, dim {store.dim}, model {store.model}")

with tempfile.TemporaryDirectory() as tmp:
    cache = Path(tmp) / "store.json"
    save_store(store, str(cache))
    reloaded = load_store(str(cache))
    print(f"cache round-trip ok: {len(reloaded)} entries, dim {reloaded.dim}")

print("\n=== nearest samples to a free-text touch description ===")
probe = backend.embed("smooth slippery cool glossy lustrous drape")
for match in top_k(probe, store, k=5):
    print(f"  {match.score:+.4f}  id {match.id:2d}  {catalog.by_id(match.id).name}")
