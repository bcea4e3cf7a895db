"""Walk through the vector primitives the guessing engine is built on.

Run: python3 demos/01_vector_search.py
"""

import numpy as np

from textileguess import blend, cosine, normalize, top_k

print("=== normalisation ===")
v = [3.0, 4.0]
print(f"normalize({v}) -> {normalize(v)}")

print("\n=== cosine similarity ===")
a, b = [1.0, 2.0, 3.0], [4.0, 5.0, 6.0]
print(f"cosine({a}, {b}) = {cosine(a, b):.8f}")
print(f"cosine of orthogonal axes = {cosine([1, 0], [0, 1]):.1f}")

print("\n=== blending a reference with a query ===")
reference = normalize([1.0, 0.0])
query = [0.6, 0.8]
blended = blend(reference, query)
print(f"blend({reference}, {query}) = {blended}")
print("the blend is the normalised sum: the query pulled toward the reference")

print("\n=== exact top-k retrieval ===")
store = {
    1: normalize([1.0, 0.0, 0.0]),
    2: normalize([0.8, 0.6, 0.0]),
    3: normalize([0.0, 0.0, 1.0]),
}
probe = normalize([0.9, 0.3, 0.1])
for match in top_k(probe, store, k=3):
    print(f"  id {match.id}: cosine {match.score:.4f}")

print("\nexcluding id 1 (say, it is the reference the player already holds):")
for match in top_k(probe, store, k=2, excluded={1}):
    print(f"  id {match.id}: cosine {match.score:.4f}")

print("\nties break toward the lower id, so retrieval is fully deterministic:")
tied = top_k(normalize([1.0, 1.0]), {1: np.array([1.0, 0.0]), 2: np.array([0.0, 1.0])}, k=2)
print(f"  equidistant probe -> {[m.id for m in tied]}")
