import math

import numpy as np
import pytest

from textileguess.vectors import RankedMatch, blend, cosine, normalize, top_k


def oracle_top_k(probe, store, k, excluded=()):
    """Brute force: score every candidate, full sort, slice.

    Kept independent of textileguess.vectors on purpose; it recomputes the
    cosines from raw numpy calls.
    """
    probe = np.asarray(probe, dtype=np.float64)
    rows = []
    for cid, vec in store.items():
        if cid in set(excluded):
            continue
        vec = np.asarray(vec, dtype=np.float64)
        value = float(np.dot(probe, vec)) / (
            float(np.linalg.norm(probe)) * float(np.linalg.norm(vec))
        )
        rows.append((cid, min(1.0, max(-1.0, value))))
    rows.sort(key=lambda row: (-row[1], row[0]))
    return rows[:k]


class TestNormalize:
    def test_three_four_five(self):
        assert np.allclose(normalize([3.0, 4.0]), [0.6, 0.8], atol=1e-9)

    def test_already_unit(self):
        assert np.allclose(normalize([1.0, 0.0, 0.0]), [1.0, 0.0, 0.0], atol=1e-9)

    def test_symmetric_components(self):
        expected = [1.0 / math.sqrt(2.0)] * 2
        assert np.allclose(normalize([2.0, 2.0]), expected, atol=1e-9)
        assert np.allclose(normalize([2.0, 2.0]), [0.70710678, 0.70710678], atol=1e-8)

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            normalize([0.0, 0.0, 0.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            normalize([])

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            normalize([1.0, float("nan")])

    def test_unit_norm_property(self):
        rng = np.random.RandomState(1234)
        for _ in range(1000):
            dim = rng.randint(1, 65)
            v = rng.uniform(-10.0, 10.0, size=dim)
            if np.linalg.norm(v) == 0.0:
                continue
            assert abs(np.linalg.norm(normalize(v)) - 1.0) <= 1e-9


class TestCosine:
    def test_identical_direction(self):
        assert cosine([1.0, 0.0], [1.0, 0.0]) == 1.0

    def test_orthogonal(self):
        assert cosine([1.0, 0.0], [0.0, 1.0]) == 0.0

    def test_hand_arithmetic(self):
        # a.b = 4 + 10 + 18 = 32; |a| = sqrt(14), |b| = sqrt(77)
        expected = 32.0 / (math.sqrt(14.0) * math.sqrt(77.0))
        got = cosine([1.0, 2.0, 3.0], [4.0, 5.0, 6.0])
        assert abs(got - expected) <= 1e-12
        assert abs(got - 0.97463185) <= 1e-8

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            cosine([1.0, 0.0], [1.0, 0.0, 0.0])

    def test_zero_vector(self):
        with pytest.raises(ValueError):
            cosine([0.0, 0.0], [1.0, 0.0])

    def test_symmetry_bitwise(self):
        rng = np.random.RandomState(99)
        for _ in range(1000):
            dim = rng.randint(1, 65)
            a = rng.uniform(-5.0, 5.0, size=dim)
            b = rng.uniform(-5.0, 5.0, size=dim)
            if np.linalg.norm(a) == 0.0 or np.linalg.norm(b) == 0.0:
                continue
            assert cosine(a, b) == cosine(b, a)

    def test_scale_invariance(self):
        rng = np.random.RandomState(7)
        for _ in range(1000):
            dim = rng.randint(1, 65)
            a = rng.uniform(-5.0, 5.0, size=dim)
            b = rng.uniform(-5.0, 5.0, size=dim)
            if np.linalg.norm(a) == 0.0 or np.linalg.norm(b) == 0.0:
                continue
            c = rng.uniform(0.1, 100.0)
            assert abs(cosine(c * a, b) - cosine(a, b)) <= 1e-9

    def test_clamped_to_range(self):
        rng = np.random.RandomState(41)
        for _ in range(200):
            v = rng.uniform(-1.0, 1.0, size=16)
            if np.linalg.norm(v) == 0.0:
                continue
            assert -1.0 <= cosine(v, 3.7 * v) <= 1.0


class TestBlend:
    def test_orthogonal_unit_sum(self):
        expected = [1.0 / math.sqrt(2.0)] * 2
        assert np.allclose(blend([1.0, 0.0], [0.0, 1.0]), expected, atol=1e-9)

    def test_collinear(self):
        assert np.allclose(blend([1.0, 0.0], [1.0, 0.0]), [1.0, 0.0], atol=1e-9)

    def test_hand_arithmetic(self):
        got = blend([1.0, 0.0], [0.6, 0.8])
        expected = np.array([1.6, 0.8]) / math.sqrt(1.6**2 + 0.8**2)
        assert np.allclose(got, expected, atol=1e-12)
        assert np.allclose(got, [0.89442719, 0.44721360], atol=1e-8)

    def test_degenerate_sum(self):
        with pytest.raises(ValueError):
            blend([1.0, 0.0], [-1.0, 0.0])

    def test_matches_normalize_of_sum(self):
        rng = np.random.RandomState(17)
        for _ in range(1000):
            dim = rng.randint(1, 65)
            u = rng.uniform(-3.0, 3.0, size=dim)
            w = rng.uniform(-3.0, 3.0, size=dim)
            if np.linalg.norm(u + w) == 0.0:
                continue
            assert np.array_equal(blend(u, w), normalize(u + w))


class TestTopK:
    def test_exact_match_present(self):
        store = {1: np.array([1.0, 0.0]), 2: np.array([0.0, 1.0]), 3: np.array([-1.0, 0.0])}
        assert top_k([1.0, 0.0], store, k=1) == [RankedMatch(1, 1.0)]

    def test_exclusion(self):
        store = {1: np.array([1.0, 0.0]), 2: np.array([0.6, 0.8])}
        result = top_k([1.0, 0.0], store, k=1, excluded={1})
        assert result[0].id == 2
        assert abs(result[0].score - 0.6) <= 1e-12

    def test_tie_breaks_to_lower_id(self):
        inv = 1.0 / math.sqrt(2.0)
        store = {1: np.array([1.0, 0.0]), 2: np.array([0.0, 1.0])}
        result = top_k([inv, inv], store, k=1)
        assert result[0].id == 1
        assert abs(result[0].score - inv) <= 1e-12

    def test_empty_after_exclusion(self):
        store = {1: np.array([1.0, 0.0])}
        with pytest.raises(ValueError):
            top_k([1.0, 0.0], store, k=1, excluded={1})

    def test_k_of_store_size_returns_every_id(self):
        rng = np.random.RandomState(3)
        for _ in range(50):
            n = rng.randint(1, 30)
            dim = rng.randint(1, 16)
            store = {}
            for cid in range(n):
                v = rng.uniform(-1.0, 1.0, size=dim)
                while np.linalg.norm(v) == 0.0:
                    v = rng.uniform(-1.0, 1.0, size=dim)
                store[cid] = v
            probe = rng.uniform(-1.0, 1.0, size=dim)
            if np.linalg.norm(probe) == 0.0:
                continue
            result = top_k(probe, store, k=n)
            assert sorted(m.id for m in result) == sorted(store)

    def test_agrees_with_bruteforce_oracle(self):
        rng = np.random.RandomState(2024)
        for trial in range(1000):
            n = rng.randint(2, 51)
            dim = rng.randint(2, 65)
            store = {}
            for cid in range(n):
                v = rng.uniform(-1.0, 1.0, size=dim)
                while np.linalg.norm(v) == 0.0:
                    v = rng.uniform(-1.0, 1.0, size=dim)
                store[cid] = v
            # Engineer cosine ties: some entries are exact duplicates of
            # earlier ones, so their scores agree bit for bit.
            if trial % 3 == 0 and n >= 4:
                store[n - 1] = store[0].copy()
                store[n - 2] = store[1].copy()
            probe = rng.uniform(-1.0, 1.0, size=dim)
            if np.linalg.norm(probe) == 0.0:
                continue
            k = rng.randint(1, n + 1)
            excluded = set(rng.choice(n, size=rng.randint(0, n - 1), replace=False).tolist())
            got = top_k(probe, store, k=k, excluded=excluded)
            want = oracle_top_k(probe, store, k=k, excluded=excluded)
            assert [m.id for m in got] == [cid for cid, _ in want]
