import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dtws import brute_force_dtw, dtw, local_cost_matrix
from dtws.errors import EmptySequenceError, InfeasibleWindowError, SequenceTooLongError

floats = st.floats(min_value=-100, max_value=100, allow_nan=False)
short_seq = st.lists(floats, min_size=1, max_size=6)


def check_path(path, n, m, tau=None):
    assert path[0] == (1, 1)
    assert path[-1] == (n, m)
    for (i0, j0), (i1, j1) in zip(path, path[1:]):
        assert i1 - i0 in (0, 1) and j1 - j0 in (0, 1)
        assert (i1, j1) != (i0, j0)
    assert {i for i, _ in path} == set(range(1, n + 1))
    assert {j for _, j in path} == set(range(1, m + 1))
    if tau is not None:
        assert all(abs(i - j) <= tau for i, j in path)


class TestExamples:
    def test_identical_sequences(self):
        r = dtw([3.0, 1.0, 4.0], [3.0, 1.0, 4.0])
        assert r.distance == 0.0
        assert r.path == ((1, 1), (2, 2), (3, 3))

    def test_constant_offset_scalars(self):
        assert dtw([0.0, 0.0], [1.0, 1.0]).distance == pytest.approx(2.0)

    def test_small_known_instance(self):
        assert dtw([1.0, 2.0, 3.0], [1.0, 3.0]).distance == pytest.approx(1.0)
        assert brute_force_dtw([1.0, 2.0, 3.0], [1.0, 3.0]) == pytest.approx(1.0)

    def test_path_properties(self):
        rng = np.random.default_rng(0)
        a = rng.normal(size=(9, 3))
        b = rng.normal(size=(6, 3))
        r = dtw(a, b)
        check_path(r.path, 9, 6)
        assert r.distance == pytest.approx(
            sum(local_cost_matrix(a, b)[i - 1, j - 1] for i, j in r.path)
        )

    def test_windowed_path_stays_in_band(self):
        rng = np.random.default_rng(1)
        a = rng.normal(size=12)
        b = rng.normal(size=10)
        r = dtw(a, b, tau=3)
        check_path(r.path, 12, 10, tau=3)


class TestErrors:
    def test_empty_sequence(self):
        with pytest.raises(EmptySequenceError):
            dtw([], [1.0])

    def test_infeasible_window(self):
        with pytest.raises(InfeasibleWindowError):
            dtw([1.0, 2.0, 3.0, 4.0], [1.0], tau=1)

    def test_brute_force_guard(self):
        with pytest.raises(SequenceTooLongError):
            brute_force_dtw(list(range(11)), [1.0, 2.0])

    def test_unknown_cost(self):
        with pytest.raises(ValueError):
            dtw([1.0], [1.0], cost="manhattan")


class TestCosineCost:
    def test_zero_vector_conventions(self):
        a = np.array([[0.0, 0.0], [1.0, 0.0]])
        b = np.array([[0.0, 0.0], [0.0, 2.0]])
        c = local_cost_matrix(a, b, "cosine_distance")
        assert c[0, 0] == 0.0  # both zero
        assert c[0, 1] == 1.0  # one zero
        assert c[1, 0] == 1.0
        assert c[1, 1] == pytest.approx(1.0)  # orthogonal

    def test_aligned_vectors_cost_zero(self):
        a = np.array([[1.0, 1.0]])
        b = np.array([[3.0, 3.0]])
        assert local_cost_matrix(a, b, "cosine_distance")[0, 0] == pytest.approx(0.0)


class TestOracleEquivalence:
    @given(short_seq, short_seq)
    @settings(derandomize=True, max_examples=60, deadline=None)
    def test_matches_brute_force(self, a, b):
        assert dtw(a, b).distance == pytest.approx(brute_force_dtw(a, b), abs=1e-9)

    @given(short_seq, short_seq, st.integers(min_value=0, max_value=3))
    @settings(derandomize=True, max_examples=60, deadline=None)
    def test_matches_brute_force_windowed(self, a, b, extra):
        tau = abs(len(a) - len(b)) + extra
        assert dtw(a, b, tau=tau).distance == pytest.approx(
            brute_force_dtw(a, b, tau=tau), abs=1e-9
        )


class TestWindowProperties:
    def test_symmetry(self):
        rng = np.random.default_rng(2)
        for _ in range(20):
            a = rng.normal(size=rng.integers(2, 12))
            b = rng.normal(size=rng.integers(2, 12))
            assert dtw(a, b).distance == pytest.approx(dtw(b, a).distance, abs=1e-9)

    def test_widening_never_increases_distance(self):
        rng = np.random.default_rng(3)
        a = rng.normal(size=14)
        b = rng.normal(size=11)
        base = abs(len(a) - len(b))
        dists = [dtw(a, b, tau=base + k).distance for k in range(0, 8)]
        assert all(x >= y - 1e-12 for x, y in zip(dists, dists[1:]))

    def test_full_window_equals_unbounded(self):
        rng = np.random.default_rng(4)
        a = rng.normal(size=9)
        b = rng.normal(size=13)
        assert dtw(a, b, tau=max(len(a), len(b))).distance == pytest.approx(
            dtw(a, b).distance
        )

    def test_self_distance_zero_any_cost(self):
        rng = np.random.default_rng(5)
        v = rng.normal(size=(7, 4))
        for cost in ("squared_euclidean", "cosine_distance"):
            assert dtw(v, v, cost=cost).distance == pytest.approx(0.0, abs=1e-12)
        s = rng.normal(size=9)
        assert dtw(s, s, cost="absolute_scalar").distance == 0.0
