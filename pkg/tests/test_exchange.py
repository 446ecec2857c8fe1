import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tropclust.exchange import ExchangeMatrix, NotSkewSymmetrizable, find_skew_symmetrizer, mutate_matrix, pq_matrices
from tropclust.sampling import RandomRunConfig, random_exchange_matrix


def test_symmetrizer_examples():
    assert find_skew_symmetrizer([[0, -1], [1, 0]]) == (1, 1)
    assert find_skew_symmetrizer([[0, -1], [2, 0]]) == (2, 1)
    with pytest.raises(NotSkewSymmetrizable):
        find_skew_symmetrizer([[0, 1], [1, 0]])


def test_symmetrizer_handles_disconnected_blocks():
    d = find_skew_symmetrizer([[0, 0, 0], [0, 0, -1], [0, 2, 0]])
    assert d[1:] == (2, 1)


def test_mutate_a2():
    B = ExchangeMatrix([[0, -1], [1, 0]])
    assert mutate_matrix(B, 0).tolist() == [[0, 1], [-1, 0]]


def test_mutate_a3_middle():
    B = ExchangeMatrix([[0, 1, 0], [-1, 0, 1], [0, -1, 0]])
    assert mutate_matrix(B, 1).tolist() == [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]


def test_mutate_index_error():
    with pytest.raises(IndexError):
        mutate_matrix(ExchangeMatrix([[0, -1], [1, 0]]), 2)


def test_pq_matrices_a2():
    P, Q = pq_matrices(ExchangeMatrix([[0, -1], [1, 0]]), 0, 1)
    assert P.tolist() == [[-1, 0], [0, 1]]
    assert Q.tolist() == [[-1, 0], [1, 1]]


def test_pq_matrices_zero_matrix():
    P, Q = pq_matrices(ExchangeMatrix(np.zeros((3, 3), dtype=int)), 1, -1)
    J = np.diag([1, -1, 1])
    assert np.array_equal(P, J) and np.array_equal(Q, J)


def test_p_is_an_involution_across_mutation():
    rng = random.Random(5)
    for _ in range(30):
        B = random_exchange_matrix(rng, rng.randint(2, 4))
        for k in range(B.n):
            for eps in (1, -1):
                P, _ = pq_matrices(B, k, eps)
                P2, _ = pq_matrices(mutate_matrix(B, k, eps), k, -eps)
                assert np.array_equal(P @ P2, np.eye(B.n, dtype=int))


seeds = st.integers(0, 10**6)


@given(seeds, st.integers(2, 4))
def test_mutation_is_eps_independent_and_involutive(seed, n):
    rng = random.Random(seed)
    B = random_exchange_matrix(rng, n, RandomRunConfig())
    for k in range(n):
        Bp = mutate_matrix(B, k, 1)
        assert Bp == mutate_matrix(B, k, -1)
        assert mutate_matrix(Bp, k) == B
        db = np.diag(Bp.d) @ Bp.b
        assert np.array_equal(db, -db.T)
