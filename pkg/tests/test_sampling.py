import random

import numpy as np
from hypothesis import given, strategies as st

from tropclust.exchange import mutate_matrix
from tropclust.sampling import RandomRunConfig, entries_bounded, random_exchange_matrix, random_run, random_sequence


@given(st.integers(0, 10**6), st.integers(2, 5))
def test_generated_matrices_are_skew_symmetrizable(seed, n):
    B = random_exchange_matrix(random.Random(seed), n)
    db = np.diag(B.d) @ B.b
    assert np.array_equal(db, -db.T)
    assert all(B.b[i, i] == 0 for i in range(n))


@given(st.integers(0, 10**6))
def test_sequences_have_no_immediate_repeats(seed):
    seq = random_sequence(random.Random(seed), 3, 8)
    assert len(seq) == 8 and all(a != b for a, b in zip(seq, seq[1:]))


@given(st.integers(0, 10**6))
def test_random_runs_respect_entry_bound(seed):
    cfg = RandomRunConfig()
    B, seq = random_run(random.Random(seed), cfg)
    assert cfg.n_min <= B.n <= cfg.n_max and len(seq) == cfg.depth
    assert entries_bounded(B, seq, cfg.entry_bound)
    for k in seq:
        B = mutate_matrix(B, k)
        assert np.abs(B.b).max() <= cfg.entry_bound


def test_runs_are_reproducible():
    a = random_run(random.Random("x/1"))
    b = random_run(random.Random("x/1"))
    assert a[0] == b[0] and a[1] == b[1]
