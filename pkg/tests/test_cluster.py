import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tropclust.exact import LaurentPoly
from tropclust.exchange import ExchangeMatrix
from tropclust.reference_tables import A2_B, A2_CVECTORS, A2_SEQUENCE, a2_example_seeds
from tropclust.sampling import RandomRunConfig, random_run
from tropclust.seed import Falsification, initial_seed, is_laurent_in_x, mutate_seed, mutate_sequence
from tropclust.semifield import SubtractionFreeRational as SFR
from tropclust.tropical import (
    f_polynomials,
    initial_tropical,
    matrix_form_check,
    mutate_tropical,
    run_sequence,
    tropical_sign,
    verify_separation,
)

A2 = ExchangeMatrix(A2_B)


def numeric_mutation(b, x, y, k):
    """Textbook exchange relations on numbers; the independent oracle."""
    n = len(y)
    pos = lambda v: max(v, 0)
    y2 = list(y)
    for i in range(n):
        if i == k:
            y2[i] = 1 / y[k]
        else:
            y2[i] = y[i] * y[k] ** pos(b[k][i]) * (1 + y[k]) ** (-b[k][i])
    plus = y[k] / (1 + y[k])
    minus = 1 / (1 + y[k])
    p1 = plus
    for j in range(n):
        p1 *= x[j] ** pos(b[j][k])
    p2 = minus
    for j in range(n):
        p2 *= x[j] ** pos(-b[j][k])
    x2 = list(x)
    x2[k] = (p1 + p2) / x[k]
    b2 = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i == k or j == k:
                b2[i][j] = -b[i][j]
            else:
                b2[i][j] = b[i][j] + pos(b[i][k]) * pos(b[k][j]) - pos(-b[i][k]) * pos(-b[k][j])
    return b2, x2, y2


def test_a2_table_matches_direct_mutation():
    seeds = mutate_sequence(initial_seed(A2), A2_SEQUENCE)
    for s, r in zip(seeds, a2_example_seeds()):
        assert s.B.tolist() == r["B"]
        assert s.x == r["x"]
        assert all(a == b for a, b in zip(s.y, r["y"]))


def test_a2_first_mutation_coefficients():
    s = mutate_seed(initial_seed(A2), 0)
    Y1, Y2 = SFR.gen(0, 2), SFR.gen(1, 2)
    assert s.y[0] == Y1 ** -1
    assert s.y[1] == Y2 * (SFR.one(2) + Y1)


def test_a2_half_period_swaps():
    s = mutate_sequence(initial_seed(A2), A2_SEQUENCE)[-1]
    s0 = initial_seed(A2)
    assert s.x == (s0.x[1], s0.x[0])
    assert s.y[0] == s0.y[1] and s.y[1] == s0.y[0]


def test_a2_tropical_data():
    run = run_sequence(A2, A2_SEQUENCE, principal=True)
    for t, st in enumerate(run.steps):
        assert tuple(st.tropical.c_vector(i) for i in range(2)) == A2_CVECTORS[t]
    assert np.array_equal(run.steps[2].tropical.C, -np.eye(2))
    assert np.array_equal(run.steps[2].tropical.G, -np.eye(2))
    assert run.steps[5].tropical.G.tolist() == [[0, 1], [1, 0]]
    y1, y2 = LaurentPoly.gen(0, 2), LaurentPoly.gen(1, 2)
    one = LaurentPoly.one(2)
    assert run.steps[2].tropical.F == (one + y1, one + y2 + y1 * y2)
    assert all(f.is_one() for f in run.steps[0].tropical.F)
    assert run.signs == (1, 1, -1, -1, -1)


def test_mutate_tropical_single_step():
    t = mutate_tropical(initial_tropical(A2), A2, 0, 1)
    assert t.C.tolist() == [[-1, 0], [0, 1]]


def test_tropical_sign_basics():
    t = initial_tropical(A2)
    assert all(tropical_sign(t, k) == 1 for k in range(2))
    t = mutate_tropical(t, A2, 1, 1)
    assert tropical_sign(t, 1) == -1


def test_index_out_of_range():
    with pytest.raises(IndexError):
        mutate_seed(initial_seed(A2), 2)


def test_matrix_form_on_pentagon():
    report = matrix_form_check(run_sequence(A2, A2_SEQUENCE))
    assert len(report) == 5


def test_separation_on_pentagon():
    run = run_sequence(A2, A2_SEQUENCE, universal=True, principal=True)
    for st in run.steps:
        verify_separation(st.universal, st.tropical)


def test_separation_detects_tampering():
    run = run_sequence(A2, A2_SEQUENCE[:2], universal=True, principal=True)
    st = run.final
    s = st.universal
    bad = type(s)(s.B, (s.y[1], s.y[0]), s.x, s.yhat, s.history)
    with pytest.raises(Falsification):
        verify_separation(bad, st.tropical)


def _point(rng, n):
    return [Fraction(rng.randint(1, 9), rng.randint(1, 9)) for _ in range(n)]


@given(st.integers(0, 10**6))
def test_universal_seed_matches_numeric_oracle(seed):
    rng = random.Random(seed)
    B, seq = random_run(rng, RandomRunConfig(n_max=3, depth=5))
    n = B.n
    xs, ys = _point(rng, n), _point(rng, n)
    s = initial_seed(B, "universal")
    b, x, y = B.tolist(), list(xs), list(ys)
    for k in seq:
        s = mutate_seed(s, k)
        b, x, y = numeric_mutation(b, x, y, k)
        assert s.B.tolist() == b
        assert [v.evaluate(ys) for v in s.y] == y
        assert [v.evaluate(xs + ys) for v in s.x] == x


@given(st.integers(0, 10**6))
def test_laurent_phenomenon_and_separation(seed):
    rng = random.Random(seed)
    B, seq = random_run(rng, RandomRunConfig(n_max=3, depth=6, entry_bound=None))
    run = run_sequence(B, seq, universal=True, principal=True)
    for st in run.steps:
        assert all(is_laurent_in_x(x, B.n) for x in st.universal.x)
        verify_separation(st.universal, st.tropical)
        for i in range(B.n):
            c = st.tropical.c_vector(i)
            assert all(v >= 0 for v in c) or all(v <= 0 for v in c)
            assert st.tropical.F[i].constant_term() == 1
    matrix_form_check(run)
