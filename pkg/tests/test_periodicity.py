import random
from fractions import Fraction

import numpy as np
import pytest

from tropclust.dynkin import dynkin
from tropclust.exchange import ExchangeMatrix
from tropclust.periodicity import (
    build_ysystem_quiver,
    composite_mutation,
    composite_sequence,
    cvector_tableau,
    detect_period,
    framed_cvectors,
    verify_period_universal,
    verify_ysystem_period,
    ysystem_domain,
    ysystem_iterate,
    ysystem_states,
)
from tropclust.reference_tables import (
    A2_B,
    A2_CVECTORS,
    A2_CVECTORS_OPPOSITE,
    A2_SEQUENCE,
    A3_LEVEL2_ROWS,
    A3_LEVEL2_ROWS_OPPOSITE,
    A3_LEVEL3_CVECTORS,
)
from tropclust.seed import initial_seed
from tropclust.tropical import run_sequence

A2 = ExchangeMatrix(A2_B)


def test_pentagon_is_a_transposition_period():
    cert = detect_period(A2, A2_SEQUENCE)
    assert cert is not None and cert.nu == (1, 0) and cert.nu_one_based() == [2, 1]
    assert cert.half


def test_empty_sequence_is_identity_period():
    cert = detect_period(A2, ())
    assert cert.nu == (0, 1) and not cert.half


def test_full_a2_period():
    assert detect_period(A2, A2_SEQUENCE * 2).nu == (0, 1)


def test_non_period():
    assert detect_period(A2, (0, 1, 0)) is None


def test_certificate_soundness_on_skew_symmetric_cases():
    for X, level in (("A2", 2), ("A3", 2), ("A1", 4), ("A2", 3)):
        q = build_ysystem_quiver(dynkin(X), level)
        h = dynkin(X).coxeter
        seq = composite_sequence(q, h + level)
        cert = detect_period(q.B, seq)
        assert cert is not None
        assert verify_period_universal(q.B, seq, cert.nu)


def test_a3_level2_quiver():
    q = build_ysystem_quiver(dynkin("A3"), 2)
    # 1 <- 2 -> 3
    assert q.B.tolist() == [[0, -1, 0], [1, 0, 1], [0, -1, 0]]
    assert q.parity == (1, -1, 1)
    assert q.vertices_of(1) == (0, 2) and q.vertices_of(-1) == (1,)


def test_a3_level3_quiver():
    q = build_ysystem_quiver(dynkin("A3"), 3)
    b = q.B.b
    for i in range(q.n):
        a, m = q.vertex(i)
        assert q.parity[i] == dynkin("A3").coloring()[a] * (-1) ** (m - 1)
        for j in range(q.n):
            c, l = q.vertex(j)
            if b[i, j] == 1:
                horizontal = m == l and abs(a - c) == 1
                vertical = a == c and abs(m - l) == 1
                assert horizontal or vertical
                if horizontal:
                    assert (q.parity[i], q.parity[j]) == (-1, 1)
                else:
                    assert (q.parity[i], q.parity[j]) == (1, -1)
    assert int(np.abs(q.B.b).sum()) == 2 * 7


def test_a1_quiver_is_a_vertical_path():
    q = build_ysystem_quiver(dynkin("A1"), 5)
    b = q.B.b
    for i in range(q.n):
        for j in range(q.n):
            assert abs(b[i, j]) == (1 if abs(i - j) == 1 else 0)
    assert q.parity == (1, -1, 1, -1)


def test_composite_mutation_order_independent():
    q = build_ysystem_quiver(dynkin("A3"), 3)
    s = initial_seed(q.B, "universal", with_x=False)
    out = composite_mutation(s, q, 1, check_order=True)
    assert out.history == q.vertices_of(1)


@pytest.mark.parametrize("X, level, half", [("A2", 2, 5), ("A3", 2, 6), ("A3", 3, 7), ("A1", 3, 5), ("A2", 3, 6)])
def test_half_periods(X, level, half):
    rep = verify_ysystem_period(dynkin(X), level)
    assert rep.ok
    assert rep.half_steps == rep.minimal_steps == half


def test_tableau_renders_pentagon():
    text = cvector_tableau(run_sequence(A2, A2_SEQUENCE))
    lines = text.splitlines()
    assert len(lines) == 6
    assert lines[0].startswith("t=0") and "[" in lines[0]


def test_tableau_of_empty_run():
    text = cvector_tableau(run_sequence(A2, ()))
    assert text.count("\n") == 0 and "[" not in text


def test_a3_level3_tables():
    q = build_ysystem_quiver(dynkin("A3"), 3)
    states = ysystem_states(q, -4, 3)
    for u, vecs in A3_LEVEL3_CVECTORS.items():
        assert tuple(states[u].c_vector(i) for i in range(6)) == vecs


def test_factorization_property():
    q = build_ysystem_quiver(dynkin("A3"), 3)
    states = ysystem_states(q, -4, 3)
    for u in range(0, 4):
        for a in range(3):
            pair = [states[u].c_vector(q.index(a, m)) for m in (1, 2)]
            restricted = [(v[q.index(a, 1)], v[q.index(a, 2)]) for v in pair]
            if q.parity[q.index(a, 1)] == -1:
                restricted = [r[::-1] for r in restricted[::-1]]
            assert tuple(restricted) == A2_CVECTORS_OPPOSITE[u]
    for u in range(-4, 0):
        for m, table in ((1, A3_LEVEL2_ROWS), (2, A3_LEVEL2_ROWS_OPPOSITE)):
            row = tuple(
                tuple(states[u].c_vector(q.index(a, m))[q.index(b, m)] for b in range(3)) for a in range(3)
            )
            assert row == table[u]


def test_framed_cvectors_are_unit_at_start():
    q = build_ysystem_quiver(dynkin("A2"), 2)
    framed = framed_cvectors(q, 0, 0)
    assert all(sum(abs(x) for x in v) == 1 for v in framed[0].values())


def test_a1_level2_iteration():
    X = dynkin("A1")
    init = {(0, 1, 0): Fraction(3, 2), (0, 1, 1): Fraction(5)}
    Y = ysystem_iterate(X, 2, init, 8)
    for u in range(1, 8):
        assert Y[(0, 1, u - 1)] * Y[(0, 1, u + 1)] == 1
    assert Y[(0, 1, 4)] == init[(0, 1, 0)]


def test_a2_level2_all_ones_returns():
    X = dynkin("A2")
    init = {(a, 1, u): Fraction(1) for a in range(2) for u in (0, 1)}
    Y = ysystem_iterate(X, 2, init, 11)
    assert all(Y[(a, 1, u + 10)] == Y[(a, 1, u)] for a in range(2) for u in (0, 1))


@pytest.mark.parametrize("X, level", [("A1", 3), ("A2", 2), ("A3", 2), ("A2", 3)])
def test_exact_iteration_period_on_admissible_class(X, level):
    D = dynkin(X)
    rng = random.Random(11)
    period = 2 * (D.coxeter + level)
    for parity in (1, -1):
        init = {
            (a, m, u): Fraction(rng.randint(1, 20), rng.randint(1, 20))
            for u in (0, 1)
            for a, m in ysystem_domain(D, level, u, parity)
        }
        Y = ysystem_iterate(D, level, init, period + 1, parity_class=parity)
        assert all(v > 0 for v in Y.values())
        for (a, m, u), v in init.items():
            assert Y[(a, m, u + period)] == v


def test_iteration_rejects_bad_init():
    X = dynkin("A1")
    with pytest.raises(ValueError):
        ysystem_iterate(X, 2, {(0, 1, 0): Fraction(0), (0, 1, 1): Fraction(1)}, 4)
    with pytest.raises(ValueError):
        ysystem_iterate(X, 2, {(0, 1, 0): Fraction(1)}, 4)
