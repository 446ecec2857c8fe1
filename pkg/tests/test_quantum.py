import random

import numpy as np
import pytest
from hypothesis import given, strategies as st

from tropclust.dynkin import dynkin
from tropclust.exact import QRational
from tropclust.exchange import ExchangeMatrix
from tropclust.periodicity import build_ysystem_quiver, composite_sequence
from tropclust.quantum import (
    QuantumTorusElement as QT,
    TruncatedSeries,
    adjoint_action_check,
    check_q1_specialization,
    initial_quantum_seed,
    mutate_quantum_y,
    pentagon_abstract_check,
    psi_expand,
    psi_inverse_closed_form,
    psi_of,
    qt_mul,
    run_quantum,
    series_inverse,
    torus_form,
    tropical_quantum_y,
    verify_qdi,
)
from tropclust.reference_tables import A2_B, A2_SEQUENCE
from tropclust.tropical import run_sequence

A2 = ExchangeMatrix(A2_B)
FORM = torus_form(A2)
q = QRational.q_power(1)
Y1, Y2 = QT.gen(FORM, 0), QT.gen(FORM, 1)
ONE = QT.one(FORM)


def series(element, cutoff=8):
    return TruncatedSeries.truncate(element, cutoff)


def full_element(Y):
    """``q^a Y^v * tail`` as a torus element (for finite tails)."""
    return QT.monomial(Y.form, Y.lead, Y.lead_power) * Y.tail.element


def test_commutation_relation():
    assert qt_mul(Y1, Y2) == QT.monomial(FORM, (1, 1), 1)
    assert qt_mul(Y2, Y1) == QT.monomial(FORM, (1, 1), -1)
    assert qt_mul(Y1, Y2) == q * q * qt_mul(Y2, Y1)


def test_zero_matrix_is_commutative():
    form = torus_form(ExchangeMatrix([[0, 0], [0, 0]]))
    a, b = QT.gen(form, 0) + 3, QT.gen(form, 1) * q + QT.gen(form, 0)
    assert a * b == b * a


def test_monomial_inverse():
    m = qt_mul(Y1, Y2)
    assert qt_mul(m, QT.monomial(FORM, (-1, -1), -1)).is_one()


def test_torus_needs_skew_symmetric_matrix():
    with pytest.raises(ValueError):
        torus_form(ExchangeMatrix([[0, -1], [2, 0]]))


def test_mixed_forms_rejected():
    other = torus_form(ExchangeMatrix([[0, 1], [-1, 0]]))
    with pytest.raises(ValueError):
        qt_mul(Y1, QT.gen(other, 0))


def test_psi_order_one():
    psi = psi_expand(0, (1, 0), 1, FORM)
    assert psi.element == ONE + Y1 * (-q / (1 - q * q))


def test_psi_rejects_bad_arguments():
    for v in ((0, 0), (1, -1)):
        with pytest.raises(ValueError):
            psi_expand(0, v, 4, FORM)


@given(st.integers(-3, 3), st.tuples(st.integers(0, 2), st.integers(0, 2)).filter(any))
def test_recursion_both_directions(a, v):
    x = QT.monomial(FORM, v, a)
    shifted_up = psi_expand(a + 2, v, 8, FORM)
    shifted_down = psi_expand(a - 2, v, 8, FORM)
    base = psi_expand(a, v, 8, FORM)
    assert shifted_up == series(ONE + q * x) * base
    assert shifted_down == series_inverse(series(ONE + x * QRational.q_power(-1))) * base


def test_series_inverse_examples():
    assert series_inverse(TruncatedSeries.one(FORM, 8)).is_one()
    inv = series_inverse(series(ONE + q * Y1))
    expected = sum((QT.monomial(FORM, (k, 0), k) * (-1) ** k for k in range(9)), QT.zero(FORM))
    assert inv.element == expected


def test_series_inverse_needs_unit():
    with pytest.raises(ZeroDivisionError):
        series_inverse(series(Y1))


@pytest.mark.parametrize("a, v", [(0, (1, 0)), (-1, (1, 1)), (2, (0, 3))])
def test_psi_inverse_matches_closed_form(a, v):
    psi = psi_expand(a, v, 8, FORM)
    inv = series_inverse(psi)
    assert inv == psi_inverse_closed_form(a, v, 8, FORM)
    assert (psi * inv).is_one() and (inv * psi).is_one()


def test_psi_of_monomial_matches_expansion():
    z = series(QT.monomial(FORM, (1, 1), -1))
    assert psi_of(z) == psi_expand(-1, (1, 1), 8, FORM)


def test_truncated_series_rejects_cone_violation():
    with pytest.raises(ValueError):
        TruncatedSeries(QT.monomial(FORM, (-1, 0)), 4)


def test_pentagon_variables():
    steps = run_quantum(A2, A2_SEQUENCE, 8)
    # after mu_1: Y2 (1 + q Y1), finite tail
    assert full_element(steps[1].seed.variables[1]) == qt_mul(Y2, ONE + q * Y1)
    # after mu_1 mu_2 mu_1: q^-1 Y1^-1 Y2^-1 (1 + q Y2)
    Y3 = steps[3].seed.variables[1]
    inv1, inv2 = QT.monomial(FORM, (-1, 0)), QT.monomial(FORM, (0, -1))
    assert full_element(Y3) == qt_mul(qt_mul(inv1, inv2), ONE + q * Y2) * QRational.q_power(-1)
    assert Y3.ordered_power() == -1 and Y3.lead == (-1, -1)


def test_pentagon_variable_with_inverse_factor():
    # after four steps: q^-1 Y1 Y2 (1 + q^-1 Y2)^-1
    Y4 = run_quantum(A2, A2_SEQUENCE, 8)[4].seed.variables[1]
    lead = series(qt_mul(Y1, Y2) * QRational.q_power(-1))
    expected = lead * series_inverse(series(ONE + Y2 * QRational.q_power(-1)))
    assert Y4.cone_series() == expected


def test_tropical_leads_follow_c_vectors():
    leads = tropical_quantum_y(A2, A2_SEQUENCE)
    assert leads[0] == ((0, (1, 0)), (0, (0, 1)))
    run = run_sequence(A2, A2_SEQUENCE)
    for t, st_ in enumerate(run.steps):
        assert tuple(v for _, v in leads[t]) == tuple(st_.tropical.c_vector(i) for i in range(2))
    steps = run_quantum(A2, A2_SEQUENCE, 8)
    for t, st_ in enumerate(steps):
        assert st_.seed.leads == leads[t]


def test_mutation_signs_match_classical():
    steps = run_quantum(A2, A2_SEQUENCE, 8)
    assert tuple(s.eps for s in steps[1:]) == (1, 1, -1, -1, -1)


def test_adjoint_action():
    seed = initial_quantum_seed(A2, 6)
    rep = adjoint_action_check(seed, 0)
    assert rep.ok and rep.distinguishing
    seed0 = initial_quantum_seed(ExchangeMatrix([[0, 0], [0, 0]]), 6)
    assert adjoint_action_check(seed0, 0).ok
    for st_ in run_quantum(A2, A2_SEQUENCE, 6)[:-1]:
        for k in range(2):
            assert adjoint_action_check(st_.seed, k).ok


def test_pentagon_identity():
    rep = verify_qdi(A2, A2_SEQUENCE, 8)
    assert rep.ok and rep.max_degree_verified == 8
    assert rep.signs == (1, 1, -1, -1, -1)
    assert pentagon_abstract_check(8).ok


def test_involution_identity():
    assert verify_qdi(A2, (0, 0), 8).ok


def test_qdi_rejects_non_period():
    with pytest.raises(ValueError):
        verify_qdi(A2, (0, 1), 4)


def test_truncated_pentagon_fails_without_inverse():
    # dropping the last factor leaves a nonzero degree-1 term
    form = FORM
    prod = psi_expand(0, (1, 0), 4, form) * psi_expand(0, (0, 1), 4, form)
    assert not prod.is_one()


def test_a3_level2_identity():
    D = dynkin("A3")
    quiv = build_ysystem_quiver(D, 2)
    seq = composite_sequence(quiv, 2 * (D.coxeter + 2))
    assert verify_qdi(quiv.B, seq, 6).ok


def test_q1_specialization():
    assert all(ok for _, _, ok in check_q1_specialization(A2, A2_SEQUENCE, 8))
    quiv = build_ysystem_quiver(dynkin("A3"), 2)
    seq = composite_sequence(quiv, 4)
    assert all(ok for _, _, ok in check_q1_specialization(quiv.B, seq, 5))


def test_mutation_rejects_bad_index():
    with pytest.raises(IndexError):
        mutate_quantum_y(initial_quantum_seed(A2, 4), 5)


def _random_skew(rng, n):
    b = np.zeros((n, n), dtype=int)
    for i in range(n):
        for j in range(i + 1, n):
            b[i, j] = rng.randint(-2, 2)
            b[j, i] = -b[i, j]
    return ExchangeMatrix(b)


def _random_element(rng, form, n):
    terms = {}
    for _ in range(rng.randint(1, 5)):
        v = tuple(rng.randint(-2, 2) for _ in range(n))
        while sum(abs(a) for a in v) > 4:
            v = tuple(a // 2 for a in v)
        terms[v] = QRational.q_power(rng.randint(-3, 3)) * rng.randint(-3, 3)
    return QT(form, terms)


@given(st.integers(0, 10**6), st.integers(1, 3))
def test_torus_associativity_and_classical_limit(seed, n):
    rng = random.Random(seed)
    form = torus_form(_random_skew(rng, n))
    a, b, c = (_random_element(rng, form, n) for _ in range(3))
    assert qt_mul(qt_mul(a, b), c) == qt_mul(a, qt_mul(b, c))
    if a.terms and b.terms:
        assert qt_mul(a, b).specialize_q1() == qt_mul(b, a).specialize_q1()
