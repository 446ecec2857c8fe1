"""C-matrices, G-matrices, F-polynomials and tropical signs, plus the
separation-formula and matrix-form verifications."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .exact import LaurentPoly, RationalFunction
from .exchange import ExchangeMatrix, mutate_matrix, pos, pq_matrices
from .seed import Falsification, Seed, coefficient_as_rational, initial_seed, is_laurent_in_x, mutate_seed
from .semifield import SubtractionFreeRational, TropicalMonomial, tropicalize

__all__ = [
    "SignCoherenceError",
    "TropicalData",
    "initial_tropical",
    "c_mutation",
    "g_mutation",
    "mutate_tropical",
    "mutate_g",
    "tropical_sign",
    "tropical_step",
    "f_polynomials",
    "g_from_grading",
    "Step",
    "Run",
    "run_sequence",
    "verify_separation",
    "matrix_form_check",
]


class SignCoherenceError(Falsification):
    """A c-vector was zero or had entries of both signs."""


@dataclass(frozen=True, eq=False)
class TropicalData:
    """Tropical invariants of one seed: ``C`` and ``G`` (columns are c- and
    g-vectors) and the F-polynomials when known."""

    b0: ExchangeMatrix
    C: np.ndarray
    G: np.ndarray
    F: tuple[LaurentPoly, ...] | None = None
    history: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.b0.n

    def c_vector(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.C[:, i])

    def g_vector(self, i: int) -> tuple[int, ...]:
        return tuple(int(v) for v in self.G[:, i])


def initial_tropical(B: ExchangeMatrix) -> TropicalData:
    n = B.n
    eye = np.eye(n, dtype=np.int64)
    return TropicalData(B, eye.copy(), eye.copy(), tuple(LaurentPoly.one(n) for _ in range(n)))


def c_mutation(C: np.ndarray, B: ExchangeMatrix, k: int, eps: int) -> np.ndarray:
    """C-matrix exchange relation, valid for either sign ``eps``."""
    ck = C[:, k]
    bk = B.b[k, :]
    out = C + np.outer(ck, pos(eps * bk)) + np.outer(pos(-eps * ck), bk)
    out[:, k] = -ck
    return out


def g_mutation(G: np.ndarray, C: np.ndarray, B: ExchangeMatrix, b0: ExchangeMatrix, k: int, eps: int) -> np.ndarray:
    """G-matrix exchange relation; the last sum uses the *initial* matrix ``b0``."""
    out = G.copy()
    out[:, k] = -G[:, k] + G @ pos(-eps * B.b[:, k]) - b0.b @ pos(-eps * C[:, k])
    return out


def tropical_sign(t: TropicalData | np.ndarray, k: int, history: Sequence[int] = ()) -> int:
    C = t.C if isinstance(t, TropicalData) else t
    col = C[:, k]
    if not col.any():
        raise SignCoherenceError(f"c-vector {k + 1} is zero", history)
    if (col >= 0).all():
        return 1
    if (col <= 0).all():
        return -1
    raise SignCoherenceError(f"c-vector {k + 1} = {col.tolist()} is not sign-coherent", history)


def mutate_tropical(t: TropicalData, B: ExchangeMatrix, k: int, eps: int) -> TropicalData:
    if not 0 <= k < t.n:
        raise IndexError(f"mutation index {k} out of range")
    return TropicalData(t.b0, c_mutation(t.C, B, k, eps), t.G, None, t.history + (k,))


def mutate_g(t: TropicalData, B: ExchangeMatrix, k: int, eps: int) -> TropicalData:
    if not 0 <= k < t.n:
        raise IndexError(f"mutation index {k} out of range")
    return TropicalData(t.b0, t.C, g_mutation(t.G, t.C, B, t.b0, k, eps), t.F, t.history)


def tropical_step(t: TropicalData, B: ExchangeMatrix, k: int) -> tuple[TropicalData, int]:
    """Mutate ``C`` and ``G`` at ``k``; returns the new data and the tropical
    sign at ``k`` before the mutation.

    Both signs of the general exchange relations are computed and must agree
    with each other and with the simplified relations at the tropical sign.
    """
    history = t.history + (k,)
    eps = tropical_sign(t, k, t.history)
    c_plus, c_minus = c_mutation(t.C, B, k, 1), c_mutation(t.C, B, k, -1)
    if not np.array_equal(c_plus, c_minus):
        raise Falsification("C-matrix mutation depends on eps", history)
    c_simple = t.C + np.outer(t.C[:, k], pos(eps * B.b[k, :]))
    c_simple[:, k] = -t.C[:, k]
    if not np.array_equal(c_simple, c_plus):
        raise Falsification("simplified C-matrix mutation disagrees", history)
    g_plus = g_mutation(t.G, t.C, B, t.b0, k, 1)
    g_minus = g_mutation(t.G, t.C, B, t.b0, k, -1)
    if not np.array_equal(g_plus, g_minus):
        raise Falsification("G-matrix mutation depends on eps", history)
    g_simple = t.G.copy()
    g_simple[:, k] = -t.G[:, k] + t.G @ pos(-eps * B.b[:, k])
    if not np.array_equal(g_simple, g_plus):
        raise Falsification("simplified G-matrix mutation disagrees", history)
    return TropicalData(t.b0, c_plus, g_plus, None, history), eps


def f_polynomials(s: Seed) -> tuple[LaurentPoly, ...]:
    """F-polynomials of a principal-coefficients seed: its cluster variables at
    ``x_1 = ... = x_n = 1``, as polynomials in ``y``."""
    n = s.n
    if not all(isinstance(c, TropicalMonomial) for c in s.y):
        raise TypeError("F-polynomials are read off a principal-coefficients seed")
    ones = {i: 1 for i in range(n)}
    ys = list(range(n, 2 * n))
    out = []
    for xi in s.x:
        num = xi.num.specialize(ones).project(ys)
        den = xi.den.specialize(ones).project(ys)
        out.append(num.exact_div(den))
    return tuple(out)


def g_from_grading(s: Seed, b0: ExchangeMatrix) -> np.ndarray:
    """G-matrix read off the principal x-variables via the grading
    ``deg x_i = e_i``, ``deg y_i = -(column i of B)``. Each x-variable must be
    homogeneous."""
    n = s.n
    G = np.zeros((n, n), dtype=np.int64)
    b = b0.b
    for i, xi in enumerate(s.x):
        if not xi.den.is_one():
            raise Falsification(f"principal x{i + 1} is not a Laurent polynomial", s.history)
        degs = set()
        for e in xi.num.exponents():
            a = np.array(e[:n], dtype=np.int64)
            c = np.array(e[n:], dtype=np.int64)
            degs.add(tuple((a - b @ c).tolist()))
        if len(degs) != 1:
            raise Falsification(f"principal x{i + 1} is not homogeneous", s.history)
        G[:, i] = degs.pop()
    return G


@dataclass(frozen=True)
class Step:
    """State after ``index`` mutations; ``k``/``eps`` describe the mutation
    that produced it (``None`` for the initial state)."""

    index: int
    k: int | None
    eps: int | None
    B: ExchangeMatrix
    tropical: TropicalData
    principal: Seed | None = None
    universal: Seed | None = None


@dataclass
class Run:
    b0: ExchangeMatrix
    sequence: tuple[int, ...]
    steps: list[Step]

    @property
    def signs(self) -> tuple[int, ...]:
        return tuple(s.eps for s in self.steps[1:])

    @property
    def final(self) -> Step:
        return self.steps[-1]


def run_sequence(
    B: ExchangeMatrix,
    seq: Sequence[int],
    *,
    universal: bool = False,
    principal: bool = False,
    check: bool = True,
) -> Run:
    """Drive ``C``/``G`` (always) and optionally the principal-coefficients and
    universal seeds along ``seq``, cross-checking them at every step."""
    t = initial_tropical(B)
    ps = initial_seed(B, "tropical") if principal else None
    us = initial_seed(B, "universal") if universal else None
    steps = [Step(0, None, None, B, t, ps, us)]
    Bc = B
    for idx, k in enumerate(seq, 1):
        t, eps = tropical_step(t, Bc, k)
        Bc = mutate_matrix(Bc, k, eps)
        if ps is not None:
            ps = mutate_seed(ps, k, check)
            F = f_polynomials(ps)
            t = TropicalData(t.b0, t.C, t.G, F, t.history)
            if check:
                _check_principal(ps, t)
        if us is not None:
            us = mutate_seed(us, k, check)
            if check:
                _check_universal(us, t)
        steps.append(Step(idx, k, eps, Bc, t, ps, us))
    return Run(B, tuple(seq), steps)


def _check_principal(ps: Seed, t: TropicalData):
    n = ps.n
    for i in range(n):
        if ps.y[i].exponents != t.c_vector(i):
            raise Falsification(f"principal coefficient {i + 1} differs from its c-vector", ps.history)
    if not np.array_equal(g_from_grading(ps, t.b0), t.G):
        raise Falsification("grading G-matrix differs from the G-matrix recursion", ps.history)
    for i, f in enumerate(t.F):
        if any(v < 0 for e in f.exponents() for v in e):
            raise Falsification(f"F{i + 1} has a negative exponent", ps.history)
        if f.constant_term() != 1:
            raise Falsification(f"F{i + 1} has constant term {f.constant_term()}", ps.history)
        if f.has_positive_coefficients() and not tropicalize(f).is_one():
            raise Falsification(f"tropicalization of F{i + 1} is not 1", ps.history)


def _check_universal(us: Seed, t: TropicalData):
    for i in range(us.n):
        if not is_laurent_in_x(us.x[i], us.n):
            raise Falsification(f"x{i + 1} is not Laurent in x", us.history)
        if tropicalize(us.y[i]).exponents != t.c_vector(i):
            raise Falsification(f"tropicalized y{i + 1} differs from its c-vector", us.history)


def _f_oplus(f: LaurentPoly) -> SubtractionFreeRational:
    if not f.has_positive_coefficients():
        raise Falsification("F-polynomial has no evident subtraction-free form")
    return SubtractionFreeRational(f)


def verify_separation(s: Seed, t: TropicalData) -> dict:
    """Rebuild ``y'`` from ``(C, F, B')`` and ``x'`` from ``(G, F)`` and compare
    with the directly mutated universal seed. Raises :class:`Falsification` on
    mismatch; returns a small report otherwise."""
    n = s.n
    b0 = t.b0
    b = s.B.b
    F = t.F
    Fo = [_f_oplus(f) for f in F]
    for i in range(n):
        yi = SubtractionFreeRational(LaurentPoly.monomial(t.c_vector(i)))
        for j in range(n):
            if b[j, i]:
                yi = yi * Fo[j] ** int(b[j, i])
        if yi != s.y[i]:
            raise Falsification(f"separation formula fails for y{i + 1}", s.history)
    # F(yhat) with the initial yhat_j = y_j prod_l x_l**b0_lj
    images = []
    for j in range(n):
        e = [int(b0.b[l, j]) for l in range(n)] + [0] * n
        e[n + j] = 1
        images.append(e)
    for i in range(n):
        g = [int(v) for v in t.G[:, i]] + [0] * n
        num = LaurentPoly.monomial(g) * F[i].substitute_monomials(images, 2 * n)
        xi = RationalFunction(num) / coefficient_as_rational(Fo[i], n)
        if xi != s.x[i]:
            raise Falsification(f"separation formula fails for x{i + 1}", s.history)
    return {"history": list(s.history), "y": "ok", "x": "ok"}


def matrix_form_check(run: Run) -> list[dict]:
    """Matrix form of mutation at every step of ``run``:
    ``B'' = Q B' P``, ``C'' = C' P``, ``G'' = G' Q``, ``P^T D B' P = D B''``,
    ``P^2 = Q^2 = I``, ``Q = D^-1 P^T D`` and the duality
    ``(G D^-1)^T (D C) = I`` (checked at every seed, including the initial one)."""
    D = run.b0.D
    n = run.b0.n
    Dinv = np.diag([Fraction(1, d) for d in run.b0.d])
    eye = np.eye(n, dtype=np.int64)
    report = []

    def duality(t: TropicalData) -> bool:
        M = (t.G.astype(object) @ Dinv).T @ (D @ t.C).astype(object)
        return np.array_equal(M, eye.astype(object))

    if not duality(run.steps[0].tropical):
        raise Falsification("duality fails at the initial seed")
    for prev, cur in zip(run.steps, run.steps[1:]):
        k, eps = cur.k, cur.eps
        hist = cur.tropical.history
        P, Q = pq_matrices(prev.B, k, eps)
        _, Qm = pq_matrices(prev.B, k, -eps)
        checks = {
            "B": np.array_equal(Qm @ prev.B.b @ P, cur.B.b),
            "C": np.array_equal(prev.tropical.C @ P, cur.tropical.C),
            "G": np.array_equal(prev.tropical.G @ Qm, cur.tropical.G),
            "DB": np.array_equal(P.T @ D @ prev.B.b @ P, D @ cur.B.b),
            "P2": np.array_equal(P @ P, eye) and np.array_equal(Qm @ Qm, eye),
            "QfromP": np.array_equal((Dinv @ P.T.astype(object) @ D.astype(object)), Qm.astype(object)),
            "P_after": np.array_equal(pq_matrices(cur.B, k, -eps)[0], P),
            "duality": duality(cur.tropical),
        }
        bad = [name for name, ok in checks.items() if not ok]
        if bad:
            raise Falsification(f"matrix form fails: {bad}", hist)
        report.append({"step": cur.index, "k": k + 1, "eps": eps, **{kk: True for kk in checks}})
    return report
