"""Dilogarithms, the constant Y-system, and the classical dilogarithm
identities attached to periods of y-seeds."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dynkin import DynkinData
from .exchange import ExchangeMatrix, mutate_matrix
from .periodicity import detect_period, ysystem_domain, ysystem_iterate
from .seed import mutate_y
from .tropical import run_sequence

__all__ = [
    "li2",
    "rogers_l",
    "DilogReport",
    "verify_functional_identities",
    "solve_constant_ysystem",
    "constant_ysystem_residual",
    "verify_di6",
    "verify_di7",
    "random_positive_rational",
    "random_full_grid_init",
    "classical_di_reports",
    "verify_classical_di",
]

ZETA2 = math.pi**2 / 6


def _li2_series(x: float) -> float:
    # |x| <= 1/2: terms fall below 2**-53 relative after ~50 terms
    total, term, k = 0.0, x, 1
    while True:
        add = term / (k * k)
        total += add
        if abs(add) < 1e-18 * max(1.0, abs(total)):
            return total
        k += 1
        term *= x


def li2(x: float) -> float:
    """Euler dilogarithm for real ``x <= 1``."""
    x = float(x)
    if x > 1:
        raise ValueError("li2 is only defined here for x <= 1")
    if x == 1:
        return ZETA2
    if x == 0:
        return 0.0
    if x < 0:
        # Landen: Li2(x) = -Li2(x/(x-1)) - log(1-x)^2 / 2, with x/(x-1) in (0, 1)
        return -li2(x / (x - 1)) - 0.5 * math.log1p(-x) ** 2
    if x <= 0.5:
        return _li2_series(x)
    # reflection: Li2(x) + Li2(1-x) = zeta(2) - log x log(1-x)
    return ZETA2 - math.log(x) * math.log1p(-x) - _li2_series(1 - x)


def rogers_l(x: float) -> float:
    """Rogers dilogarithm on ``[0, 1]``."""
    x = float(x)
    if not 0 <= x <= 1:
        raise ValueError("rogers_l needs 0 <= x <= 1")
    if x == 0:
        return 0.0
    if x == 1:
        return ZETA2
    if x > 0.5:
        return ZETA2 - rogers_l(1 - x)
    return _li2_series(x) + 0.5 * math.log(x) * math.log1p(-x)


@dataclass(frozen=True)
class DilogReport:
    id: str
    lhs: float
    rhs: float
    tol: float
    sample: str = ""
    n_plus: int | None = None
    n_minus: int | None = None

    @property
    def diff(self) -> float:
        return abs(self.lhs - self.rhs)

    @property
    def passed(self) -> bool:
        return self.diff <= self.tol

    def as_dict(self) -> dict:
        out = {
            "id": self.id,
            "status": "pass" if self.passed else "fail",
            "lhs": self.lhs,
            "rhs": self.rhs,
            "diff": self.diff,
            "tol": self.tol,
            "sample": self.sample,
        }
        if self.n_plus is not None:
            out["n_plus"], out["n_minus"] = self.n_plus, self.n_minus
        return out


def verify_functional_identities(samples: int = 100, rng: random.Random | None = None, tol: float = 1e-11) -> list[DilogReport]:
    """Euler, both pentagon forms and the two Li2 relations at random points."""
    if samples < 1:
        raise ValueError("samples must be positive")
    rng = rng or random.Random(0)
    L = rogers_l
    out = []
    for s in range(samples):
        x, y = rng.random(), rng.random()
        t = rng.uniform(0, 20)
        tag = f"sample {s}: x={x!r} y={y!r} t={t!r}"
        out.append(DilogReport("euler", L(x) + L(1 - x), ZETA2, tol, tag))
        xy = x * y
        pent = L(x) + L(y) + L((1 - x) / (1 - xy)) + L(1 - xy) + L((1 - y) / (1 - xy))
        out.append(DilogReport("pentagon", pent, 3 * ZETA2, tol, tag))
        lhs2 = L(x) + L(y)
        rhs2 = L(x * (1 - y) / (1 - xy)) + L(xy) + L(y * (1 - x) / (1 - xy))
        out.append(DilogReport("pentagon-product-form", lhs2, rhs2, tol, tag))
        out.append(DilogReport("rogers-vs-li2", L(x), li2(x) + 0.5 * math.log(x) * math.log1p(-x), tol, tag))
        out.append(
            DilogReport("rogers-negative-argument", -L(t / (1 + t)), li2(-t) + 0.5 * math.log(t) * math.log1p(t), tol, tag)
        )
    return out


def _constant_rhs(X: DynkinData, level: int, Y: dict) -> dict:
    out = {}
    for m in range(1, level):
        for a in range(X.rank):
            num = 1.0
            for b in X.neighbors(a):
                num *= 1 + Y[(b, m)]
            den = 1.0
            if m > 1:
                den *= 1 + 1 / Y[(a, m - 1)]
            if m < level - 1:
                den *= 1 + 1 / Y[(a, m + 1)]
            out[(a, m)] = num / den
    return out


def constant_ysystem_residual(X: DynkinData, level: int, Y: dict) -> float:
    rhs = _constant_rhs(X, level, Y)
    return max(abs(Y[k] ** 2 - rhs[k]) / max(1.0, rhs[k]) for k in Y)


def solve_constant_ysystem(
    X: DynkinData, level: int, *, tol: float = 1e-14, max_iter: int = 100_000, damping: float = 0.5
) -> dict[tuple[int, int], float]:
    """Positive solution of the constant Y-system, keyed by ``(a, m)``.

    Damped fixed-point iteration ``Y <- (1 - damping) Y + damping sqrt(RHS)``
    from the all-ones start.
    """
    if level < 2:
        raise ValueError("level must be at least 2")
    Y = {(a, m): 1.0 for m in range(1, level) for a in range(X.rank)}
    for _ in range(max_iter):
        if constant_ysystem_residual(X, level, Y) < tol:
            return Y
        rhs = _constant_rhs(X, level, Y)
        Y = {k: (1 - damping) * Y[k] + damping * math.sqrt(rhs[k]) for k in Y}
    raise RuntimeError(f"constant Y-system for ({X.label}, {level}) did not converge in {max_iter} iterations")


def verify_di6(X: DynkinData, level: int, tol: float = 1e-10) -> DilogReport:
    Y = solve_constant_ysystem(X, level)
    lhs = 6 / math.pi**2 * math.fsum(rogers_l(v / (1 + v)) for v in Y.values())
    rhs = level * X.dim / (X.coxeter + level) - X.rank
    return DilogReport("central-charge", lhs, rhs, tol, f"({X.label}, {level}) constant solution")


def random_positive_rational(rng: random.Random, bound: int = 20) -> Fraction:
    return Fraction(rng.randint(1, bound), rng.randint(1, bound))


def random_full_grid_init(X: DynkinData, level: int, rng: random.Random, bound: int = 20) -> dict:
    """Random positive rationals at every ``(a, m)`` for ``u = 0, 1``."""
    return {(a, m, u): random_positive_rational(rng, bound) for u in (0, 1) for a, m in ysystem_domain(X, level, u, None)}


def verify_di7(X: DynkinData, level: int, init: dict, tol: float = 1e-8, sample: str = "") -> DilogReport:
    """Functional form summed over the whole grid and ``u = 0 .. 2(h+l)-1``.

    ``init`` gives exact positive values at every ``(a, m)`` for ``u = 0, 1``;
    the grid splits into two independent parity classes and both are summed.
    """
    period = 2 * (X.coxeter + level)
    Y = ysystem_iterate(X, level, init, period - 1)
    terms = [rogers_l(float(v / (1 + v))) for (a, m, u), v in Y.items() if 0 <= u < period]
    lhs = 6 / math.pi**2 * math.fsum(terms)
    rhs = 2 * X.coxeter * X.rank * (level - 1)
    return DilogReport("functional-central-charge", lhs, float(rhs), tol, sample or f"({X.label}, {level})")


def _period_data(B: ExchangeMatrix, seq: Sequence[int], init: Sequence[Fraction]):
    if detect_period(B, seq) is None:
        raise ValueError("sequence is not a certified period")
    signs = run_sequence(B, seq).signs
    y = tuple(Fraction(v) for v in init)
    if any(v <= 0 for v in y):
        raise ValueError("initial values must be positive")
    values = []
    Bc = B
    for k, eps in zip(seq, signs):
        values.append(y[k])
        y = mutate_y(y, Bc, k, eps)
        Bc = mutate_matrix(Bc, k, eps)
    return signs, values


def classical_di_reports(
    B: ExchangeMatrix, seq: Sequence[int], init: Sequence[Fraction], tol: float = 1e-9, sample: str = ""
) -> dict[str, DilogReport]:
    """The signed sum (``"signed"``, equal to 0) and the two counting sums
    (``"count-minus"`` equal to N-, ``"count-plus"`` equal to N+) along a
    period, with y-values computed exactly and converted to float only
    inside ``L``."""
    signs, values = _period_data(B, seq, init)
    n_plus = sum(1 for e in signs if e == 1)
    n_minus = len(signs) - n_plus
    c = 6 / math.pi**2
    signed = math.fsum(e * rogers_l(float(v**e / (1 + v**e))) for e, v in zip(signs, values))
    minus = c * math.fsum(rogers_l(float(v / (1 + v))) for v in values)
    plus = c * math.fsum(rogers_l(float(1 / (1 + v))) for v in values)
    sample = sample or f"init={[str(v) for v in init]}"
    return {
        "signed": DilogReport("signed", signed, 0.0, tol, sample, n_plus, n_minus),
        "count-minus": DilogReport("count-minus", minus, float(n_minus), tol, sample, n_plus, n_minus),
        "count-plus": DilogReport("count-plus", plus, float(n_plus), tol, sample, n_plus, n_minus),
    }


def verify_classical_di(
    B: ExchangeMatrix, seq: Sequence[int], init: Sequence[Fraction], which: str, tol: float = 1e-9
) -> DilogReport:
    reports = classical_di_reports(B, seq, init, tol)
    if which not in reports:
        raise ValueError(f"unknown identity {which!r}; choose from {sorted(reports)}")
    return reports[which]
