"""Seeds over an arbitrary coefficient semifield and their mutation.

Cluster variables live in the rational function field of ``(x_1..x_n,
y_1..y_n)``: variable ``j < n`` is ``x_{j+1}``, variable ``n + j`` is
``y_{j+1}``. Coefficients are semifield elements (universal, tropical, or
positive rationals), see :mod:`tropclust.semifield`.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence

from .exact import LaurentPoly, RationalFunction
from .exchange import ExchangeMatrix, mutate_matrix, pos
from .semifield import SubtractionFreeRational, TropicalMonomial, semifield_one

__all__ = [
    "Seed",
    "Falsification",
    "initial_seed",
    "mutate_y",
    "mutate_seed",
    "mutate_sequence",
    "compute_yhat",
    "coefficient_as_rational",
    "is_laurent_in_x",
    "var_names",
]


class Falsification(AssertionError):
    """An identity that must hold (by theorem or by construction) failed.

    Carries the mutation history so the failure can be reproduced.
    """

    def __init__(self, message: str, history: Sequence[int] = ()):
        super().__init__(f"{message} (history={[k + 1 for k in history]})")
        self.history = tuple(history)


@dataclass(frozen=True)
class Seed:
    B: ExchangeMatrix
    y: tuple
    x: tuple[RationalFunction, ...] | None = None
    yhat: tuple[RationalFunction, ...] | None = None
    history: tuple[int, ...] = field(default=())

    @property
    def n(self) -> int:
        return self.B.n

    def same_as(self, other: "Seed") -> bool:
        """Symbolic equality of ``(B, x, y)``; the history is ignored."""
        if self.B != other.B or len(self.y) != len(other.y):
            return False
        if any(a != b for a, b in zip(self.y, other.y)):
            return False
        if (self.x is None) != (other.x is None):
            return False
        return self.x is None or all(a == b for a, b in zip(self.x, other.x))


def var_names(n: int) -> list[str]:
    return [f"x{i + 1}" for i in range(n)] + [f"y{i + 1}" for i in range(n)]


def coefficient_as_rational(c, n: int) -> RationalFunction:
    """Embed a coefficient (semifield element in ``y``) into Q(x, y)."""
    if isinstance(c, SubtractionFreeRational):
        return RationalFunction(c.num.embed(2 * n, n), c.den.embed(2 * n, n))
    if isinstance(c, TropicalMonomial):
        return RationalFunction.monomial((0,) * n + c.exponents)
    if isinstance(c, (int, Fraction)):
        return RationalFunction.constant(c, 2 * n)
    raise TypeError(f"unsupported coefficient type {type(c).__name__}")


def compute_yhat(B: ExchangeMatrix, x: Sequence[RationalFunction], y: Sequence) -> tuple:
    """``yhat_i = y_i * prod_j x_j**b_ji``."""
    n = B.n
    out = []
    for i in range(n):
        v = coefficient_as_rational(y[i], n)
        for j in range(n):
            if B.b[j, i]:
                v = v * x[j] ** int(B.b[j, i])
        out.append(v)
    return tuple(out)


def initial_seed(B: ExchangeMatrix, semifield: str = "universal", with_x: bool = True) -> Seed:
    """The initial seed ``(B, x, y)`` with coefficients in the named semifield
    (``"universal"`` or ``"tropical"``, the latter giving principal coefficients)."""
    n = B.n
    if semifield == "universal":
        y = tuple(SubtractionFreeRational.gen(i, n) for i in range(n))
    elif semifield == "tropical":
        y = tuple(TropicalMonomial.gen(i, n) for i in range(n))
    else:
        raise ValueError(f"unknown semifield {semifield!r}")
    if not with_x:
        return Seed(B, y)
    x = tuple(RationalFunction.from_poly(LaurentPoly.gen(i, 2 * n)) for i in range(n))
    return Seed(B, y, x, compute_yhat(B, x, y))


def mutate_y(y: Sequence, B: ExchangeMatrix, k: int, eps: int = 1) -> tuple:
    """Coefficient exchange relation in its epsilon form, over any semifield."""
    yk = y[k]
    one = semifield_one(yk)
    out = []
    for i in range(B.n):
        if i == k:
            out.append(yk ** -1)
            continue
        bki = int(B.b[k, i])
        if bki == 0:
            out.append(y[i])
            continue
        v = y[i] * yk ** pos(eps * bki) * (one + yk**eps) ** (-bki)
        out.append(v)
    return tuple(out)


def _mutate_x(s: Seed, k: int, eps: int):
    n = s.n
    b = s.B.b
    num = s.x[k] ** -1
    for j in range(n):
        e = pos(-eps * int(b[j, k]))
        if e:
            num = num * s.x[j] ** e
    one = semifield_one(s.y[k])
    frac = (1 + s.yhat[k] ** eps) / coefficient_as_rational(one + s.y[k] ** eps, n)
    new = list(s.x)
    new[k] = num * frac
    return tuple(new)


def _mutate_yhat(s: Seed, k: int):
    b = s.B.b
    yk = s.yhat[k]
    out = []
    for i in range(s.n):
        if i == k:
            out.append(yk ** -1)
            continue
        bki = int(b[k, i])
        v = s.yhat[i]
        if bki < 0:
            v = v * (1 + yk) ** (-bki)
        elif bki > 0:
            v = v / (1 + yk ** -1) ** bki
        out.append(v)
    return tuple(out)


def mutate_seed(s: Seed, k: int, check: bool = True) -> Seed:
    """Mutation at ``k`` (0-based).

    With ``check`` on, the matrix, coefficient and cluster exchange relations
    are evaluated for both signs ``eps = +1`` and ``eps = -1`` and compared,
    and the mutated ``yhat`` is compared with its definition.
    """
    B2 = mutate_matrix(s.B, k, 1)
    history = s.history + (k,)
    y2 = mutate_y(s.y, s.B, k, 1)
    if check:
        if mutate_matrix(s.B, k, -1) != B2:
            raise Falsification("matrix mutation depends on eps", history)
        if any(a != b for a, b in zip(y2, mutate_y(s.y, s.B, k, -1))):
            raise Falsification("coefficient mutation depends on eps", history)
    if s.x is None:
        return Seed(B2, y2, history=history)
    x2 = _mutate_x(s, k, 1)
    yhat2 = _mutate_yhat(s, k)
    if check:
        if x2[k] != _mutate_x(s, k, -1)[k]:
            raise Falsification("cluster variable mutation depends on eps", history)
        if any(a != b for a, b in zip(yhat2, compute_yhat(B2, x2, y2))):
            raise Falsification("yhat mutation disagrees with its definition", history)
    return Seed(B2, y2, x2, yhat2, history)


def mutate_sequence(s: Seed, seq: Sequence[int], check: bool = True) -> list[Seed]:
    """All seeds along ``seq``, starting with ``s`` itself."""
    out = [s]
    for k in seq:
        out.append(mutate_seed(out[-1], k, check))
    return out


def is_laurent_in_x(r: RationalFunction, n: int) -> bool:
    """True when the denominator of ``r`` involves no ``x`` variable, i.e. ``r``
    is a Laurent polynomial in ``x`` with coefficients rational in ``y``."""
    return all(not any(e[:n]) for e in r.den.exponents())


def with_history(s: Seed, history: Sequence[int]) -> Seed:
    return replace(s, history=tuple(history))
