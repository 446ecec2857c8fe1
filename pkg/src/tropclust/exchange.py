"""Exchange matrices, skew-symmetrizers, matrix mutation and the P/Q matrices
of the matrix form of mutation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

import numpy as np

__all__ = [
    "ExchangeMatrix",
    "NotSkewSymmetrizable",
    "find_skew_symmetrizer",
    "mutate_matrix",
    "pq_matrices",
    "pos",
]


class NotSkewSymmetrizable(ValueError):
    pass


def pos(a):
    """``[a]_+ = max(a, 0)``, elementwise for arrays."""
    if isinstance(a, np.ndarray):
        return np.maximum(a, 0)
    return a if a > 0 else 0


def find_skew_symmetrizer(b) -> tuple[int, ...]:
    """Positive diagonal ``d`` with coprime entries such that ``diag(d) @ b``
    is skew-symmetric.

    Each connected component of the underlying graph is scaled to its
    smallest integer solution.
    """
    b = np.asarray(b, dtype=np.int64)
    n = b.shape[0]
    if b.shape != (n, n):
        raise NotSkewSymmetrizable("matrix must be square")
    for i in range(n):
        if b[i, i] != 0:
            raise NotSkewSymmetrizable(f"nonzero diagonal entry at {i}")
        for j in range(i + 1, n):
            if (b[i, j] == 0) != (b[j, i] == 0) or b[i, j] * b[j, i] > 0:
                raise NotSkewSymmetrizable(f"sign pattern violated at ({i}, {j})")
    d: list[Fraction | None] = [None] * n
    for root in range(n):
        if d[root] is not None:
            continue
        d[root] = Fraction(1)
        component = [root]
        stack = [root]
        while stack:
            i = stack.pop()
            for j in range(n):
                if b[i, j] == 0:
                    continue
                # d_i b_ij = -d_j b_ji
                dj = d[i] * Fraction(int(b[i, j]), -int(b[j, i]))
                if d[j] is None:
                    d[j] = dj
                    component.append(j)
                    stack.append(j)
                elif d[j] != dj:
                    raise NotSkewSymmetrizable("inconsistent cycle ratios")
        den = lcm(*(d[i].denominator for i in component))
        ints = [int(d[i] * den) for i in component]
        g = gcd(*ints)
        for i, v in zip(component, ints):
            d[i] = Fraction(v // g)
    return tuple(int(x) for x in d)


@dataclass(frozen=True, eq=False)
class ExchangeMatrix:
    """Skew-symmetrizable integer matrix ``b`` with its symmetrizer ``d``."""

    b: np.ndarray
    d: tuple[int, ...]

    def __init__(self, b, d: Sequence[int] | None = None):
        arr = np.array(b, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError("exchange matrix must be square")
        if d is None:
            d = find_skew_symmetrizer(arr)
        d = tuple(int(x) for x in d)
        if len(d) != arr.shape[0] or any(x <= 0 for x in d):
            raise ValueError("symmetrizer must be a positive vector of length n")
        if gcd(*d) != 1:
            raise ValueError("symmetrizer entries must be coprime")
        db = np.diag(d) @ arr
        if not np.array_equal(db, -db.T):
            raise NotSkewSymmetrizable("diag(d) @ b is not skew-symmetric")
        arr.setflags(write=False)
        object.__setattr__(self, "b", arr)
        object.__setattr__(self, "d", d)

    @property
    def n(self) -> int:
        return self.b.shape[0]

    @property
    def D(self) -> np.ndarray:
        return np.diag(self.d)

    def is_skew_symmetric(self) -> bool:
        return np.array_equal(self.b, -self.b.T)

    def __getitem__(self, ij):
        return int(self.b[ij])

    def __eq__(self, other):
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.d == other.d and np.array_equal(self.b, other.b)

    def __hash__(self):
        return hash((self.b.tobytes(), self.b.shape, self.d))

    def tolist(self) -> list[list[int]]:
        return self.b.tolist()

    def permuted(self, nu: Sequence[int]) -> "ExchangeMatrix":
        """The matrix ``b'`` with ``b'[nu[i], nu[j]] = b[i, j]``."""
        n = self.n
        out = np.zeros_like(self.b)
        dd = [0] * n
        for i in range(n):
            dd[nu[i]] = self.d[i]
            for j in range(n):
                out[nu[i], nu[j]] = self.b[i, j]
        return ExchangeMatrix(out, dd)

    def __repr__(self):
        return f"ExchangeMatrix({self.b.tolist()}, d={self.d})"


def _check_index(n: int, k: int):
    if not 0 <= k < n:
        raise IndexError(f"mutation index {k} out of range for rank {n}")


def mutate_matrix(B: ExchangeMatrix, k: int, eps: int = 1) -> ExchangeMatrix:
    """Matrix mutation at ``k`` in its epsilon form (result independent of ``eps``)."""
    _check_index(B.n, k)
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    b = B.b
    col = b[:, k]
    row = b[k, :]
    out = b + np.outer(pos(-eps * col), row) + np.outer(col, pos(eps * row))
    out[k, :] = -row
    out[:, k] = -col
    return ExchangeMatrix(out, B.d)


def pq_matrices(B: ExchangeMatrix, k: int, eps: int) -> tuple[np.ndarray, np.ndarray]:
    """``P = J_k + [eps B]_+^{k.}`` and ``Q = J_k + [eps B]_+^{.k}``."""
    _check_index(B.n, k)
    n = B.n
    J = np.eye(n, dtype=np.int64)
    J[k, k] = -1
    P = J.copy()
    Q = J.copy()
    P[k, :] += pos(eps * B.b[k, :])
    Q[:, k] += pos(eps * B.b[:, k])
    return P, Q
