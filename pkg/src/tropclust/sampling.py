"""Reproducible random exchange matrices and mutation sequences."""
from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .exchange import ExchangeMatrix, mutate_matrix

__all__ = ["RandomRunConfig", "random_exchange_matrix", "random_sequence", "entries_bounded", "random_run"]


@dataclass(frozen=True)
class RandomRunConfig:
    """Parameters of the random (B, sequence) generator.

    Each pair ``i < j`` is connected with probability ``p_edge`` by
    ``b_ij = t lcm(d_i, d_j) / d_i``, ``b_ji = -t lcm(d_i, d_j) / d_j`` with
    ``t = +-1``, so ``D B`` is skew-symmetric.  Runs whose exchange matrices
    along the sequence ever carry an entry above ``entry_bound`` in absolute
    value are redrawn (``entry_bound=None`` disables the filter).
    """

    n_min: int = 2
    n_max: int = 4
    depth: int = 8
    symmetrizer_choices: tuple[int, ...] = (1, 2)
    p_edge: float = 0.5
    entry_bound: int | None = 2
    max_attempts: int = 10_000


def random_exchange_matrix(rng: random.Random, n: int, config: RandomRunConfig = RandomRunConfig()) -> ExchangeMatrix:
    d = [rng.choice(config.symmetrizer_choices) for _ in range(n)]
    g = math.gcd(*d)
    d = [v // g for v in d]
    b = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < config.p_edge:
                t = rng.choice((1, -1))
                lcm = d[i] * d[j] // math.gcd(d[i], d[j])
                b[i][j] = t * lcm // d[i]
                b[j][i] = -t * lcm // d[j]
    return ExchangeMatrix(b, d)


def random_sequence(rng: random.Random, n: int, depth: int) -> tuple[int, ...]:
    """Uniform sequence without immediate repeats (those would undo a step)."""
    seq: list[int] = []
    for _ in range(depth):
        seq.append(rng.choice([k for k in range(n) if not seq or k != seq[-1]]))
    return tuple(seq)


def entries_bounded(B: ExchangeMatrix, seq, bound: int) -> bool:
    for k in seq:
        if abs(B.b).max() > bound:
            return False
        B = mutate_matrix(B, k)
    return abs(B.b).max() <= bound


def random_run(rng: random.Random, config: RandomRunConfig = RandomRunConfig()) -> tuple[ExchangeMatrix, tuple[int, ...]]:
    for _ in range(config.max_attempts):
        n = rng.randint(config.n_min, config.n_max)
        B = random_exchange_matrix(rng, n, config)
        seq = random_sequence(rng, n, config.depth)
        if config.entry_bound is None or entries_bounded(B, seq, config.entry_bound):
            return B, seq
    raise RuntimeError("no admissible run found; loosen entry_bound")
