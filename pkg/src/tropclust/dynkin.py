"""Simply-laced Dynkin diagrams: Coxeter numbers, dimensions, adjacency."""
from __future__ import annotations

import re
from dataclasses import dataclass

__all__ = ["DynkinData", "dynkin"]


@dataclass(frozen=True)
class DynkinData:
    """Dynkin diagram ``X`` with vertices ``0..rank-1``.

    ``edges`` lists adjacent pairs ``(a, b)`` with ``a < b``.
    """

    family: str
    rank: int
    coxeter: int
    dim: int
    edges: tuple[tuple[int, int], ...]

    @property
    def label(self) -> str:
        return f"{self.family}{self.rank}"

    def adjacent(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    def neighbors(self, a: int) -> list[int]:
        return sorted({b for e in self.edges for b in e if a in e and b != a})

    def coloring(self) -> tuple[int, ...]:
        """Bipartite coloring ``sigma`` with ``sigma[0] = +1``, by BFS from vertex 0."""
        sigma = [0] * self.rank
        for root in range(self.rank):
            if sigma[root]:
                continue
            sigma[root] = 1
            stack = [root]
            while stack:
                a = stack.pop()
                for b in self.neighbors(a):
                    if not sigma[b]:
                        sigma[b] = -sigma[a]
                        stack.append(b)
        return tuple(sigma)


def dynkin(label: str) -> DynkinData:
    """Build ``DynkinData`` from a label such as ``"A3"``, ``"D5"``, ``"E6"``.

    Vertex numbering: ``A_n`` and ``D_n`` follow the path ``0-1-...``; the
    ``D_n`` fork attaches ``n-1`` to ``n-3``; ``E_n`` is the path ``0..n-2``
    with vertex ``n-1`` attached to vertex 2.
    """
    m = re.fullmatch(r"\s*([ADEadeBCFGbcfg])_?(\d+)\s*", label)
    if not m:
        raise ValueError(f"cannot parse Dynkin label {label!r}")
    fam, n = m.group(1).upper(), int(m.group(2))
    if fam in "BCFG":
        raise ValueError(f"{fam}{n} is not simply laced; only A, D, E are supported")
    if fam == "A":
        if n < 1:
            raise ValueError("A_n needs n >= 1")
        edges = tuple((i, i + 1) for i in range(n - 1))
        return DynkinData("A", n, n + 1, n * (n + 2), edges)
    if fam == "D":
        if n < 4:
            raise ValueError("D_n needs n >= 4")
        edges = tuple((i, i + 1) for i in range(n - 2)) + ((n - 3, n - 1),)
        return DynkinData("D", n, 2 * n - 2, n * (2 * n - 1), edges)
    table = {6: (12, 78), 7: (18, 133), 8: (30, 248)}
    if n not in table:
        raise ValueError("E_n needs n in {6, 7, 8}")
    h, dim = table[n]
    edges = tuple((i, i + 1) for i in range(n - 2)) + ((2, n - 1),)
    return DynkinData("E", n, h, dim, tuple(sorted(edges)))
