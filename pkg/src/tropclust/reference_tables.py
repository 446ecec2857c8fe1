"""Reference data from worked examples, used by the acceptance checks.

c-vector tables are keyed by the time ``u`` of the seed ``Sigma(u)`` and list
the c-vector of every vertex (0-based vertex order).  For the level-3 A3 grid
the vertex ``(a, m)`` (``a`` = 0, 1, 2, ``m`` = 1, 2) has index ``3 (m - 1) + a``
and vector components use the same order.
"""
from __future__ import annotations

from .exact import LaurentPoly, RationalFunction
from .semifield import SubtractionFreeRational

# Sigma(u) for u = -4 .. 3 of the (A3, 3) Y-system quiver
A3_LEVEL3_CVECTORS = {
    -4: ((0, 0, -1, 0, 0, 0), (0, -1, 0, 0, 0, 0), (-1, 0, 0, 0, 0, 0), (0, 0, 0, 0, 0, -1), (0, 0, 0, 0, -1, 0), (0, 0, 0, -1, 0, 0)),
    -3: ((0, 0, 1, 0, 0, 0), (-1, -1, -1, 0, 0, 0), (1, 0, 0, 0, 0, 0), (0, 0, 0, 0, -1, -1), (0, 0, 0, 0, 1, 0), (0, 0, 0, -1, -1, 0)),
    -2: ((-1, -1, 0, 0, 0, 0), (1, 1, 1, 0, 0, 0), (0, -1, -1, 0, 0, 0), (0, 0, 0, 0, 1, 1), (0, 0, 0, -1, -1, -1), (0, 0, 0, 1, 1, 0)),
    -1: ((1, 1, 0, 0, 0, 0), (0, -1, 0, 0, 0, 0), (0, 1, 1, 0, 0, 0), (0, 0, 0, -1, 0, 0), (0, 0, 0, 1, 1, 1), (0, 0, 0, 0, 0, -1)),
    0: ((1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, 1, 0, 0, 0), (0, 0, 0, 1, 0, 0), (0, 0, 0, 0, 1, 0), (0, 0, 0, 0, 0, 1)),
    1: ((-1, 0, 0, 0, 0, 0), (0, 1, 0, 0, 1, 0), (0, 0, -1, 0, 0, 0), (1, 0, 0, 1, 0, 0), (0, 0, 0, 0, -1, 0), (0, 0, 1, 0, 0, 1)),
    2: ((0, 0, 0, 1, 0, 0), (0, -1, 0, 0, -1, 0), (0, 0, 0, 0, 0, 1), (-1, 0, 0, -1, 0, 0), (0, 1, 0, 0, 0, 0), (0, 0, -1, 0, 0, -1)),
    3: ((0, 0, 0, -1, 0, 0), (0, 0, 0, 0, -1, 0), (0, 0, 0, 0, 0, -1), (-1, 0, 0, 0, 0, 0), (0, -1, 0, 0, 0, 0), (0, 0, -1, 0, 0, 0)),
}

# (A3, 2) quiver, backward steps starting with mu_-; row m = 1 of the level-3 grid
A3_LEVEL2_ROWS = {
    -6: ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    -5: ((0, 0, -1), (0, 1, 0), (-1, 0, 0)),
    -4: ((0, 0, -1), (0, -1, 0), (-1, 0, 0)),
    -3: ((0, 0, 1), (-1, -1, -1), (1, 0, 0)),
    -2: ((-1, -1, 0), (1, 1, 1), (0, -1, -1)),
    -1: ((1, 1, 0), (0, -1, 0), (0, 1, 1)),
    0: ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
}

# opposite quiver and parity; row m = 2 of the level-3 grid
A3_LEVEL2_ROWS_OPPOSITE = {
    -6: ((0, 0, 1), (0, 1, 0), (1, 0, 0)),
    -5: ((0, 0, 1), (0, -1, 0), (1, 0, 0)),
    -4: ((0, 0, -1), (0, -1, 0), (-1, 0, 0)),
    -3: ((0, -1, -1), (0, 1, 0), (-1, -1, 0)),
    -2: ((0, 1, 1), (-1, -1, -1), (1, 1, 0)),
    -1: ((-1, 0, 0), (1, 1, 1), (0, 0, -1)),
    0: ((1, 0, 0), (0, 1, 0), (0, 0, 1)),
}

# A2 with B = [[0, -1], [1, 0]] along 1, 2, 1, 2, 1 (t = 0 .. 5)
A2_CVECTORS = {
    0: ((1, 0), (0, 1)),
    1: ((-1, 0), (0, 1)),
    2: ((-1, 0), (0, -1)),
    3: ((1, 0), (-1, -1)),
    4: ((0, -1), (1, 1)),
    5: ((0, 1), (1, 0)),
}

# the opposite A2 quiver along the same sequence; columns of the level-3 grid
A2_CVECTORS_OPPOSITE = {
    0: ((1, 0), (0, 1)),
    1: ((-1, 0), (1, 1)),
    2: ((0, 1), (-1, -1)),
    3: ((0, -1), (-1, 0)),
    4: ((0, -1), (1, 0)),
    5: ((0, 1), (1, 0)),
}

A2_B = [[0, -1], [1, 0]]
A2_SEQUENCE = (0, 1, 0, 1, 0)


def a2_example_seeds() -> list[dict]:
    """Exchange matrix, cluster variables (in x1, x2, y1, y2) and coefficients
    (universal semifield in y1, y2) for t = 0 .. 5 along 1, 2, 1, 2, 1."""
    x1, x2, y1, y2 = (RationalFunction.from_poly(LaurentPoly.gen(i, 4)) for i in range(4))
    yh1, yh2 = y1 * x2, y2 / x1
    Y1, Y2 = SubtractionFreeRational.gen(0, 2), SubtractionFreeRational.gen(1, 2)
    one = SubtractionFreeRational.one(2)
    quad_hat = (1 + yh2 + yh1 * yh2) / (1 + y2 + y1 * y2)
    quad = one + Y2 + Y1 * Y2
    xa = x1 ** -1 * (1 + yh1) / (1 + y1)
    xb = x1 / x2 * (1 + yh2) / (1 + y2)
    B0 = A2_B
    B1 = [[-v for v in row] for row in B0]
    return [
        {"B": B0, "x": (x1, x2), "y": (Y1, Y2)},
        {"B": B1, "x": (xa, x2), "y": (Y1 ** -1, Y2 * (one + Y1))},
        {"B": B0, "x": (xa, x2 ** -1 * quad_hat), "y": (Y1 ** -1 * quad, (Y2 * (one + Y1)) ** -1)},
        {"B": B1, "x": (xb, x2 ** -1 * quad_hat), "y": (Y1 / quad, (Y1 * Y2) ** -1 * (one + Y2))},
        {"B": B0, "x": (xb, x1), "y": (Y2 ** -1, Y1 * Y2 / (one + Y2))},
        {"B": B1, "x": (x2, x1), "y": (Y2, Y1)},
    ]
