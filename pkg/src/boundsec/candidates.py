"""The two candidate bound-secret distributions, exactly as tabulated."""

from __future__ import annotations

import numpy as np

from .dists import Alphabet, JointDistribution, tuple_symbol

# (x, y) -> (unnormalized weight, z) for the 3x3 candidate with deterministic Z
_GRW_CELLS = {
    (1, 1): (2, 0), (2, 1): (4, 1), (3, 1): (1, 2),
    (1, 2): (1, 3), (2, 2): (2, 0), (3, 2): (4, 4),
    (1, 3): (4, 5), (2, 3): (1, 6), (3, 3): (2, 0),
}


def grw() -> JointDistribution:
    """3x3 candidate with Z a deterministic function of (X, Y); normalizer 21."""
    x_alpha = Alphabet(("1", "2", "3"))
    y_alpha = Alphabet(("1", "2", "3"))
    z_alpha = Alphabet(tuple(str(z) for z in range(7)))
    w = np.zeros((3, 3, 7))
    for (x, y), (weight, z) in _GRW_CELLS.items():
        w[x - 1, y - 1, z] = weight
    return JointDistribution([("X", x_alpha), ("Y", y_alpha), ("Z", z_alpha)], w, 21.0)


def rw_z_symbol(x: int, y: int) -> str:
    """Z label for the 4x4 family: parity values or the literal pair."""
    if x in (0, 1) and y in (0, 1):
        return str((x + y) % 2)
    if x in (2, 3) and y in (2, 3):
        return str(x % 2)
    return tuple_symbol((str(x), str(y)))


def rw_z_alphabet() -> Alphabet:
    pairs = [(x, y) for x in (0, 1) for y in (2, 3)] + [(x, y) for x in (2, 3) for y in (0, 1)]
    return Alphabet(("0", "1") + tuple(tuple_symbol((str(x), str(y))) for x, y in pairs))


def rw(a: float) -> JointDistribution:
    """4x4 family with parameter a > 0; normalizer 1 + 8a."""
    a = float(a)
    if a <= 0:
        raise ValueError("parameter a must be positive")
    xy_alpha = Alphabet(("0", "1", "2", "3"))
    z_alpha = rw_z_alphabet()
    w = np.zeros((4, 4, len(z_alpha)))
    for x in range(4):
        for y in range(4):
            if x in (0, 1) and y in (0, 1):
                weight = 1 / 8
            elif x in (2, 3) and y in (2, 3):
                weight = 1 / 4 if x == y else 0.0
            else:
                weight = a
            if weight:
                w[x, y, z_alpha.index(rw_z_symbol(x, y))] = weight
    return JointDistribution([("X", xy_alpha), ("Y", xy_alpha), ("Z", z_alpha)], w, 1.0 + 8 * a)
