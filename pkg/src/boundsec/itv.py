"""Independence target values, the explicit Eve-channel construction for the
3x3 candidate, recursive target rules, and row/column transformation machinery
for weighted-average targets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .candidates import grw
from .channels import Binarization, Channel
from .dists import Alphabet, tuple_symbol


def tau(r, s, t):
    """Median of the three fixed weighted averages (2r+s)/3, (r+2t)/3, (2s+t)/3.

    Accepts scalars or broadcastable arrays; the median is picked, never
    recombined, so it is exactly one of the three averages.
    """
    u = (2 * r + s) / 3
    v = (r + 2 * t) / 3
    w = (2 * s + t) / 3
    med = np.maximum(np.minimum(u, v), np.minimum(np.maximum(u, v), w))
    return float(med) if np.ndim(med) == 0 else med


def construct_ab_batch(r, s, t):
    """Vectorized (a, b) in [0,1]^2 with (2r+as+4bt)/(2+a+4b) = tau(r,s,t).

    Normalizes each triple to a cyclic shift of (0,x,1) (reflecting the
    (0,1,x) family through v -> 1-v) and applies the closed-form case table.
    """
    r, s, t = np.broadcast_arrays(
        np.asarray(r, dtype=float), np.asarray(s, dtype=float), np.asarray(t, dtype=float)
    )
    mn = np.minimum(np.minimum(r, s), t)
    mx = np.maximum(np.maximum(r, s), t)
    equal = mx == mn
    rng = np.where(equal, 1.0, mx - mn)
    rp, sp, tp = (r - mn) / rng, (s - mn) / rng, (t - mn) / rng

    a = np.zeros(rp.shape)
    b = np.zeros(rp.shape)
    assigned = equal.copy()  # r = s = t: any (a,b) works; return (0,0)

    for reflected in (False, True):
        if reflected:
            rp, sp, tp = 1 - rp, 1 - sp, 1 - tp
        cases = (
            ("A", (rp == 0) & (tp == 1), sp),
            ("B", (rp == 1) & (sp == 0), tp),
            ("C", (sp == 1) & (tp == 0), rp),
        )
        for name, cond, x in cases:
            m = cond & ~assigned
            if not m.any():
                continue
            low = x < 0.5
            if name == "A":
                a_case = np.zeros(x.shape)
                b_case = np.where(low, (1 + 2 * x) / np.maximum(4 - 4 * x, 1e-300), 1.0)
            elif name == "B":
                a_case = np.where(low, 0.0, 1.0)
                b_case = np.where(low, 1.0, 0.0)
            else:
                a_case = np.ones(x.shape)
                b_case = np.where(low, 0.0, 3 * (2 * x - 1) / 8)
            a[m] = a_case[m]
            b[m] = b_case[m]
            assigned |= m
    if not assigned.all():
        raise AssertionError("normalization failed to reach a cyclic shift of (0,x,1)")
    return a, b


def construct_ab(r: float, s: float, t: float) -> tuple[float, float]:
    a, b = construct_ab_batch(r, s, t)
    return float(a), float(b)


def construct_eve_channel_n1(bob: Binarization) -> Channel:
    """Eve channel for the 3x3 candidate that makes X independent of Bob's
    binarized variable given Eve's output.

    Z=0 maps to "0" surely; Z=1..6 map to "0" with probabilities d, e, a, f,
    b, c (from three rotated construct_ab calls) and otherwise pass through
    to their own symbol, making each X column's conditional average of Bob's
    "0"-probability equal to tau(r,s,t) given Zbar="0".
    """
    if len(bob.p0) != 3:
        raise ValueError("Bob binarization must act on the 3-symbol Y alphabet")
    r, s, t = bob.p0
    a, b = construct_ab(r, s, t)
    c, d = construct_ab(s, t, r)
    e, f = construct_ab(t, r, s)
    alpha = Alphabet(tuple(str(i) for i in range(7)))
    to_zero = {0: 1.0, 1: d, 2: e, 3: a, 4: f, 5: b, 6: c}
    rows = np.zeros((7, 7))
    for z in range(7):
        rows[z, 0] = to_zero[z]
        if z > 0:
            rows[z, z] = 1 - to_zero[z]
    return Channel(alpha, alpha, rows)


def tau2_targets(a) -> dict[str, float]:
    """Target values on the Z-bar symbols with a zero component, for N=2.

    a[i][j] is Bob's probability of output "0" given Y^2 = (i+1, j+1).
    """
    a = np.asarray(a, dtype=float)
    if a.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {a.shape}")
    targets = {}
    for i in range(1, 7):
        j = (i + 1) // 2  # ceil(i/2)
        targets[tuple_symbol(("0", str(i)))] = tau(a[0, j - 1], a[1, j - 1], a[2, j - 1])
        targets[tuple_symbol((str(i), "0"))] = tau(a[j - 1, 0], a[j - 1, 1], a[j - 1, 2])
    row_itvs = [tau(a[i, 0], a[i, 1], a[i, 2]) for i in range(3)]
    targets[tuple_symbol(("0", "0"))] = tau(*row_itvs)
    return targets


def _tau_reduce(table: np.ndarray) -> float:
    """Row-first recursive tau over an n-dimensional 3x...x3 table."""
    if table.ndim == 0:
        return float(table)
    return tau(*(_tau_reduce(table[i]) for i in range(3)))


def tau_n_targets(n: int, table) -> dict[str, float]:
    """Recursive row-first targets for N-fold Z symbols with a zero component.

    Components z_k != 0 pin Y_k = ceil(z_k / 2) and slice the table; the
    remaining free coordinates are reduced by nested tau. For n = 2 this
    reproduces tau2_targets.
    """
    table = np.asarray(table, dtype=float)
    if n < 1:
        raise ValueError("n must be >= 1")
    if table.shape != (3,) * n:
        raise ValueError(f"expected shape {(3,) * n}, got {table.shape}")
    targets = {}
    for z in itertools.product(range(7), repeat=n):
        if 0 not in z:
            continue
        index = tuple((zk + 1) // 2 - 1 if zk != 0 else slice(None) for zk in z)
        value = _tau_reduce(table[index])
        symbol = str(z[0]) if n == 1 else tuple_symbol(tuple(str(zk) for zk in z))
        targets[symbol] = value
    return targets


def itv_product_property_check(b, c) -> float:
    """|tau of columnwise taus - tau(b) tau(c)| for a rank-one 3x3 strategy."""
    b0, b1, b2 = b
    c0, c1, c2 = c
    lhs = tau(
        tau(b0 * c0, b1 * c0, b2 * c0),
        tau(b0 * c1, b1 * c1, b2 * c1),
        tau(b0 * c2, b1 * c2, b2 * c2),
    )
    rhs = tau(b0, b1, b2) * tau(c0, c1, c2)
    return abs(lhs - rhs)


@dataclass(frozen=True)
class WeightedITV:
    """4-ary weighted-average target function w1 r + w2 s + w3 t + w4 u."""

    weights: tuple

    def __post_init__(self):
        w = tuple(float(v) for v in self.weights)
        if len(w) != 4:
            raise ValueError("need exactly four weights")
        if abs(sum(w) - 1.0) > 1e-12:
            raise ValueError(f"weights must sum to 1, got {sum(w)}")
        object.__setattr__(self, "weights", w)

    def value(self, vals) -> float:
        return float(np.dot(self.weights, np.asarray(vals, dtype=float)))


UNIFORM_UPSILON = WeightedITV((0.25, 0.25, 0.25, 0.25))


def upsilon_n(table, upsilon: WeightedITV) -> float:
    """Rows-first recursive weighted-average target over a 4^n table."""
    t = np.asarray(table, dtype=float)
    if t.ndim == 0:
        return float(t)
    if t.ndim == 1:
        return upsilon.value(t)
    return upsilon.value([upsilon_n(t[i], upsilon) for i in range(4)])


def row_transform(table, coord: int, fixed, d: float, upsilon: WeightedITV) -> np.ndarray:
    """Scale one line of a 4^n table about its upsilon value: x -> v + d (x - v).

    `coord` is the varying axis; `fixed` gives the indices of the other axes
    in order. Preserves the recursive upsilon_n value for any d.
    """
    t = np.array(table, dtype=float)
    fixed = tuple(fixed)
    if len(fixed) != t.ndim - 1:
        raise ValueError(f"need {t.ndim - 1} fixed indices, got {len(fixed)}")
    index = list(fixed)
    index.insert(coord, slice(None))
    index = tuple(index)
    line = t[index]
    v = upsilon.value(line)
    t[index] = v + d * (line - v)
    return t


def rowcol_equivalence_check(upsilon: WeightedITV, table) -> float:
    """|rows-first - columns-first| nested upsilon on a 4x4 table."""
    t = np.asarray(table, dtype=float)
    if t.shape != (4, 4):
        raise ValueError("table must be 4x4")
    return abs(upsilon_n(t, upsilon) - upsilon_n(t.T, upsilon))


def transform_generator_rank(n: int, upsilon: WeightedITV) -> tuple[int, int, int]:
    """Numerical rank of the linearized row-column-type transformation family.

    At a fixed generic base table, each of the n * 4^(n-1) lines contributes
    the direction vector (line - upsilon(line)) supported on that line.
    Returns (generator count, ambient dimension 4^n, numerical rank).
    """
    if not 1 <= n <= 4:
        raise ValueError("n must be between 1 and 4")
    rng = np.random.default_rng(0)
    base = rng.integers(1, 1000, size=(4,) * n).astype(float)
    dim = 4**n
    generators = []
    for coord in range(n):
        for fixed in itertools.product(range(4), repeat=n - 1):
            index = list(fixed)
            index.insert(coord, slice(None))
            index = tuple(index)
            line = base[index]
            g = np.zeros((4,) * n)
            g[index] = line - upsilon.value(line)
            generators.append(g.ravel())
    mat = np.array(generators)
    svals = np.linalg.svd(mat, compute_uv=False)
    rank = int(np.sum(svals > 1e-9 * svals.max())) if svals.size else 0
    return len(generators), dim, rank
