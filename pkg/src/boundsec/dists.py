"""Finite alphabets and dense joint weight tables.

Weights are stored unnormalized together with an explicit normalizer, so
integer-valued tables stay exact; probabilities are derived on demand.
"""

from __future__ import annotations

import itertools
import json
import os
from dataclasses import dataclass, field

import numpy as np

SUM_TOL = 1e-12

DEFAULT_CELL_CAP = 10**7
CELL_CAP_ENV = "BOUNDSEC_CELL_CAP"


class CellCapExceededError(ValueError):
    """Raised when a product construction would exceed the cell cap."""


def cell_cap() -> int:
    return int(os.environ.get(CELL_CAP_ENV, DEFAULT_CELL_CAP))


@dataclass(frozen=True)
class Alphabet:
    """Ordered set of distinct string labels."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "symbols", tuple(str(s) for s in self.symbols))
        if not self.symbols:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet labels must be pairwise distinct")

    def __len__(self) -> int:
        return len(self.symbols)

    def __iter__(self):
        return iter(self.symbols)

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise ValueError(f"symbol {symbol!r} not in alphabet {self.symbols}") from None


def tuple_symbol(labels) -> str:
    """Render a tuple of labels as a single product symbol, e.g. "(1,3)"."""
    return "(" + ",".join(labels) + ")"


def product_alphabet(alphabets) -> Alphabet:
    """Alphabet of tuple symbols, ordered like itertools.product."""
    return Alphabet(tuple(tuple_symbol(c) for c in itertools.product(*alphabets)))


class JointDistribution:
    """Dense nonnegative weight table over named axes with a normalizer.

    Probability of a cell is weight / normalizer. Instances are immutable;
    all operations return new distributions.
    """

    def __init__(self, axes, weights, normalizer: float):
        self._axes = tuple((str(name), alpha) for name, alpha in axes)
        w = np.asarray(weights, dtype=float)
        expected = tuple(len(alpha) for _, alpha in self._axes)
        if w.shape != expected:
            raise ValueError(f"weight table shape {w.shape} does not match alphabets {expected}")
        if np.any(w < 0):
            raise ValueError("weights must be nonnegative")
        normalizer = float(normalizer)
        if normalizer <= 0:
            raise ValueError("normalizer must be positive")
        total = float(w.sum())
        if abs(total - normalizer) > SUM_TOL * max(1.0, abs(normalizer)):
            raise ValueError(f"weights sum to {total}, expected normalizer {normalizer}")
        w.setflags(write=False)
        self._weights = w
        self._normalizer = normalizer

    @property
    def axes(self):
        return self._axes

    @property
    def axis_names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self._axes)

    @property
    def weights(self) -> np.ndarray:
        return self._weights

    @property
    def normalizer(self) -> float:
        return self._normalizer

    def alphabet(self, name: str) -> Alphabet:
        return self._axes[self.axis_index(name)][1]

    def axis_index(self, name: str) -> int:
        for i, (axis_name, _) in enumerate(self._axes):
            if axis_name == name:
                return i
        raise ValueError(f"unknown axis {name!r}; axes are {self.axis_names}")

    @property
    def probabilities(self) -> np.ndarray:
        return self._weights / self._normalizer

    def __eq__(self, other) -> bool:
        if not isinstance(other, JointDistribution):
            return NotImplemented
        return (
            self._axes == other._axes
            and self._normalizer == other._normalizer
            and np.array_equal(self._weights, other._weights)
        )

    def __repr__(self) -> str:
        shape = "x".join(str(len(a)) for _, a in self._axes)
        return f"JointDistribution(axes={self.axis_names}, shape={shape}, normalizer={self._normalizer})"


@dataclass(frozen=True, eq=False)
class ConditionalSlice:
    """Conditional distribution over the remaining axes given axis=symbol."""

    parent: JointDistribution
    fixed_axis: str
    fixed_symbol: str
    axes: tuple = field(repr=False, default=())
    weights: np.ndarray = field(repr=False, default=None)

    def distribution(self) -> JointDistribution:
        return JointDistribution(self.axes, self.weights, 1.0)


def marginal(d: JointDistribution, keep_axes) -> JointDistribution:
    """Sum weights over all axes not named in keep_axes (order preserved from d)."""
    keep = list(keep_axes)
    if not keep:
        raise ValueError("keep_axes must be non-empty")
    keep_idx = [d.axis_index(name) for name in keep]
    if len(set(keep_idx)) != len(keep_idx):
        raise ValueError("keep_axes contains duplicates")
    drop = tuple(i for i in range(len(d.axes)) if i not in keep_idx)
    w = d.weights.sum(axis=drop) if drop else d.weights
    # after the sum, surviving axes sit in d's original order; reorder as requested
    remaining = sorted(keep_idx)
    perm = [remaining.index(i) for i in keep_idx]
    if perm != list(range(len(perm))):
        w = np.transpose(w, perm)
    axes = [d.axes[i] for i in keep_idx]
    return JointDistribution(axes, w, d.normalizer)


def condition(d: JointDistribution, axis: str, symbol: str) -> ConditionalSlice:
    """Condition on axis=symbol; errors on a zero-probability event."""
    ai = d.axis_index(axis)
    si = d.alphabet(axis).index(symbol)
    sliced = np.take(d.weights, si, axis=ai)
    total = float(sliced.sum())
    if total <= 0:
        raise ValueError(f"conditioning event {axis}={symbol!r} has zero probability")
    rest = tuple(a for i, a in enumerate(d.axes) if i != ai)
    return ConditionalSlice(d, axis, symbol, rest, sliced / total)


def n_fold(d: JointDistribution, n: int) -> JointDistribution:
    """n independent copies of d, with tuple alphabets per axis.

    Axis k of the result ranges over n-tuples of axis k of d; the weight of a
    tuple cell is the product of the component weights.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if n == 1:
        return d
    k = len(d.axes)
    cells = int(np.prod([len(a) ** n for _, a in d.axes]))
    cap = cell_cap()
    if cells > cap:
        raise CellCapExceededError(f"n_fold would create {cells} cells, above the cap of {cap}")
    # outer product of n copies, then group the n replicas of each axis together
    w = d.weights
    out = w
    for _ in range(n - 1):
        out = np.multiply.outer(out, w)
    # axes currently ordered (copy0 axes..., copy1 axes, ...); bring replicas together
    perm = [c * k + a for a in range(k) for c in range(n)]
    out = np.transpose(out, perm)
    out = out.reshape([len(a) ** n for _, a in d.axes])
    axes = [(name, product_alphabet([alpha] * n)) for name, alpha in d.axes]
    return JointDistribution(axes, out, d.normalizer**n)


def combine_axes(d: JointDistribution, first: str, second: str, new_name: str) -> JointDistribution:
    """Merge two axes into one product axis with tuple symbols."""
    i, j = d.axis_index(first), d.axis_index(second)
    rest = [k for k in range(len(d.axes)) if k not in (i, j)]
    w = np.transpose(d.weights, rest + [i, j])
    w = w.reshape(w.shape[:-2] + (w.shape[-2] * w.shape[-1],))
    axes = [d.axes[k] for k in rest]
    axes.append((new_name, product_alphabet([d.alphabet(first), d.alphabet(second)])))
    return JointDistribution(axes, w, d.normalizer)


def replace_with_constant(d: JointDistribution, axis: str) -> JointDistribution:
    """Move all mass on an axis to its first symbol (the constant variable K)."""
    ai = d.axis_index(axis)
    w = np.zeros_like(d.weights)
    idx = [slice(None)] * len(d.axes)
    idx[ai] = 0
    w[tuple(idx)] = d.weights.sum(axis=ai)
    return JointDistribution(d.axes, w, d.normalizer)


def to_json(d: JointDistribution) -> str:
    cells = []
    it = np.nditer(d.weights, flags=["multi_index"])
    for w in it:
        if w != 0:
            syms = [d.axes[k][1].symbols[i] for k, i in enumerate(it.multi_index)]
            cells.append(syms + [float(w)])
    return json.dumps(
        {
            "axes": [{"name": name, "symbols": list(alpha.symbols)} for name, alpha in d.axes],
            "weights": cells,
            "normalizer": d.normalizer,
        }
    )


def from_json(text: str) -> JointDistribution:
    data = json.loads(text)
    axes = [(ax["name"], Alphabet(tuple(ax["symbols"]))) for ax in data["axes"]]
    w = np.zeros([len(a) for _, a in axes])
    for row in data["weights"]:
        *symbols, weight = row
        if len(symbols) != len(axes):
            raise ValueError(f"weight row {row} does not match axis count {len(axes)}")
        if weight < 0:
            raise ValueError(f"negative weight in row {row}")
        idx = tuple(alpha.index(str(s)) for (_, alpha), s in zip(axes, symbols))
        w[idx] += weight
    return JointDistribution(axes, w, data["normalizer"])
