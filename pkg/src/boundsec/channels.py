"""Row-stochastic channels, binarizations, and the Z-shape decomposition."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass

import numpy as np

from .dists import Alphabet, JointDistribution, SUM_TOL, product_alphabet


class Channel:
    """Row-stochastic transition table from an input to an output alphabet."""

    def __init__(self, input_alphabet: Alphabet, output_alphabet: Alphabet, rows):
        r = np.asarray(rows, dtype=float)
        if r.shape != (len(input_alphabet), len(output_alphabet)):
            raise ValueError(f"rows shape {r.shape} does not match alphabets")
        if np.any(r < 0) or np.any(r > 1):
            raise ValueError("transition probabilities must lie in [0,1]")
        sums = r.sum(axis=1)
        if np.any(np.abs(sums - 1.0) > 1e-12):
            raise ValueError(f"rows must sum to 1; sums are {sums}")
        r.setflags(write=False)
        self.input = input_alphabet
        self.output = output_alphabet
        self.rows = r

    def __repr__(self) -> str:
        return f"Channel({len(self.input)}->{len(self.output)})"


@dataclass(frozen=True)
class Binarization:
    """Binary-output channel stored as the per-input probability of output "0"."""

    input: Alphabet
    p0: tuple

    def __post_init__(self):
        p = tuple(float(v) for v in self.p0)
        if len(p) != len(self.input):
            raise ValueError("p0 length must match the input alphabet")
        if any(v < 0 or v > 1 for v in p):
            raise ValueError("p0 entries must lie in [0,1]")
        object.__setattr__(self, "p0", p)

    def to_channel(self) -> Channel:
        p = np.array(self.p0)
        return Channel(self.input, Alphabet(("0", "1")), np.column_stack([p, 1 - p]))


def identity_channel(alphabet: Alphabet) -> Channel:
    return Channel(alphabet, alphabet, np.eye(len(alphabet)))


def compose(first: Channel, second: Channel) -> Channel:
    """Channel equal to applying first, then second."""
    if first.output.symbols != second.input.symbols:
        raise ValueError("inner alphabets do not match")
    return Channel(first.input, second.output, first.rows @ second.rows)


def apply_channel(d: JointDistribution, axis: str, c: Channel) -> JointDistribution:
    """Pass one axis of a joint distribution through a channel.

    The axis alphabet becomes the channel output; total weight is preserved
    because the rows are stochastic.
    """
    ai = d.axis_index(axis)
    if d.alphabet(axis).symbols != c.input.symbols:
        raise ValueError(
            f"channel input alphabet does not match axis {axis!r}: "
            f"{c.input.symbols} vs {d.alphabet(axis).symbols}"
        )
    w = np.tensordot(d.weights, c.rows, axes=([ai], [0]))
    w = np.moveaxis(w, -1, ai)
    axes = list(d.axes)
    axes[ai] = (axis, c.output)
    return JointDistribution(axes, np.maximum(w, 0.0), d.normalizer)


def binarize(d: JointDistribution, axis: str, b: Binarization) -> JointDistribution:
    return apply_channel(d, axis, b.to_channel())


def product_binarization(components) -> Binarization:
    """Tensor product of per-component binarizations over the tuple alphabet."""
    components = list(components)
    if not components:
        raise ValueError("need at least one component")
    if len(components) == 1:
        return components[0]
    alpha = product_alphabet([b.input for b in components])
    p0 = [float(np.prod(vals)) for vals in itertools.product(*(b.p0 for b in components))]
    return Binarization(alpha, tuple(p0))


@dataclass(frozen=True)
class ZShapeDecomposition:
    """A 2x2 channel as: fair coin with probability coin_probability, else a
    Z-shaped channel (one with at least one zero transition entry)."""

    coin_probability: float
    z_channel: Channel

    def recombined_rows(self) -> np.ndarray:
        coin = np.full((2, 2), 0.5)
        return self.coin_probability * coin + (1 - self.coin_probability) * self.z_channel.rows


def is_z_shaped(c: Channel) -> bool:
    return bool(np.any(c.rows == 0.0))


def zshape_decompose(c: Channel) -> ZShapeDecomposition:
    """Split a binary channel into a fair-coin part and a Z-shaped residual.

    With m the minimum entry, the coin weight is 2m and the residual entries
    are (entry - m) / (1 - 2m); the recombination identity then holds exactly
    for every input. A fair coin (all entries 1/2) gets coin weight 1 and an
    arbitrary fixed Z-shaped residual.
    """
    if c.rows.shape != (2, 2):
        raise ValueError("zshape_decompose needs a binary-input binary-output channel")
    m = float(c.rows.min())
    if 1 - 2 * m <= 0:  # every entry is 1/2
        residual = Channel(c.input, c.output, np.eye(2))
        return ZShapeDecomposition(1.0, residual)
    rows = np.clip((c.rows - m) / (1 - 2 * m), 0.0, 1.0)
    residual = Channel(c.input, c.output, rows)
    return ZShapeDecomposition(2 * m, residual)


def channel_to_json(c: Channel) -> str:
    return json.dumps(
        {
            "input": list(c.input.symbols),
            "output": list(c.output.symbols),
            "rows": c.rows.tolist(),
        }
    )


def channel_from_json(text: str) -> Channel:
    data = json.loads(text)
    return Channel(Alphabet(tuple(data["input"])), Alphabet(tuple(data["output"])), data["rows"])


def binarization_to_json(b: Binarization) -> str:
    return json.dumps({"input": list(b.input.symbols), "p0": list(b.p0)})


def binarization_from_json(text: str) -> Binarization:
    data = json.loads(text)
    return Binarization(Alphabet(tuple(data["input"])), tuple(data["p0"]))
