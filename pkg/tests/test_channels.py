"""Channels, binarizations, and the Z-shape decomposition."""

import numpy as np
import pytest

from boundsec.candidates import grw
from boundsec.channels import (
    Binarization,
    Channel,
    apply_channel,
    binarization_from_json,
    binarization_to_json,
    binarize,
    channel_from_json,
    channel_to_json,
    compose,
    identity_channel,
    is_z_shaped,
    product_binarization,
    zshape_decompose,
)
from boundsec.dists import Alphabet
from boundsec.measures import conditional_mutual_information, mutual_information

AB = Alphabet(("a", "b"))


def test_channel_validation():
    with pytest.raises(ValueError):
        Channel(AB, AB, [[0.5, 0.6], [0.5, 0.5]])  # row sum != 1
    with pytest.raises(ValueError):
        Channel(AB, AB, [[1.5, -0.5], [0.5, 0.5]])  # outside [0,1]
    with pytest.raises(ValueError):
        Channel(AB, AB, [[1.0, 0.0]])  # shape mismatch


def test_identity_and_compose():
    ident = identity_channel(AB)
    flip = Channel(AB, AB, [[0.0, 1.0], [1.0, 0.0]])
    assert np.allclose(compose(flip, flip).rows, ident.rows)
    assert np.allclose(compose(ident, flip).rows, flip.rows)
    with pytest.raises(ValueError):
        compose(flip, Channel(Alphabet(("x", "y", "z")), AB, [[1, 0], [1, 0], [0, 1]]))


def test_apply_channel_preserves_mass_and_alphabet():
    d = grw()
    collapse = Channel(
        d.alphabet("Z"), Alphabet(("*",)), np.ones((7, 1))
    )
    bar = apply_channel(d, "Z", collapse)
    assert bar.alphabet("Z").symbols == ("*",)
    assert abs(bar.weights.sum() - d.weights.sum()) < 1e-9
    # collapsing Z removes all conditioning: I(X:Y|Zbar) == I(X:Y)
    assert abs(
        conditional_mutual_information(bar, "X", "Y", "Z") - mutual_information(d, "X", "Y")
    ) < 1e-12
    with pytest.raises(ValueError):
        apply_channel(d, "Y", collapse)  # alphabet mismatch


def test_binarization():
    with pytest.raises(ValueError):
        Binarization(AB, (0.5,))
    with pytest.raises(ValueError):
        Binarization(AB, (1.5, 0.0))
    b = Binarization(AB, (0.25, 1.0))
    c = b.to_channel()
    assert np.allclose(c.rows, [[0.25, 0.75], [1.0, 0.0]])
    bar = binarize(grw(), "Y", Binarization(grw().alphabet("Y"), (0.2, 0.5, 0.9)))
    assert bar.alphabet("Y").symbols == ("0", "1")


def test_product_binarization():
    b1 = Binarization(AB, (0.5, 1.0))
    b2 = Binarization(AB, (0.25, 0.0))
    p = product_binarization([b1, b2])
    assert p.input.symbols == ("(a,a)", "(a,b)", "(b,a)", "(b,b)")
    assert p.p0 == (0.125, 0.0, 0.25, 0.0)
    with pytest.raises(ValueError):
        product_binarization([])
    assert product_binarization([b1]) is b1


def test_zshape_decomposition():
    rng = np.random.default_rng(0)
    for _ in range(200):
        p = rng.uniform(size=2)
        c = Channel(AB, AB, np.column_stack([p, 1 - p]))
        dec = zshape_decompose(c)
        assert np.abs(dec.recombined_rows() - c.rows).max() < 1e-12
        assert is_z_shaped(dec.z_channel)
        assert 0.0 <= dec.coin_probability <= 1.0
    fair = Channel(AB, AB, np.full((2, 2), 0.5))
    dec = zshape_decompose(fair)
    assert dec.coin_probability == 1.0
    assert np.abs(dec.recombined_rows() - fair.rows).max() < 1e-12
    with pytest.raises(ValueError):
        zshape_decompose(identity_channel(Alphabet(("x", "y", "z"))))


def test_json_round_trips():
    flip = Channel(AB, AB, [[0.0, 1.0], [1.0, 0.0]])
    again = channel_from_json(channel_to_json(flip))
    assert again.input.symbols == flip.input.symbols
    assert np.array_equal(again.rows, flip.rows)
    b = Binarization(AB, (0.25, 1.0))
    b2 = binarization_from_json(binarization_to_json(b))
    assert b2 == b
