"""Independence target values, the explicit construction, and the
row/column transformation machinery."""

import numpy as np
import pytest

from boundsec.candidates import grw
from boundsec.channels import Binarization, apply_channel, binarize
from boundsec.dists import Alphabet, tuple_symbol
from boundsec.itv import (
    UNIFORM_UPSILON,
    WeightedITV,
    construct_ab,
    construct_ab_batch,
    construct_eve_channel_n1,
    itv_product_property_check,
    row_transform,
    rowcol_equivalence_check,
    tau,
    tau2_targets,
    tau_n_targets,
    transform_generator_rank,
    upsilon_n,
)
from boundsec.measures import cross_multiplied_residual


def test_tau_oracles():
    assert abs(tau(2, 4, 1) - 8.0 / 3.0) < 1e-15
    assert abs(tau(0, 0.25, 1) - 0.5) < 1e-15
    assert abs(tau(0.8, 1, 0) - 2.0 / 3.0) < 1e-15
    assert tau(0.3, 0.3, 0.3) == 0.3


def test_tau_is_one_of_the_three_averages():
    rng = np.random.default_rng(0)
    r, s, t = rng.uniform(-5, 5, size=(3, 1000))
    med = tau(r, s, t)
    candidates = np.stack([(2 * r + s) / 3, (r + 2 * t) / 3, (2 * s + t) / 3])
    assert np.all(np.min(np.abs(candidates - med), axis=0) == 0.0)


def test_construct_ab():
    rng = np.random.default_rng(1)
    r, s, t = rng.uniform(-10, 10, size=(3, 5000))
    a, b = construct_ab_batch(r, s, t)
    assert np.all((a >= 0) & (a <= 1) & (b >= 0) & (b <= 1))
    resid = np.abs((2 * r + a * s + 4 * b * t) / (2 + a + 4 * b) - tau(r, s, t))
    assert resid.max() < 1e-9
    # denominators never degenerate: 2 + a + 4b >= 2
    assert np.all(2 + a + 4 * b >= 2.0)
    a1, b1 = construct_ab(0.0, 0.25, 1.0)
    assert abs((2 * 0 + a1 * 0.25 + 4 * b1 * 1.0) / (2 + a1 + 4 * b1) - 0.5) < 1e-12


def test_construct_eve_channel_n1():
    d = grw()
    rng = np.random.default_rng(2)
    for _ in range(25):
        bob = Binarization(d.alphabet("Y"), tuple(rng.uniform(size=3)))
        chan = construct_eve_channel_n1(bob)
        assert chan.rows[0, 0] == 1.0  # Z=0 goes to "0" surely
        bar = apply_channel(binarize(d, "Y", bob), "Z", chan)
        assert cross_multiplied_residual(bar, "X", "Y", "Z") < 1e-9
    with pytest.raises(ValueError):
        construct_eve_channel_n1(Binarization(Alphabet(("a", "b")), (0.5, 0.5)))


def test_tau2_targets():
    b = np.array([0.2, 0.7, 0.4])
    c = np.array([0.9, 0.1, 0.5])
    targets = tau2_targets(np.outer(b, c))
    # rank-one strategies: the double-zero target factorizes
    assert abs(targets[tuple_symbol(("0", "0"))] - tau(*b) * tau(*c)) < 1e-12
    counter = ((1.0, 1.0, 0.0), (0.0, 0.0, 0.0), (0.0, 0.0, 1.0))
    t = tau2_targets(counter)
    assert abs(t[tuple_symbol(("0", "0"))] - 4.0 / 9.0) < 1e-15
    with pytest.raises(ValueError):
        tau2_targets(np.ones((2, 3)))


def test_tau_n_targets_consistency():
    rng = np.random.default_rng(3)
    a = rng.uniform(size=(3, 3))
    expected = tau2_targets(a)
    got = tau_n_targets(2, a)
    assert set(got) == set(expected)
    for k, v in expected.items():
        assert abs(got[k] - v) < 1e-15
    one = tau_n_targets(1, rng.uniform(size=3))
    assert set(one) == {"0"}
    with pytest.raises(ValueError):
        tau_n_targets(2, np.ones(3))


def test_itv_product_property():
    rng = np.random.default_rng(4)
    for _ in range(200):
        assert itv_product_property_check(rng.uniform(size=3), rng.uniform(size=3)) < 1e-12


def test_weighted_itv_validation():
    with pytest.raises(ValueError):
        WeightedITV((0.5, 0.5))
    with pytest.raises(ValueError):
        WeightedITV((0.5, 0.5, 0.5, 0.5))
    u = WeightedITV((0.1, 0.2, 0.3, 0.4))
    assert abs(u.value([1, 1, 1, 1]) - 1.0) < 1e-15


def test_row_transform_preserves_upsilon():
    rng = np.random.default_rng(5)
    for _ in range(100):
        ups = WeightedITV(tuple(rng.dirichlet(np.ones(4))))
        table = rng.uniform(-3, 3, size=(4, 4))
        before = upsilon_n(table, ups)
        t2 = row_transform(table, int(rng.integers(2)), (int(rng.integers(4)),), float(rng.uniform(-2, 2)), ups)
        assert abs(upsilon_n(t2, ups) - before) < 1e-12
        assert rowcol_equivalence_check(ups, table) < 1e-12


def test_transform_generator_rank():
    count, dim, rank = transform_generator_rank(4, UNIFORM_UPSILON)
    assert count == 4 * 4**3 and dim == 256
    assert rank < count  # linear dependence at four copies
    c2, d2, r2 = transform_generator_rank(2, UNIFORM_UPSILON)
    assert (c2, d2) == (8, 16)
    with pytest.raises(ValueError):
        transform_generator_rank(5, UNIFORM_UPSILON)
