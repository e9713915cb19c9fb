"""Distribution container: construction, marginals, products, serialization."""

import numpy as np
import pytest

from boundsec.dists import (
    Alphabet,
    CellCapExceededError,
    JointDistribution,
    combine_axes,
    condition,
    from_json,
    marginal,
    n_fold,
    product_alphabet,
    replace_with_constant,
    to_json,
    tuple_symbol,
)
from boundsec.candidates import grw


def small():
    x = Alphabet(("a", "b"))
    y = Alphabet(("0", "1", "2"))
    w = np.array([[1.0, 2.0, 3.0], [4.0, 0.0, 2.0]])
    return JointDistribution([("X", x), ("Y", y)], w, 12.0)


def test_alphabet_validation():
    with pytest.raises(ValueError):
        Alphabet(())
    with pytest.raises(ValueError):
        Alphabet(("a", "a"))
    a = Alphabet(("x", "y"))
    assert a.index("y") == 1
    with pytest.raises(ValueError):
        a.index("z")


def test_product_alphabet_order():
    p = product_alphabet([Alphabet(("1", "2")), Alphabet(("a", "b"))])
    assert p.symbols == ("(1,a)", "(1,b)", "(2,a)", "(2,b)")
    assert tuple_symbol(("1", "3")) == "(1,3)"


def test_joint_validation():
    x = Alphabet(("a", "b"))
    with pytest.raises(ValueError):
        JointDistribution([("X", x)], np.ones(3), 3.0)  # shape mismatch
    with pytest.raises(ValueError):
        JointDistribution([("X", x)], [-1.0, 2.0], 1.0)  # negative weight
    with pytest.raises(ValueError):
        JointDistribution([("X", x)], [1.0, 1.0], 3.0)  # normalizer mismatch
    with pytest.raises(ValueError):
        JointDistribution([("X", x)], [1.0, 1.0], -2.0)  # bad normalizer


def test_probabilities_and_axes():
    d = small()
    assert abs(d.probabilities.sum() - 1.0) < 1e-15
    assert d.axis_names == ("X", "Y")
    with pytest.raises(ValueError):
        d.axis_index("Q")


def test_marginal_values_and_order():
    d = small()
    my = marginal(d, ["Y"])
    assert np.allclose(my.weights, [5.0, 2.0, 5.0])
    # requesting axes in reversed order transposes the table
    m = marginal(d, ["Y", "X"])
    assert m.axis_names == ("Y", "X")
    assert np.allclose(m.weights, d.weights.T)
    with pytest.raises(ValueError):
        marginal(d, [])
    with pytest.raises(ValueError):
        marginal(d, ["X", "X"])


def test_condition():
    d = small()
    c = condition(d, "X", "a")
    assert abs(c.weights.sum() - 1.0) < 1e-15
    assert np.allclose(c.weights, np.array([1.0, 2.0, 3.0]) / 6.0)
    zero = JointDistribution(
        [("X", Alphabet(("a", "b"))), ("Y", Alphabet(("0", "1")))],
        [[1.0, 1.0], [0.0, 0.0]],
        2.0,
    )
    with pytest.raises(ValueError):
        condition(zero, "X", "b")


def test_n_fold_grw():
    d2 = n_fold(grw(), 2)
    assert tuple(len(d2.alphabet(n)) for n in ("X", "Y", "Z")) == (9, 9, 49)
    assert d2.normalizer == 441.0
    xi = d2.alphabet("X").index("(1,1)")
    yi = d2.alphabet("Y").index("(1,1)")
    zi = d2.alphabet("Z").index("(0,0)")
    assert d2.weights[xi, yi, zi] == 4.0  # 2 * 2 from the two copies
    assert n_fold(grw(), 1) is grw() or n_fold(grw(), 1) == grw()


def test_n_fold_cell_cap(monkeypatch):
    monkeypatch.setenv("BOUNDSEC_CELL_CAP", "100")
    with pytest.raises(CellCapExceededError):
        n_fold(grw(), 2)


def test_combine_axes_and_constant():
    d = small()
    c = combine_axes(d, "X", "Y", "XY")
    assert c.axis_names == ("XY",)
    assert len(c.alphabet("XY")) == 6
    assert abs(c.weights.sum() - 12.0) < 1e-12
    k = replace_with_constant(d, "Y")
    assert np.allclose(k.weights[:, 0], d.weights.sum(axis=1))
    assert np.allclose(k.weights[:, 1:], 0.0)


def test_json_round_trip():
    d = small()
    again = from_json(to_json(d))
    assert again == d
    d2 = grw()
    assert from_json(to_json(d2)) == d2
