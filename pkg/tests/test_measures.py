"""Information measures: frozen oracle values and structural identities."""

import numpy as np
import pytest

from boundsec.candidates import grw
from boundsec.dists import Alphabet, JointDistribution
from boundsec.measures import (
    conditional_mutual_information,
    cross_multiplied_residual,
    entropy,
    kl_divergence,
    mutual_information,
    trace_distance,
)

# Frozen oracles, computed independently with mpmath-grade arithmetic.
H_COIN_09 = 0.4689955935892812  # H(0.9, 0.1) in bits
GRW_H_Z = 2.5108995654298583
GRW_MI_XY = 0.20617900723498073
GRW_CMI_XYZ = 0.45284642877747316


def coin(p):
    return JointDistribution([("X", Alphabet(("h", "t")))], [p, 1 - p], 1.0)


def test_entropy_oracles():
    assert abs(entropy(coin(0.9)) - H_COIN_09) < 1e-15
    u4 = JointDistribution([("X", Alphabet(tuple("abcd")))], [1.0] * 4, 4.0)
    assert entropy(u4) == 2.0
    assert entropy(coin(1.0)) == 0.0
    assert abs(entropy(grw(), ["Z"]) - GRW_H_Z) < 1e-12


def test_grw_mi_cmi_oracles():
    d = grw()
    assert abs(mutual_information(d, "X", "Y") - GRW_MI_XY) < 1e-12
    assert abs(conditional_mutual_information(d, "X", "Y", "Z") - GRW_CMI_XYZ) < 1e-12


def test_cmi_constant_conditioner_reduces_to_mi():
    d = grw()
    w = d.weights[..., None] * np.array([1.0])
    dd = JointDistribution(list(d.axes) + [("C", Alphabet(("k",)))], w, d.normalizer)
    assert abs(
        conditional_mutual_information(dd, "X", "Y", "C") - mutual_information(d, "X", "Y")
    ) < 1e-12


def test_trace_distance():
    assert trace_distance([1.0, 0.0], [0.0, 1.0]) == 1.0
    assert trace_distance([0.5, 0.5], [0.5, 0.5]) == 0.0
    assert abs(trace_distance([0.7, 0.3], [0.3, 0.7]) - 0.4) < 1e-15
    with pytest.raises(ValueError):
        trace_distance([1.0], [0.5, 0.5])


def test_kl_divergence():
    assert abs(kl_divergence([1.0, 0.0], [0.5, 0.5]) - 1.0) < 1e-15
    assert kl_divergence([0.5, 0.5], [1.0, 0.0]) == float("inf")
    assert kl_divergence([0.3, 0.7], [0.3, 0.7]) == 0.0


def test_cross_multiplied_residual_matches_cmi():
    # product structure given Z: residual and CMI both vanish
    rng = np.random.default_rng(0)
    w = np.einsum("xz,yz->xyz", rng.uniform(size=(3, 2)), rng.uniform(size=(3, 2)))
    d = JointDistribution(
        [("X", Alphabet(("a", "b", "c"))), ("Y", Alphabet(("a", "b", "c"))), ("Z", Alphabet(("0", "1")))],
        w,
        float(w.sum()),
    )
    assert cross_multiplied_residual(d, "X", "Y", "Z") < 1e-15
    assert conditional_mutual_information(d, "X", "Y", "Z") < 1e-12
    # the 3x3 candidate is conditionally dependent
    g = grw()
    assert cross_multiplied_residual(g, "X", "Y", "Z") > 1e-3
