"""Upper-bound estimator: bound contract, determinism, and search wrapper."""

import numpy as np
import pytest

from boundsec.candidates import grw
from boundsec.dists import Alphabet, JointDistribution
from boundsec.intrinsic import (
    EstimatorConfig,
    binarized_independence_search,
    estimate_intrinsic,
)
from boundsec.measures import conditional_mutual_information


def ci_distribution(seed, nz=3):
    rng = np.random.default_rng(seed)
    w = np.einsum("xz,yz->xyz", rng.uniform(size=(3, nz)), rng.uniform(size=(3, nz)))
    return JointDistribution(
        [("X", Alphabet(("a", "b", "c"))), ("Y", Alphabet(("a", "b", "c"))),
         ("Z", Alphabet(tuple(str(i) for i in range(nz))))],
        w,
        float(w.sum()),
    )


def test_config_validation():
    with pytest.raises(ValueError):
        EstimatorConfig(restarts=0)
    with pytest.raises(ValueError):
        EstimatorConfig(output_size=0)
    with pytest.raises(ValueError):
        EstimatorConfig(max_iterations=0)


def test_estimate_is_an_upper_bound_below_cmi():
    d = grw()
    cmi = conditional_mutual_information(d, "X", "Y", "Z")
    rep = estimate_intrinsic(d, EstimatorConfig(output_size=7, restarts=6, seed=0))
    assert rep.best_value <= cmi + 1e-9
    # the reported channel reproduces the reported value
    chan = rep.best_channel(d.alphabet("Z"))
    from boundsec.channels import apply_channel

    bar = apply_channel(d, "Z", chan)
    assert abs(conditional_mutual_information(bar, "X", "Y", "Z") - rep.best_value) < 1e-9


def test_identity_start_matches_cmi():
    d = grw()
    cmi = conditional_mutual_information(d, "X", "Y", "Z")
    rep = estimate_intrinsic(d, EstimatorConfig(output_size=7, restarts=1, max_iterations=1))
    # the identity start evaluates to the unprocessed CMI before any step
    assert abs(rep.start_values[0] - cmi) < 1e-9


def test_conditionally_independent_reaches_zero():
    for seed in range(5):
        d = ci_distribution(seed)
        rep = estimate_intrinsic(d, EstimatorConfig(restarts=2, seed=0))
        assert rep.best_value < 1e-6


def test_bit_identical_reports():
    d = grw()
    cfg = EstimatorConfig(output_size=4, restarts=4, seed=123)
    r1 = estimate_intrinsic(d, cfg)
    r2 = estimate_intrinsic(d, cfg)
    assert r1.to_json() == r2.to_json()


def test_extra_starts_padding_and_validation():
    d = grw()
    cfg = EstimatorConfig(output_size=7, restarts=2, seed=0)
    narrow = np.ones((7, 1))
    rep = estimate_intrinsic(d, cfg, extra_starts=[narrow])
    # collapsing everything yields I(X:Y), a valid start value
    assert rep.best_value <= min(rep.start_values) + 1e-9
    with pytest.raises(ValueError):
        estimate_intrinsic(d, cfg, extra_starts=[np.ones((3, 1))])
    with pytest.raises(ValueError):
        estimate_intrinsic(d, cfg, extra_starts=[np.ones((7, 9)) / 9])


def test_binarized_search():
    d = grw()
    cfg = EstimatorConfig(output_size=7, restarts=2, seed=0)
    worst = binarized_independence_search(d, 3, cfg, seed=1)
    assert worst >= 0.0
    with pytest.raises(ValueError):
        binarized_independence_search(d, 0, cfg)
