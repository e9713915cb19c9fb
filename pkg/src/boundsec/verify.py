"""Named verification routines behind the CLI `verify` subcommand.

Each routine returns (passed, details); the documented default sample sizes
are chosen so every check finishes in seconds. The acceptance test suite
re-runs the same checks at its own pinned sizes.
"""

from __future__ import annotations

import numpy as np

from .candidates import grw
from .channels import Binarization, Channel, apply_channel, binarize, is_z_shaped, zshape_decompose
from .dists import Alphabet, JointDistribution, product_alphabet
from .feasibility import (
    ITVCOUNTER_MATRIX,
    check_certificate,
    grw_n2_system,
    perturbation_epsilon,
    perturbation_verify,
    restricted_shape_n2_bound,
    verify_itvcounter,
    ybar_bound,
    ybar_falsification_search,
)
from .itv import (
    UNIFORM_UPSILON,
    WeightedITV,
    construct_ab_batch,
    construct_eve_channel_n1,
    row_transform,
    rowcol_equivalence_check,
    tau,
    transform_generator_rank,
    upsilon_n,
)
from .measures import (
    conditional_mutual_information,
    cmi_gap,
    cross_multiplied_residual,
    entropy,
    trace_distance,
)


def construction_residual(r, s, t, a, b):
    """|(2r + a s + 4 b t) / (2 + a + 4 b) - tau(r, s, t)|, vectorized."""
    return np.abs((2 * r + a * s + 4 * b * t) / (2 + a + 4 * b) - tau(r, s, t))


def verify_itv_construction(samples: int = 100_000, seed: int = 0):
    rng = np.random.default_rng(seed)
    r, s, t = rng.uniform(-10, 10, size=(3, samples))
    a, b = construct_ab_batch(r, s, t)
    in_box = bool((a >= 0).all() and (a <= 1).all() and (b >= 0).all() and (b <= 1).all())
    worst = float(construction_residual(r, s, t, a, b).max())
    return worst < 1e-9 and in_box, {"samples": samples, "max_residual": worst, "in_box": in_box}


def verify_itvprop(samples: int = 100_000, seed: int = 0):
    rng = np.random.default_rng(seed)
    b = rng.uniform(size=(samples, 3))
    c = rng.uniform(size=(samples, 3))
    cols = [tau(b[:, 0] * c[:, j], b[:, 1] * c[:, j], b[:, 2] * c[:, j]) for j in range(3)]
    lhs = tau(*cols)
    rhs = tau(b[:, 0], b[:, 1], b[:, 2]) * tau(c[:, 0], c[:, 1], c[:, 2])
    worst = float(np.abs(lhs - rhs).max())
    return worst < 1e-12, {"samples": samples, "max_residual": worst}


def verify_n1_independence(samples: int = 200, seed: int = 0):
    """Random Bob binarizations on the 3x3 candidate: the constructed channel
    must wipe out the conditional dependence."""
    rng = np.random.default_rng(seed)
    d = grw()
    y_alpha = d.alphabet("Y")
    worst_res, worst_cmi = 0.0, 0.0
    for _ in range(samples):
        bob = Binarization(y_alpha, tuple(rng.uniform(size=3)))
        chan = construct_eve_channel_n1(bob)
        bar = apply_channel(binarize(d, "Y", bob), "Z", chan)
        worst_res = max(worst_res, cross_multiplied_residual(bar, "X", "Y", "Z"))
        worst_cmi = max(worst_cmi, conditional_mutual_information(bar, "X", "Y", "Z"))
    ok = worst_res < 1e-9 and worst_cmi < 1e-8
    return ok, {"samples": samples, "max_residual": worst_res, "max_cmi": worst_cmi}


def verify_itvcounter_instance(**_):
    result = verify_itvcounter()
    if result.status != "infeasible":
        return False, {"status": result.status}
    sys, _ = grw_n2_system(ITVCOUNTER_MATRIX)
    margin = check_certificate(sys, result.certificate)
    return margin > 1e-9, {"status": result.status, "certificate_margin": margin}


def verify_restricted_shape_n2(**_):
    gap = restricted_shape_n2_bound()
    ok = abs(gap - 1.0 / 6.0) < 1e-12
    return ok, {"gap": gap}


def verify_ybar(samples: int = 2000, seed: int = 0, a: float = 1.0):
    grid = np.linspace(0.1, 10.0, 100)
    bounds_ok = all(ybar_bound(v) < 0.5 for v in grid)
    worst = ybar_falsification_search(a, samples, seed)
    ok = bounds_ok and worst > 1e-6
    return ok, {"samples": samples, "a": a, "bounds_below_half": bounds_ok, "min_violation": worst}


def verify_zshape(samples: int = 100_000, seed: int = 0):
    rng = np.random.default_rng(seed)
    alpha = Alphabet(("0", "1"))
    worst = 0.0
    all_z = True
    for _ in range(samples):
        p = rng.uniform(size=2)
        c = Channel(alpha, alpha, np.column_stack([p, 1 - p]))
        dec = zshape_decompose(c)
        worst = max(worst, float(np.abs(dec.recombined_rows() - c.rows).max()))
        all_z = all_z and is_z_shaped(dec.z_channel)
        all_z = all_z and 0.0 <= dec.coin_probability <= 1.0
    ok = worst < 1e-12 and all_z
    return ok, {"samples": samples, "max_recombination_error": worst, "all_z_shaped": all_z}


def _random_dist(rng, size):
    p = rng.dirichlet(np.ones(size))
    return -np.sort(-p)  # largest probability on the first symbol


def verify_lemma32(samples: int = 10_000, seed: int = 0):
    rng = np.random.default_rng(seed)
    worst_eq, h_ok = 0.0, True
    for _ in range(samples):
        size = int(rng.integers(2, 9))
        u = _random_dist(rng, size)
        k = np.zeros(size)
        k[0] = 1.0
        a1 = u[0]
        worst_eq = max(worst_eq, abs(trace_distance(u, k) - (1 - a1)))
        h = -np.sum(u[u > 0] * np.log2(u[u > 0]))
        h_ok = h_ok and h >= np.log2(1 / a1) - 1e-12
    ok = worst_eq < 1e-12 and h_ok
    return ok, {"samples": samples, "max_equality_error": worst_eq, "entropy_bound_holds": h_ok}


def verify_lemma33(samples: int = 10_000, seed: int = 0):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        nz = int(rng.integers(2, 7))
        nu = int(rng.integers(2, 7))
        z = rng.dirichlet(np.ones(nz))
        u = rng.dirichlet(np.ones(nu))
        k = np.zeros(nu)
        k[0] = 1.0
        worst = max(worst, abs(trace_distance(np.outer(z, u), np.outer(z, k)) - trace_distance(u, k)))
    # the fair-coin copy counterexample: equal marginals, far joints
    za = np.array([[0.5, 0.0], [0.0, 0.5]])  # A is a copy of the fair coin Z
    zb = np.full((2, 2), 0.25)  # B an independent fair coin
    d_ab = trace_distance(za.sum(axis=0), zb.sum(axis=0))
    d_joint = trace_distance(za, zb)
    ok = worst < 1e-12 and d_ab == 0.0 and abs(d_joint - 0.5) < 1e-15
    return ok, {
        "samples": samples,
        "max_equality_error": worst,
        "marginal_distance": d_ab,
        "joint_distance": d_joint,
    }


def verify_lemma36(samples: int = 10_000, seed: int = 0):
    rng = np.random.default_rng(seed)
    worst = -np.inf
    for _ in range(samples):
        n_in = int(rng.integers(2, 7))
        n_out = int(rng.integers(2, 7))
        p = rng.dirichlet(np.ones(n_in))
        q = rng.dirichlet(np.ones(n_in))
        c = rng.dirichlet(np.ones(n_out), size=n_in)
        worst = max(worst, trace_distance(p @ c, q @ c) - trace_distance(p, q))
    ok = worst <= 1e-12
    return ok, {"samples": samples, "max_expansion": worst}


def lemma37_family(delta: float) -> JointDistribution:
    """The 3x3 candidate with an extra near-constant side variable U."""
    d = grw()
    w = d.weights[..., None] * np.array([1 - delta, delta])
    axes = list(d.axes) + [("U", Alphabet(("0", "1")))]
    return JointDistribution(axes, w, d.normalizer)


def random_zu_channel(rng) -> Channel:
    zu = product_alphabet([Alphabet(tuple(str(i) for i in range(7))), Alphabet(("0", "1"))])
    rows = rng.dirichlet(np.ones(len(zu)), size=len(zu))
    return Channel(zu, zu, rows)


def verify_lemma37_trend(samples: int = 20, seed: int = 0):
    rng = np.random.default_rng(seed)
    d = lemma37_family(5e-5)  # 1 - P(U = first symbol) below 1e-4
    worst = 0.0
    for _ in range(samples):
        worst = max(worst, abs(cmi_gap(d, random_zu_channel(rng))))
    ok = worst < 0.01
    return ok, {"channels": samples, "delta": 5e-5, "max_abs_gap": worst}


def verify_rowcol(samples: int = 10_000, seed: int = 0):
    rng = np.random.default_rng(seed)
    worst_preserve, worst_equiv = 0.0, 0.0
    for _ in range(samples):
        ups = WeightedITV(tuple(rng.dirichlet(np.ones(4))))
        table = rng.uniform(-5, 5, size=(4, 4))
        coord = int(rng.integers(2))
        fixed = (int(rng.integers(4)),)
        scale = float(rng.uniform(0, 2))
        before = upsilon_n(table, ups)
        after = upsilon_n(row_transform(table, coord, fixed, scale, ups), ups)
        worst_preserve = max(worst_preserve, abs(after - before))
        worst_equiv = max(worst_equiv, rowcol_equivalence_check(ups, table))
    counts, ranks = {}, {}
    for n in (2, 3, 4):
        count, dim, rank = transform_generator_rank(n, UNIFORM_UPSILON)
        counts[n], ranks[n] = count, rank
    dependent = ranks[4] < counts[4]
    ok = worst_preserve < 1e-12 and worst_equiv < 1e-12 and dependent
    return ok, {
        "samples": samples,
        "max_preservation_error": worst_preserve,
        "max_rowcol_gap": worst_equiv,
        "generator_counts": counts,
        "generator_ranks": ranks,
        "linear_dependence_at_4": dependent,
    }


def sample_perturbation_case(rng):
    """One admissible random binarization pair with |zeta| < 1e-3, or None."""
    x = rng.uniform(size=4)
    y = rng.uniform(size=4)
    gap = abs(x[2] - x[3])
    if gap < 1e-6:
        return None
    y[3] = np.clip(y[2] + rng.uniform(-1, 1) * min(1.0, 0.9e-3 / gap), 0.0, 1.0)
    xc, yc = x - x.mean(), y - y.mean()
    zeta = (xc[2] - xc[3]) * (yc[2] - yc[3])
    if not 0 < abs(zeta) < 1e-3:
        return None
    denom = 16 * xc[0] * yc[2] + zeta
    if abs(denom) < 1e-3:
        return None
    eps = -16 * zeta / denom
    if abs(eps) > 0.5:
        return None
    alpha = Alphabet(("0", "1", "2", "3"))
    return Binarization(alpha, tuple(x)), Binarization(alpha, tuple(y))


def verify_perturbation(samples: int = 1000, seed: int = 0):
    rng = np.random.default_rng(seed)
    worst_eq, worst_res = 0.0, 0.0
    done = 0
    while done < samples:
        case = sample_perturbation_case(rng)
        if case is None:
            continue
        x_bin, y_bin = case
        xv = np.array(x_bin.p0)
        yv = np.array(y_bin.p0)
        zeta, eps = perturbation_epsilon(xv - xv.mean(), yv - yv.mean())
        xc, yc = xv - xv.mean(), yv - yv.mean()
        worst_eq = max(worst_eq, abs(16 * zeta + 16 * eps * xc[0] * yc[2] + eps * zeta))
        worst_res = max(worst_res, perturbation_verify(x_bin, y_bin, 0.125))
        done += 1
    ok = worst_eq < 1e-12 and worst_res < 1e-9
    return ok, {"samples": samples, "max_equation_error": worst_eq, "max_residual": worst_res}


VERIFICATIONS = {
    "itv-construction": verify_itv_construction,
    "itvprop": verify_itvprop,
    "n1-independence": verify_n1_independence,
    "itvcounter": verify_itvcounter_instance,
    "restricted-shape-n2": verify_restricted_shape_n2,
    "ybar": verify_ybar,
    "zshape": verify_zshape,
    "lemma32": verify_lemma32,
    "lemma33": verify_lemma33,
    "lemma36": verify_lemma36,
    "lemma37-trend": verify_lemma37_trend,
    "rowcol": verify_rowcol,
    "perturbation": verify_perturbation,
}
