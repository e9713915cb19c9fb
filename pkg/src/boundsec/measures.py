"""Shannon information measures and distances, all in bits (base-2 logs)."""

from __future__ import annotations

import numpy as np

from .dists import (
    JointDistribution,
    combine_axes,
    marginal,
    replace_with_constant,
)

EQ_TOL = 1e-9
SUM_TOL = 1e-12


def _plogp(p: np.ndarray) -> np.ndarray:
    """p * log2(p) with the 0 log 0 = 0 convention."""
    out = np.zeros_like(p)
    mask = p > 0
    out[mask] = p[mask] * np.log2(p[mask])
    return out


def entropy(d: JointDistribution, axes=None) -> float:
    """Shannon entropy of the joint over the given axes (all axes by default)."""
    if axes is not None:
        d = marginal(d, axes)
    return float(-_plogp(d.probabilities).sum())


def mutual_information(d: JointDistribution, axis_a: str, axis_b: str) -> float:
    """I(A:B) = H(A) + H(B) - H(AB) on the marginal over the two axes."""
    m = marginal(d, [axis_a, axis_b])
    p = m.probabilities
    h_ab = -_plogp(p).sum()
    h_a = -_plogp(p.sum(axis=1)).sum()
    h_b = -_plogp(p.sum(axis=0)).sum()
    return float(h_a + h_b - h_ab)


def conditional_mutual_information(d: JointDistribution, axis_a: str, axis_b: str, axis_c: str) -> float:
    """I(A:B|C) as the P(c)-weighted sum of per-symbol mutual informations.

    Computed per conditioning symbol to avoid catastrophic cancellation;
    the four-entropy expansion is kept as a cross-check.
    """
    m = marginal(d, [axis_a, axis_b, axis_c])
    p = m.probabilities
    p_c = p.sum(axis=(0, 1))
    total = 0.0
    for k in range(p.shape[2]):
        if p_c[k] <= 0:
            continue
        cond = p[:, :, k] / p_c[k]
        h_ab = -_plogp(cond).sum()
        h_a = -_plogp(cond.sum(axis=1)).sum()
        h_b = -_plogp(cond.sum(axis=0)).sum()
        total += p_c[k] * (h_a + h_b - h_ab)
    value = float(total)
    expansion = (
        -_plogp(p.sum(axis=1)).sum()  # H(AC)
        - _plogp(p.sum(axis=0)).sum()  # H(BC)
        + _plogp(p).sum()  # -H(ABC)
        + _plogp(p_c).sum()  # -H(C) ... signs give H(AC)+H(BC)-H(ABC)-H(C)
    )
    assert abs(value - float(expansion)) < EQ_TOL, "per-symbol CMI disagrees with entropy expansion"
    return value


def _as_vector(p) -> np.ndarray:
    if isinstance(p, JointDistribution):
        return p.probabilities.ravel()
    return np.asarray(p, dtype=float).ravel()


def trace_distance(p, q) -> float:
    """Half the l1 distance between two probability vectors on a common index set."""
    pv, qv = _as_vector(p), _as_vector(q)
    if pv.shape != qv.shape:
        raise ValueError(f"index sets differ: {pv.shape} vs {qv.shape}")
    return float(0.5 * np.abs(pv - qv).sum())


def kl_divergence(p, q) -> float:
    """KL divergence in bits; +inf when the support of p is not contained in q's."""
    pv, qv = _as_vector(p), _as_vector(q)
    if pv.shape != qv.shape:
        raise ValueError(f"index sets differ: {pv.shape} vs {qv.shape}")
    mask = pv > 0
    if np.any(qv[mask] <= 0):
        return float("inf")
    return float(np.sum(pv[mask] * np.log2(pv[mask] / qv[mask])))


def cross_multiplied_residual(d: JointDistribution, axis_a: str, axis_b: str, axis_c: str) -> float:
    """Division-free conditional-independence defect of A and B given C.

    Returns max over cells of |P(a,b,c) P(c) - P(a,c) P(b,c)|, normalized by
    the largest cell probability; zero iff (A independent of B) | C.
    """
    m = marginal(d, [axis_a, axis_b, axis_c])
    p = m.probabilities
    p_c = p.sum(axis=(0, 1))
    p_ac = p.sum(axis=1)
    p_bc = p.sum(axis=0)
    resid = np.abs(p * p_c[None, None, :] - p_ac[:, None, :] * p_bc[None, :, :])
    scale = p.max()
    return float(resid.max() / scale) if scale > 0 else 0.0


def cmi_gap(d: JointDistribution, channel, z_axis: str = "Z", u_axis: str = "U") -> float:
    """I(X:Y | c(ZU)) - I(X:Y | c(ZK)), K the constant on U's alphabet.

    The channel acts on the combined (Z,U) product axis; ZK replaces U by a
    point mass on its first symbol before the same channel is applied.
    """
    from .channels import apply_channel  # local import to avoid a cycle

    names = [n for n in d.axis_names if n not in (z_axis, u_axis)]
    if len(names) != 2:
        raise ValueError(f"expected exactly two non-conditioning axes, have {d.axis_names}")
    a, b = names

    zu = combine_axes(d, z_axis, u_axis, "ZU")
    bar = apply_channel(zu, "ZU", channel)
    with_u = conditional_mutual_information(bar, a, b, "ZU")

    zk = combine_axes(replace_with_constant(d, u_axis), z_axis, u_axis, "ZU")
    bar_k = apply_channel(zk, "ZU", channel)
    with_k = conditional_mutual_information(bar_k, a, b, "ZU")
    return with_u - with_k
