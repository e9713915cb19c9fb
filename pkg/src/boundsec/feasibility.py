"""Linear feasibility search for Eve channels under target values, the
named impossibility instances, and the perturbation solver."""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import linprog, lsq_linear

from .candidates import grw, rw, rw_z_alphabet
from .channels import Binarization, Channel, binarize, apply_channel
from .dists import Alphabet, JointDistribution, n_fold, tuple_symbol
from .itv import construct_eve_channel_n1, tau, tau2_targets
from .measures import cross_multiplied_residual

FEAS_TOL = 1e-9
CERT_TOL = 1e-9


@dataclass(frozen=True)
class ChannelShape:
    """Which Z -> Z-bar transitions exist.

    named: per input, the targeted outputs whose transition probabilities are
    free variables. fixed: per input, transitions pinned to a constant.
    equalities: inputs whose named transitions must sum to exactly 1 (their
    row has no other outputs). All other inputs pass residual row mass to a
    per-input dump symbol.
    """

    named: dict
    fixed: dict = field(default_factory=dict)
    equalities: tuple = ()

    def variables(self) -> list[tuple[str, str]]:
        return [(z, zbar) for z, outs in self.named.items() for zbar in outs]


@dataclass
class LinearSystem:
    """Equalities over [0,1]-bounded channel variables plus per-input
    row-mass constraints (sum of named variables <= 1)."""

    variables: list
    a_eq: np.ndarray
    b_eq: np.ndarray
    groups: list
    labels: list

    @property
    def n_vars(self) -> int:
        return len(self.variables)

    def group_matrix(self) -> np.ndarray:
        g = np.zeros((len(self.groups), self.n_vars))
        for i, idx in enumerate(self.groups):
            g[i, idx] = 1.0
        return g

    def to_json(self) -> str:
        return json.dumps(
            {
                "variables": [list(v) for v in self.variables],
                "a_eq": self.a_eq.tolist(),
                "b_eq": self.b_eq.tolist(),
                "groups": [list(g) for g in self.groups],
                "labels": self.labels,
            }
        )


@dataclass
class FeasibilityResult:
    status: str  # "feasible" or "infeasible"
    witness: dict | None = None
    certificate: dict | None = None

    @property
    def feasible(self) -> bool:
        return self.status == "feasible"

    def to_json(self) -> str:
        return json.dumps(
            {"status": self.status, "witness": self.witness, "certificate": self.certificate}
        )


def build_system(
    dist: JointDistribution,
    bob_bin: Binarization,
    targets: dict,
    shape: ChannelShape,
    alice_bin: Binarization | None = None,
) -> LinearSystem:
    """Linearized independence constraints for fixed targets.

    For each targeted symbol zbar and each X cell x, emits
    P(Ybar=0, X=x, Zbar=zbar) - target(zbar) * P(X=x, Zbar=zbar) = 0,
    linear in the channel variables once the targets are fixed. Inputs listed
    in shape.equalities contribute a row-sum-equals-1 equality instead of a
    row-budget inequality.
    """
    if alice_bin is not None:
        dist = binarize(dist, "X", alice_bin)
    z_alpha = dist.alphabet("Z")
    for z in shape.named:
        z_alpha.index(z)  # validates shape inputs against the distribution
    p0 = np.array(bob_bin.p0)
    if bob_bin.input.symbols != dist.alphabet("Y").symbols:
        raise ValueError("Bob binarization does not match the Y alphabet")

    xi, yi, zi = (dist.axis_index(n) for n in ("X", "Y", "Z"))
    w = np.moveaxis(dist.weights, (xi, yi, zi), (0, 1, 2))
    m0 = w.sum(axis=1)  # P(X=x, Z=z) * normalizer
    m1 = np.einsum("xyz,y->xz", w, p0)  # P(Ybar=0, X=x, Z=z) * normalizer

    variables = shape.variables()
    var_index = {v: k for k, v in enumerate(variables)}
    n_x = w.shape[0]

    # feeders[zbar] = contributing (input z, variable index or fixed prob)
    rows, rhs, labels = [], [], []
    for zbar, target in targets.items():
        for x in range(n_x):
            coeff = np.zeros(len(variables))
            const = 0.0
            for z, outs in shape.named.items():
                if zbar in outs:
                    k = z_alpha.index(z)
                    coeff[var_index[(z, zbar)]] = m1[x, k] - target * m0[x, k]
            for z, outs in shape.fixed.items():
                if zbar in outs:
                    k = z_alpha.index(z)
                    const -= outs[zbar] * (m1[x, k] - target * m0[x, k])
            rows.append(coeff)
            rhs.append(const)
            labels.append(f"target {zbar} / X cell {x}")

    equal = set(shape.equalities)
    groups = []
    for z, outs in shape.named.items():
        idx = [var_index[(z, zbar)] for zbar in outs]
        if z in equal:
            coeff = np.zeros(len(variables))
            coeff[idx] = 1.0
            rows.append(coeff)
            rhs.append(1.0 - sum(shape.fixed.get(z, {}).values()))
            labels.append(f"row sum for input {z}")
        else:
            groups.append(idx)
    return LinearSystem(variables, np.array(rows), np.array(rhs), groups, labels)


def witness_violation(sys: LinearSystem, witness: np.ndarray) -> float:
    """Largest constraint or bound violation of a candidate solution."""
    v = np.asarray(witness, dtype=float)
    resid = np.abs(sys.a_eq @ v - sys.b_eq).max() if len(sys.b_eq) else 0.0
    bound = max(np.maximum(-v, 0.0).max(initial=0.0), np.maximum(v - 1.0, 0.0).max(initial=0.0))
    group = 0.0
    for idx in sys.groups:
        group = max(group, v[idx].sum() - 1.0)
    return float(max(resid, bound, group))


def certificate_margin(sys: LinearSystem, y_eq: np.ndarray, y_grp: np.ndarray) -> float:
    """Directly evaluated Farkas margin of an infeasibility certificate.

    With multipliers y (free, equalities) and lam >= 0 (group constraints),
    any feasible point would satisfy y'Av + lam'Gv <= y'b + lam'1; the margin
    is min over the [0,1] box of the left side minus the right side. A
    positive margin proves infeasibility.
    """
    y = np.asarray(y_eq, dtype=float)
    lam = np.maximum(np.asarray(y_grp, dtype=float), 0.0)
    c = sys.a_eq.T @ y
    if len(sys.groups):
        c = c + sys.group_matrix().T @ lam
    box_min = np.minimum(c, 0.0).sum()
    return float(box_min - (y @ sys.b_eq + lam.sum()))


def solve_feasibility(sys: LinearSystem) -> FeasibilityResult:
    """Phase-1 feasibility: minimize total equality violation over the box.

    Optimum below FEAS_TOL yields a witness; otherwise the LP duals give a
    Farkas certificate, re-verified by direct evaluation.
    """
    n = sys.n_vars
    m = len(sys.b_eq)
    if m == 0:
        return FeasibilityResult("feasible", witness={str(v): 0.0 for v in sys.variables})
    # variables: v (n, in [0,1]), splus (m), sminus (m)
    cost = np.concatenate([np.zeros(n), np.ones(2 * m)])
    a_eq = np.hstack([sys.a_eq, np.eye(m), -np.eye(m)])
    bounds = [(0.0, 1.0)] * n + [(0.0, None)] * (2 * m)
    if sys.groups:
        a_ub = np.hstack([sys.group_matrix(), np.zeros((len(sys.groups), 2 * m))])
        b_ub = np.ones(len(sys.groups))
    else:
        a_ub, b_ub = None, None
    res = linprog(cost, A_ub=a_ub, b_ub=b_ub, A_eq=a_eq, b_eq=sys.b_eq, bounds=bounds, method="highs")
    if not res.success:
        raise RuntimeError(f"phase-1 LP failed: {res.message}")
    if res.fun < FEAS_TOL:
        v = np.clip(res.x[:n], 0.0, 1.0)
        if witness_violation(sys, v) >= FEAS_TOL * 10:
            polish = lsq_linear(sys.a_eq, sys.b_eq, bounds=(0.0, 1.0), tol=1e-14)
            candidate = np.clip(polish.x, 0.0, 1.0)
            if witness_violation(sys, candidate) < witness_violation(sys, v):
                v = candidate
        if witness_violation(sys, v) >= FEAS_TOL * 10:
            raise RuntimeError(
                f"phase-1 optimum {res.fun} below tolerance but witness violation "
                f"{witness_violation(sys, v)} could not be polished below {FEAS_TOL * 10}"
            )
        return FeasibilityResult(
            "feasible", witness={f"{z}->{zbar}": float(val) for (z, zbar), val in zip(sys.variables, v)}
        )
    y = np.asarray(res.eqlin.marginals, dtype=float)
    g = np.asarray(res.ineqlin.marginals, dtype=float) if sys.groups else np.zeros(0)
    best = None
    for sy in (1.0, -1.0):  # solver dual sign convention probed by evaluation
        for sg in (1.0, -1.0):
            margin = certificate_margin(sys, sy * y, sg * g)
            if best is None or margin > best[0]:
                best = (margin, sy, sg)
    margin, sy, sg = best
    if margin <= CERT_TOL:
        raise RuntimeError(f"infeasible LP but certificate margin {margin} not positive")
    return FeasibilityResult(
        "infeasible",
        certificate={
            "y_eq": (sy * y).tolist(),
            "y_groups": np.maximum(sg * g, 0.0).tolist(),
            "margin": margin,
        },
    )


def check_certificate(sys: LinearSystem, certificate: dict) -> float:
    """Re-evaluate a stored certificate; positive return proves infeasibility."""
    return certificate_margin(sys, np.array(certificate["y_eq"]), np.array(certificate["y_groups"]))


# ---------------------------------------------------------------------------
# Channel shapes and named instances for the 3x3 candidate


def grw_n1_shape() -> ChannelShape:
    """Z=0 surely to "0"; each nonzero z may transition to "0", else passes through."""
    named = {str(z): ("0",) for z in range(1, 7)}
    return ChannelShape(named=named, fixed={"0": {"0": 1.0}})


def grw_n2_shape(kind: str = "zero-line") -> ChannelShape:
    """Channel shapes for the doubled 3x3 candidate.

    Zero components are final and (0,0) maps to itself surely; single-zero
    inputs distribute fully between staying put and erasing their nonzero
    component. The kinds differ on doubly-nonzero inputs:

    - "zero-line": (i,j) may erase one component, reaching (i,0) or (0,j);
      only the zero line feeds (0,0). This is the class under which the
      known impossibility instance is certified.
    - "erasure": (i,j) may also erase both components at once, reaching
      (0,0) directly. This broad class is used for the random survey.
    """
    s = lambda i, j: tuple_symbol((str(i), str(j)))
    named, equalities = {}, []
    for i in range(1, 7):
        named[s(i, 0)] = (s(i, 0), s(0, 0))
        named[s(0, i)] = (s(0, i), s(0, 0))
        equalities += [s(i, 0), s(0, i)]
    for i in range(1, 7):
        for j in range(1, 7):
            if kind == "zero-line":
                named[s(i, j)] = (s(i, 0), s(0, j))
            elif kind == "erasure":
                named[s(i, j)] = (s(i, 0), s(0, j), s(0, 0))
            else:
                raise ValueError(f"unknown shape kind {kind!r}")
    fixed = {s(0, 0): {s(0, 0): 1.0}}
    return ChannelShape(named=named, fixed=fixed, equalities=tuple(equalities))


_GRW2_CACHE: dict = {}


def _grw2() -> JointDistribution:
    if "dist" not in _GRW2_CACHE:
        _GRW2_CACHE["dist"] = n_fold(grw(), 2)
    return _GRW2_CACHE["dist"]


def bob_matrix_binarization(a) -> Binarization:
    """3x3 matrix of P(Ybar=0 | Y^2=(i,j)) as a binarization of Y^2."""
    a = np.asarray(a, dtype=float)
    y2 = _grw2().alphabet("Y")
    return Binarization(y2, tuple(a.ravel()))


def materialize_channel(shape: ChannelShape, witness: dict, z_alpha: Alphabet) -> Channel:
    """Expand a witness assignment into a full channel; residual row mass goes
    to a fresh per-input dump symbol."""
    targeted = sorted({zbar for outs in shape.named.values() for zbar in outs} | {
        zbar for outs in shape.fixed.values() for zbar in outs
    })
    dump = [f"{z}*" for z in z_alpha.symbols]
    out_alpha = Alphabet(tuple(targeted) + tuple(dump))
    rows = np.zeros((len(z_alpha), len(out_alpha)))
    for i, z in enumerate(z_alpha.symbols):
        used = 0.0
        for zbar in shape.named.get(z, ()):
            p = witness[f"{z}->{zbar}"]
            rows[i, out_alpha.index(zbar)] += p
            used += p
        for zbar, p in shape.fixed.get(z, {}).items():
            rows[i, out_alpha.index(zbar)] += p
            used += p
        rows[i, out_alpha.index(f"{z}*")] = max(0.0, 1.0 - used)
    rows = np.clip(rows, 0.0, 1.0)
    rows /= rows.sum(axis=1, keepdims=True)
    return Channel(z_alpha, out_alpha, rows)


def recheck_witness(
    dist: JointDistribution,
    bob_bin: Binarization,
    targets: dict,
    shape: ChannelShape,
    witness: dict,
) -> float:
    """Max residual of the original target conditions under the materialized
    channel, computed by direct substitution (independent of the LP path)."""
    chan = materialize_channel(shape, witness, dist.alphabet("Z"))
    return recheck_channel(dist, bob_bin, targets, chan)


def recheck_channel(
    dist: JointDistribution, bob_bin: Binarization, targets: dict, chan: Channel
) -> float:
    """Max target-condition residual for an explicit Eve channel, by direct
    substitution into the unlinearized conditions."""
    bar = apply_channel(binarize(dist, "Y", bob_bin), "Z", chan)
    xi, yi, zi = (bar.axis_index(n) for n in ("X", "Y", "Z"))
    w = np.moveaxis(bar.weights, (xi, yi, zi), (0, 1, 2)) / bar.normalizer
    worst = 0.0
    for zbar, target in targets.items():
        k = bar.alphabet("Z").index(zbar)
        p_y0 = w[:, 0, k]
        p_all = w[:, :, k].sum(axis=1)
        worst = max(worst, float(np.abs(p_y0 - target * p_all).max()))
    return worst


def grw_n2_system(a_matrix, kind: str = "zero-line") -> tuple[LinearSystem, dict]:
    """Target system of the doubled 3x3 candidate for a Bob 3x3 strategy."""
    bob = bob_matrix_binarization(a_matrix)
    targets = tau2_targets(a_matrix)
    sys = build_system(_grw2(), bob, targets, grw_n2_shape(kind))
    return sys, targets


def product_factorization(a, tol: float = 1e-9):
    """Factor a rank-one 3x3 strategy as outer(b, c) with b, c in [0,1]^3.

    Returns (b, c) or None when the matrix is not rank-one within tol.
    """
    a = np.asarray(a, dtype=float)
    u, s, vt = np.linalg.svd(a)
    if s[0] == 0.0:
        return np.zeros(3), np.zeros(3)
    if s[1] > tol * s[0]:
        return None
    b = u[:, 0] * s[0]
    c = vt[0].copy()
    if b.sum() < 0:
        b, c = -b, -c
    b, c = np.clip(b, 0.0, None), np.clip(c, 0.0, None)
    if b.max() > 0 and c.max() > 0:
        k = np.sqrt(c.max() / b.max())
        b, c = np.minimum(b * k, 1.0), np.minimum(c / k, 1.0)
    if np.abs(np.outer(b, c) - a).max() > max(tol, 10 * tol * s[0]):
        return None
    return b, c


def product_witness_channel(b, c) -> Channel:
    """Tensor product of the two single-copy constructions for outer(b, c)."""
    y_alpha = grw().alphabet("Y")
    parts = [construct_eve_channel_n1(Binarization(y_alpha, tuple(v))) for v in (b, c)]
    z2 = _grw2().alphabet("Z")
    out = Alphabet(
        tuple(tuple_symbol((o1, o2)) for o1 in parts[0].output.symbols for o2 in parts[1].output.symbols)
    )
    rows = np.zeros((len(z2), len(out)))
    for i, z in enumerate(z2.symbols):
        z1, zz2 = z.strip("()").split(",")
        r1 = parts[0].rows[parts[0].input.index(z1)]
        r2 = parts[1].rows[parts[1].input.index(zz2)]
        rows[i] = np.outer(r1, r2).ravel()
    return Channel(z2, out, rows)


@dataclass
class N2Report:
    """Outcome of the two-track N=2 decision procedure."""

    method: str  # "product-witness" or "zero-line-lp"
    result: FeasibilityResult
    targets: dict
    system: LinearSystem | None = None
    residual: float | None = None


def solve_grw_n2(a_matrix) -> N2Report:
    """Decide the N=2 recursive-target system for a Bob 3x3 strategy.

    Rank-one (product) strategies get an explicit witness channel — the
    tensor product of the two single-copy constructions — verified by direct
    substitution into the unlinearized target conditions. All other
    strategies are decided by the zero-line-shape LP, which produces a Farkas
    certificate on infeasibility.
    """
    targets = tau2_targets(a_matrix)
    bob = bob_matrix_binarization(a_matrix)
    factors = product_factorization(a_matrix)
    if factors is not None:
        chan = product_witness_channel(*factors)
        residual = recheck_channel(_grw2(), bob, targets, chan)
        if residual < FEAS_TOL:
            witness = {
                "kind": "explicit-channel",
                "rows": chan.rows.tolist(),
                "inputs": list(chan.input.symbols),
                "outputs": list(chan.output.symbols),
            }
            return N2Report(
                "product-witness", FeasibilityResult("feasible", witness=witness), targets, residual=residual
            )
    sys, _ = grw_n2_system(a_matrix, "zero-line")
    return N2Report("zero-line-lp", solve_feasibility(sys), targets, system=sys)


ITVCOUNTER_MATRIX = ((1.0, 1.0, 0.0), (0.0, 0.0, 0.0), (0.0, 0.0, 1.0))


def verify_itvcounter() -> FeasibilityResult:
    """The specific non-product strategy whose target system has no channel
    in the zero-line class; the result carries a Farkas certificate."""
    return solve_grw_n2(ITVCOUNTER_MATRIX).result


def random_feasibility_rate(n_samples: int, seed: int, sampler: str = "uniform") -> float:
    """Fraction of random Bob 3x3 strategies whose target system admits a
    componentwise-erasure Eve channel.

    sampler "uniform": i.i.d. uniform entries on [0,1]; "product": outer
    products of two uniform vectors. The survey runs over the broad erasure
    class (each copy independently erasable, zeros final) rather than the
    stricter zero-line class used for the impossibility instance; reports
    should surface this open sampling-law question alongside the rate.
    """
    if n_samples < 1:
        raise ValueError("n_samples must be >= 1")
    rng = np.random.default_rng(seed)
    feasible = 0
    for _ in range(n_samples):
        if sampler == "uniform":
            a = rng.uniform(size=(3, 3))
        elif sampler == "product":
            a = np.outer(rng.uniform(size=3), rng.uniform(size=3))
        else:
            raise ValueError(f"unknown sampler {sampler!r}")
        sys, _ = grw_n2_system(a, "erasure")
        feasible += solve_feasibility(sys).feasible
    return feasible / n_samples


# ---------------------------------------------------------------------------
# Restricted-shape impossibility at N=2


def restricted_shape_n2_bound() -> float:
    """Gap in the chain of fractions for the indicator binarization on {11,33}.

    The first fraction 2 / (2 + a1 + a2 + 4 b1 + 4 b2) is minimized at 1/6
    with every parameter at 1, while the chain contains the constant 0, so
    the chain can never close; returns the gap 1/6.
    """
    first_fraction = lambda a1, a2, b1, b2: 2.0 / (2.0 + a1 + a2 + 4 * b1 + 4 * b2)
    minimum = first_fraction(1.0, 1.0, 1.0, 1.0)
    assert abs(minimum - 1.0 / 6.0) < 1e-15
    rng = np.random.default_rng(0)
    samples = rng.uniform(size=(256, 4))
    assert all(first_fraction(*row) >= minimum - 1e-15 for row in samples)
    fifth_chain_element = 0.0  # the displayed "=0" entry, independent of parameters
    return minimum - fifth_chain_element


# ---------------------------------------------------------------------------
# The 4x4 family: restricted channel tables, Ybar impossibility, perturbation

RW_PAIRS = ("(0,2)", "(1,2)", "(0,3)", "(1,3)", "(2,0)", "(3,0)", "(2,1)", "(3,1)")


def rw_tables_channel(alpha: float, beta: float, to_zero: dict, to_one: dict) -> Channel:
    """Restricted Eve channel for the 4x4 family.

    Z in {0,1} mixes between "0" and "1" via alpha, beta; every pair-valued z
    sends mass to "0" and "1" per the given maps and passes the rest through
    to its own symbol.
    """
    z_alpha = rw_z_alphabet()
    out = Alphabet(("0", "1") + tuple(RW_PAIRS))
    rows = np.zeros((len(z_alpha), len(out)))
    rows[z_alpha.index("0"), out.index("0")] = 1 - alpha
    rows[z_alpha.index("0"), out.index("1")] = alpha
    rows[z_alpha.index("1"), out.index("0")] = beta
    rows[z_alpha.index("1"), out.index("1")] = 1 - beta
    for pair in RW_PAIRS:
        p0 = to_zero[pair]
        p1 = to_one[pair]
        if p0 + p1 > 1 + 1e-12:
            raise ValueError(f"transitions from {pair} exceed total probability 1")
        i = z_alpha.index(pair)
        rows[i, out.index("0")] = p0
        rows[i, out.index("1")] = p1
        rows[i, out.index(pair)] = max(0.0, 1.0 - p0 - p1)
    return Channel(z_alpha, out, rows)


def ybar_bound(a: float) -> float:
    """The binarization-forced ceiling 3a / (6a + 2), always below 1/2."""
    if a <= 0:
        raise ValueError("a must be positive")
    y, z = 2.0, 3.0 * a + 3.0
    value = a * (2 * y - 1) / (2 * z - 2 * y)
    assert value < 0.5
    return value


def ybar_blocking_binarization(a: float) -> Binarization:
    """Bob binarization no restricted channel can neutralize, rescaled to [0,1]."""
    scale = 3.0 * a + 3.0
    return Binarization(Alphabet(("0", "1", "2", "3")), (0.0, 1.0 / scale, 2.0 / scale, 1.0))


def ybar_falsification_search(a: float, n_samples: int, seed: int) -> float:
    """Min over sampled restricted channels of the independence violation for
    the blocking binarization; strictly positive by the impossibility result."""
    dist = rw(a)
    bob = ybar_blocking_binarization(a)
    binarized = binarize(dist, "Y", bob)
    rng = np.random.default_rng(seed)
    worst = np.inf
    for _ in range(n_samples):
        alpha, beta = rng.uniform(size=2)
        to_zero, to_one = {}, {}
        for pair in RW_PAIRS:
            u, v = rng.uniform(size=2)
            if u + v > 1:
                u, v = 1 - u, 1 - v
            to_zero[pair], to_one[pair] = u, v
        chan = rw_tables_channel(alpha, beta, to_zero, to_one)
        bar = apply_channel(binarized, "Z", chan)
        worst = min(worst, cross_multiplied_residual(bar, "X", "Y", "Z"))
    return float(worst)


class InadmissibleEpsilonError(ValueError):
    """The solved perturbation would push the transition outside [0,1]."""


def perturbation_epsilon(x, y) -> tuple[float, float]:
    """Solve 16 zeta + 16 eps x0 y2 + eps zeta = 0 for centered 4-vectors.

    zeta = (x2 - x3)(y2 - y3); requires sum(x) = sum(y) = 0 and a
    non-degenerate denominator 16 x0 y2 + zeta.
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if abs(x.sum()) > 1e-12 or abs(y.sum()) > 1e-12:
        raise ValueError("vectors must be centered (components summing to 0)")
    zeta = (x[2] - x[3]) * (y[2] - y[3])
    denom = 16 * x[0] * y[2] + zeta
    if denom == 0:
        raise ValueError("degenerate denominator 16 x0 y2 + zeta = 0")
    return float(zeta), float(-16 * zeta / denom)


def perturbation_verify(x_bin: Binarization, y_bin: Binarization, a: float) -> float:
    """Independence residual at Zbar="0" for the single-entry perturbation.

    Centers both acceptance vectors, solves for epsilon, shifts the channel
    entry for Z=(0,2) and evaluates the cross-multiplied residual of
    Xbar vs Ybar given Zbar="0" on the 4x4 family.

    The determinant identity behind the construction needs the cross-block
    weight a = 1/8, so the corner-cell weight (1/4) is exactly twice the
    block weights; for other a the all-half channel leaves an extra
    determinant term and no single-entry shift can cancel it.
    """
    xv = np.array(x_bin.p0)
    yv = np.array(y_bin.p0)
    zeta, eps = perturbation_epsilon(xv - xv.mean(), yv - yv.mean())
    if abs(eps) > 0.5:
        raise InadmissibleEpsilonError(f"epsilon {eps} outside [-1/2, 1/2]")
    # The all-half row already sums to 1, so the shift must be split
    # symmetrically between the "0" and "1" entries; eps/2 each matches the
    # defining equation, whose eps is in doubled units.
    shift = eps / 2.0
    to_zero = {pair: 0.5 for pair in RW_PAIRS}
    to_one = {pair: 0.5 for pair in RW_PAIRS}
    to_zero["(0,2)"] = 0.5 + shift
    to_one["(0,2)"] = 0.5 - shift
    chan = rw_tables_channel(0.5, 0.5, to_zero, to_one)
    bar = apply_channel(binarize(binarize(rw(a), "X", x_bin), "Y", y_bin), "Z", chan)
    xi, yi, zi = (bar.axis_index(n) for n in ("X", "Y", "Z"))
    w = np.moveaxis(bar.weights, (xi, yi, zi), (0, 1, 2))
    k = bar.alphabet("Z").index("0")
    cell = w[:, :, k] / bar.normalizer
    det = cell[0, 0] * cell[1, 1] - cell[0, 1] * cell[1, 0]
    scale = cell.max()
    return float(abs(det) / scale) if scale > 0 else 0.0
