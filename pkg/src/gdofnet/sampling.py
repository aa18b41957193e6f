"""Deterministic random-network generation inside a target regime.

Direct strengths are drawn from a rational grid in [1/2, 1] and sorted per
cell; cross strengths are drawn from a grid in [0, 1] and then scaled by
the largest factor that keeps every inequality of the target regime
satisfied.  Every regime inequality is linear in a common cross scaling,
so that factor is exact and, whenever any clamping happens, at least one
inequality lands exactly on the regime boundary; this concentrates samples
where gain ratios are largest while keeping membership guaranteed by
construction.
"""

from __future__ import annotations

from fractions import Fraction

from .network import (
    NetworkSpec,
    REGIME_SLS,
    classify_regime,
    regime_condition_terms,
    with_trivial_users,
)
from .polyhedra import ZERO
from .regions import GdofTuple

GRID_DEN = 20
ONE = Fraction(1)


def _grid(rng, lo: Fraction, hi: Fraction) -> Fraction:
    """Uniform draw from the denominator-GRID_DEN grid within [lo, hi]."""
    lo_k = -(-lo.numerator * GRID_DEN // lo.denominator)  # ceil
    hi_k = hi.numerator * GRID_DEN // hi.denominator  # floor
    if hi_k < lo_k:
        return lo
    return Fraction(rng.randint(lo_k, hi_k), GRID_DEN)


def scale_crosses(net: NetworkSpec, theta: Fraction) -> NetworkSpec:
    alpha = tuple(
        tuple(
            tuple(x if i == j else x * theta for x in net.alpha[i][j])
            for j in range(net.K)
        )
        for i in range(net.K)
    )
    return NetworkSpec(net.K, net.L, alpha)


def clamp_to_regime(net: NetworkSpec, regime: str) -> NetworkSpec:
    """Scale all cross links by the largest feasible factor <= 1."""
    theta = ONE
    for lhs, const, slope in regime_condition_terms(net, regime):
        if slope > 0:
            cap = (lhs - const) / slope
            if cap < theta:
                theta = cap
    if theta < 0:
        theta = ZERO  # cannot occur for SNR-sorted grids; defensive
    if theta == ONE:
        return net
    return scale_crosses(net, theta)


def sample_network(rng, K: int, L: int, regime: str = REGIME_SLS) -> NetworkSpec:
    """A random network guaranteed to lie in the given regime."""
    alpha = [[[None] * L for _ in range(K)] for _ in range(K)]
    for i in range(K):
        directs = sorted(_grid(rng, Fraction(1, 2), ONE) for _ in range(L))
        for l in range(L):
            alpha[i][i][l] = directs[l]
    for i in range(K):
        for j in range(K):
            if i != j:
                for l in range(L):
                    alpha[i][j][l] = _grid(rng, ZERO, ONE)
    net = clamp_to_regime(NetworkSpec(K, L, tuple(map(tuple, (map(tuple, p) for p in alpha)))), regime)
    label = classify_regime(net)
    member = {
        "WEAK": label.in_weak,
        "TIN": label.in_tin,
        "CTIN": label.in_ctin,
        "SLS": label.in_sls,
    }[regime]
    if not member:
        raise AssertionError("sampler produced a network outside %s" % regime)
    return net


def sample_homogeneous(rng, K: int, L: int):
    """A random network with one common cross strength; returns (net, beta)."""
    alpha = [[[None] * L for _ in range(K)] for _ in range(K)]
    min_direct = ONE
    for i in range(K):
        directs = sorted(_grid(rng, Fraction(1, 2), ONE) for _ in range(L))
        if directs[0] < min_direct:
            min_direct = directs[0]
        for l in range(L):
            alpha[i][i][l] = directs[l]
    beta = _grid(rng, ZERO, min_direct)
    for i in range(K):
        for j in range(K):
            if i != j:
                for l in range(L):
                    alpha[i][j][l] = beta
    return NetworkSpec(K, L, tuple(map(tuple, (map(tuple, p) for p in alpha)))), beta


def sample_level(rng, net: NetworkSpec, cap_to_directs: bool = False) -> Fraction:
    """A random attenuation level in [0, max cross], boundary included.

    With ``cap_to_directs`` the draw is further capped by the smallest
    direct strength: the layer set functions are polymatroids exactly on
    that smaller interval (above it a weak user's single-cell layer is
    pushed below the noise floor and the monotone structure breaks), so
    polymatroid-property checks sample there.
    """
    hi = net.max_cross()
    if cap_to_directs:
        hi = min([hi] + [net.direct(i, 0) for i in range(net.K)])
    return hi * Fraction(rng.randint(0, 8), 8)


def sample_rates(rng, net: NetworkSpec) -> GdofTuple:
    """A random rate point inside the per-user box [0, direct strength],
    hitting both feasible and infeasible points of the layered regions.
    A global shrink factor keeps a healthy share of feasible draws."""
    shrink = Fraction(rng.choice((1, 1, 2, 4)), 4)
    vals = []
    for i in range(net.K):
        for l in range(net.L):
            top = net.direct(i, l)
            vals.append(top * shrink * Fraction(rng.randint(0, 10), 10))
    return GdofTuple(net.K, net.L, tuple(vals))


def ring_network(K: int, L: int = 1) -> NetworkSpec:
    """Directed-ring topology: unit directs, one cross of 1/2 per adjacent
    pair, weaker users padded as placeholders.  Lies exactly on the TIN
    boundary and maximizes the cooperation gain there."""
    half = Fraction(1, 2)
    alpha = [
        [[half if j == (i - 1) % K and K > 1 else ZERO] for j in range(K)]
        for i in range(K)
    ]
    for i in range(K):
        alpha[i][i] = [ONE]
    net = NetworkSpec(K, 1, tuple(map(tuple, (map(tuple, p) for p in alpha))))
    return with_trivial_users(net, L) if L > 1 else net
