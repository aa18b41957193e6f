"""Network data model, user ordering, and interference-regime classifiers.

A network is a K-cell downlink described entirely by its channel-strength
tensor ``alpha[i][j][l]``: the strength of the link from base station ``j``
to user ``l`` of cell ``i`` (all indices 0-based in code; the JSON schema
is 0-based as well).  Entries are exact nonnegative rationals.

Three nested weak inter-cell interference regimes are classified here, in
increasing size: TIN, CTIN and SLS, all contained in the WEAK regime (the
per-cell SIR order).  Membership is decided by evaluating each regime's
defining inequalities exactly; boundary networks count as members.

The inter-cell inequalities of each regime are applied for every user of
the receiving cell, the intra-cell inequalities for users 2..L (see the
module's condition generators).  A user whose strength row is identically
zero is a formal placeholder (used for padding unequal cells) and is
exempted as a receiver: such users carry no traffic and have no bearing on
what the regime guarantees for the rest of the network.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .polyhedra import ZERO, frac_str, parse_frac

REGIME_TIN = "TIN"
REGIME_CTIN = "CTIN"
REGIME_SLS = "SLS"
REGIME_WEAK = "WEAK"
REGIME_GENERAL = "GENERAL"

Alpha = tuple[tuple[tuple[Fraction, ...], ...], ...]


@dataclass(frozen=True)
class NetworkSpec:
    """Immutable channel-strength tensor with dimensions.

    ``alpha[i][j][l]``: strength from BS ``j`` to user ``l`` of cell ``i``.
    """

    K: int
    L: int
    alpha: Alpha

    def __post_init__(self):
        if not (isinstance(self.K, int) and self.K >= 1):
            raise PreconditionError("K must be an integer >= 1")
        if not (isinstance(self.L, int) and self.L >= 1):
            raise PreconditionError("L must be an integer >= 1")
        a = tuple(tuple(tuple(row) for row in plane) for plane in self.alpha)
        object.__setattr__(self, "alpha", a)
        if len(a) != self.K or any(
            len(plane) != self.K or any(len(row) != self.L for row in plane)
            for plane in a
        ):
            raise PreconditionError("alpha must have shape K x K x L")
        for plane in a:
            for row in plane:
                for x in row:
                    if not isinstance(x, Fraction):
                        raise PreconditionError("alpha entries must be Fractions")
                    if x < 0:
                        raise PreconditionError("alpha entries must be >= 0")

    def direct(self, i: int, l: int) -> Fraction:
        return self.alpha[i][i][l]

    def users(self):
        """All (l, i) user pairs, cell-major."""
        return [(l, i) for i in range(self.K) for l in range(self.L)]

    def max_cross(self) -> Fraction:
        """Largest inter-cell strength (0 for a single cell)."""
        best = ZERO
        for i in range(self.K):
            for j in range(self.K):
                if i != j:
                    m = max(self.alpha[i][j])
                    if m > best:
                        best = m
        return best


def make_network(K, L, alpha) -> NetworkSpec:
    """Build a NetworkSpec, coercing entries (str/int/Fraction) exactly."""
    a = tuple(
        tuple(tuple(parse_frac(x) for x in row) for row in plane) for plane in alpha
    )
    return NetworkSpec(int(K), int(L), a)


def network_to_obj(net: NetworkSpec) -> dict:
    return {
        "K": net.K,
        "L": net.L,
        "alpha": [
            [[frac_str(x) for x in row] for row in plane] for plane in net.alpha
        ],
    }


def network_from_obj(obj: dict) -> NetworkSpec:
    try:
        return make_network(obj["K"], obj["L"], obj["alpha"])
    except (KeyError, TypeError) as exc:
        raise PreconditionError("malformed network object: %s" % exc) from exc


@dataclass(frozen=True)
class RegimeLabel:
    in_weak: bool
    in_tin: bool
    in_ctin: bool
    in_sls: bool
    strongest: str

    def to_obj(self) -> dict:
        return {
            "in_weak": self.in_weak,
            "in_tin": self.in_tin,
            "in_ctin": self.in_ctin,
            "in_sls": self.in_sls,
            "strongest": self.strongest,
        }


def is_snr_ordered(net: NetworkSpec) -> bool:
    return all(
        net.direct(i, l) <= net.direct(i, l + 1)
        for i in range(net.K)
        for l in range(net.L - 1)
    )


def require_snr_ordered(net: NetworkSpec):
    if not is_snr_ordered(net):
        raise PreconditionError(
            "network is not SNR-ordered; call normalize_user_order first"
        )


def normalize_user_order(net: NetworkSpec):
    """Stable per-cell sort of users by direct strength.

    Returns ``(sorted_net, perms)`` where ``perms[i][new_l] = old_l`` maps
    positions in the sorted network back to the caller's user indices.
    """
    perms = []
    for i in range(net.K):
        order = sorted(range(net.L), key=lambda l: net.direct(i, l))
        perms.append(tuple(order))
    alpha = tuple(
        tuple(tuple(net.alpha[i][j][perms[i][l]] for l in range(net.L)) for j in range(net.K))
        for i in range(net.K)
    )
    return NetworkSpec(net.K, net.L, alpha), tuple(perms)


def check_sir_order(net: NetworkSpec):
    """Exact check of the per-cell SIR order against every other cell.

    Returns ``(True, None)`` or ``(False, (i, j, l))`` with the first
    violating (cell, interferer, user) triple, 0-based.  The condition at
    ``l = 0`` is nonnegativity of the first SIR gap; at ``l >= 1`` it is
    monotonicity of the gaps.
    """
    require_snr_ordered(net)
    for i in range(net.K):
        for j in range(net.K):
            if j == i:
                continue
            prev = None
            for l in range(net.L):
                gap = net.alpha[i][i][l] - net.alpha[i][j][l]
                if prev is None:
                    if gap < 0:
                        return False, (i, j, l)
                elif gap < prev:
                    return False, (i, j, l)
                prev = gap
    return True, None


def _is_trivial_user(net: NetworkSpec, i: int, l: int) -> bool:
    return all(net.alpha[i][j][l] == 0 for j in range(net.K))


def regime_condition_terms(net: NetworkSpec, regime: str):
    """Yield the defining inequalities of a regime as ``(lhs, const, slope)``.

    Each term encodes the condition ``lhs >= const + slope`` where ``lhs``
    and ``const`` collect direct-link strengths and ``slope`` collects the
    cross-link part.  The split is what lets a sampler scale all cross
    links by a common factor t and solve ``lhs >= const + slope * t``
    exactly for the admissible range of t (every term is linear in such a
    scaling).  Conditions whose receiving user has an all-zero strength row
    are skipped (placeholder users, see module docstring).
    """
    K, L, a = net.K, net.L, net.alpha
    if regime not in (REGIME_WEAK, REGIME_TIN, REGIME_CTIN, REGIME_SLS):
        raise PreconditionError("unknown regime %r" % regime)
    trivial = [[_is_trivial_user(net, i, l) for l in range(L)] for i in range(K)]
    others = [[j for j in range(K) if j != i] for i in range(K)]

    for i in range(K):
        for li in range(L):
            if trivial[i][li]:
                continue
            dii = a[i][i][li]
            # intra-cell conditions tie user li to its predecessor
            if li >= 1:
                for j in others[i]:
                    cur, prev = a[i][j][li], a[i][j][li - 1]
                    if regime == REGIME_TIN:
                        plus = prev - cur if prev > cur else ZERO
                        yield dii, a[i][i][li - 1], cur - plus
                    else:  # WEAK, CTIN and SLS share the SIR-order form
                        yield dii, a[i][i][li - 1], cur - prev
            elif regime == REGIME_WEAK:
                for j in others[i]:
                    yield dii, ZERO, a[i][j][0]
            # inter-cell conditions (not part of WEAK beyond the l=0 gap)
            if regime == REGIME_TIN:
                for j in others[i]:
                    cij = a[i][j][li]
                    for k in others[i]:
                        for lk in range(L):
                            yield dii, ZERO, cij + a[k][i][lk]
            elif regime == REGIME_CTIN:
                for j in others[i]:
                    cij = a[i][j][li]
                    for lj in range(L):
                        aji = a[j][i][lj]
                        yield dii, ZERO, cij + aji
                        for k in others[i]:
                            if k == j:
                                yield dii, -a[j][j][lj], cij + aji
                            else:
                                yield dii, ZERO, a[i][k][li] + aji - a[j][k][lj]
            elif regime == REGIME_SLS:
                for j in others[i]:
                    yield dii, ZERO, a[i][j][li]
                for k in others[i]:
                    for lk in range(L):
                        yield dii, ZERO, a[k][i][lk]
                for j in others[i]:
                    for lj in range(L):
                        aji = a[j][i][lj]
                        for k in others[i]:
                            if k == j:
                                yield dii, -a[j][j][lj], a[i][j][li] + aji
                            else:
                                yield dii, ZERO, a[i][k][li] + aji - a[j][k][lj]


def regime_margin(net: NetworkSpec, regime: str) -> Fraction:
    """Smallest slack over the regime's inequalities (>= 0 iff member).

    For WEAK this agrees with :func:`check_sir_order` on SNR-ordered nets.
    """
    margin = None
    for lhs, const, slope in regime_condition_terms(net, regime):
        slack = lhs - const - slope
        if margin is None or slack < margin:
            margin = slack
    return margin if margin is not None else ZERO


def _in_regime(net: NetworkSpec, regime: str) -> bool:
    return all(
        lhs - const - slope >= 0
        for lhs, const, slope in regime_condition_terms(net, regime)
    )


def classify_regime(net: NetworkSpec) -> RegimeLabel:
    """Evaluate the three regime definitions plus the SIR order.

    Memberships are nested (TIN implies CTIN implies SLS implies WEAK);
    ``strongest`` names the smallest regime containing the network, or
    GENERAL when even the SIR order fails.
    """
    require_snr_ordered(net)
    in_weak = check_sir_order(net)[0]
    in_tin = _in_regime(net, REGIME_TIN)
    in_ctin = _in_regime(net, REGIME_CTIN)
    in_sls = _in_regime(net, REGIME_SLS)
    if in_tin:
        strongest = REGIME_TIN
    elif in_ctin:
        strongest = REGIME_CTIN
    elif in_sls:
        strongest = REGIME_SLS
    elif in_weak:
        strongest = REGIME_WEAK
    else:
        strongest = REGIME_GENERAL
    return RegimeLabel(in_weak, in_tin, in_ctin, in_sls, strongest)


def strongest_subnetwork(net: NetworkSpec) -> NetworkSpec:
    """Keep only the strongest (last in SNR order) user of each cell."""
    require_snr_ordered(net)
    top = net.L - 1
    alpha = tuple(
        tuple((net.alpha[i][j][top],) for j in range(net.K)) for i in range(net.K)
    )
    return NetworkSpec(net.K, 1, alpha)


def with_trivial_users(net: NetworkSpec, L_target: int) -> NetworkSpec:
    """Pad every cell to ``L_target`` users with all-zero strength rows.

    Padding users sort first in SNR order and change no GDoF quantity of
    the original users.
    """
    if L_target < net.L:
        raise PreconditionError(
            "cannot pad to L=%d below current L=%d" % (L_target, net.L)
        )
    pad = L_target - net.L
    alpha = tuple(
        tuple((ZERO,) * pad + net.alpha[i][j] for j in range(net.K))
        for i in range(net.K)
    )
    return NetworkSpec(net.K, L_target, alpha)


def relabel_cells(net: NetworkSpec, perm) -> NetworkSpec:
    """Apply a cell permutation consistently to both tensor axes.

    ``perm[new_i] = old_i``; user indices are untouched.
    """
    perm = tuple(perm)
    if sorted(perm) != list(range(net.K)):
        raise PreconditionError("perm must be a permutation of 0..K-1")
    alpha = tuple(
        tuple(net.alpha[perm[i]][perm[j]] for j in range(net.K)) for i in range(net.K)
    )
    return NetworkSpec(net.K, net.L, alpha)


def subnetwork(net: NetworkSpec, active) -> NetworkSpec:
    """Restrict to the given users, padding cells back to a common size.

    ``active[i]`` lists the kept user indices of cell ``i`` in ascending
    order.  Cells keep their identity; removed users are replaced by
    leading all-zero placeholder rows so the result stays rectangular.
    """
    active = tuple(tuple(sorted(set(us))) for us in active)
    if len(active) != net.K:
        raise PreconditionError("active must list users per cell")
    for us in active:
        if us and (us[0] < 0 or us[-1] >= net.L):
            raise PreconditionError("active user index out of range")
    width = max((len(us) for us in active), default=0)
    if width == 0:
        raise PreconditionError("at least one active user is required")
    alpha = []
    for i in range(net.K):
        pad = width - len(active[i])
        plane = []
        for j in range(net.K):
            row = (ZERO,) * pad + tuple(net.alpha[i][j][l] for l in active[i])
            plane.append(row)
        alpha.append(tuple(plane))
    return NetworkSpec(net.K, width, tuple(alpha))


def all_user_subsets(net: NetworkSpec):
    """Iterate every nonempty choice of active users, as per-cell tuples."""
    per_cell = []
    for _ in range(net.K):
        cell_subsets = []
        for r in range(net.L + 1):
            cell_subsets.extend(itertools.combinations(range(net.L), r))
        per_cell.append(cell_subsets)
    for combo in itertools.product(*per_cell):
        if any(combo):
            yield combo
