"""Builders for every named GDoF region, and the sum-GDoF quantities.

All regions share one variable universe: one nonnegative variable per user,
named ``d_<cell>_<user>`` with 1-based indices, ordered cell-major.  Rows
are emitted with cumulative per-cell sums expanded onto the raw variables,
so systems from different builders compose directly.

Region catalogue (per network, SNR-ordered):

* :func:`ptin_region`        - one row per interference cycle (no-cooperation bounds).
* :func:`sls_outer_region`   - one row per (cycle, position) (full-cooperation outer bounds).
* :func:`mul_region`         - the multicast layer at level ``a``.
* :func:`ptin_a_region`      - 2-cell single-cell layer under a common attenuation ``a``.
* :func:`ptin_prime_region`  - its monotone inner form (the polymatroid-friendly one).
* :func:`layered_region`     - direct sum of multicast and single-cell layers at fixed ``a``.
* :func:`two_cell_sls_achievable` - the 2-cell layered scheme after exact
  elimination of the level variable; equals the outer bound in the SLS regime.
* :func:`homog_check`        - outer/achievable comparison under homogeneous
  inter-cell interference.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cycles import cycle_layouts, delta, delta_plus, enumerate_cycles
from .errors import CapabilityError, PreconditionError
from .network import (
    NetworkSpec,
    all_user_subsets,
    classify_regime,
    check_sir_order,
    require_snr_ordered,
)
from .polyhedra import (
    ZERO,
    LinSystem,
    OPTIMAL,
    equals,
    fm_eliminate,
    lp_max,
    reduce_rows,
    remove_redundant,
)

SUBSET_LIMIT = 10  # max K*L for the subset-enumeration fallback of tin_sum_gdof


def gdof_var(i: int, l: int) -> str:
    """Variable name of user ``l`` in cell ``i`` (0-based in, 1-based out)."""
    return "d_%d_%d" % (i + 1, l + 1)


def gdof_vars(K: int, L: int) -> tuple[str, ...]:
    return tuple(gdof_var(i, l) for i in range(K) for l in range(L))


@dataclass(frozen=True)
class GdofTuple:
    """A rate point, one nonnegative component per user, cell-major."""

    K: int
    L: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(Fraction(v) for v in self.values))
        if len(self.values) != self.K * self.L:
            raise PreconditionError("expected %d components" % (self.K * self.L))
        if any(v < 0 for v in self.values):
            raise PreconditionError("GDoF components must be >= 0")

    def get(self, i: int, l: int) -> Fraction:
        return self.values[i * self.L + l]


def _cumulative_coeffs(K: int, L: int, participants) -> tuple[Fraction, ...]:
    """Unit coefficients on every user at or below each participant."""
    coeffs = [ZERO] * (K * L)
    one = Fraction(1)
    for l, i in participants:
        base = i * L
        for s in range(l + 1):
            coeffs[base + s] = one
    return tuple(coeffs)


def ptin_region(net: NetworkSpec) -> LinSystem:
    """Cycle-bound polyhedron of the non-cooperative scheme.

    One row per canonical cycle: the cumulative rates of all participating
    users (and their same-cell predecessors) are bounded by the cycle's
    IBC constant.
    """
    require_snr_ordered(net)
    varnames = gdof_vars(net.K, net.L)
    rows = tuple(
        (_cumulative_coeffs(net.K, net.L, pi.entries), delta(net, pi))
        for pi in enumerate_cycles(net)
    )
    return LinSystem(varnames, rows, frozenset(varnames))


def sls_outer_region(net: NetworkSpec) -> LinSystem:
    """Cooperative outer-bound polyhedron: one row per (cycle, position)."""
    require_snr_ordered(net)
    varnames = gdof_vars(net.K, net.L)
    rows = []
    for pi in enumerate_cycles(net):
        coeffs = _cumulative_coeffs(net.K, net.L, pi.entries)
        for m in range(1, len(pi) + 1):
            rows.append((coeffs, delta_plus(net, pi, m)))
    return LinSystem(varnames, tuple(rows), frozenset(varnames))


# -- internal fast path: deduplicated cycle rows over an active user subset


def _active_sum_system(net: NetworkSpec, active, kind: str) -> LinSystem:
    """Cycle-bound system over a subset of users, minimized for LP use.

    ``active[i]`` lists participating user indices of cell ``i``.  Rows
    with identical supports keep only the smallest constant.  Cumulative
    sums count active users only (inactive users carry no rate).
    """
    a = net.alpha
    K = net.K
    var_of = {}
    names = []
    for i in range(K):
        for l in active[i]:
            var_of[(l, i)] = len(names)
            names.append(gdof_var(i, l))
    n = len(names)
    below = {
        (l, i): [var_of[(s, i)] for s in active[i] if s <= l]
        for i in range(K)
        for l in active[i]
    }
    best: dict[tuple, Fraction] = {}
    order = []
    one = Fraction(1)
    for entries in cycle_layouts(tuple(tuple(us) for us in active)):
        coeffs = [ZERO] * n
        for l, i in entries:
            for k in below[(l, i)]:
                coeffs[k] = one
        key = tuple(coeffs)
        m = len(entries)
        if m == 1:
            l, i = entries[0]
            consts = [a[i][i][l]]
        else:
            base = ZERO
            for t in range(m):
                l_cur, i_cur = entries[t]
                l_nxt, i_nxt = entries[(t + 1) % m]
                base += a[i_cur][i_cur][l_cur] - a[i_nxt][i_cur][l_nxt]
            if kind == "ibc":
                consts = [base]
            else:
                consts = []
                for t in range(m):
                    l_nxt, i_nxt = entries[(t + 1) % m]
                    _, i_cur = entries[t]
                    consts.append(base + a[i_nxt][i_cur][l_nxt])
        if kind == "ibc":
            rhs = consts[0]
        else:
            rhs = min(consts)
        if key in best:
            if rhs < best[key]:
                best[key] = rhs
        else:
            best[key] = rhs
            order.append(key)
    rows = tuple((key, best[key]) for key in order)
    return LinSystem(tuple(names), rows, frozenset(names))


def _max_sum(sys: LinSystem) -> Fraction:
    res = lp_max(sys, (Fraction(1),) * len(sys.vars))
    if res.status != OPTIMAL:
        # cycle-bound systems always contain singleton rows, so the sum is
        # bounded; anything else indicates corrupted inputs
        raise PreconditionError("sum-GDoF LP did not reach an optimum")
    return res.value


def tin_sum_gdof(net: NetworkSpec) -> Fraction:
    """Best sum rate of the non-cooperative scheme.

    Inside the CTIN regime the cycle-bound polyhedron is exact, so one LP
    suffices.  Outside it, the achievable set is a union over choices of
    active users, so the maximum is taken over all such restrictions
    (2^(K*L) LPs; refused above K*L = 10).
    """
    ok, _ = check_sir_order(net)
    if not ok:
        raise PreconditionError("tin_sum_gdof requires the SIR order")
    full = tuple(tuple(range(net.L)) for _ in range(net.K))
    if classify_regime(net).in_ctin:
        return _max_sum(_active_sum_system(net, full, "ibc"))
    if net.K * net.L > SUBSET_LIMIT:
        raise CapabilityError(
            "subset enumeration limited to K*L <= %d users" % SUBSET_LIMIT
        )
    best = ZERO
    for active in all_user_subsets(net):
        val = _max_sum(_active_sum_system(net, active, "ibc"))
        if val > best:
            best = val
    return best


def mbc_outer_sum_gdof(net: NetworkSpec) -> Fraction:
    """Sum-rate value of the cooperative outer bound (single LP)."""
    require_snr_ordered(net)
    full = tuple(tuple(range(net.L)) for _ in range(net.K))
    return _max_sum(_active_sum_system(net, full, "mbc"))


# ---------------------------------------------------------------------------
# Two-cell layered scheme
# ---------------------------------------------------------------------------


def _require_two_cells(net: NetworkSpec):
    if net.K != 2:
        raise PreconditionError("this construction is defined for K=2 networks")


def _require_level(net: NetworkSpec, a: Fraction):
    if not 0 <= a <= net.max_cross():
        raise PreconditionError(
            "level a=%s outside [0, %s]" % (a, net.max_cross())
        )


def mul_region(net: NetworkSpec, a) -> LinSystem:
    """Rates deliverable by the shared multicast layer at level ``a``:
    a single simplex ``sum of all components <= a``."""
    a = Fraction(a)
    _require_level(net, a)
    varnames = gdof_vars(net.K, net.L)
    row = (tuple(Fraction(1) for _ in varnames), a)
    return LinSystem(varnames, (row,), frozenset(varnames))


def ptin_prime_region(net: NetworkSpec, a) -> LinSystem:
    """Monotone inner form of the 2-cell single-cell layer at level ``a``.

    Single-cell rows subtract ``max(cross, a)`` instead of ``a``, which is
    what makes the associated set function non-decreasing.
    """
    a = Fraction(a)
    _require_two_cells(net)
    require_snr_ordered(net)
    _require_level(net, a)
    return _two_cell_pair_system(net, a, prime=True)


def ptin_a_region(net: NetworkSpec, a) -> LinSystem:
    """2-cell single-cell layer at level ``a`` after eliminating per-user
    power variables: per-user rows ``cum_i <= direct - a`` plus pair rows."""
    a = Fraction(a)
    _require_two_cells(net)
    require_snr_ordered(net)
    _require_level(net, a)
    return _two_cell_pair_system(net, a, prime=False)


def _two_cell_pair_system(net: NetworkSpec, a: Fraction, prime: bool) -> LinSystem:
    K, L, al = net.K, net.L, net.alpha
    varnames = gdof_vars(K, L)
    rows = []
    for i in (0, 1):
        j = 1 - i
        for l in range(L):
            coeffs = _cumulative_coeffs(K, L, [(l, i)])
            if prime:
                rhs = al[i][i][l] - max(al[i][j][l], a)
            else:
                rhs = al[i][i][l] - a
            rows.append((coeffs, rhs))
    for l0 in range(L):
        for l1 in range(L):
            coeffs = _cumulative_coeffs(K, L, [(l0, 0), (l1, 1)])
            c01, c10 = al[0][1][l0], al[1][0][l1]
            rhs = (
                al[0][0][l0]
                + al[1][1][l1]
                - max(c01 + a, c10 + a, 2 * a, c01 + c10)
            )
            rows.append((coeffs, rhs))
    return LinSystem(varnames, tuple(rows), frozenset(varnames))


def layered_region(net: NetworkSpec, a) -> LinSystem:
    """Direct sum of the multicast and single-cell layers at fixed ``a``:
    each row adds the matching rows of the two constituents.  By the
    polymatroid sum property this is exactly their Minkowski sum."""
    a = Fraction(a)
    _require_two_cells(net)
    require_snr_ordered(net)
    _require_level(net, a)
    K, L, al = net.K, net.L, net.alpha
    varnames = gdof_vars(K, L)
    rows = []
    for i in (0, 1):
        j = 1 - i
        for l in range(L):
            coeffs = _cumulative_coeffs(K, L, [(l, i)])
            rhs = al[i][i][l] - max(al[i][j][l] - a, ZERO)
            rows.append((coeffs, rhs))
    for l0 in range(L):
        for l1 in range(L):
            coeffs = _cumulative_coeffs(K, L, [(l0, 0), (l1, 1)])
            c01, c10 = al[0][1][l0], al[1][0][l1]
            rhs = (
                al[0][0][l0]
                + al[1][1][l1]
                - max(c01, c10, a, c01 + c10 - a)
            )
            rows.append((coeffs, rhs))
    return LinSystem(varnames, tuple(rows), frozenset(varnames))


def two_cell_sls_achievable(net: NetworkSpec) -> LinSystem:
    """Rates achievable by the simplified 2-cell layered scheme.

    Assembles the layered-region rows with the level ``a`` kept symbolic
    (each max split into linear rows), bounds ``0 <= a <= max cross``,
    eliminates ``a`` exactly, and prunes redundant rows.  In the SLS
    regime the result equals :func:`sls_outer_region` exactly; the
    equality is part of the acceptance suite rather than assumed here.
    """
    _require_two_cells(net)
    require_snr_ordered(net)
    if not classify_regime(net).in_sls:
        raise PreconditionError("two_cell_sls_achievable requires the SLS regime")
    K, L, al = net.K, net.L, net.alpha
    dvars = gdof_vars(K, L)
    varnames = dvars + ("a",)
    one = Fraction(1)
    rows = []

    def drow(participants, a_coef, rhs):
        coeffs = _cumulative_coeffs(K, L, participants) + (Fraction(a_coef),)
        rows.append((coeffs, rhs))

    for i in (0, 1):
        j = 1 - i
        for l in range(L):
            drow([(l, i)], 0, al[i][i][l])  # no a
            drow([(l, i)], -1, al[i][i][l] - al[i][j][l])  # rhs grows with a
    for l0 in range(L):
        for l1 in range(L):
            d00, d11 = al[0][0][l0], al[1][1][l1]
            c01, c10 = al[0][1][l0], al[1][0][l1]
            pair = [(l0, 0), (l1, 1)]
            drow(pair, 0, d00 + d11 - c01)
            drow(pair, 0, d00 + d11 - c10)
            drow(pair, 1, d00 + d11)  # rhs shrinks with a
            drow(pair, -1, d00 + d11 - c01 - c10)
    zero = tuple(ZERO for _ in dvars)
    rows.append((zero + (-one,), ZERO))  # 0 <= a
    rows.append((zero + (one,), net.max_cross()))  # a <= max cross
    parametric = LinSystem(varnames, tuple(rows), frozenset(dvars))
    return remove_redundant(fm_eliminate(parametric, "a"))


# ---------------------------------------------------------------------------
# Homogeneous inter-cell interference
# ---------------------------------------------------------------------------


def homogeneous_level(net: NetworkSpec) -> Fraction | None:
    """The common cross strength, or None if cross links differ."""
    beta = None
    for i in range(net.K):
        for j in range(net.K):
            if i == j:
                continue
            for x in net.alpha[i][j]:
                if beta is None:
                    beta = x
                elif x != beta:
                    return None
    return beta if beta is not None else ZERO


@dataclass(frozen=True)
class HomogResult:
    outer: LinSystem
    achievable: LinSystem
    equal: bool


def homog_check(net: NetworkSpec) -> HomogResult:
    """Outer bound versus layered-scheme region under homogeneous
    inter-cell interference, compared exactly.

    The outer bound collapses to one row per (cell subset, user choice):
    the cumulative rates are bounded by ``(1 - |subset|) * beta`` plus the
    chosen direct strengths.  The achievable side is the polymatroid sum
    of the multicast layer at ``beta`` with the decoupled single-cell
    layer.
    """
    require_snr_ordered(net)
    beta = homogeneous_level(net)
    if beta is None:
        raise PreconditionError("homog_check requires equal cross strengths")
    if any(net.direct(i, 0) < beta for i in range(net.K)):
        raise PreconditionError(
            "homog_check requires every direct strength >= the cross level"
        )
    K, L = net.K, net.L
    varnames = gdof_vars(K, L)
    rows = []
    full = tuple(tuple(range(L)) for _ in range(K))
    for entries in cycle_layouts(full):
        # one representative per (cell set, user choice): keep cycles whose
        # cells are in ascending order so each combination appears once
        cells = [i for _, i in entries]
        if list(cells) != sorted(cells):
            continue
        coeffs = _cumulative_coeffs(K, L, entries)
        rhs = (1 - len(entries)) * beta + sum(net.direct(i, l) for l, i in entries)
        rows.append((coeffs, rhs))
    outer = LinSystem(varnames, tuple(rows), frozenset(varnames))

    from .polymatroid import f_homog, f_mul, polymatroid_sum, region_of

    ground = tuple((l, i) for i in range(K) for l in range(L))
    total = polymatroid_sum(f_mul(ground, beta), f_homog(net, beta))
    achievable = region_of(total)
    eq, _ = equals(reduce_rows(outer), reduce_rows(achievable))
    return HomogResult(outer, achievable, eq)
