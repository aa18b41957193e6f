"""Set functions on user subsets, polymatroid checks, and sums.

A :class:`SetFunction` maps every subset of a ground set of users to an
exact rational.  The regions of interest are of the form
``{x >= 0 : x(S) <= f(S) for all S}``; when ``f`` is normalized,
non-decreasing and submodular this polyhedron is a polymatroid, and the
Minkowski sum of two such regions is the region of the pointwise sum of
their set functions.  That fact is what turns Minkowski sums into plain
row-wise addition here, and :func:`check_polymatroid` makes the hypothesis
an executable check.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapabilityError, PreconditionError
from .network import NetworkSpec
from .polyhedra import ZERO, LinSystem
from .regions import gdof_var, homogeneous_level

User = tuple[int, int]

EXHAUSTIVE_LIMIT = 16  # 2^|U| evaluations are exhaustive up to here
REGION_LIMIT = 10  # explicit row emission limit for region_of


class SetFunction:
    """A rational-valued function on subsets of a fixed ground set.

    ``rule`` receives a frozenset of ground elements; values are memoized.
    """

    def __init__(self, ground, rule):
        self.ground = tuple(ground)
        if len(set(self.ground)) != len(self.ground):
            raise PreconditionError("ground set has repeated elements")
        self._rule = rule
        self._memo: dict[frozenset, Fraction] = {}

    def __call__(self, subset) -> Fraction:
        s = frozenset(subset)
        extra = s - set(self.ground)
        if extra:
            raise PreconditionError("subset not within ground set: %s" % sorted(extra))
        got = self._memo.get(s)
        if got is None:
            got = Fraction(self._rule(s))
            self._memo[s] = got
        return got

    def table(self):
        """Explicit (subset, value) listing, subsets by (size, sorted)."""
        out = []
        for r in range(len(self.ground) + 1):
            for combo in itertools.combinations(self.ground, r):
                out.append((combo, self(combo)))
        return out


def f_mul(ground, a) -> SetFunction:
    """Constant ``a`` on nonempty subsets: the multicast layer's function."""
    a = Fraction(a)
    if a < 0:
        raise PreconditionError("level a must be >= 0")
    return SetFunction(ground, lambda s: a if s else ZERO)


def _cell_maxima(ground, subset, K):
    """Per-cell maximal 1-based user rank in the subset (0 when untouched)."""
    tops = [0] * K
    for l, i in subset:
        if l + 1 > tops[i]:
            tops[i] = l + 1
    return tops


def f_ptin_prime(net: NetworkSpec, a) -> SetFunction:
    """Set function of the 2-cell monotone single-cell layer at level ``a``.

    Depends only on the per-cell maximal user in the subset: one-sided
    subsets pay ``max(cross, a)`` on their top user, two-sided subsets pay
    the worst of the four cross/level combinations.

    Defined for the full level interval [0, max cross], but the
    polymatroid structure holds only while ``a`` does not exceed any
    direct strength: beyond the weakest direct link the function dips
    negative on that cell's bottom users (the corresponding single-cell
    layer would sit below the noise floor) and monotonicity fails.
    """
    a = Fraction(a)
    if net.K != 2:
        raise PreconditionError("f_ptin_prime is defined for K=2 networks")
    if not 0 <= a <= net.max_cross():
        raise PreconditionError("level a=%s outside [0, %s]" % (a, net.max_cross()))
    al = net.alpha
    ground = tuple((l, i) for i in range(2) for l in range(net.L))

    def rule(subset):
        s1, s2 = _cell_maxima(ground, subset, 2)
        if s1 == 0 and s2 == 0:
            return ZERO
        if s2 == 0:
            return al[0][0][s1 - 1] - max(al[0][1][s1 - 1], a)
        if s1 == 0:
            return al[1][1][s2 - 1] - max(al[1][0][s2 - 1], a)
        c01, c10 = al[0][1][s1 - 1], al[1][0][s2 - 1]
        return (
            al[0][0][s1 - 1]
            + al[1][1][s2 - 1]
            - max(c01 + a, c10 + a, 2 * a, c01 + c10)
        )

    return SetFunction(ground, rule)


def ptin_prime_min_form(net: NetworkSpec, a):
    """The same function written as a minimum over per-cell penalty choices.

    Returns ``(fn, deltas)`` where ``deltas[i][m][s]`` is the cell-``i``
    penalty-``m`` term at top rank ``s`` (0 for the empty side).  Used to
    cross-check :func:`f_ptin_prime` and its monotonicity structure.
    """
    a = Fraction(a)
    if net.K != 2:
        raise PreconditionError("defined for K=2 networks")
    al = net.alpha
    deltas = []
    for i in (0, 1):
        j = 1 - i
        d1 = [ZERO] + [al[i][i][s] - al[i][j][s] for s in range(net.L)]
        d2 = [ZERO] + [al[i][i][s] - a for s in range(net.L)]
        deltas.append((tuple(d1), tuple(d2)))
    ground = tuple((l, i) for i in range(2) for l in range(net.L))

    def rule(subset):
        s1, s2 = _cell_maxima(ground, subset, 2)
        return min(
            deltas[0][m1][s1] + deltas[1][m2][s2] for m1 in (0, 1) for m2 in (0, 1)
        )

    return SetFunction(ground, rule), deltas


def f_homog(net: NetworkSpec, beta) -> SetFunction:
    """Set function of the decoupled single-cell layer when every cross
    link equals ``beta``: each touched cell pays its top direct strength
    minus ``beta``."""
    beta = Fraction(beta)
    actual = homogeneous_level(net)
    if actual is None or (net.K > 1 and actual != beta):
        raise PreconditionError("f_homog requires all cross strengths equal to beta")
    if any(net.direct(i, 0) < beta for i in range(net.K)):
        raise PreconditionError("beta must not exceed any direct strength")
    ground = tuple((l, i) for i in range(net.K) for l in range(net.L))

    def rule(subset):
        tops = _cell_maxima(ground, subset, net.K)
        return sum(
            (net.direct(i, s - 1) - beta for i, s in enumerate(tops) if s),
            ZERO,
        )

    return SetFunction(ground, rule)


@dataclass(frozen=True)
class PolymatroidReport:
    normalized: bool
    monotone: bool
    submodular: bool
    witness: tuple | None

    @property
    def ok(self) -> bool:
        return self.normalized and self.monotone and self.submodular


def check_polymatroid(f: SetFunction, samples: int = 2000, rng=None) -> PolymatroidReport:
    """Verify normalization, monotonicity and submodularity.

    Exhaustive over all subsets up to 2^16; beyond that a seeded random
    sample of ``samples`` marginal checks is used (pass ``rng``).
    Submodularity is checked in marginal (diminishing-returns) form:
    adding an element helps a smaller set at least as much as a larger one.
    On failure the witness is ``("monotone", S, e)`` or
    ``("submodular", S, e, g)``.
    """
    ground = f.ground
    n = len(ground)
    normalized = f(frozenset()) == 0
    if not normalized:
        return PolymatroidReport(False, True, True, ("normalized", f(frozenset())))

    def marginal_checks(subsets):
        # the pairwise inequality is symmetric in (e, g), so unordered
        # pairs suffice
        for s in subsets:
            fs = f(s)
            outside = [e for e in ground if e not in s]
            for xi, e in enumerate(outside):
                gain_e = f(s | {e}) - fs
                if gain_e < 0:
                    return ("monotone", tuple(sorted(s)), e)
                for g in outside[xi + 1 :]:
                    sg = s | {g}
                    if f(sg | {e}) - f(sg) > gain_e:
                        return ("submodular", tuple(sorted(s)), e, g)
        return None

    if n <= EXHAUSTIVE_LIMIT:
        subsets = (
            frozenset(c)
            for r in range(n + 1)
            for c in itertools.combinations(ground, r)
        )
        bad = marginal_checks(subsets)
    else:
        if rng is None:
            raise PreconditionError(
                "ground set above exhaustive limit: pass rng for sampled mode"
            )
        subsets = (
            frozenset(e for e in ground if rng.random() < 0.5) for _ in range(samples)
        )
        bad = marginal_checks(subsets)
    if bad is None:
        return PolymatroidReport(True, True, True, None)
    if bad[0] == "monotone":
        return PolymatroidReport(True, False, True, bad)
    return PolymatroidReport(True, True, False, bad)


def region_of(f: SetFunction) -> LinSystem:
    """The polyhedron ``{x >= 0 : x(S) <= f(S), S nonempty}``.

    Variables are named like the GDoF universe when ground elements are
    (user, cell) pairs; rows appear by (subset size, lexicographic).
    """
    ground = f.ground
    if len(ground) > REGION_LIMIT:
        raise CapabilityError(
            "explicit region emission limited to %d ground elements" % REGION_LIMIT
        )
    names = tuple(gdof_var(i, l) for l, i in ground)
    index = {u: k for k, u in enumerate(ground)}
    rows = []
    one = Fraction(1)
    for r in range(1, len(ground) + 1):
        for combo in itertools.combinations(ground, r):
            coeffs = [ZERO] * len(ground)
            for u in combo:
                coeffs[index[u]] = one
            rows.append((tuple(coeffs), f(combo)))
    return LinSystem(names, tuple(rows), frozenset(names))


def polymatroid_sum(f: SetFunction, g: SetFunction) -> SetFunction:
    """Pointwise sum of two set functions on the same ground set.

    When both summands are polymatroid functions, the region of the sum is
    exactly the Minkowski sum of their regions.
    """
    if tuple(f.ground) != tuple(g.ground):
        raise PreconditionError("ground sets differ")
    return SetFunction(f.ground, lambda s: f(s) + g(s))
