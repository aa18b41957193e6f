"""Interference cycles and their sum-rate bound constants.

A cycle is an ordered sequence of users from distinct cells; positions are
taken modulo the cycle length.  Each cycle yields one IBC bound constant
(:func:`delta`) and, for cooperative transmitters, one MISO-BC constant per
position (:func:`delta_plus`).  Enumeration is exhaustive: for K cells and
L users per cell there are ``sum_m C(K,m) (m-1)! L^m`` canonical cycles,
which is fine at desk scale (documented limit around K <= 6, L <= 3).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import PreconditionError
from .network import NetworkSpec

User = tuple[int, int]  # (l, i), 0-based


@dataclass(frozen=True)
class Cycle:
    """An ordered sequence of (user, cell) pairs from distinct cells.

    Instances may be in any rotation; :func:`enumerate_cycles` emits the
    canonical rotation (smallest cell index first).  Rotations of a cycle
    describe the same cycle under the modulo-length convention.
    """

    entries: tuple[User, ...]

    def __post_init__(self):
        object.__setattr__(
            self, "entries", tuple((int(l), int(i)) for l, i in self.entries)
        )
        if not self.entries:
            raise PreconditionError("a cycle has at least one user")
        cells = [i for _, i in self.entries]
        if len(set(cells)) != len(cells):
            raise PreconditionError("cycle cells must be distinct")

    def __len__(self) -> int:
        return len(self.entries)

    def is_canonical(self) -> bool:
        cells = [i for _, i in self.entries]
        return cells[0] == min(cells)

    def canonical(self) -> "Cycle":
        cells = [i for _, i in self.entries]
        k = cells.index(min(cells))
        return rotate(self, k)


def rotate(pi: Cycle, j: int) -> Cycle:
    """The shifted cycle whose m-th user is ``pi``'s (m + j)-th user."""
    m = len(pi)
    j %= m
    return Cycle(pi.entries[j:] + pi.entries[:j])


def cycle_to_obj(pi: Cycle) -> list:
    """Serialize as [l, i] pairs, 1-based."""
    return [[l + 1, i + 1] for l, i in pi.entries]


def cycle_from_obj(obj) -> Cycle:
    try:
        return Cycle(tuple((int(l) - 1, int(i) - 1) for l, i in obj))
    except (TypeError, ValueError) as exc:
        raise PreconditionError("malformed cycle object: %s" % exc) from exc


@lru_cache(maxsize=65536)
def cycle_layouts(user_lists: tuple[tuple[int, ...], ...]):
    """All canonical cycles over the given per-cell user index lists.

    ``user_lists[i]`` holds the selectable user indices of cell ``i``
    (cells with an empty list never participate).  Returns entry tuples
    ordered by ascending length, then lexicographically; the cache makes
    repeated region builds over the same active sets cheap.
    """
    K = len(user_lists)
    out = []
    for m in range(1, K + 1):
        bucket = []
        for cells in itertools.combinations(range(K), m):
            if any(not user_lists[c] for c in cells):
                continue
            anchor, rest = cells[0], cells[1:]
            for perm in itertools.permutations(rest):
                order = (anchor,) + perm
                for choice in itertools.product(*(user_lists[c] for c in order)):
                    bucket.append(tuple(zip(choice, order)))
        bucket.sort()
        out.extend(bucket)
    return tuple(out)


def cycle_count(K: int, L: int) -> int:
    """Closed-form number of canonical cycles."""
    import math

    return sum(
        math.comb(K, m) * math.factorial(m - 1) * L**m for m in range(1, K + 1)
    )


def enumerate_cycles(net: NetworkSpec) -> tuple[Cycle, ...]:
    """Every canonical cycle of the network, deterministically ordered."""
    lists = tuple(tuple(range(net.L)) for _ in range(net.K))
    return tuple(Cycle(entries) for entries in cycle_layouts(lists))


def delta(net: NetworkSpec, pi: Cycle) -> Fraction:
    """IBC bound constant of a cycle.

    A singleton contributes its direct strength; a longer cycle sums, per
    position, the direct strength minus the strength of the link from the
    same transmitter to the next user along the cycle.
    """
    entries = pi.entries
    m = len(entries)
    a = net.alpha
    if m == 1:
        l, i = entries[0]
        return a[i][i][l]
    total = Fraction(0)
    for t in range(m):
        l_cur, i_cur = entries[t]
        l_nxt, i_nxt = entries[(t + 1) % m]
        total += a[i_cur][i_cur][l_cur] - a[i_nxt][i_cur][l_nxt]
    return total


def delta_plus(net: NetworkSpec, pi: Cycle, m: int) -> Fraction:
    """m-th MISO-BC bound constant of a cycle (m is 1-based).

    Equal to :func:`delta` for singletons; otherwise it adds back the
    cross-link strength from transmitter m to the next user.
    """
    M = len(pi)
    if not 1 <= m <= M:
        raise PreconditionError("bound index m=%d out of range 1..%d" % (m, M))
    base = delta(net, pi)
    if M == 1:
        return base
    l_nxt, i_nxt = pi.entries[m % M]
    _, i_cur = pi.entries[m - 1]
    return base + net.alpha[i_nxt][i_cur][l_nxt]


def cycle_user_set(pi: Cycle) -> frozenset[User]:
    """Users covered by the cycle's sum-rate bound: each participant plus
    all same-cell users below it in SNR order."""
    out = set()
    for l, i in pi.entries:
        for s in range(l + 1):
            out.add((s, i))
    return frozenset(out)
