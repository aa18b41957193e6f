"""Small reference networks used across tests, docs and the verifier."""

from __future__ import annotations

from fractions import Fraction

from .network import NetworkSpec, make_network


def symmetric_pair(cross, direct=Fraction(1)) -> NetworkSpec:
    """Two cells, one user each, unit-style directs and symmetric crosses."""
    c, d = Fraction(cross), Fraction(direct)
    return make_network(2, 1, [[[d], [c]], [[c], [d]]])


def two_user_pair() -> NetworkSpec:
    """Symmetric 2x4 network: directs (3/5, 1), crosses (1/10, 9/20)."""
    return make_network(
        2,
        2,
        [
            [["3/5", "1"], ["1/10", "9/20"]],
            [["1/10", "9/20"], ["3/5", "1"]],
        ],
    )


def homogeneous_example() -> NetworkSpec:
    """Three single-user cells, unit directs, all crosses 2/5."""
    b = "2/5"
    return make_network(
        3,
        1,
        [
            [["1"], [b], [b]],
            [[b], ["1"], [b]],
            [[b], [b], ["1"]],
        ],
    )
