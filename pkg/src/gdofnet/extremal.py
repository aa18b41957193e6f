"""Cooperation-over-TIN gain ratios and extremal network search.

The gain of full transmitter cooperation over the non-cooperative scheme
is measured as the ratio of the cooperative outer-bound sum rate to the
TIN sum rate.  Using the outer bound as numerator upper-bounds the true
cooperative gain and is tight on the extremal networks of each regime, so
ratios reported here are conservative from the bound-checking standpoint:
within the TIN regime they never exceed 3/2, within CTIN never 2 - 1/K.
No constant is claimed in the SLS regime, where the extremal gain grows
with the number of cells.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .network import (
    NetworkSpec,
    REGIME_CTIN,
    REGIME_SLS,
    REGIME_TIN,
    RegimeLabel,
    check_sir_order,
    classify_regime,
    network_to_obj,
    regime_margin,
    strongest_subnetwork,
)
from .regions import mbc_outer_sum_gdof, tin_sum_gdof
from .sampling import ring_network, sample_network


@dataclass(frozen=True)
class GainReport:
    net: NetworkSpec
    regime: RegimeLabel
    tin_sum: Fraction
    mbc_outer_sum: Fraction
    ratio: Fraction
    bound: Fraction | None

    def to_obj(self) -> dict:
        from .polyhedra import frac_str

        return {
            "net": network_to_obj(self.net),
            "regime": self.regime.to_obj(),
            "tin_sum": frac_str(self.tin_sum),
            "mbc_outer_sum": frac_str(self.mbc_outer_sum),
            "ratio": frac_str(self.ratio),
            "bound": frac_str(self.bound) if self.bound is not None else None,
        }


def regime_bound(label: RegimeLabel, K: int) -> Fraction | None:
    """Exact gain constant guaranteed for the network's smallest regime:
    3/2 in TIN, 2 - 1/K in CTIN, none elsewhere."""
    if label.strongest == REGIME_TIN:
        return Fraction(3, 2)
    if label.strongest == REGIME_CTIN:
        return 2 - Fraction(1, K)
    return None


def gain_ratio(net: NetworkSpec) -> GainReport:
    """Exact cooperative-over-TIN gain report for one network.

    Requires the SIR order (so the TIN sum rate is well defined) and at
    least one nonzero direct link.
    """
    ok, witness = check_sir_order(net)
    if not ok:
        raise PreconditionError("gain_ratio requires the SIR order; violated at %s" % (witness,))
    label = classify_regime(net)
    tin = tin_sum_gdof(net)
    if tin <= 0:
        raise PreconditionError("degenerate network: TIN sum rate is zero")
    outer = mbc_outer_sum_gdof(net)
    return GainReport(net, label, tin, outer, outer / tin, regime_bound(label, net.K))


def verify_gain_bound(net: NetworkSpec) -> bool:
    """Exact check of the regime's gain constant for one network.

    Defined for networks in the TIN or CTIN regime only (no constant is
    claimed for SLS); raises outside that domain.
    """
    report = gain_ratio(net)
    if not report.regime.in_ctin:
        raise PreconditionError(
            "no gain constant applies outside the CTIN regime (got %s)"
            % report.regime.strongest
        )
    bound = Fraction(3, 2) if report.regime.in_tin else 2 - Fraction(1, net.K)
    return report.ratio <= bound


def redundancy_check(net: NetworkSpec) -> bool:
    """Weaker users change nothing: the TIN sum rate equals that of the
    strongest-user subnetwork exactly, and the cooperative outer bound can
    only shrink when weaker users are kept.  Requires the SIR order."""
    ok, witness = check_sir_order(net)
    if not ok:
        raise PreconditionError("redundancy_check requires the SIR order; violated at %s" % (witness,))
    top = strongest_subnetwork(net)
    if tin_sum_gdof(net) != tin_sum_gdof(top):
        return False
    return mbc_outer_sum_gdof(net) <= mbc_outer_sum_gdof(top)


@dataclass(frozen=True)
class SearchSample:
    ratio: Fraction
    margin: Fraction
    source: str  # "seed" or "random"


@dataclass(frozen=True)
class SearchResult:
    best: GainReport
    samples: tuple[SearchSample, ...]


def _canonical_net_key(net: NetworkSpec) -> str:
    return json.dumps(network_to_obj(net), sort_keys=True)


def search_extremal(
    regime: str, K: int, L: int, budget: int, seed
) -> SearchResult:
    """Best-found gain ratio over random networks inside a regime.

    The pool is seeded with the directed-ring pattern (exactly on the TIN
    boundary, hence in every regime) followed by ``budget`` random
    regime-clamped networks.  Deterministic given ``seed``; ties broken by
    the lexicographically smallest network serialization.  Reports the
    maximizer; no optimality claim is made.
    """
    if regime not in (REGIME_TIN, REGIME_CTIN, REGIME_SLS):
        raise PreconditionError("search regime must be one of TIN, CTIN, SLS")
    if budget < 1:
        raise PreconditionError("budget must be >= 1")
    if K < 2:
        raise PreconditionError("search needs at least two cells")
    rng = random.Random("%s-%s-%s-%s-%s" % (seed, regime, K, L, budget))
    pool = [("seed", ring_network(K, L))]
    for _ in range(budget):
        pool.append(("random", sample_network(rng, K, L, regime)))
    best = None
    best_key = None
    samples = []
    for source, net in pool:
        report = gain_ratio(net)
        samples.append(
            SearchSample(report.ratio, regime_margin(net, regime), source)
        )
        key = _canonical_net_key(net)
        if (
            best is None
            or report.ratio > best.ratio
            or (report.ratio == best.ratio and key < best_key)
        ):
            best, best_key = report, key
    return SearchResult(best, tuple(samples))
