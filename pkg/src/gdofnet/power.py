"""Power-level synthesis for the 2-cell layered scheme.

Whether a rate point is supportable by per-user power control under a
common attenuation level ``a`` reduces to a graph condition: build a
digraph with one vertex per user plus a ground vertex, give each edge a
length derived from the rates and channel strengths, and ask that every
directed circuit have nonnegative length.  Feasibility is decided by
exact Bellman-Ford negative-circuit detection, and when feasible the
shortest-path distances from the ground vertex are themselves a valid
assignment of power exponents (the pointwise-largest one, i.e. least
attenuation), which makes synthesis deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import InfeasiblePowerError, PreconditionError
from .network import NetworkSpec, require_snr_ordered
from .regions import GdofTuple

GROUND = "u"


def _vname(i: int, l: int) -> str:
    return "v_%d_%d" % (i + 1, l + 1)


@dataclass(frozen=True)
class PowerTuple:
    """Per-user power exponents ``r[cell][user]`` (<= 0) and the shared
    multicast level ``a`` (>= 0).  Validity of a given tuple for given
    rates is decided by :func:`verify_power_allocation`, not here."""

    r: tuple[tuple[Fraction, ...], ...]
    a: Fraction

    def __post_init__(self):
        object.__setattr__(
            self, "r", tuple(tuple(Fraction(x) for x in row) for row in self.r)
        )
        object.__setattr__(self, "a", Fraction(self.a))
        if len({len(row) for row in self.r}) > 1:
            raise PreconditionError("ragged power tuple")

    def to_obj(self) -> dict:
        from .polyhedra import frac_str

        return {
            "r": [[frac_str(x) for x in row] for row in self.r],
            "a": frac_str(self.a),
        }


@dataclass(frozen=True)
class PotentialGraph:
    """Digraph whose nonnegative-circuit condition characterizes power
    feasibility.  Edges are (tail, head, length) with exact lengths."""

    vertices: tuple[str, ...]
    edges: tuple[tuple[str, str, Fraction], ...]


def _check_two_cell_inputs(net: NetworkSpec, d: GdofTuple, a: Fraction):
    if net.K != 2:
        raise PreconditionError("power synthesis is defined for K=2 networks")
    require_snr_ordered(net)
    if (d.K, d.L) != (net.K, net.L):
        raise PreconditionError("rate tuple shape does not match the network")
    if not 0 <= a <= net.max_cross():
        raise PreconditionError("level a=%s outside [0, %s]" % (a, net.max_cross()))


def build_potential_graph(net: NetworkSpec, d: GdofTuple, a) -> PotentialGraph:
    """Vertices: ground plus one per user; four edge classes.

    Within a cell, consecutive users are chained with length ``-d``; each
    user reaches the other cell's first user paying its SIR gap minus its
    rate; each user reaches ground paying its direct strength minus its
    rate; ground reaches each cell's first user with length ``-a``.
    """
    a = Fraction(a)
    _check_two_cell_inputs(net, d, a)
    L, al = net.L, net.alpha
    verts = [GROUND] + [_vname(i, l) for i in range(2) for l in range(L)]
    edges = []
    for i in range(2):
        j = 1 - i
        for l in range(L - 1):
            edges.append((_vname(i, l), _vname(i, l + 1), -d.get(i, l)))
        for l in range(L):
            edges.append(
                (_vname(i, l), _vname(j, 0), al[i][i][l] - al[i][j][l] - d.get(i, l))
            )
        for l in range(L):
            edges.append((_vname(i, l), GROUND, al[i][i][l] - d.get(i, l)))
        edges.append((GROUND, _vname(i, 0), -a))
    return PotentialGraph(tuple(verts), tuple(edges))


def _bellman_ford(graph: PotentialGraph, source: str):
    """Exact shortest-path distances from ``source``.

    Returns ``(dist, None)`` or ``(None, circuit)`` where ``circuit`` is a
    closed vertex sequence of negative total length.
    """
    verts = graph.vertices
    dist = {v: None for v in verts}
    pred: dict[str, str] = {}
    dist[source] = Fraction(0)
    for _ in range(len(verts) - 1):
        changed = False
        for tail, head, w in graph.edges:
            dt = dist[tail]
            if dt is not None and (dist[head] is None or dt + w < dist[head]):
                dist[head] = dt + w
                pred[head] = tail
                changed = True
        if not changed:
            break
    for tail, head, w in graph.edges:
        dt = dist[tail]
        if dt is not None and (dist[head] is None or dt + w < dist[head]):
            pred[head] = tail
            node = tail
            for _ in range(len(verts)):
                node = pred[node]
            cycle = [node]
            cur = pred[node]
            while cur != node:
                cycle.append(cur)
                cur = pred[cur]
            cycle.reverse()
            return None, tuple(cycle)
    return dist, None


def tin_feasible(net: NetworkSpec, d: GdofTuple, a):
    """Whether the rates are supportable at level ``a``.

    Returns ``(True, None)`` or ``(False, circuit)`` with a witness
    circuit of negative length.  Exactly equivalent to membership of ``d``
    in :func:`gdofnet.regions.ptin_a_region` for SLS-regime networks.
    """
    a = Fraction(a)
    graph = build_potential_graph(net, d, a)
    dist, circuit = _bellman_ford(graph, GROUND)
    if circuit is not None:
        return False, circuit
    return True, None


def circuit_length(graph: PotentialGraph, circuit) -> Fraction:
    """Total length of a closed vertex sequence (last wraps to first)."""
    lengths = {(t, h): w for t, h, w in graph.edges}
    total = Fraction(0)
    for k, tail in enumerate(circuit):
        head = circuit[(k + 1) % len(circuit)]
        if (tail, head) not in lengths:
            raise PreconditionError("no edge %s -> %s" % (tail, head))
        total += lengths[(tail, head)]
    return total


def recover_powers(net: NetworkSpec, d: GdofTuple, a) -> PowerTuple:
    """Power exponents achieving the rates, from shortest-path distances.

    Raises :class:`InfeasiblePowerError` (carrying the witness circuit)
    when the rates are not supportable.  The returned exponents always
    pass :func:`verify_power_allocation`.
    """
    a = Fraction(a)
    graph = build_potential_graph(net, d, a)
    dist, circuit = _bellman_ford(graph, GROUND)
    if circuit is not None:
        raise InfeasiblePowerError(
            "rate point is not power-feasible at level %s" % a, circuit
        )
    r = tuple(
        tuple(dist[_vname(i, l)] for l in range(net.L)) for i in range(2)
    )
    out = PowerTuple(r, a)
    if not verify_power_allocation(net, d, out, a):
        raise PreconditionError("internal error: recovered powers failed verification")
    return out


def power_slack_table(net: NetworkSpec, d: GdofTuple, r: PowerTuple, a):
    """Per-constraint slack listing (rhs minus lhs; negative means violated).

    Covers the rate bounds of every user, the per-cell power order, and
    the attenuation-level cap on each cell's first user.
    """
    a = Fraction(a)
    _check_two_cell_inputs(net, d, a)
    L, al = net.L, net.alpha
    out = []
    for i in range(2):
        j = 1 - i
        for l in range(L):
            name = "d_%d_%d" % (i + 1, l + 1)
            if l < L - 1:
                out.append(
                    ("%s:chain" % name, r.r[i][l] - r.r[i][l + 1] - d.get(i, l))
                )
            out.append(
                (
                    "%s:cross" % name,
                    al[i][i][l] - al[i][j][l] + r.r[i][l] - r.r[j][0] - d.get(i, l),
                )
            )
            out.append(("%s:direct" % name, al[i][i][l] + r.r[i][l] - d.get(i, l)))
        for l in range(L - 1):
            out.append(("r_%d_%d:order" % (i + 1, l + 1), r.r[i][l] - r.r[i][l + 1]))
        out.append(("r_%d_1:level" % (i + 1), -r.r[i][0] - a))
    return tuple(out)


def verify_power_allocation(net: NetworkSpec, d: GdofTuple, r: PowerTuple, a) -> bool:
    """Direct substitution check of the full constraint family.

    Checks the power order (within each cell descending, first user at or
    below ``-a``), and for each user the three rate bounds: against the
    next user's power, against the other cell's interference-free gap, and
    against its own direct strength.  The ``L+1``-st power is minus
    infinity by convention, so that row is simply omitted.
    """
    a = Fraction(a)
    _check_two_cell_inputs(net, d, a)
    if len(r.r) != 2 or any(len(row) != net.L for row in r.r):
        raise PreconditionError("power tuple shape does not match the network")
    if r.a != a:
        return False
    L, al = net.L, net.alpha
    for i in range(2):
        j = 1 - i
        if a > -r.r[i][0]:
            return False
        for l in range(L - 1):
            if r.r[i][l + 1] > r.r[i][l]:
                return False
        for l in range(L):
            if l < L - 1 and d.get(i, l) > r.r[i][l] - r.r[i][l + 1]:
                return False
            if d.get(i, l) > al[i][i][l] - al[i][j][l] + r.r[i][l] - r.r[j][0]:
                return False
            if d.get(i, l) > al[i][i][l] + r.r[i][l]:
                return False
    return True
