from fractions import Fraction as F

import pytest

from gdofnet.errors import InfeasiblePowerError, PreconditionError
from gdofnet.polyhedra import contains
from gdofnet.power import (
    PowerTuple,
    build_potential_graph,
    circuit_length,
    power_slack_table,
    recover_powers,
    tin_feasible,
    verify_power_allocation,
)
from gdofnet.regions import GdofTuple, ptin_a_region
from gdofnet.sampling import sample_level, sample_network, sample_rates


def rates(net, *vals):
    return GdofTuple(net.K, net.L, tuple(F(v) for v in vals))


def test_graph_shape(n1, n3):
    g1 = build_potential_graph(n1, rates(n1, 0, 0), 0)
    assert len(g1.vertices) == 3 and len(g1.edges) == 6
    g3 = build_potential_graph(n3, rates(n3, 0, 0, 0, 0), 0)
    assert len(g3.vertices) == 5 and len(g3.edges) == 12
    # all-zero rates at level 0 leave only raw strength differences
    assert all(w >= 0 for _, _, w in g3.edges if _ != "u")


def test_feasible_example(n1):
    ok, witness = tin_feasible(n1, rates(n1, "7/10", "7/10"), 0)
    assert ok and witness is None


def test_infeasible_example_with_witness(n1):
    d = rates(n1, "8/10", "7/10")
    ok, witness = tin_feasible(n1, d, 0)
    assert not ok
    graph = build_potential_graph(n1, d, 0)
    assert circuit_length(graph, witness) < 0
    # the two cross edges alone close a circuit of length -1/10
    assert circuit_length(graph, ("v_1_1", "v_2_1")) == F(-1, 10)


def test_zero_rates_always_feasible(n1, n3, rng):
    for net in (n1, n3):
        for a_num in range(0, 4):
            a = net.max_cross() * F(a_num, 3)
            ok, _ = tin_feasible(net, rates(net, *([0] * (net.K * net.L))), a)
            assert ok


def test_recover_powers_examples(n1):
    out = recover_powers(n1, rates(n1, "7/10", "7/10"), 0)
    assert out.r == ((F(0),), (F(0),))
    zero = recover_powers(n1, rates(n1, 0, 0), 0)
    assert zero.r == ((F(0),), (F(0),))
    skew = recover_powers(n1, rates(n1, 1, "2/5"), 0)
    assert skew.r == ((F(0),), (F(-3, 10),))
    assert verify_power_allocation(n1, rates(n1, 1, "2/5"), skew, 0)


def test_recover_powers_infeasible_carries_circuit(n1):
    with pytest.raises(InfeasiblePowerError) as info:
        recover_powers(n1, rates(n1, "8/10", "7/10"), 0)
    graph = build_potential_graph(n1, rates(n1, "8/10", "7/10"), 0)
    assert circuit_length(graph, info.value.circuit) < 0


def test_verify_power_allocation_examples(n1):
    d = rates(n1, "7/10", "7/10")
    assert verify_power_allocation(n1, d, PowerTuple(((0,), (0,)), 0), 0)
    assert not verify_power_allocation(
        n1, d, PowerTuple(((0,), (0,)), F(1, 10)), F(1, 10)
    )


def test_power_order_invariant(rng):
    for _ in range(40):
        net = sample_network(rng, 2, rng.randint(1, 3), "SLS")
        a = sample_level(rng, net)
        d = sample_rates(rng, net)
        ok, _ = tin_feasible(net, d, a)
        if not ok:
            continue
        out = recover_powers(net, d, a)
        for i in range(2):
            assert out.r[i][0] <= -a
            for l in range(net.L - 1):
                assert out.r[i][l + 1] <= out.r[i][l]


def test_feasibility_matches_region_membership(rng):
    trials = agreements = 0
    for _ in range(150):
        net = sample_network(rng, 2, rng.randint(1, 3), "SLS")
        a = sample_level(rng, net)
        d = sample_rates(rng, net)
        ok, _ = tin_feasible(net, d, a)
        member = contains(ptin_a_region(net, a), d.values)
        trials += 1
        agreements += ok == member
    assert agreements == trials


def test_feasibility_monotone_in_rates(rng):
    for _ in range(40):
        net = sample_network(rng, 2, rng.randint(1, 2), "SLS")
        a = sample_level(rng, net)
        d = sample_rates(rng, net)
        ok, _ = tin_feasible(net, d, a)
        if not ok:
            continue
        smaller = GdofTuple(
            net.K, net.L, tuple(v * F(rng.randint(0, 4), 4) for v in d.values)
        )
        ok2, _ = tin_feasible(net, smaller, a)
        assert ok2


def test_shape_errors(n1, n3):
    with pytest.raises(PreconditionError):
        tin_feasible(n1, rates(n3, 0, 0, 0, 0), 0)
    with pytest.raises(PreconditionError):
        tin_feasible(n1, rates(n1, 0, 0), F(1))  # level above max cross


def test_slack_table_nonnegative_for_valid_allocations(n1):
    d = rates(n1, "7/10", "7/10")
    out = recover_powers(n1, d, 0)
    table = power_slack_table(n1, d, out, 0)
    assert all(slack >= 0 for _, slack in table)
    names = [name for name, _ in table]
    assert "d_1_1:direct" in names and "r_1_1:level" in names
