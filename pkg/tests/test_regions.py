from fractions import Fraction as F

import pytest

from gdofnet.errors import CapabilityError, PreconditionError
from gdofnet.fixtures import symmetric_pair
from gdofnet.network import make_network, with_trivial_users
from gdofnet.polyhedra import equals, lp_max, remove_redundant, vertices
from gdofnet.power import tin_feasible
from gdofnet.regions import (
    GdofTuple,
    gdof_vars,
    homog_check,
    layered_region,
    mbc_outer_sum_gdof,
    mul_region,
    ptin_a_region,
    ptin_prime_region,
    ptin_region,
    sls_outer_region,
    tin_sum_gdof,
    two_cell_sls_achievable,
)
from gdofnet.sampling import sample_homogeneous, sample_level, sample_network
from gdofnet.verify import _expected_family_rows


def test_ptin_region_examples(n1):
    single = make_network(1, 1, [[["1"]]])
    sys_ = ptin_region(single)
    assert sys_.vars == ("d_1_1",)
    assert sys_.rows == (((F(1),), F(1)),)
    sys1 = ptin_region(n1)
    assert sys1.rows == (
        ((F(1), F(0)), F(1)),
        ((F(0), F(1)), F(1)),
        ((F(1), F(1)), F(7, 5)),
    )
    zero_cross = make_network(2, 2, [
        [["3/10", "9/10"], ["0", "0"]],
        [["0", "0"], ["3/10", "9/10"]],
    ])
    zc = ptin_region(zero_cross)
    # singleton row of cell i at user l bounds the cumulative rate by the
    # direct strength
    assert (( F(1), F(0), F(0), F(0)), F(3, 10)) in zc.rows
    assert ((F(1), F(1), F(0), F(0)), F(9, 10)) in zc.rows


def test_sls_outer_examples(n1):
    k1 = make_network(1, 2, [[["1/2", "1"]]])
    eq, _ = equals(ptin_region(k1), sls_outer_region(k1))
    assert eq
    reduced = remove_redundant(sls_outer_region(n1))
    assert reduced.rows == (
        ((F(1), F(0)), F(1)),
        ((F(0), F(1)), F(1)),
        ((F(1), F(1)), F(17, 10)),
    )


def test_sls_outer_matches_pair_families(rng):
    # for 2-cell networks the emitted rows collapse exactly onto the
    # single and pair families once duplicate supports keep the tightest
    # constant
    for _ in range(20):
        net = sample_network(rng, 2, rng.randint(1, 3), "SLS")
        produced = sls_outer_region(net)
        tightest = {}
        for coeffs, rhs in produced.rows:
            key = coeffs
            if key not in tightest or rhs < tightest[key]:
                tightest[key] = rhs
        family = {coeffs: rhs for coeffs, rhs in _expected_family_rows(net).rows}
        assert tightest == family


def test_ptin_subset_of_sls_outer(rng):
    # every cooperative row holds over the non-cooperative region: the
    # per-cycle constant only grows when the closing link is added back
    for _ in range(15):
        net = sample_network(rng, rng.randint(1, 3), rng.randint(1, 2), "WEAK")
        inner = ptin_region(net)
        for coeffs, rhs in sls_outer_region(net).rows:
            res = lp_max(inner, coeffs)
            assert res.status == "optimal" and res.value <= rhs


def test_tin_sum_examples(n1, n2):
    assert tin_sum_gdof(n1) == F(7, 5)
    assert tin_sum_gdof(n2) == F(1)
    zero_cross = make_network(2, 2, [
        [["3/10", "9/10"], ["0", "0"]],
        [["0", "0"], ["3/10", "9/10"]],
    ])
    assert tin_sum_gdof(zero_cross) == F(9, 5)


def test_tin_sum_unions_over_active_subsets():
    # outside CTIN, silencing one cell beats the full-network polyhedron
    net = symmetric_pair(F(11, 20))
    assert tin_sum_gdof(net) == F(1)


def test_tin_sum_subset_limit():
    big = make_network(4, 3, [
        [["11/20"] * 3 if i != j else ["1"] * 3 for j in range(4)]
        for i in range(4)
    ])
    with pytest.raises(CapabilityError):
        tin_sum_gdof(big)


def test_mbc_outer_examples(n1, n2):
    assert mbc_outer_sum_gdof(n1) == F(17, 10)
    assert mbc_outer_sum_gdof(n2) == F(3, 2)
    k1 = make_network(1, 2, [[["1/2", "1"]]])
    assert mbc_outer_sum_gdof(k1) == F(1)


def test_mul_region(n1):
    assert mul_region(n1, 0).rows == (((F(1), F(1)), F(0)),)
    assert mul_region(n1, F(3, 10)).rows == (((F(1), F(1)), F(3, 10)),)
    with pytest.raises(PreconditionError):
        mul_region(n1, F(1, 2))
    with pytest.raises(PreconditionError):
        mul_region(n1, F(-1, 10))


def test_ptin_prime_examples(n1):
    sys_ = ptin_prime_region(n1, F(1, 5))
    assert sys_.rows[0] == ((F(1), F(0)), F(7, 10))
    assert sys_.rows[1] == ((F(0), F(1)), F(7, 10))
    assert sys_.rows[2] == ((F(1), F(1)), F(7, 5))
    at_zero = ptin_prime_region(n1, 0)
    assert at_zero.rows[2][1] == 2 - (F(3, 10) + F(3, 10))
    at_max = ptin_prime_region(n1, F(3, 10))
    assert at_max.rows[0][1] == 1 - F(3, 10)


def test_ptin_a_examples(n1):
    sys_ = ptin_a_region(n1, F(1, 5))
    assert sys_.rows[0][1] == F(4, 5)
    assert sys_.rows[2][1] == F(7, 5)
    eq, _ = equals(ptin_a_region(n1, 0), ptin_region(n1))
    assert eq


def test_ptin_prime_inside_ptin_a(rng):
    for _ in range(25):
        net = sample_network(rng, 2, rng.randint(1, 3), "SLS")
        a = sample_level(rng, net)
        prime = ptin_prime_region(net, a)
        for coeffs_o, rhs_o in ptin_a_region(net, a).rows:
            res = lp_max(prime, coeffs_o)
            assert res.status == "optimal" and res.value <= rhs_o


def test_layered_region_values(n1):
    sys_ = layered_region(n1, F(1, 5))
    assert sys_.rows[0][1] == F(9, 10)
    assert sys_.rows[2][1] == F(8, 5)


def test_two_cell_sls_examples(n1, n3):
    for net in (n1, n3):
        eq, witness = equals(two_cell_sls_achievable(net), sls_outer_region(net))
        assert eq, witness
    zero_cross = make_network(2, 1, [[["1"], ["0"]], [["0"], ["1"]]])
    box = two_cell_sls_achievable(zero_cross)
    eq, _ = equals(box, sls_outer_region(zero_cross))
    assert eq


def test_two_cell_sls_requires_regime():
    net = symmetric_pair(F(6, 5))  # cross above direct: not even weak
    with pytest.raises(PreconditionError):
        two_cell_sls_achievable(net)


def test_homog_examples(homog3):
    res = homog_check(homog3)
    assert res.equal
    full = tuple(F(1) for _ in range(3))
    assert [rhs for c, rhs in res.outer.rows if c == full] == [F(11, 5)]
    box_net = make_network(2, 1, [[["1"], ["0"]], [["0"], ["1"]]])
    assert homog_check(box_net).equal
    with pytest.raises(PreconditionError):
        homog_check(make_network(2, 1, [[["1"], ["1/2"]], [["1/4"], ["1"]]]))


def test_homog_consistent_with_two_cell(rng):
    for _ in range(5):
        net, _beta = sample_homogeneous(rng, 2, rng.randint(1, 2))
        res = homog_check(net)
        assert res.equal
        eq, _ = equals(
            remove_redundant(res.outer), two_cell_sls_achievable(net)
        )
        assert eq


def test_ctin_vertices_power_feasible(rng):
    for _ in range(10):
        net = sample_network(rng, 2, rng.randint(1, 2), "CTIN")
        region = ptin_region(net)
        for v in vertices(region):
            ok, witness = tin_feasible(net, GdofTuple(net.K, net.L, v), 0)
            assert ok, (net, v, witness)


def test_padding_preserves_tin_sum(n1):
    assert tin_sum_gdof(with_trivial_users(n1, 2)) == F(7, 5)
    assert tin_sum_gdof(with_trivial_users(n1, 3)) == F(7, 5)


def test_gdof_tuple_validation():
    with pytest.raises(PreconditionError):
        GdofTuple(2, 1, (F(1),))
    with pytest.raises(PreconditionError):
        GdofTuple(1, 1, (F(-1),))
    assert gdof_vars(2, 2) == ("d_1_1", "d_1_2", "d_2_1", "d_2_2")
