import json
from fractions import Fraction as F

import pytest

from gdofnet.errors import CapabilityError, PreconditionError
from gdofnet.polyhedra import (
    LinSystem,
    contains,
    equals,
    fm_eliminate,
    linsystem_from_obj,
    linsystem_to_obj,
    lp_max,
    make_linsystem,
    minkowski_sum_membership,
    remove_redundant,
    vertices,
)


def ptin_n1():
    return make_linsystem(
        ["d1", "d2"],
        [((1, 0), 1), ((0, 1), 1), ((1, 1), F(7, 5))],
        ["d1", "d2"],
    )


def unit_box():
    return make_linsystem(["x", "y"], [((1, 0), 1), ((0, 1), 1)], ["x", "y"])


def test_lp_trivial_cases():
    s = make_linsystem(["d"], [((1,), 1)], ["d"])
    res = lp_max(s, (1,))
    assert res.status == "optimal" and res.value == 1 and res.point == (F(1),)
    free = make_linsystem(["d"], [], ["d"])
    assert lp_max(free, (1,)).status == "unbounded"
    infeasible = make_linsystem(["d"], [((1,), -1)], ["d"])
    assert lp_max(infeasible, (1,)).status == "infeasible"


def test_lp_matches_vertex_oracle_on_fixture():
    sys_ = ptin_n1()
    best = max(sum(v) for v in vertices(sys_))
    res = lp_max(sys_, (1, 1))
    assert res.value == F(7, 5) == best
    assert contains(sys_, res.point)


def test_lp_matches_vertex_oracle_random(rng):
    for _ in range(40):
        n = rng.randint(2, 3)
        names = ["x%d" % k for k in range(n)]
        rows = [
            (tuple(F(rng.randint(0, 4)) for _ in range(n)), F(rng.randint(1, 9), 2))
            for _ in range(rng.randint(1, 5))
        ]
        rows.append((tuple(F(1) for _ in range(n)), F(rng.randint(2, 8))))  # bounded
        sys_ = make_linsystem(names, rows, names)
        obj = tuple(F(rng.randint(0, 3)) for _ in range(n))
        res = lp_max(sys_, obj)
        verts = vertices(sys_)
        assert res.status == "optimal"
        assert res.value == max(sum(c * x for c, x in zip(obj, v)) for v in verts)


def test_fm_examples():
    s = make_linsystem(["x", "y"], [((1, 1), 1), ((-1, 0), 0)], [])
    out = fm_eliminate(s, "x")
    assert out.vars == ("y",)
    assert out.rows == (((F(1),), F(1)),)
    absent = make_linsystem(["x", "y"], [((0, 1), 2)], ["x", "y"])
    out2 = fm_eliminate(absent, "x")
    assert out2.rows == (((F(1),), F(2)),)
    with pytest.raises(PreconditionError):
        fm_eliminate(s, "zz")


def test_fm_projection_round_trip(rng):
    # every feasible point projects into the output; every output vertex
    # lifts back to a feasible input point (checked by LP on the lift)
    for _ in range(25):
        n = 3
        names = ["x", "y", "z"]
        rows = [
            (
                tuple(F(rng.randint(-2, 3)) for _ in range(n)),
                F(rng.randint(0, 8), 2),
            )
            for _ in range(rng.randint(2, 6))
        ]
        rows.append((tuple(F(1) for _ in range(n)), F(6)))
        sys_ = make_linsystem(names, rows, names)
        if lp_max(sys_, (0, 0, 0)).status != "optimal":
            continue  # infeasible instance, projection trivially empty too
        proj = fm_eliminate(sys_, "z")
        for v in vertices(sys_):
            assert contains(proj, v[:2])
        for w in vertices(proj):
            lifted = LinSystem(
                sys_.vars,
                sys_.rows
                + (
                    ((F(1), F(0), F(0)), w[0]),
                    ((F(-1), F(0), F(0)), -w[0]),
                    ((F(0), F(1), F(0)), w[1]),
                    ((F(0), F(-1), F(0)), -w[1]),
                ),
                sys_.nonneg,
            )
            assert lp_max(lifted, (0, 0, 0)).status == "optimal"


def test_remove_redundant_examples():
    s = make_linsystem(["d"], [((1,), 1), ((1,), 2)], ["d"])
    assert remove_redundant(s).rows == (((F(1),), F(1)),)
    dup = make_linsystem(
        ["d1", "d2"],
        [((1, 0), 1), ((0, 1), 1), ((1, 1), F(17, 10)), ((1, 1), F(17, 10))],
        ["d1", "d2"],
    )
    assert len(remove_redundant(dup).rows) == 3
    tight = ptin_n1()
    assert remove_redundant(tight).rows == tight.rows


def test_remove_redundant_preserves_region(rng):
    for _ in range(20):
        n = rng.randint(2, 3)
        names = ["x%d" % k for k in range(n)]
        rows = [
            (tuple(F(rng.randint(0, 3)) for _ in range(n)), F(rng.randint(1, 9), 3))
            for _ in range(rng.randint(3, 8))
        ]
        rows.append((tuple(F(1) for _ in range(n)), F(4)))
        sys_ = make_linsystem(names, rows, names)
        reduced = remove_redundant(sys_)
        assert len(reduced.rows) <= len(sys_.rows)
        eq, _ = equals(reduced, sys_)
        assert eq


def test_vertices_examples():
    assert len(vertices(unit_box())) == 4
    pts = set(vertices(ptin_n1()))
    assert pts == {
        (F(0), F(0)),
        (F(1), F(0)),
        (F(0), F(1)),
        (F(1), F(2, 5)),
        (F(2, 5), F(1)),
    }
    point = make_linsystem(["d"], [((1,), 0)], ["d"])
    assert vertices(point) == ((F(0),),)


def test_vertices_dimension_limit(monkeypatch):
    names = ["x%d" % k for k in range(9)]
    sys_ = make_linsystem(names, [(tuple([1] * 9), 1)], names)
    with pytest.raises(CapabilityError):
        vertices(sys_)
    monkeypatch.setenv("GDOF_MAX_DIM", "9")
    assert len(vertices(sys_)) > 0


def test_equals_examples():
    sys_ = ptin_n1()
    assert equals(sys_, sys_) == (True, None)
    outer = make_linsystem(
        ["d1", "d2"],
        [((1, 0), 1), ((0, 1), 1), ((1, 1), F(17, 10))],
        ["d1", "d2"],
    )
    eq, witness = equals(sys_, outer)
    assert not eq
    assert sum(witness) == F(17, 10)  # a point of the outer set beyond 7/5
    assert contains(outer, witness) and not contains(sys_, witness)
    redundant = make_linsystem(
        ["x", "y"],
        [((1, 0), 1), ((0, 1), 1), ((1, 1), 5), ((2, 0), 2)],
        ["x", "y"],
    )
    assert equals(redundant, unit_box()) == (True, None)


def test_equals_requires_same_universe():
    with pytest.raises(PreconditionError):
        equals(unit_box(), ptin_n1())


def test_minkowski_examples():
    box = unit_box()
    assert minkowski_sum_membership(box, box, (0, 0))
    assert minkowski_sum_membership(box, box, (2, 2))
    assert not minkowski_sum_membership(box, box, (F(21, 10), 0))


def test_contains_checks_nonnegativity():
    assert not contains(unit_box(), (-F(1, 2), F(1, 2)))


def test_deterministic_outputs():
    sys_ = ptin_n1()
    assert remove_redundant(sys_) == remove_redundant(sys_)
    assert vertices(sys_) == vertices(sys_)
    a = lp_max(sys_, (1, 1))
    b = lp_max(sys_, (1, 1))
    assert a == b


def test_json_round_trip_byte_stable():
    sys_ = ptin_n1()
    obj = linsystem_to_obj(sys_)
    blob = json.dumps(obj, indent=2, sort_keys=True)
    parsed = linsystem_from_obj(json.loads(blob))
    assert parsed == sys_
    assert json.dumps(linsystem_to_obj(parsed), indent=2, sort_keys=True) == blob
    with pytest.raises(PreconditionError):
        linsystem_from_obj({"vars": ["x"]})
