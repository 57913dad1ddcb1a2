import pytest

from dwmcg.groups import builtin_group, make_cyclic
from dwmcg.surfaces import (BasisState, SurfaceError, SurfaceSpec, arrangements, brute_force_spanning,
                            conjugation_map, count_conjugation_orbits, enumerate_spanning,
                            relation_value, spanning_count_table, state_signature)
from dwmcg.monomial import multiply


def _class_count(g):
    seen, n = set(), 0
    for x in range(g.order):
        if x in seen:
            continue
        n += 1
        seen |= {g.prod(y, x, g.inv[y]) for y in range(g.order)}
    return n


@pytest.mark.parametrize("name", ["Z4", "Z2xZ2", "S3", "D4", "Q8"])
@pytest.mark.parametrize("surface", [SurfaceSpec(1), SurfaceSpec(0, ()), SurfaceSpec(1, (0,)),
                                     SurfaceSpec(0, (1, 2, 3))])
def test_enumeration_matches_brute_force(name, surface):
    g = builtin_group(name)
    b = tuple(x % g.order for x in surface.boundary)
    surface = SurfaceSpec(surface.genus, b)
    fast = enumerate_spanning(surface, g)
    slow = brute_force_spanning(surface, g)
    assert sorted(fast.states, key=BasisState.labels) == sorted(slow, key=BasisState.labels)


@pytest.mark.parametrize("name", ["S3", "D4", "Q8"])
def test_torus_count_is_order_times_classes(name):
    g = builtin_group(name)
    assert len(enumerate_spanning(SurfaceSpec(1), g)) == g.order * _class_count(g)


def test_genus_two_s3_brute_force():
    g = builtin_group("S3")
    s = enumerate_spanning(SurfaceSpec(2), g)
    assert len(s) == len(brute_force_spanning(SurfaceSpec(2), g))
    assert all(relation_value(g, st.loops) == 0 for st in s)


def test_abelian_counts():
    g = make_cyclic(3)
    assert len(enumerate_spanning(SurfaceSpec(2), g)) == 81
    assert len(enumerate_spanning(SurfaceSpec(1, (1,)), g)) == 0
    assert len(enumerate_spanning(SurfaceSpec(0, (1, 2)), g)) == 1


def test_count_table_matches_enumeration():
    g = builtin_group("S3")
    table = spanning_count_table(g, 1)
    for k in range(g.order):
        assert table[k] == len(enumerate_spanning(SurfaceSpec(1, (k,)), g))


def test_s3_torus_orbits():
    g = builtin_group("S3")
    rep = count_conjugation_orbits(enumerate_spanning(SurfaceSpec(1), g))
    assert (rep.size, rep.orbit_count) == (18, 8)
    assert rep.size_over_group == 3


def test_conjugation_is_action():
    g = builtin_group("S3")
    s = enumerate_spanning(SurfaceSpec(1), g)
    for x in range(g.order):
        for y in range(g.order):
            assert multiply(conjugation_map(s, x), conjugation_map(s, y)) == conjugation_map(s, g.mul[x][y])
    with pytest.raises(SurfaceError):
        conjugation_map(enumerate_spanning(SurfaceSpec(0, (0,)), g), 1)


def test_signature_and_arrangements():
    st = BasisState((1, 2), (3,))
    assert state_signature(st) == ((1, 1), (2, 1), (1, -1), (2, -1), (3, 1))
    assert arrangements((1, 1, 2)) == [(1, 1, 2), (1, 2, 1), (2, 1, 1)]
    with pytest.raises(SurfaceError):
        SurfaceSpec(-1)
