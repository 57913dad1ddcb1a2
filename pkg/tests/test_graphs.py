import random

import pytest
from hypothesis import given, settings, strategies as st

from dwmcg.cocycles import cyclic_cocycle, trivial_cocycle
from dwmcg.graphs import (Edge, GraphError, PolygonGraph, Vertex, half, move_contract, move_flip_edge,
                          move_insert_coev, move_insert_identity, move_delete_identity, move_remove_loop,
                          move_slide, move_split, move_tensor_parallel, one_vertex_graph)
from dwmcg.groups import make_cyclic
from dwmcg.phases import pivot_phase, z_power_phase
from dwmcg.planar import normal_form_phase, random_planar_graph, reduce_to_normal_form


@pytest.fixture
def w4():
    return cyclic_cocycle(4, 1)


def two_vertex(w, x=1):
    """u --e--> v with one leg on each side: the simplest contractible edge."""
    g = w.group
    edges = {0: Edge(x, 0, 1), 1: Edge(g.inv[x], 0, None), 2: Edge(x, 1, None)}
    verts = {0: Vertex((half(1, 0), half(0, 0)), 0, 0), 1: Vertex((half(0, 1), half(2, 0)), 0, 0)}
    return PolygonGraph(w, verts, edges)


def test_validate_catches_bad_rotation(w4):
    with pytest.raises(GraphError):
        PolygonGraph(w4, {0: Vertex((half(0, 0),), 0, 0)}, {0: Edge(1, 0, 0)})


def test_contract_adds_pivot_phase(w4):
    g = two_vertex(w4, 1)
    h = move_contract(g, 0)
    assert len(h.vertices) == 1
    assert h.phase() == pivot_phase(w4, 1)


def test_rebase_full_turn_is_free(w4):
    g = one_vertex_graph(w4, ((1, 1), (1, 1), (3, 1), (3, 1)))
    assert g.rebase(0, 1).rebase(0, 2).rebase(0, 0).phase() == 0
    assert g.rebase(0, 1).phase() == z_power_phase(w4, g.signature(0), 3)


def test_flip_twice_restores_phase(w4):
    g = two_vertex(w4, 1)
    h = move_flip_edge(move_flip_edge(g, 0), 0)
    a, b = reduce_to_normal_form(g, random.Random(0), 0), reduce_to_normal_form(h, random.Random(0), 0)
    assert a.phase() == b.phase()
    assert h.edges[0].label == 1


def test_split_then_contract_is_identity(w4):
    g = one_vertex_graph(w4, ((1, 1), (2, 1), (3, 1), (2, 1)), phase=1)
    for start in range(4):
        for length in range(1, 4):
            h, nv, c = move_split(g, 0, start, length)
            back = move_contract(h, c)
            (v,) = back.vertices
            back = back.normalize_base(v, g.vertices[0].rot[0])
            assert back.vertices[v].rot == g.vertices[0].rot
            assert back.phase() == g.phase()


def test_identity_edge_roundtrip(w4):
    g = one_vertex_graph(w4, ((1, 1), (3, 1)))
    h, e = move_insert_identity(g, 0, 1, 0, 1)
    assert h.edges[e].label == 0
    assert move_delete_identity(h, e).phase() == g.phase()


def test_coev_insertion_has_no_phase(w4):
    g = two_vertex(w4, 3)
    h, _, _ = move_insert_coev(g, 0, "head")
    assert h.phase() == g.phase()
    assert len(h.vertices) == 3


def test_remove_loop_orders_agree():
    w = cyclic_cocycle(3, 1)
    g = w.group
    edges = {0: Edge(1, 0, 0), 1: Edge(2, 0, None), 2: Edge(1, 0, None)}
    verts = {0: Vertex((half(1, 0), half(0, 0), half(0, 1), half(2, 0)), 0, 0)}
    graph = PolygonGraph(w, verts, edges)
    a = move_remove_loop(graph, 0, "th")
    assert set(a.vertices[0].rot) == {half(1, 0), half(2, 0)}
    with pytest.raises(Exception):
        move_remove_loop(graph, 0, "ht")
    assert g.prod(*a.objects(0)) == 0


def test_tensor_parallel_merges_labels(w4):
    g = w4.group
    edges = {0: Edge(1, 0, 1), 1: Edge(2, 0, 1), 2: Edge(1, 0, None), 3: Edge(3, 1, None)}
    verts = {0: Vertex((half(2, 0), half(0, 0), half(1, 0)), 0, 0),
             1: Vertex((half(1, 1), half(0, 1), half(3, 0)), 0, 0)}
    graph = PolygonGraph(w4, verts, edges)
    h = move_tensor_parallel(graph, [0, 1])
    assert h.edges[0].label == g.prod(1, 2)
    assert 1 not in h.edges


def test_slide_moves_end_to_far_side():
    w = trivial_cocycle(make_cyclic(5))
    # torus vertex a_t b_t a_h b_h
    edges = {0: Edge(1, 0, 0), 1: Edge(2, 0, 0)}
    g = PolygonGraph(w, {0: Vertex((half(0, 0), half(1, 0), half(0, 1), half(1, 1)), 0, 0)}, edges)
    h = move_slide(g, half(0, 1), "ccw")
    assert len(h.vertices) == 1
    assert h.vertices[0].rot != g.vertices[0].rot
    objs = h.objects(0)
    assert w.group.prod(*objs) == 0
    assert h.phase() == 0


@pytest.mark.parametrize("seed", range(12))
def test_confluence_small(seed, test_cocycles):
    rng = random.Random(seed)
    w = test_cocycles[seed % len(test_cocycles)]
    g = random_planar_graph(w, rng, max_vertices=5)
    results = {normal_form_phase(g, s) for s in range(3)}
    assert len(results) == 1


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 10 ** 6))
def test_untwisted_graphs_have_zero_phase(seed):
    w = trivial_cocycle(make_cyclic(4))
    g = random_planar_graph(w, random.Random(seed), max_vertices=4)
    g = PolygonGraph(w, {v: Vertex(x.rot, x.base, 0) for v, x in g.vertices.items()}, g.edges)
    assert normal_form_phase(g, seed)[1] == 0
