"""Random planar simple graphs and randomized reduction to normal form.

Graphs are grown from a single vertex by splitting vertices along contiguous
arcs and by adding empty loops at corners, which keeps them planar with every
leg on the outer face.  A reduction strategy is an RNG: each call to
:func:`reduce_to_normal_form` picks moves at random, inserting gauge changes,
flips, parallel fusions and identity loops along the way.  Confluence means
every strategy reaches the same phase.
"""

from __future__ import annotations

import random

from .cocycles import CocycleTable
from .graphs import (Edge, PolygonGraph, Vertex, edge_of, half, move_contract,
                     move_delete_identity, move_drop_vertex, move_flip_edge,
                     move_insert_identity, move_remove_loop, move_tensor_parallel, side_of)


def random_planar_graph(w: CocycleTable, rng: random.Random, max_vertices: int = 6,
                        max_legs: int = 4, steps: int = 10) -> PolygonGraph:
    g = w.group
    q = w.q
    n_legs = rng.randint(0, max_legs)
    edges, rot = {}, []
    objs = [rng.randrange(g.order) for _ in range(max(n_legs - 1, 0))]
    if n_legs:
        objs.append(g.inv[g.prod(*objs)])
    for e, x in enumerate(objs):
        if rng.random() < 0.5:
            edges[e] = Edge(x, 0, None)
            rot.append(half(e, 0))
        else:
            edges[e] = Edge(g.inv[x], None, 0)
            rot.append(half(e, 1))
    verts = {0: Vertex(tuple(rot), 0, rng.randrange(q))}
    for _ in range(steps):
        vid = rng.choice(sorted(verts))
        n = len(verts[vid].rot)
        if len(verts) < max_vertices and rng.random() < 0.6:
            _split(g, verts, edges, vid, rng, q)
        else:
            # empty loop at a corner, either orientation
            e = max(edges, default=-1) + 1
            edges[e] = Edge(rng.randrange(g.order), vid, vid)
            vx = verts[vid]
            r = list(vx.rot)
            pos = rng.randint(0, n)
            pair = [half(e, 0), half(e, 1)]
            if rng.random() < 0.5:
                pair.reverse()
            r[pos:pos] = pair
            base_h = vx.rot[vx.base] if vx.rot else r[0]
            verts[vid] = Vertex(tuple(r), r.index(base_h), vx.phase)
    # scramble basepoints (stored phases are arbitrary anyway)
    for vid, vx in verts.items():
        if vx.rot:
            verts[vid] = Vertex(vx.rot, rng.randrange(len(vx.rot)), rng.randrange(q))
    return PolygonGraph(w, verts, edges)


def _split(g, verts, edges, vid, rng, q):
    vx = verts[vid]
    r = list(vx.from_base())
    n = len(r)
    start = rng.randrange(n) if n else 0
    r = r[start:] + r[:start]
    k = rng.randint(0, n)
    arc, rest = r[:k], r[k:]
    objs = []
    for h in arc:
        lab = edges[edge_of(h)].label
        objs.append(lab if side_of(h) == 0 else g.inv[lab])
    p = g.prod(*objs)
    new_v = max(verts) + 1
    e = max(edges, default=-1) + 1
    for h in arc:
        old = edges[edge_of(h)]
        edges[edge_of(h)] = Edge(old.label, new_v if side_of(h) == 0 else old.tail,
                                 new_v if side_of(h) == 1 else old.head)
    if rng.random() < 0.5:
        edges[e] = Edge(p, vid, new_v)
        end_v, end_w = half(e, 0), half(e, 1)
    else:
        edges[e] = Edge(g.inv[p], new_v, vid)
        end_v, end_w = half(e, 1), half(e, 0)
    verts[vid] = Vertex(tuple([end_v] + rest), 0, rng.randrange(q))
    verts[new_v] = Vertex(tuple(arc + [end_w]), 0, rng.randrange(q))


def removable_loops(g: PolygonGraph) -> list:
    out = []
    for e, ed in g.edges.items():
        if not g.is_loop(e):
            continue
        rot = g.vertices[ed.tail].rot
        n = len(rot)
        it, ih = rot.index(half(e, 0)), rot.index(half(e, 1))
        if (it + 1) % n == ih:
            out.append((e, "th"))
        if (ih + 1) % n == it:
            out.append((e, "ht"))
    return out


def contractible_edges(g: PolygonGraph) -> list:
    return [e for e, ed in g.edges.items()
            if ed.tail is not None and ed.head is not None and ed.tail != ed.head]


def parallel_pairs(g: PolygonGraph) -> list:
    """Pairs ``(e1, e2)`` fusable by :func:`move_tensor_parallel` as they stand."""
    out = []
    es = contractible_edges(g)
    for e1 in es:
        u, v = g.edges[e1].tail, g.edges[e1].head
        ru, rv = g.vertices[u].rot, g.vertices[v].rot
        iu = ru.index(half(e1, 0))
        iv = rv.index(half(e1, 1))
        nxt = ru[(iu + 1) % len(ru)]
        e2 = edge_of(nxt)
        if e2 == e1 or side_of(nxt) != 0 or g.edges[e2].head != v:
            continue
        if rv[(iv - 1) % len(rv)] == half(e2, 1):
            out.append((e1, e2))
    return out


def reduce_to_normal_form(g: PolygonGraph, rng: random.Random, noise: float = 0.3,
                          max_steps: int = 10_000) -> PolygonGraph:
    """Reduce a connected planar graph to one vertex carrying only legs.

    The result is rebased so its smallest leg half-edge is read first, or is
    the empty graph when there are no legs.  ``noise`` is the probability of a
    gauge or shape move (rebase, flip, fusion, identity loop) at each step.
    """
    for _ in range(max_steps):
        loops = removable_loops(g)
        cands = contractible_edges(g)
        isolated = [v for v, vx in g.vertices.items() if not vx.rot]
        if not loops and not cands and not isolated:
            break
        if rng.random() < noise:
            g = _noise_move(g, rng)
            continue
        choices = [("loop", x) for x in loops] + [("contract", e) for e in cands]
        choices += [("drop", v) for v in isolated]
        kind, arg = rng.choice(choices)
        if kind == "loop":
            g = move_remove_loop(g, arg[0], arg[1])
        elif kind == "contract":
            g = move_contract(g, arg)
        else:
            g = move_drop_vertex(g, arg)
    else:
        raise RuntimeError("reduction did not terminate")
    if len(g.vertices) > 1:
        raise RuntimeError("graph is not connected")
    for v in g.vertices:
        legs = [h for h in g.vertices[v].rot]
        if legs:
            g = g.normalize_base(v, min(legs))
    return g


def _noise_move(g: PolygonGraph, rng: random.Random) -> PolygonGraph:
    r = rng.random()
    verts = [v for v, vx in g.vertices.items() if vx.rot]
    if r < 0.35 and verts:
        v = rng.choice(verts)
        return g.rebase(v, rng.randrange(len(g.vertices[v].rot)))
    if r < 0.6:
        es = contractible_edges(g)
        if es:
            return move_flip_edge(g, rng.choice(es))
        return g
    if r < 0.85:
        pairs = parallel_pairs(g)
        if pairs:
            return move_tensor_parallel(g, list(rng.choice(pairs)))
        return g
    if verts:
        v = rng.choice(verts)
        n = len(g.vertices[v].rot)
        i = rng.randint(0, n)
        g2, e = move_insert_identity(g, v, i, v, i)
        if rng.random() < 0.5:
            return move_delete_identity(g2, e)
        return g2
    return g


def normal_form_phase(g: PolygonGraph, seed, noise: float = 0.3) -> tuple:
    """``(signature, phase)`` of the normal form reached under strategy ``seed``."""
    nf = reduce_to_normal_form(g, random.Random(seed), noise)
    if not nf.vertices:
        return (), nf.phase()
    (v,) = nf.vertices
    return nf.signature(v), nf.phase()
