"""Simple colored ribbon graphs and the local moves that evaluate them.

A :class:`PolygonGraph` is a rotation system: each vertex lists its incident
half-edges counterclockwise together with a basepoint, and each edge records
its label and the vertices at its tail and head.  A free end (``None``) is a
leg running to the boundary of the ambient disk or surface.

Half-edge ``2*e`` is the tail of edge ``e`` and ``2*e + 1`` its head.  Read at
its vertex, a tail contributes the object ``delta_label`` and a head the dual
``delta_label^-1``.

Every vertex stores a phase exponent relative to the canonical simple
morphism of its signature read from the basepoint.  Moves return new graphs;
inputs are never mutated.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cocycles import CocycleTable
from .phases import (PhaseError, PreconditionError, coev_phase, pivot_phase,
                     z_power_phase)
from .words import WordMachine, left_comb


class GraphError(PhaseError):
    pass


class UnsupportedMoveError(GraphError):
    pass


@dataclass(frozen=True)
class Edge:
    label: int
    tail: int | None
    head: int | None

    def end(self, side: int):
        return self.tail if side == 0 else self.head


@dataclass(frozen=True)
class Vertex:
    rot: tuple
    base: int = 0
    phase: int = 0

    def from_base(self) -> tuple:
        return self.rot[self.base:] + self.rot[:self.base]


def half(e: int, side: int) -> int:
    return 2 * e + side


def edge_of(h: int) -> int:
    return h >> 1


def side_of(h: int) -> int:
    return h & 1


def other(h: int) -> int:
    return h ^ 1


class PolygonGraph:
    """Immutable simple colored graph with per-vertex phases.

    ``scalar`` collects phases of vertices that have been evaluated away
    (isolated vertices with empty signature).
    """

    __slots__ = ("w", "vertices", "edges", "scalar")

    def __init__(self, w: CocycleTable, vertices: dict, edges: dict, scalar: int = 0,
                 check: bool = True):
        self.w = w
        self.vertices = dict(vertices)
        self.edges = dict(edges)
        self.scalar = scalar % w.q
        if check:
            self.validate()

    # inspection

    @property
    def group(self):
        return self.w.group

    def phase(self) -> int:
        """Total exponent: the graph equals ``zeta**phase`` times its canonical coloring."""
        return (self.scalar + sum(v.phase for v in self.vertices.values())) % self.w.q

    def obj(self, h: int) -> int:
        lab = self.edges[edge_of(h)].label
        return lab if side_of(h) == 0 else self.group.inv[lab]

    def signature(self, v: int) -> tuple:
        return tuple((self.edges[edge_of(h)].label, 1 - 2 * side_of(h))
                     for h in self.vertices[v].from_base())

    def objects(self, v: int) -> tuple:
        return tuple(self.obj(h) for h in self.vertices[v].from_base())

    def owner(self, h: int):
        return self.edges[edge_of(h)].end(side_of(h))

    def is_loop(self, e: int) -> bool:
        ed = self.edges[e]
        return ed.tail is not None and ed.tail == ed.head

    def legs(self) -> list:
        """Half-edges attached to a vertex whose partner end is free."""
        out = []
        for e, ed in self.edges.items():
            if ed.tail is not None and ed.head is None:
                out.append(half(e, 0))
            elif ed.head is not None and ed.tail is None:
                out.append(half(e, 1))
        return sorted(out)

    def validate(self) -> None:
        seen = {}
        for vid, v in self.vertices.items():
            if v.rot and not 0 <= v.base < len(v.rot):
                raise GraphError(f"vertex {vid}: basepoint {v.base} out of range")
            for h in v.rot:
                if h in seen:
                    raise GraphError(f"half-edge {h} appears twice")
                seen[h] = vid
                if edge_of(h) not in self.edges or self.owner(h) != vid:
                    raise GraphError(f"half-edge {h} listed at {vid} but owned elsewhere")
            if self.group.prod(*self.objects(vid)) != 0:
                raise GraphError(f"vertex {vid} has non-trivial boundary product")
        for e, ed in self.edges.items():
            for s in (0, 1):
                if ed.end(s) is not None and seen.get(half(e, s)) != ed.end(s):
                    raise GraphError(f"edge {e} end {s} missing from vertex {ed.end(s)}")

    def __repr__(self):
        return (f"PolygonGraph({len(self.vertices)} vertices, {len(self.edges)} edges, "
                f"phase={self.phase()})")

    # helpers

    def _replace(self, vertices=None, edges=None, scalar=None, check=False) -> "PolygonGraph":
        return PolygonGraph(self.w, self.vertices if vertices is None else vertices,
                            self.edges if edges is None else edges,
                            self.scalar if scalar is None else scalar, check=check)

    def _new_edge_id(self, edges=None) -> int:
        edges = self.edges if edges is None else edges
        return max(edges, default=-1) + 1

    def _new_vertex_id(self) -> int:
        return max(self.vertices, default=-1) + 1

    def position(self, v: int, h: int) -> int:
        try:
            return self.vertices[v].rot.index(h)
        except ValueError:
            raise GraphError(f"half-edge {h} is not at vertex {v}") from None

    # gauge

    def rebase(self, v: int, new_base: int) -> "PolygonGraph":
        """Move the basepoint of ``v``; costs the matching power of ``z``."""
        vx = self.vertices[v]
        n = len(vx.rot)
        if n == 0:
            return self
        new_base %= n
        k = (vx.base - new_base) % n
        e = z_power_phase(self.w, self.signature(v), k)
        verts = dict(self.vertices)
        verts[v] = Vertex(vx.rot, new_base, (vx.phase + e) % self.w.q)
        return self._replace(vertices=verts)

    def rebase_first(self, v: int, h: int) -> "PolygonGraph":
        """Rebase so half-edge ``h`` is read first."""
        return self.rebase(v, self.position(v, h))

    def rebase_last(self, v: int, h: int) -> "PolygonGraph":
        return self.rebase(v, self.position(v, h) + 1)

    def normalize_base(self, v: int, h: int) -> "PolygonGraph":
        """Rebase, then rotate the stored list so that the basepoint is index 0."""
        g = self.rebase_first(v, h)
        vx = g.vertices[v]
        verts = dict(g.vertices)
        verts[v] = Vertex(vx.from_base(), 0, vx.phase)
        return g._replace(vertices=verts)

    def _flatten(self, v: int) -> "PolygonGraph":
        vx = self.vertices[v]
        verts = dict(self.vertices)
        verts[v] = Vertex(vx.from_base(), 0, vx.phase)
        return self._replace(vertices=verts)


# moves

def move_contract(g: PolygonGraph, e: int) -> PolygonGraph:
    """Contract edge ``e`` between two distinct vertices into the tail vertex."""
    ed = g.edges[e]
    u, v = ed.tail, ed.head
    if u is None or v is None:
        raise UnsupportedMoveError(f"edge {e} is a leg")
    if u == v:
        raise UnsupportedMoveError(f"edge {e} is a loop; split it with move_insert_coev first")
    t, h = half(e, 0), half(e, 1)
    g = g.rebase_last(u, t)._flatten(u)
    g = g.rebase_first(v, h)._flatten(v)
    vu, vv = g.vertices[u], g.vertices[v]
    rot = vu.rot[:-1] + vv.rot[1:]
    phase = vu.phase + vv.phase + pivot_phase(g.w, ed.label)
    verts = dict(g.vertices)
    del verts[v]
    verts[u] = Vertex(rot, 0, phase % g.w.q)
    edges = dict(g.edges)
    del edges[e]
    for h2 in vv.rot[1:]:
        e2, s2 = edge_of(h2), side_of(h2)
        old = edges[e2]
        edges[e2] = Edge(old.label, u if s2 == 0 else old.tail, u if s2 == 1 else old.head)
    return g._replace(vertices=verts, edges=edges)


def _loop_pair_phase(w: CocycleTable, U: tuple, a: int, b: int, tail_first: bool) -> int:
    m = WordMachine(w)
    src = left_comb(U + (a, b))
    dst = (left_comb(U), (a, b))
    total = m.reassociate(src, dst)
    if tail_first:
        # X (x) X* is closed off through the pivotal structure
        total += pivot_phase(w, a)
    _, e = m.ev(dst, (1,))
    return (total + e) % w.q


def move_remove_loop(g: PolygonGraph, e: int, order: str | None = None) -> PolygonGraph:
    """Evaluate a loop whose two ends are adjacent and bound an empty face.

    The empty face is the sector between the two ends: ``order='th'`` when the
    head directly follows the tail counterclockwise, ``'ht'`` otherwise.  With
    ``order=None`` the unique adjacent order is used (``'th'`` when both are).
    """
    if not g.is_loop(e):
        raise UnsupportedMoveError(f"edge {e} is not a loop")
    v = g.edges[e].tail
    rot = g.vertices[v].rot
    n = len(rot)
    t, h = half(e, 0), half(e, 1)
    it, ih = rot.index(t), rot.index(h)
    th = (it + 1) % n == ih
    ht = (ih + 1) % n == it
    if order is None:
        order = "th" if th else "ht" if ht else None
    if order == "th" and not th or order == "ht" and not ht or order is None:
        raise PreconditionError(f"loop {e} ends are not adjacent in the requested order")
    last = h if order == "th" else t
    g = g.rebase_last(v, last)._flatten(v)
    objs = g.objects(v)
    ph = _loop_pair_phase(g.w, objs[:-2], objs[-2], objs[-1], order == "th")
    vx = g.vertices[v]
    verts = dict(g.vertices)
    verts[v] = Vertex(vx.rot[:-2], 0, (vx.phase + ph) % g.w.q)
    edges = dict(g.edges)
    del edges[e]
    return g._replace(vertices=verts, edges=edges)


def move_drop_vertex(g: PolygonGraph, v: int) -> PolygonGraph:
    """Evaluate an isolated vertex (empty signature) to its scalar."""
    vx = g.vertices[v]
    if vx.rot:
        raise PreconditionError(f"vertex {v} is not isolated")
    verts = dict(g.vertices)
    del verts[v]
    return g._replace(vertices=verts, scalar=g.scalar + vx.phase)


@lru_cache(maxsize=65536)
def dual_tensor_phase(w: CocycleTable, xs: tuple) -> int:
    """Exponent of ``delta_{x_k}^* (x) ... (x) delta_{x_1}^* ~ (x_1 (x) ... (x) x_k)^*``.

    Both sides are left combs.  The isomorphism is the mate of the nested
    evaluations, so it is pinned by ``ev_X o (f (x) id_X) = nested ev``.
    """
    g = w.group
    # unit factors only contribute unitors
    xs = tuple(x for x in xs if x != 0)
    k = len(xs)
    if k <= 1:
        return 0
    m = WordMachine(w)
    duals = tuple(g.inv[x] for x in reversed(xs))
    src = (left_comb(duals), left_comb(xs))
    nested = (g.inv[xs[0]], xs[0])
    for x in xs[1:]:
        nested = ((g.inv[x], nested), x)
    rhs = m.reassociate(src, nested)
    t = nested
    # peel the innermost pair repeatedly
    path = ()
    for _ in range(k - 1):
        path = path + (0, 1)
    t, e = m.ev(t, path)
    rhs += e
    for _ in range(k - 1):
        path = path[:-2]
        t = m.strip_units(t)
        t, e = m.ev(t, path)
        rhs += e
    s = g.prod(*xs)
    lhs_ev = w(g.inv[s], s, g.inv[s])
    return (rhs - lhs_ev) % w.q


def _block_at_end(g: PolygonGraph, v: int, block: list) -> PolygonGraph:
    """Rebase ``v`` so ``block`` (consecutive ccw) is read last; check adjacency."""
    g = g.rebase_last(v, block[-1])._flatten(v)
    rot = g.vertices[v].rot
    if tuple(rot[len(rot) - len(block):]) != tuple(block):
        raise PreconditionError("edges are not adjacent in rotation order")
    return g


def move_tensor_parallel(g: PolygonGraph, edges: list) -> PolygonGraph:
    """Fuse parallel edges ``e_1..e_k`` (all oriented ``u -> v``) into one.

    Tails must read ``e_1..e_k`` counterclockwise at ``u`` and heads
    ``e_k..e_1`` at ``v``.  The fused edge keeps the id of ``e_1`` and is
    labelled by the product.  See :func:`move_insert_identity` for ``k = 0``.
    """
    edges = list(edges)
    if not edges:
        raise PreconditionError("use move_insert_identity for k = 0")
    if len(edges) == 1:
        return g
    eds = [g.edges[e] for e in edges]
    u, v = eds[0].tail, eds[0].head
    if u is None or v is None:
        raise UnsupportedMoveError("cannot fuse legs")
    if any(ed.tail != u or ed.head != v for ed in eds):
        raise PreconditionError("edges must share tail and head vertices and orientation")
    w = g.w
    labels = tuple(ed.label for ed in eds)
    tails = [half(e, 0) for e in edges]
    heads = [half(e, 1) for e in reversed(edges)]
    m = WordMachine(w)

    g = _block_at_end(g, u, tails)
    U = g.objects(u)[:-len(tails)]
    ph_u = m.reassociate(left_comb(U + labels), (left_comb(U), left_comb(labels)))
    vx = g.vertices[u]
    verts = dict(g.vertices)
    verts[u] = Vertex(vx.rot[:-len(tails)] + (half(edges[0], 0),), 0, (vx.phase + ph_u) % w.q)
    g = g._replace(vertices=verts)

    g = _block_at_end(g, v, heads)
    W = g.objects(v)[:-len(heads)]
    duals = tuple(w.group.inv[x] for x in reversed(labels))
    ph_v = m.reassociate(left_comb(W + duals), (left_comb(W), left_comb(duals)))
    ph_v += dual_tensor_phase(w, labels)
    vx = g.vertices[v]
    verts = dict(g.vertices)
    verts[v] = Vertex(vx.rot[:-len(heads)] + (half(edges[0], 1),), 0, (vx.phase + ph_v) % w.q)
    new_edges = dict(g.edges)
    for e in edges[1:]:
        del new_edges[e]
    new_edges[edges[0]] = Edge(w.group.prod(*labels), u, v)
    return g._replace(vertices=verts, edges=new_edges)


def move_insert_identity(g: PolygonGraph, u: int, i: int, v: int, j: int):
    """Insert an identity-labelled edge ``u -> v`` (the ``k = 0`` case).

    The tail goes before position ``i`` of ``u``'s stored rotation and the head
    before position ``j`` of ``v``'s.  For ``u == v`` both positions refer to
    the original list.  Unitors are free, so no phase changes.
    Returns ``(graph, new_edge_id)``.
    """
    e = g._new_edge_id()
    t, h = half(e, 0), half(e, 1)
    verts = dict(g.vertices)
    if u == v:
        rot = list(g.vertices[u].rot)
        base_h = rot[g.vertices[u].base] if rot else None
        ins = sorted([(i, t), (j, h)], key=lambda p: p[0], reverse=True)
        for pos, x in ins:
            rot.insert(pos, x)
        verts[u] = _reinsert(g.vertices[u], rot, base_h)
    else:
        for x, pos, hh in ((u, i, t), (v, j, h)):
            rot = list(g.vertices[x].rot)
            base_h = rot[g.vertices[x].base] if rot else None
            rot.insert(pos, hh)
            verts[x] = _reinsert(g.vertices[x], rot, base_h)
    edges = dict(g.edges)
    edges[e] = Edge(0, u, v)
    return g._replace(vertices=verts, edges=edges), e


def _reinsert(vx: Vertex, rot: list, base_h) -> Vertex:
    base = rot.index(base_h) if base_h is not None else 0
    return Vertex(tuple(rot), base, vx.phase)


def move_delete_identity(g: PolygonGraph, e: int) -> PolygonGraph:
    """Inverse of :func:`move_insert_identity` for an identity-labelled edge."""
    ed = g.edges[e]
    if ed.label != 0:
        raise PreconditionError(f"edge {e} is not identity-labelled")
    verts = dict(g.vertices)
    for s in (0, 1):
        x = ed.end(s)
        if x is None:
            continue
        vx = verts[x]
        rot = list(vx.rot)
        h = half(e, s)
        pos = rot.index(h)
        base_h = rot[vx.base]
        rot.remove(h)
        if base_h == h:
            base = pos % len(rot) if rot else 0
        else:
            base = rot.index(base_h)
        verts[x] = Vertex(tuple(rot), base, vx.phase)
    edges = dict(g.edges)
    del edges[e]
    return g._replace(vertices=verts, edges=edges)


def move_insert_coev(g: PolygonGraph, e: int, side: str = "head"):
    """Subdivide edge ``e`` with a bivalent coevaluation vertex.

    ``e: u -> v`` labelled ``x`` becomes ``w -> u`` labelled ``x^-1`` (new
    edge) and ``w -> v`` labelled ``x`` (``side='head'``, keeps the id ``e``),
    or ``u -> w`` labelled ``x`` (keeps ``e``) and ``v -> w`` labelled
    ``x^-1`` (``side='tail'``).  The new vertex carries the canonical
    morphism (``coev`` is the identity of the unit).
    Returns ``(graph, new_vertex, new_edge)``.
    """
    ed = g.edges[e]
    x = ed.label
    inv = g.group.inv[x]
    wv = g._new_vertex_id()
    f = g._new_edge_id()
    edges = dict(g.edges)
    verts = dict(g.vertices)
    if side == "head":
        # u's tail end of e becomes the head of f
        edges[f] = Edge(inv, wv, ed.tail)
        edges[e] = Edge(x, wv, ed.head)
        _swap_half(verts, ed.tail, half(e, 0), half(f, 1))
        # w reads (f tail: x^-1, e tail: x)
        verts[wv] = Vertex((half(f, 0), half(e, 0)), 0, coev_phase(x))
    elif side == "tail":
        edges[e] = Edge(x, ed.tail, wv)
        edges[f] = Edge(inv, ed.head, wv)
        _swap_half(verts, ed.head, half(e, 1), half(f, 0))
        # w reads (e head: x^-1, f head: x)
        verts[wv] = Vertex((half(e, 1), half(f, 1)), 0, coev_phase(x))
    else:
        raise ValueError("side must be 'head' or 'tail'")
    return g._replace(vertices=verts, edges=edges), wv, f


def _swap_half(verts: dict, v, old: int, new: int) -> None:
    if v is None:
        return
    vx = verts[v]
    rot = tuple(new if h == old else h for h in vx.rot)
    verts[v] = Vertex(rot, vx.base, vx.phase)


def move_flip_edge(g: PolygonGraph, e: int) -> PolygonGraph:
    """Reverse ``e`` and invert its label: insert a coev vertex, contract it away."""
    ed = g.edges[e]
    if ed.tail is None:
        raise UnsupportedMoveError("flip a leg at its attached end only")
    if ed.head is None:
        # a leg: subdivide next to the free end and merge the new vertex into u
        g2, wv, f = move_insert_coev(g, e, "tail")
        return _rename_edge(move_contract(g2, e), f, e)
    g2, wv, f = move_insert_coev(g, e, "head")
    # w -> u (f, label x^-1) and w -> v (e); contracting e leaves f as the flipped
    # edge, and for a loop u = v this is exactly the split-then-merge maneuver
    g3 = _rename_vertex(move_contract(g2, e), wv, ed.head)
    return _rename_edge(g3, f, e)


def move_split(g: PolygonGraph, v: int, start: int, length: int):
    """Inverse of contraction: pull an arc of ``v`` out onto a new vertex.

    The arc is ``length`` consecutive half-edges of ``v``'s stored rotation
    beginning at ``start`` (cyclically).  A new edge ``c: v -> v'`` labelled by
    the arc's product replaces the arc at ``v``; ``v'`` reads the arc then the
    head of ``c``.  Phases are chosen so that contracting ``c`` returns the
    original graph exactly.  Returns ``(graph, new_vertex, new_edge)``.
    """
    vx = g.vertices[v]
    n = len(vx.rot)
    if not 0 <= length <= n:
        raise PreconditionError(f"arc length {length} out of range for degree {n}")
    r = vx.rot[start % n:] + vx.rot[:start % n] if n else ()
    arc, rest = r[:length], r[length:]
    grp = g.group
    lab = grp.prod(*(g.obj(h) for h in arc))
    nv = g._new_vertex_id()
    c = g._new_edge_id()
    edges = dict(g.edges)
    for h in arc:
        old = edges[edge_of(h)]
        edges[edge_of(h)] = Edge(old.label, nv if side_of(h) == 0 else old.tail,
                                 nv if side_of(h) == 1 else old.head)
    edges[c] = Edge(lab, v, nv)
    verts = dict(g.vertices)
    verts[v] = Vertex((half(c, 0),) + rest, 0, 0)
    verts[nv] = Vertex(arc + (half(c, 1),), 0, 0)
    trial = g._replace(vertices=verts, edges=edges)
    back = move_contract(trial, c)
    if vx.rot:
        back = back.normalize_base(v, vx.rot[vx.base])
    delta = back.vertices[v].phase
    verts[v] = Vertex(verts[v].rot, 0, (vx.phase - delta) % g.w.q)
    return g._replace(vertices=verts, edges=edges), nv, c


def move_slide(g: PolygonGraph, hs: int, direction: str = "ccw") -> PolygonGraph:
    """Slide half-edge ``hs`` along the edge next to it to that edge's far end.

    ``direction='ccw'`` slides over the half-edge following ``hs`` in its
    vertex's rotation, ``'cw'`` over the one preceding it.  The edge ``B``
    slid over is replaced by an edge with the same id labelled by the
    product of the pair, and ``hs`` lands beside ``B``'s far end on the same
    side.  Implemented as :func:`move_split` of the pair followed by
    :func:`move_contract` of ``B``; repeated ccw slides walk ``hs`` around a
    face.
    """
    v = g.owner(hs)
    rot = g.vertices[v].rot
    n = len(rot)
    i = rot.index(hs)
    if direction == "ccw":
        hb, start = rot[(i + 1) % n], i
    elif direction == "cw":
        hb, start = rot[(i - 1) % n], i - 1
    else:
        raise ValueError("direction must be 'ccw' or 'cw'")
    b = edge_of(hb)
    far = g.owner(other(hb))
    if b == edge_of(hs) or far is None:
        raise PreconditionError("slide needs a neighbouring edge with an attached far end")
    g2, nv, c = move_split(g, v, start, 2)
    g3 = move_contract(g2, b)
    survivor = nv if nv in g3.vertices else far
    if survivor != far:
        g3 = _rename_vertex(g3, survivor, far)
    return _rename_edge(g3, c, b)


def _rename_vertex(g: PolygonGraph, old: int, new: int) -> PolygonGraph:
    if old == new:
        return g
    if new in g.vertices:
        raise GraphError(f"vertex id {new} in use")
    verts = {(new if k == old else k): vx for k, vx in g.vertices.items()}
    edges = {k: Edge(ed.label, new if ed.tail == old else ed.tail,
                     new if ed.head == old else ed.head) for k, ed in g.edges.items()}
    return g._replace(vertices=verts, edges=edges)


def _rename_edge(g: PolygonGraph, old: int, new: int) -> PolygonGraph:
    if old == new:
        return g
    if new in g.edges:
        raise GraphError(f"edge id {new} in use")
    mp = {half(old, 0): half(new, 0), half(old, 1): half(new, 1)}
    verts = {k: Vertex(tuple(mp.get(h, h) for h in vx.rot), vx.base, vx.phase)
             for k, vx in g.vertices.items()}
    edges = {(new if k == old else k): ed for k, ed in g.edges.items()}
    return g._replace(vertices=verts, edges=edges)


def one_vertex_graph(w: CocycleTable, signature, phase: int = 0, legs=None) -> PolygonGraph:
    """A single vertex whose half-edges are all legs, read from the basepoint.

    ``signature`` lists ``(label, orientation)``; each entry becomes a leg
    whose attached end is the tail (``+1``) or head (``-1``).
    """
    edges, rot = {}, []
    for e, (lab, o) in enumerate(signature):
        if o == 1:
            edges[e] = Edge(int(lab), 0, None)
            rot.append(half(e, 0))
        else:
            edges[e] = Edge(int(lab), None, 0)
            rot.append(half(e, 1))
    return PolygonGraph(w, {0: Vertex(tuple(rot), 0, phase % w.q)}, edges)
