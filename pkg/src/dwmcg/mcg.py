"""Mapping class group generators as move scripts on spanning-set states.

A script is a label-independent list of local moves.  Replaying it on the
one-vertex graph of a state and putting the result back into standard form
yields the image state and a phase, so each generator becomes a monomial
matrix on the spanning set.

Edge ``k < 2g`` of a state graph is loop ``k`` (handle ``k // 2``), edge
``2g + j`` is leg ``j``.  Half-edge ``2e`` is the tail of ``e``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cocycles import CocycleTable
from .graphs import (Edge, PolygonGraph, Vertex, _rename_edge, edge_of, half, move_contract,
                     move_delete_identity, move_flip_edge, move_insert_identity, move_slide,
                     move_split)
from .monomial import MonomialMatrix
from .slides import SymbolicGraph, match_standard
from .surfaces import BasisState, SpanningSet, SurfaceSpec, relation_value


class MCGError(ValueError):
    pass


class IndexRangeError(MCGError):
    pass


class ScriptConsistencyError(MCGError):
    """A script produced a graph that is not in standard form or breaks the relation."""


# state graphs

def state_rotation(genus: int, n_legs: int) -> tuple:
    rot = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        rot += [half(a, 0), half(b, 0), half(a, 1), half(b, 1)]
    rot += [half(2 * genus + j, 0) for j in range(n_legs)]
    return tuple(rot)


def state_graph(w: CocycleTable, state: BasisState, phase: int = 0,
                marker: bool = False) -> PolygonGraph:
    """The canonical one-vertex graph of a state (basepoint at the first loop).

    With ``marker`` an extra identity-labelled leg is appended in the base
    corner.  It changes no phase (the cocycle is normalized) but pins down
    the corner, which the rotation alone cannot do: cycling the handles, or
    the hyperelliptic involution in genus one, preserves the standard pattern.
    """
    genus = len(state.loops) // 2
    legs = state.legs + ((w.group.identity,) if marker else ())
    edges = {e: Edge(lab, 0, 0) for e, lab in enumerate(state.loops)}
    for j, k in enumerate(legs):
        edges[2 * genus + j] = Edge(k, 0, None)
    rot = state_rotation(genus, len(legs))
    return PolygonGraph(w, {0: Vertex(rot, 0, phase)}, edges, check=False)


def standardize(g: PolygonGraph, genus: int, n_legs: int, marker: bool = False):
    """Flip, rename and rebase a one-vertex graph into standard form.

    With ``marker`` the graph carries the identity leg of :func:`state_graph`
    as its last leg; it is matched like a leg and then removed.

    Edges must keep their ids (scripts rename edges they rebuild), which
    fixes the start among the cyclically equivalent matches.
    Returns ``(state, phase)``.  Raises :class:`ScriptConsistencyError` when the
    rotation does not match the standard pattern.
    """
    if marker:
        n_legs += 1
    verts = [v for v in g.vertices]
    if len(verts) != 1:
        if not verts and genus == 0 and n_legs == 0:
            return BasisState((), ()), g.phase()
        raise ScriptConsistencyError(f"expected one vertex, got {len(verts)}")
    (v,) = verts
    rot = g.vertices[v].rot
    m = match_standard(SymbolicGraph(rot, ()), genus, n_legs, range(2 * genus + n_legs))
    if m is None:
        raise ScriptConsistencyError(f"rotation {rot} is not standard")
    start, flips, roles = m
    h0 = rot[start]
    for e in flips:
        g = move_flip_edge(g, e)
        if edge_of(h0) == e:
            h0 ^= 1
    # rename roles[k] -> k through temporary ids
    off = 1 + max(max(g.edges), 4 * genus + 2 * n_legs)
    for k, e in enumerate(roles):
        g = _rename_edge(g, e, off + k)
        if edge_of(h0) == e:
            h0 = half(off + k, h0 & 1)
    for k in range(len(roles)):
        g = _rename_edge(g, off + k, k)
        if edge_of(h0) == off + k:
            h0 = half(k, h0 & 1)
    (v,) = g.vertices
    if g.vertices[v].rot:
        g = g.normalize_base(v, h0)
        if g.vertices[v].rot != state_rotation(genus, n_legs):
            raise ScriptConsistencyError("standardization produced a non-standard rotation")
    loops = tuple(g.edges[k].label for k in range(2 * genus))
    legs = tuple(g.edges[2 * genus + j].label for j in range(n_legs))
    if marker:
        if legs[-1] != g.w.group.identity:
            raise ScriptConsistencyError("marker leg lost its identity label")
        legs = legs[:-1]
    return BasisState(loops, legs), g.phase()


# scripts

@dataclass(frozen=True)
class MoveScript:
    """A generator's move sequence in state-graph coordinates.

    Steps are tuples: ``("split", vertex, start, length)``,
    ``("slide", half_edge, "ccw" | "cw")``, ``("contract", edge)``,
    ``("flip", edge)``, ``("insert_identity", u, i, v, j)``,
    ``("delete_identity", edge)``.  New edges and vertices take the next free
    ids, so ids mentioned by later steps are deterministic.
    """

    name: str
    params: tuple
    steps: tuple
    genus: int
    n_legs: int = 0
    leg_permutation: tuple | None = None

    def replay(self, g: PolygonGraph) -> PolygonGraph:
        for step in self.steps:
            op, args = step[0], step[1:]
            if op == "split":
                g = move_split(g, *args)[0]
            elif op == "slide":
                g = move_slide(g, *args)
            elif op == "contract":
                g = move_contract(g, *args)
            elif op == "flip":
                g = move_flip_edge(g, *args)
            elif op == "insert_identity":
                g = move_insert_identity(g, *args)[0]
            elif op == "delete_identity":
                g = move_delete_identity(g, *args)
            elif op == "exchange_unit_legs":
                g = _exchange_unit_legs(g, *args)
            else:
                raise MCGError(f"unknown script step {op!r}")
        return g

    def apply(self, w: CocycleTable, state: BasisState):
        """Image state and phase of ``state``."""
        marker = self.n_legs == 0
        g = self.replay(state_graph(w, state, marker=marker))
        return standardize(g, self.genus, self.n_legs, marker=marker)


def _check_handle(i: int, genus: int, upper: int | None = None):
    upper = genus if upper is None else upper
    if not 1 <= i <= upper:
        raise IndexRangeError(f"index {i} out of range 1..{upper}")


def twist_alpha(i: int, genus: int, n_legs: int = 0) -> MoveScript:
    """Twist about a curve parallel to loop ``a_i``: ``(g, h) -> (g, hg)``.

    The head of ``a_i`` slides across the head of ``b_i``.
    """
    _check_handle(i, genus)
    a = 2 * (i - 1)
    return MoveScript("alpha", (i,), (("slide", half(a, 1), "ccw"),), genus, n_legs)


def twist_beta(i: int, genus: int, n_legs: int = 0) -> MoveScript:
    """Twist about a curve parallel to loop ``b_i``: ``(g, h) -> (g h^-1, h)``.

    The tail of ``b_i`` slides across the head of ``a_i``: alpha's move
    conjugated by the quarter turn of the handle square.
    """
    _check_handle(i, genus)
    b = 2 * (i - 1) + 1
    return MoveScript("beta", (i,), (("slide", half(b, 0), "ccw"),), genus, n_legs)


def twist_gamma(i: int, genus: int, n_legs: int = 0) -> MoveScript:
    """Twist linking handles ``i`` and ``i+1``.

    Split off the arc ``(b_i^-1, c, d, c^-1)`` whose product is
    ``g = b^-1 c d c^-1``, walk the new edge's end once around the face by
    clockwise slides (this is the twist), and contract the new edge.
    Labels map ``(a, b, c, d) -> (a g^-1, g b g^-1, g c, d)``.
    """
    _check_handle(i, genus, genus - 1)
    start = 4 * (i - 1) + 3
    gedge = 2 * genus + max(n_legs, 1)  # after the legs, or the marker of a closed surface
    steps = [("split", 0, start, 4)]
    steps += [("slide", half(gedge, 1), "cw")] * 4
    steps.append(("contract", gedge))
    return MoveScript("gamma", (i,), tuple(steps), genus, n_legs)


def drag(j: int, i: int, genus: int, n_legs: int) -> MoveScript:
    """Drag boundary leg ``j`` once around handle ``i``.

    Realized as the twist about the curve cutting handle ``i`` off: split the
    handle's block, walk the new edge once around its far vertex (four
    slides; two would only turn the handle half way), contract.  Handle
    ``i``'s loops ``x`` become ``c^-1 x c`` with ``c`` their commutator; with a
    single leg ``k`` that is ``k x k^-1``.
    The legs-only move set cannot pass an edge around a leg's free end, so
    every leg is dragged the same way and ``j`` is only range-checked.
    """
    if n_legs < 1:
        raise IndexRangeError("drag needs at least one boundary leg")
    _check_handle(j, n_legs)
    _check_handle(i, genus)
    gedge = 2 * genus + n_legs
    steps = [("split", 0, 4 * (i - 1), 4)]
    steps += [("slide", half(gedge, 1), "ccw")] * 4
    steps.append(("contract", gedge))
    return MoveScript("drag", (j, i), tuple(steps), genus, n_legs)


def braid_sigma(j: int, genus: int, n_legs: int) -> MoveScript:
    """Exchange legs ``j`` and ``j+1``.

    Only identity-labelled legs are supported: their exchange is a pure
    relabeling with no phase because the cocycle is normalized.  Other labels
    raise :class:`UnsupportedGeneratorError` when the script is replayed.
    """
    _check_handle(j, n_legs - 1)
    return MoveScript("braid", (j,), (("exchange_unit_legs", j),), genus, n_legs)


class UnsupportedGeneratorError(MCGError):
    pass


def _exchange_unit_legs(g: PolygonGraph, j: int) -> PolygonGraph:
    legs = sorted(e for e in g.edges if g.edges[e].head is None)
    e1, e2 = legs[j - 1], legs[j]
    ident = g.w.group.identity
    if g.edges[e1].label != ident or g.edges[e2].label != ident:
        raise UnsupportedGeneratorError("braid generators are only modelled for identity-labelled legs")
    # unit legs can be deleted and reinserted on the other side, so the
    # exchanged graph is the same graph
    return g


def generator_scripts(surface: SurfaceSpec) -> list:
    """Scripts of the standard generating set, in a fixed order."""
    genus, b = surface.genus, surface.n_legs
    out = []
    for i in range(1, genus + 1):
        out += [twist_alpha(i, genus, b), twist_beta(i, genus, b)]
    for i in range(1, genus):
        out.append(twist_gamma(i, genus, b))
    if b:
        for j in range(1, b):
            out.append(braid_sigma(j, genus, b))
        for j in range(1, b + 1):
            for i in range(1, genus + 1):
                out.append(drag(j, i, genus, b))
    return out


# generator actions

@dataclass
class GeneratorAction:
    name: str
    script: MoveScript
    matrix: MonomialMatrix
    source: SpanningSet
    target: SpanningSet
    images: list = field(default_factory=list, repr=False)

    def to_json(self) -> dict:
        return {"name": self.name, "params": list(self.script.params), **self.matrix.to_json()}


def build_action(script: MoveScript, w: CocycleTable, source: SpanningSet,
                 target: SpanningSet | None = None, name: str | None = None) -> GeneratorAction:
    """Replay ``script`` on every state of ``source`` and assemble the matrix."""
    target = source if target is None else target
    g = w.group
    perm, phase, images = [], [], []
    for st in source.states:
        img, ph = script.apply(w, st)
        if relation_value(g, img.loops, img.legs) != 0:
            raise ScriptConsistencyError(f"{script.name}: image {img} violates the surface relation")
        if img not in target.index:
            raise ScriptConsistencyError(f"{script.name}: image {img} not in the target spanning set")
        perm.append(target.index[img])
        phase.append(ph)
        images.append(img)
    if len(set(perm)) != len(perm):
        raise ScriptConsistencyError(f"{script.name}: image map is not injective")
    label = name or f"{script.name}{''.join(str(p) for p in script.params)}"
    return GeneratorAction(label, script, MonomialMatrix.make(perm, phase, w.q), source, target, images)


def build_generator_set(surface: SurfaceSpec, group, w: CocycleTable, spanning: SpanningSet | None = None,
                        skip_unsupported: bool = True) -> list:
    """All generator actions on the spanning set of ``surface``.

    Braids between differently labelled legs map between arrangements and are
    not endo-maps; they, and any other generator the move set cannot
    express for these labels, are skipped unless ``skip_unsupported`` is off.
    """
    from .surfaces import enumerate_spanning
    if w.group is not group and w.group.order != group.order:
        raise MCGError("cocycle and group do not match")
    s = enumerate_spanning(surface, group) if spanning is None else spanning
    out = []
    for sc in generator_scripts(surface):
        if sc.name == "braid":
            j = sc.params[0]
            k = surface.boundary
            if k[j - 1] != group.identity or k[j] != group.identity:
                if skip_unsupported:
                    continue
        try:
            out.append(build_action(sc, w, s))
        except UnsupportedGeneratorError:
            if not skip_unsupported:
                raise
    return out
