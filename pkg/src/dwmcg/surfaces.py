"""Surfaces, spanning sets of one-vertex colorings, and conjugation.

A state on a genus ``g`` surface with ``b`` boundary legs is a tuple of ``2g``
loop labels and ``b`` leg labels.  Its vertex reads, counterclockwise,
``(g1, g2, g1^-1, g2^-1, ..., g_{2g-1}, g_{2g}, g_{2g-1}^-1, g_{2g}^-1, k1, ..., kb)``
so the surface relation is ``[g1,g2] ... [g_{2g-1},g_{2g}] k1 ... kb = 1``.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from itertools import permutations, product

import numpy as np

from .groups import GroupTable
from .monomial import MonomialMatrix


class SurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class SurfaceSpec:
    genus: int
    boundary: tuple = ()

    def __post_init__(self):
        if self.genus < 0:
            raise SurfaceError("genus must be non-negative")
        object.__setattr__(self, "boundary", tuple(int(k) for k in self.boundary))

    @property
    def n_legs(self) -> int:
        return len(self.boundary)

    @property
    def closed(self) -> bool:
        return not self.boundary

    def to_json(self) -> dict:
        return {"genus": self.genus, "boundary": list(self.boundary)}


@dataclass(frozen=True)
class BasisState:
    loops: tuple
    legs: tuple = ()

    def labels(self) -> tuple:
        return self.loops + self.legs


def relation_value(g: GroupTable, loops, legs=()) -> int:
    """``prod_i [g_{2i-1}, g_{2i}] * k1 ... kb``."""
    mul, inv = g.mul, g.inv
    out = 0
    for i in range(0, len(loops), 2):
        a, b = loops[i], loops[i + 1]
        out = mul[mul[mul[mul[out][a]][b]][inv[a]]][inv[b]]
    for k in legs:
        out = mul[out][k]
    return out


def state_signature(state: BasisState) -> tuple:
    """Counterclockwise signature of the state's vertex (legs outgoing)."""
    sig = []
    lo = state.loops
    for i in range(0, len(lo), 2):
        sig += [(lo[i], 1), (lo[i + 1], 1), (lo[i], -1), (lo[i + 1], -1)]
    sig += [(k, 1) for k in state.legs]
    return tuple(sig)


@dataclass
class SpanningSet:
    surface: SurfaceSpec
    group: GroupTable
    states: list
    index: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        if not self.index:
            self.index = {s: i for i, s in enumerate(self.states)}

    def __len__(self):
        return len(self.states)

    def __iter__(self):
        return iter(self.states)

    def __contains__(self, s):
        return s in self.index

    def to_json(self) -> dict:
        return {"surface": self.surface.to_json(),
                "states": [[list(s.loops), list(s.legs)] for s in self.states]}


def _commuting_layers(g: GroupTable, genus: int) -> dict:
    """Map ``value -> list of loop tuples`` whose commutator product is ``value``."""
    mul, inv = g.mul, g.inv
    comm = {}
    for a in range(g.order):
        for b in range(g.order):
            comm.setdefault(mul[mul[mul[a][b]][inv[a]]][inv[b]], []).append((a, b))
    layer = {0: [()]}
    for _ in range(genus):
        nxt = {}
        for val, prefixes in layer.items():
            for c, pairs in comm.items():
                nv = mul[val][c]
                bucket = nxt.setdefault(nv, [])
                for p in prefixes:
                    for pair in pairs:
                        bucket.append(p + pair)
        layer = nxt
    return layer


def enumerate_spanning(surface: SurfaceSpec, g: GroupTable) -> SpanningSet:
    """All states satisfying the surface relation, in lexicographic order."""
    g.check(*surface.boundary)
    legs = surface.boundary
    need = g.inv[g.prod(*legs)]
    layer = _commuting_layers(g, surface.genus)
    loops = sorted(layer.get(need, []))
    states = [BasisState(lo, legs) for lo in loops]
    return SpanningSet(surface, g, states)


def brute_force_spanning(surface: SurfaceSpec, g: GroupTable) -> list:
    """Direct filter over every tuple; the oracle for :func:`enumerate_spanning`."""
    out = []
    for lo in product(range(g.order), repeat=2 * surface.genus):
        if relation_value(g, lo, surface.boundary) == 0:
            out.append(BasisState(tuple(lo), surface.boundary))
    return out


def arrangements(boundary) -> list:
    """Distinct orderings of a boundary-label multiset, sorted."""
    return sorted(set(permutations(boundary)))


def conjugation_map(s: SpanningSet, x: int) -> MonomialMatrix:
    """Simultaneous conjugation of every label by ``x`` as a permutation."""
    if not s.surface.closed:
        raise SurfaceError("conjugation action is only defined for closed surfaces here")
    g = s.group
    g.check(x)
    xi = g.inv[x]
    mul = g.mul
    perm = []
    for st in s.states:
        img = BasisState(tuple(mul[mul[x][a]][xi] for a in st.loops), st.legs)
        perm.append(s.index[img])
    return MonomialMatrix(tuple(perm), (0,) * len(perm), g.order)


@dataclass(frozen=True)
class OrbitReport:
    orbit_count: int
    size: int
    group_order: int

    @property
    def size_over_group(self):
        return self.size // self.group_order if self.size % self.group_order == 0 else None

    def to_json(self) -> dict:
        return {"orbit_count": self.orbit_count, "size": self.size,
                "group_order": self.group_order, "size_over_group": self.size_over_group,
                "size_over_group_exact": self.size / self.group_order}


def count_conjugation_orbits(s: SpanningSet, g: GroupTable | None = None) -> OrbitReport:
    """Orbits of simultaneous conjugation, by union-find."""
    g = s.group if g is None else g
    parent = list(range(len(s)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for x in range(g.order):
        for i, j in enumerate(conjugation_map(s, x).perm):
            ri, rj = find(i), find(j)
            if ri != rj:
                parent[ri] = rj
    roots = Counter(find(i) for i in range(len(s)))
    return OrbitReport(len(roots), len(s), g.order)


def spanning_count_table(g: GroupTable, genus: int) -> np.ndarray:
    """Counts ``|S|`` for every single-leg label ``k`` (index ``k``)."""
    layer = _commuting_layers(g, genus)
    out = np.zeros(g.order, dtype=np.int64)
    for val, tuples in layer.items():
        out[g.inv[val]] = len(tuples)
    return out


def save_spanning(s: SpanningSet, path) -> None:
    with open(path, "w") as f:
        json.dump(s.to_json(), f)
