"""Label-free bookkeeping for handle slides on one-vertex ribbon graphs.

Labels here are reduced words in a free group on generators ``1, 2, ...``
(``-i`` is the inverse of ``i``).  A :class:`SymbolicGraph` tracks only the
rotation at the single vertex and one word per edge, so running a slide
sequence on it tells exactly which automorphism of the surface group the
sequence realizes, independently of any finite group or cocycle.

The rules mirror :func:`dwmcg.graphs.move_slide` and the flip move.  Tests
check the two agree on concrete labels.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


def reduce_word(w) -> tuple:
    out = []
    for x in w:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def inverse_word(w) -> tuple:
    return tuple(-x for x in reversed(w))


def mul_words(*ws) -> tuple:
    out = ()
    for w in ws:
        out = reduce_word(out + tuple(w))
    return out


def eval_word(word, values, group) -> int:
    """Evaluate a word with generator ``i`` sent to ``values[i-1]``."""
    out = 0
    for x in word:
        a = values[abs(x) - 1]
        out = group.mul[out][a if x > 0 else group.inv[a]]
    return out


@dataclass(frozen=True)
class SymbolicGraph:
    """Rotation (half-edge ids, ``2e`` tail / ``2e+1`` head) and edge words."""

    rot: tuple
    labels: tuple  # (edge, word) pairs sorted by edge

    @property
    def label_map(self) -> dict:
        return dict(self.labels)

    def obj(self, h: int) -> tuple:
        w = self.label_map[h >> 1]
        return w if h & 1 == 0 else inverse_word(w)

    def is_loop(self, e: int) -> bool:
        return 2 * e in self.rot and 2 * e + 1 in self.rot

    def with_labels(self, mp: dict, rot=None) -> "SymbolicGraph":
        return SymbolicGraph(self.rot if rot is None else tuple(rot), tuple(sorted(mp.items())))


def standard_graph(genus: int, n_legs: int = 0) -> SymbolicGraph:
    """Edges ``0..2g-1`` are the loops, ``2g..`` the legs; generator ``i+1`` labels edge ``i``."""
    rot = []
    for i in range(genus):
        a, b = 2 * i, 2 * i + 1
        rot += [2 * a, 2 * b, 2 * a + 1, 2 * b + 1]
    labels = {e: (e + 1,) for e in range(2 * genus + n_legs)}
    for j in range(n_legs):
        rot.append(2 * (2 * genus + j))
    return SymbolicGraph(tuple(rot), tuple(sorted(labels.items())))


def slide(s: SymbolicGraph, i: int, over: str = "next") -> SymbolicGraph:
    """Symbolic version of :func:`dwmcg.graphs.move_slide`."""
    rot = list(s.rot)
    n = len(rot)
    i %= n
    j = (i + 1) % n
    if over == "next":
        hs, hb = rot[i], rot[j]
    else:
        hb, hs = rot[i], rot[j]
    b = hb >> 1
    if not s.is_loop(b) or hs >> 1 == b:
        raise ValueError("slide needs a half-edge next to an end of a different loop")
    pair = (rot[i], rot[j])
    word = mul_words(s.obj(pair[0]), s.obj(pair[1]))
    other = hb ^ 1
    # new loop c (id b): tail where the pair was, head where B's other end was
    tail, head = 2 * b, 2 * b + 1
    out = []
    for h in rot:
        if h == pair[0]:
            out.append(tail)
        elif h == pair[1]:
            continue
        elif h == other:
            out += [head, hs] if over == "next" else [hs, head]
        else:
            out.append(h)
    mp = s.label_map
    mp[b] = word
    return s.with_labels(mp, out)


def flip(s: SymbolicGraph, e: int) -> SymbolicGraph:
    mp = s.label_map
    mp[e] = inverse_word(mp[e])
    sw = {2 * e: 2 * e + 1, 2 * e + 1: 2 * e}
    return s.with_labels(mp, [sw.get(h, h) for h in s.rot])


def canonical_rotation(s: SymbolicGraph) -> tuple:
    """Rotation rotated to start at its smallest half-edge (a cyclic invariant key)."""
    r = s.rot
    k = r.index(min(r))
    return r[k:] + r[:k]


def match_standard(s: SymbolicGraph, genus: int, n_legs: int, roles=None):
    """Identify ``s`` with the standard pattern if possible.

    Returns ``(start, flips, roles)``: rotating so position ``start`` is read
    first and flipping the edges in ``flips`` turns the rotation into the
    standard one with edge ``roles[k]`` playing standard edge ``k``.  Legs
    must keep their identity and order.  ``None`` if no match exists.

    A closed surface's standard rotation is symmetric under cycling the
    handles, so several starts can match; passing ``roles`` keeps only the
    match with that role assignment.
    """
    n = len(s.rot)
    if n != 4 * genus + n_legs:
        return None
    for start in range(n):
        r = s.rot[start:] + s.rot[:start]
        found, flips, ok = {}, set(), True
        for i in range(genus):
            blk = r[4 * i:4 * i + 4]
            ea, eb = blk[0] >> 1, blk[1] >> 1
            if ea == eb or blk[2] >> 1 != ea or blk[3] >> 1 != eb:
                ok = False
                break
            for e, h in ((ea, blk[0]), (eb, blk[1])):
                if h & 1:
                    flips.add(e)
            found[2 * i], found[2 * i + 1] = ea, eb
        if not ok:
            continue
        legs = r[4 * genus:]
        if list(legs) != [2 * (2 * genus + j) for j in range(n_legs)]:
            continue
        for j in range(n_legs):
            found[2 * genus + j] = 2 * genus + j
        found = tuple(found[k] for k in range(2 * genus + n_legs))
        if roles is None or tuple(roles) == found:
            return start, tuple(sorted(flips)), found
    return None


def standard_words(s: SymbolicGraph, genus: int, n_legs: int):
    """Words on the standard edges after :func:`match_standard`, else ``None``."""
    m = match_standard(s, genus, n_legs)
    if m is None:
        return None
    _, flips, roles = m
    mp = s.label_map
    out = []
    for e in roles:
        w = mp[e]
        out.append(inverse_word(w) if e in flips else w)
    return tuple(out)


def run_script(script, genus: int, n_legs: int = 0, start: SymbolicGraph | None = None):
    s = standard_graph(genus, n_legs) if start is None else start
    for pos, over in script:
        s = slide(s, pos, over)
    return s


def search_scripts(genus: int, n_legs: int, target, max_depth: int = 6, allowed=None):
    """Breadth-first search for a slide script realizing ``target``.

    ``target`` is the tuple of words expected on the standard edges at the
    end.  ``allowed`` optionally restricts the slide positions.  Returns the
    shortest script found as a tuple of ``(position, over)`` pairs, or None.
    """
    target = tuple(tuple(w) for w in target)
    s0 = standard_graph(genus, n_legs)
    seen = {(canonical_rotation(s0), s0.labels)}
    queue = deque([(s0, ())])
    n = len(s0.rot)
    positions = range(n) if allowed is None else allowed
    while queue:
        s, script = queue.popleft()
        if script and standard_words(s, genus, n_legs) == target:
            return script
        if len(script) >= max_depth:
            continue
        for i in positions:
            for over in ("next", "prev"):
                try:
                    t = slide(s, i, over)
                except ValueError:
                    continue
                key = (canonical_rotation(t), t.labels)
                if key in seen:
                    continue
                seen.add(key)
                queue.append((t, script + ((i, over),)))
    return None
