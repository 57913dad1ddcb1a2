"""Explicit parenthesization trees and the structural rewrites acting on them.

A *word* is either a group element (a leaf, the simple object ``delta_g``) or a
pair ``(left, right)`` meaning ``left (x) right``.  A leaf equal to the identity
index ``0`` is the unit object.  For simple objects every Hom space out of the
unit is at most one-dimensional, so a morphism ``1 -> word`` is fully described
by an exponent relative to the canonical simple morphism built from splitting
isomorphisms along the tree.  The machine below rewrites trees one structural
morphism at a time and accumulates the exponent each one contributes.
"""

from __future__ import annotations

from .cocycles import CocycleTable


class WordError(ValueError):
    pass


def is_leaf(t) -> bool:
    return not isinstance(t, tuple)


def leaves(t) -> list:
    if is_leaf(t):
        return [t]
    return leaves(t[0]) + leaves(t[1])


def left_comb(items) -> object:
    """``((x1 x x2) x x3) x ...``; the empty word is the unit leaf."""
    items = list(items)
    if not items:
        return 0
    t = items[0]
    for x in items[1:]:
        t = (t, x)
    return t


def right_comb(items) -> object:
    items = list(items)
    if not items:
        return 0
    t = items[-1]
    for x in reversed(items[:-1]):
        t = (x, t)
    return t


def subtree(t, path):
    for step in path:
        t = t[step]
    return t


def replace(t, path, new):
    if not path:
        return new
    head, rest = path[0], path[1:]
    if head == 0:
        return (replace(t[0], rest, new), t[1])
    return (t[0], replace(t[1], rest, new))


class WordMachine:
    """Rewrite engine for morphisms ``1 -> word`` in ``Vect_G^omega``.

    Every method that changes a tree returns ``(new_tree, exponent)`` where the
    exponent is what the structural morphism multiplies the canonical vector by.
    Pass ``trace=[]`` to record each elementary step.
    """

    def __init__(self, w: CocycleTable, trace: list | None = None):
        self.w = w
        self.g = w.group
        self.q = w.q
        self.trace = trace

    def _log(self, *step):
        if self.trace is not None:
            self.trace.append(step)

    def degree(self, t) -> int:
        if is_leaf(t):
            return t
        return self.g.mul[self.degree(t[0])][self.degree(t[1])]

    # elementary structural morphisms

    def assoc(self, t, path=()):
        """``(x (x) y) (x) z -> x (x) (y (x) z)`` at ``path``; exponent ``omega(x,y,z)``."""
        s = subtree(t, path)
        if is_leaf(s) or is_leaf(s[0]):
            raise WordError(f"no associator redex at {path}")
        (x, y), z = s
        e = self.w(self.degree(x), self.degree(y), self.degree(z))
        self._log("assoc", path, e)
        return replace(t, path, (x, (y, z))), e

    def assoc_inv(self, t, path=()):
        """``x (x) (y (x) z) -> (x (x) y) (x) z``; exponent ``-omega(x,y,z)``."""
        s = subtree(t, path)
        if is_leaf(s) or is_leaf(s[1]):
            raise WordError(f"no inverse associator redex at {path}")
        x, (y, z) = s
        e = -self.w(self.degree(x), self.degree(y), self.degree(z)) % self.q
        self._log("assoc_inv", path, e)
        return replace(t, path, ((x, y), z)), e

    def drop_unit(self, t, path):
        """Remove a unit factor at ``path`` (a unitor; free for normalized cocycles)."""
        if not path:
            raise WordError("cannot drop the root")
        if subtree(t, path) != 0:
            raise WordError(f"leaf at {path} is not the unit")
        parent = path[:-1]
        sibling = subtree(t, parent)[1 - path[-1]]
        self._log("unitor", path, 0)
        return replace(t, parent, sibling), 0

    def insert_unit(self, t, path, side=1):
        """Replace the subtree ``x`` at ``path`` by ``x (x) 1`` (side=1) or ``1 (x) x``."""
        s = subtree(t, path)
        new = (s, 0) if side == 1 else (0, s)
        self._log("unitor_inv", path, 0)
        return replace(t, path, new), 0

    def ev(self, t, path):
        """Contract a subtree ``delta_x (x) delta_x^-1`` to the unit.

        This is the evaluation of the left dual of ``delta_{x^-1}``, whose dual
        is ``delta_x``; exponent ``omega(x, x^-1, x)``.
        """
        s = subtree(t, path)
        if is_leaf(s) or not (is_leaf(s[0]) and is_leaf(s[1])):
            raise WordError(f"ev needs two adjacent leaves at {path}")
        x, y = s
        if self.g.inv[x] != y:
            raise WordError(f"ev on non-dual pair ({x}, {y})")
        e = self.w(x, y, x)
        self._log("ev", path, e)
        return replace(t, path, 0), e

    def pivot(self, t, path):
        """Apply ``j_x : delta_x -> delta_x**`` to a leaf; exponent ``omega(x^-1, x, x^-1)``."""
        x = subtree(t, path)
        if not is_leaf(x):
            raise WordError("pivotal structure applies to a single leaf here")
        e = self.w(self.g.inv[x], x, self.g.inv[x])
        self._log("pivot", path, e)
        return t, e

    def coev(self, t, path, x):
        """Replace a unit leaf by ``delta_x (x) delta_x^-1``; ``coev_x = id_1``."""
        if subtree(t, path) != 0:
            raise WordError("coev must replace a unit leaf")
        self._log("coev", path, 0)
        return replace(t, path, (x, self.g.inv[x])), 0

    # composite rewrites

    def to_left_comb(self, t):
        """Reassociate ``t`` into the left comb over the same leaf sequence."""
        return self._lc(t, ())

    def _lc(self, t, path):
        if is_leaf(t):
            return t, 0
        a, pa = self._lc(t[0], path + (0,))
        b, pb = self._lc(t[1], path + (1,))
        c, pc = self._comb(a, b, path)
        return c, (pa + pb + pc) % self.q

    def _comb(self, a, b, path):
        # a and b are left combs; fold b's leaves onto a one at a time
        if is_leaf(b):
            return (a, b), 0
        b1, x = b
        e = -self.w(self.degree(a), self.degree(b1), self.degree(x)) % self.q
        self._log("assoc_inv", path, e)
        c, pc = self._comb(a, b1, path + (0,))
        return (c, x), (e + pc) % self.q

    def reassociate(self, src, dst) -> int:
        """Exponent of the (unique) associator path ``src -> dst``.

        Both trees must carry the same leaf sequence once unit leaves are
        dropped (unitors are trivial for a normalized cocycle).  The path runs through
        the left comb; by coherence any other path gives the same exponent.
        """
        src, dst = self.strip_units(src), self.strip_units(dst)
        if leaves(src) != leaves(dst):
            raise WordError("reassociation needs identical leaf sequences")
        _, p1 = self.to_left_comb(src)
        saved, self.trace = self.trace, None
        _, p2 = self.to_left_comb(dst)
        self.trace = saved
        self._log("reassociate", (), (p1 - p2) % self.q)
        return (p1 - p2) % self.q

    def strip_units(self, t):
        """Drop every unit leaf (all unitors)."""
        if is_leaf(t):
            return t
        a, b = self.strip_units(t[0]), self.strip_units(t[1])
        if a == 0:
            return b
        if b == 0:
            return a
        return (a, b)
