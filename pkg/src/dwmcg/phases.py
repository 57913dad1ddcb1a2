"""Scalar calculus of ``Vect_G^omega`` on simple objects.

All Hom spaces in play are at most one-dimensional, so every operation here
returns a phase exponent relative to canonical simple morphisms.  The
normative route is the :class:`~dwmcg.words.WordMachine`; the ``*_fast``
functions are closed forms derived from it and are checked against it in the
test suite.

Conventions
-----------
* A signature is a tuple of ``(element, orientation)`` pairs read
  counterclockwise; orientation ``+1`` is outgoing, ``-1`` incoming.  An
  incoming edge labelled ``g`` contributes the object ``delta_{g^-1}``.
* The canonical simple morphism of a signature uses the left-associated
  parenthesization of its objects.
* ``z`` moves the last object of a signature to the front.
"""

from __future__ import annotations

from dataclasses import dataclass

from .cocycles import CocycleTable, verify_cocycle
from .groups import GroupTable
from .words import WordMachine, left_comb


class PhaseError(ValueError):
    pass


class PreconditionError(PhaseError):
    pass


class ContractionMismatchError(PhaseError):
    pass


def require_normalized(w: CocycleTable) -> None:
    T = w.table
    if T[0].any() or T[:, 0].any() or T[:, :, 0].any():
        raise PhaseError("phase engine needs a normalized cocycle")


def checked(w: CocycleTable) -> CocycleTable:
    """Full validation; used at module boundaries that accept user cocycles."""
    rep = verify_cocycle(w)
    if not rep:
        raise PhaseError(rep.describe())
    return w


Signature = tuple


def signature(entries) -> Signature:
    out = []
    for el, o in entries:
        if o not in (1, -1):
            raise PhaseError(f"orientation must be +1 or -1, got {o}")
        out.append((int(el), int(o)))
    return tuple(out)


def objects(sig: Signature, g: GroupTable) -> tuple:
    """The object labels ``g_i ** eps_i`` of a signature."""
    inv = g.inv
    return tuple(a if o == 1 else inv[a] for a, o in sig)


def boundary_product(sig: Signature, g: GroupTable) -> int:
    return g.prod(*objects(sig, g))


def rotate(sig: Signature, k: int = 1) -> Signature:
    """Apply the cyclic shift of ``z**k`` (last entry to the front, k times)."""
    n = len(sig)
    if n == 0:
        return sig
    k %= n
    return sig[n - k:] + sig[:n - k] if k else sig


@dataclass(frozen=True)
class SimpleMorphism:
    signature: Signature
    phase: int = 0
    is_zero: bool = False

    def scaled(self, e: int, q: int) -> "SimpleMorphism":
        if self.is_zero:
            return self
        return SimpleMorphism(self.signature, (self.phase + e) % q, False)


def canonical_simple(sig: Signature, g: GroupTable) -> SimpleMorphism:
    sig = signature(sig)
    if boundary_product(sig, g) != 0:
        return SimpleMorphism(sig, 0, True)
    return SimpleMorphism(sig, 0, False)


# structural morphisms on simple objects

def assoc_phase(w: CocycleTable, a: int, b: int, c: int, inverse: bool = False) -> int:
    e = w(a, b, c)
    return (-e) % w.q if inverse else e


def ev_phase(w: CocycleTable, x: int) -> int:
    """``ev_x : delta_x^* (x) delta_x -> 1`` is ``omega(x^-1, x, x^-1)``."""
    inv = w.group.inv[x]
    return w(inv, x, inv)


def coev_phase(x: int) -> int:
    return 0


def pivot_phase(w: CocycleTable, x: int) -> int:
    """``j_x : delta_x -> delta_x^**`` is ``omega(x^-1, x, x^-1)``."""
    inv = w.group.inv[x]
    return w(inv, x, inv)


# z-map

def z_phase(w: CocycleTable, sig: Signature, trace: list | None = None) -> int:
    """Exponent ``alpha`` with ``z(canonical(sig)) = zeta**alpha canonical(rotate(sig))``.

    Literal composition: coevaluation for the double dual of the last object,
    insertion of the vertex morphism, pivotal map, evaluation, and all
    associators needed in between.
    """
    require_normalized(w)
    g = w.group
    objs = objects(sig, g)
    if g.prod(*objs) != 0:
        raise PreconditionError("z_phase needs a signature with trivial boundary product")
    n = len(objs)
    if n <= 1:
        return 0
    m = WordMachine(w, trace)
    x = objs[-1]
    xi = g.inv[x]
    rest = objs[:-1]
    phi = left_comb(objs)
    # coev_{**V_n}: 1 -> delta_x (x) delta_x^-1, then phi slotted in via unitors
    t, total = m.coev(0, (), x)
    t = ((t[0], 0), t[1])
    t = ((t[0][0], phi), t[1])
    # bring V_n next to its dual: ((x, L(rest)), (x, x^-1))
    target = ((x, left_comb(rest)), (x, xi))
    total += m.reassociate(t, target)
    t = target
    t, e = m.pivot(t, (0, 0))
    total += e
    t, e = m.ev(t, (1,))
    total += e
    t, _ = m.drop_unit(t, (1,))
    total += m.reassociate(t, left_comb((x,) + rest))
    return total % w.q


def z_phase_fast(w: CocycleTable, sig: Signature) -> int:
    """Closed form of :func:`z_phase` (pivot and evaluation cancel)."""
    g = w.group
    objs = objects(sig, g)
    n = len(objs)
    if n <= 1:
        return 0
    x = objs[-1]
    total = -w(x, g.inv[x], x)
    # (x, L(a1..ak)) -> L(x, a1..ak)
    pre = objs[0]
    for a in objs[1:-1]:
        total -= w(x, pre, a)
        pre = g.mul[pre][a]
    return total % w.q


def z_power_phase(w: CocycleTable, sig: Signature, k: int, fast: bool = True) -> int:
    """Exponent of ``z**k`` starting from ``sig`` (``k`` may be negative)."""
    zf = z_phase_fast if fast else z_phase
    n = len(sig)
    if n == 0:
        return 0
    total = 0
    if k >= 0:
        s = sig
        for _ in range(k):
            total += zf(w, s)
            s = rotate(s, 1)
    else:
        s = sig
        for _ in range(-k):
            s = rotate(s, -1)
            total -= zf(w, s)
    return total % w.q


# composition

def _contract_pair(w: CocycleTable, V: tuple, x: int, W: tuple, trace=None) -> int:
    """Exponent of ``phi o_X psi`` for canonical ``phi in <V, x>``, ``psi in <x^-1, W>``."""
    g = w.group
    m = WordMachine(w, trace)
    xi = g.inv[x]
    t = (left_comb(V + (x,)), left_comb((xi,) + W))
    Lv = left_comb(V)
    Lw = left_comb(W)
    target = ((Lv, (x, xi)), Lw)
    total = m.reassociate(t, target)
    t = target
    t, e = m.pivot(t, (0, 1, 0))
    total += e
    t, e = m.ev(t, (0, 1))
    total += e
    t = m.strip_units(t)
    if t == 0:
        return total % w.q
    total += m.reassociate(t, left_comb(V + W))
    return total % w.q


def compose_phase(w: CocycleTable, m1: SimpleMorphism, m2: SimpleMorphism,
                  rotations=(0, 0), trace=None) -> SimpleMorphism:
    """Natural composition ``m1 o_X m2`` after rotating each input.

    ``rotations = (k1, k2)`` applies ``z**k1`` to ``m1`` and ``z**k2`` to ``m2``
    first.  Then ``m1``'s last object and ``m2``'s first must be dual.  The
    result lives on the concatenated signature minus the contracted pair.
    """
    require_normalized(w)
    g = w.group
    k1, k2 = rotations
    s1, s2 = rotate(m1.signature, k1), rotate(m2.signature, k2)
    if not s1 or not s2:
        raise ContractionMismatchError("cannot contract an empty signature")
    o1, o2 = objects(s1, g), objects(s2, g)
    if g.inv[o1[-1]] != o2[0]:
        raise ContractionMismatchError(f"labels {o1[-1]} and {o2[0]} are not dual")
    sig = s1[:-1] + s2[1:]
    if m1.is_zero or m2.is_zero:
        return SimpleMorphism(sig, 0, True)
    total = m1.phase + m2.phase
    total += z_power_phase(w, m1.signature, k1, fast=False)
    total += z_power_phase(w, m2.signature, k2, fast=False)
    V = tuple(o1[:-1])
    W = tuple(o2[1:])
    # units may appear in V or W; they stay as leaves and reassociate freely
    total += _contract_pair(w, V, o1[-1], W, trace)
    return SimpleMorphism(sig, total % w.q, False)


def contract_phase_fast(w: CocycleTable, V: tuple, x: int, W: tuple) -> int:
    """Closed form of the contraction exponent.

    For canonical inputs the only surviving term is the pivotal phase of the
    contracted object: every associator either has a trivial-degree argument
    or cancels between the two reassociations.
    """
    return pivot_phase(w, x)

