"""Normalized 3-cocycles stored as exponents of a primitive q-th root of unity.

A table entry ``e`` stands for the scalar ``zeta_q ** e``.  Addition of
exponents mod ``q`` is multiplication of scalars, so everything here is exact
integer arithmetic.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass

import numpy as np

from .groups import GroupTable


class CocycleError(ValueError):
    pass


class UnsupportedGroupError(CocycleError):
    pass


@dataclass(frozen=True)
class CocycleReport:
    ok: bool
    kind: str = ""
    witness: tuple = ()
    lhs: int | None = None
    rhs: int | None = None

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "cocycle OK"
        if self.kind == "normalization":
            return f"not normalized: nonzero entry at {self.witness}"
        if self.kind == "range":
            return f"exponent out of range at {self.witness}"
        return (f"cocycle identity fails at (a,b,c,d)={self.witness}: "
                f"lhs exponent {self.lhs} != rhs exponent {self.rhs}")


def _check_modulus(group: GroupTable, q: int):
    if q < 1:
        raise CocycleError(f"modulus must be positive, got {q}")


class CocycleTable:
    """An ``m x m x m`` exponent table over a group, read-only after construction."""

    def __init__(self, group: GroupTable, table, q: int | None = None):
        q = group.order if q is None else int(q)
        _check_modulus(group, q)
        arr = np.array(table, dtype=np.int64).reshape((group.order,) * 3) % q
        arr.setflags(write=False)
        self.group = group
        self.q = q
        self.table = arr
        # plain nested lists are much faster than numpy for scalar lookups
        self._w = arr.tolist()

    def __call__(self, a: int, b: int, c: int) -> int:
        return self._w[a][b][c]

    def __eq__(self, other):
        if not isinstance(other, CocycleTable):
            return NotImplemented
        return self.q == other.q and self.group == other.group and np.array_equal(self.table, other.table)

    def __hash__(self):
        return hash((self.q, self.table.tobytes()))

    def __repr__(self):
        return f"CocycleTable(group={self.group.name!r}, q={self.q})"

    def is_trivial(self) -> bool:
        return not self.table.any()

    def digest(self) -> str:
        h = hashlib.sha256()
        h.update(np.int64(self.q).tobytes())
        h.update(np.asarray(self.group.mul, dtype=np.int64).tobytes())
        h.update(self.table.astype(np.int64).tobytes())
        return h.hexdigest()[:16]

    def to_json(self) -> dict:
        return {"group": self.group.name, "q": self.q, "omega": self.table.ravel().tolist()}

    def with_entry(self, a, b, c, value) -> "CocycleTable":
        """Copy with one entry replaced (used to build corrupted tables)."""
        arr = self.table.copy()
        arr[a, b, c] = value % self.q
        return CocycleTable(self.group, arr, self.q)


class TwoCochain:
    """Normalized 2-cochain ``beta: G x G -> Z/q``."""

    def __init__(self, group: GroupTable, table, q: int | None = None):
        q = group.order if q is None else int(q)
        _check_modulus(group, q)
        arr = np.array(table, dtype=np.int64).reshape((group.order,) * 2) % q
        if arr[0, :].any() or arr[:, 0].any():
            raise CocycleError("2-cochain must vanish when either argument is the identity")
        arr.setflags(write=False)
        self.group = group
        self.q = q
        self.table = arr

    @classmethod
    def random(cls, group: GroupTable, q: int | None = None, rng=None) -> "TwoCochain":
        rng = np.random.default_rng(rng)
        q = group.order if q is None else q
        arr = rng.integers(0, q, size=(group.order, group.order))
        arr[0, :] = 0
        arr[:, 0] = 0
        return cls(group, arr, q)


def trivial_cocycle(group: GroupTable, q: int | None = None) -> CocycleTable:
    q = group.order if q is None else q
    return CocycleTable(group, np.zeros((group.order,) * 3, dtype=np.int64), q)


def cyclic_cocycle(group_or_n, p: int) -> CocycleTable:
    """Standard representative ``p * a * floor((b + c) / n)`` on ``Z/n``.

    Accepts either ``n`` or a :class:`GroupTable` that must be the cyclic
    table produced by :func:`make_cyclic` (index ``a`` is the residue ``a``).
    """
    from .groups import make_cyclic

    if isinstance(group_or_n, GroupTable):
        g = group_or_n
        n = g.order
        if g != make_cyclic(n):
            raise UnsupportedGroupError(f"{g.name or 'group'} is not Z/{n} in standard labelling")
    else:
        n = int(group_or_n)
        g = make_cyclic(n)
    if not 0 <= p < n:
        raise CocycleError(f"p must satisfy 0 <= p < {n}, got {p}")
    a = np.arange(n)[:, None, None]
    b = np.arange(n)[None, :, None]
    c = np.arange(n)[None, None, :]
    table = (p * a * ((b + c) // n)) % n
    return CocycleTable(g, table, n)


def coboundary(beta: TwoCochain) -> CocycleTable:
    """``(d beta)(a,b,c) = beta(b,c) - beta(ab,c) + beta(a,bc) - beta(a,b)``."""
    g = beta.group
    mul = g.mul_array
    B = beta.table
    m = g.order
    a = np.arange(m)[:, None, None]
    b = np.arange(m)[None, :, None]
    c = np.arange(m)[None, None, :]
    ab = mul[a, b]
    bc = mul[b, c]
    table = B[b, c] - B[ab, c] + B[a, bc] - B[a, b]
    return CocycleTable(g, table, beta.q)


def multiply_cocycles(w1: CocycleTable, w2: CocycleTable) -> CocycleTable:
    if w1.group != w2.group or w1.q != w2.q:
        raise CocycleError("cocycles live on different groups or moduli")
    return CocycleTable(w1.group, w1.table + w2.table, w1.q)


def verify_cocycle(w: CocycleTable) -> CocycleReport:
    """Exhaustive check of normalization and the 3-cocycle identity."""
    T = np.asarray(w.table)
    q = w.q
    if T.min() < 0 or T.max() >= q:
        bad = np.argwhere((T < 0) | (T >= q))[0]
        return CocycleReport(False, "range", tuple(int(v) for v in bad))
    for axis_slice in ((0, slice(None), slice(None)), (slice(None), 0, slice(None)),
                       (slice(None), slice(None), 0)):
        sub = T[axis_slice]
        if sub.any():
            i, j = (int(v) for v in np.argwhere(sub)[0])
            idx = [i, j]
            witness = tuple(0 if s == 0 else idx.pop(0) for s in axis_slice)
            return CocycleReport(False, "normalization", witness)
    mul = w.group.mul_array
    m = w.group.order
    a = np.arange(m)[:, None, None, None]
    b = np.arange(m)[None, :, None, None]
    c = np.arange(m)[None, None, :, None]
    d = np.arange(m)[None, None, None, :]
    lhs = (T[b, c, d] + T[a, mul[b, c], d] + T[a, b, c]) % q
    rhs = (T[mul[a, b], c, d] + T[a, b, mul[c, d]]) % q
    bad = np.argwhere(lhs != rhs)
    if len(bad):
        wit = tuple(int(v) for v in bad[0])
        return CocycleReport(False, "identity", wit, int(lhs[wit]), int(rhs[wit]))
    return CocycleReport(True)


def cocycle_from_json(data: dict, group: GroupTable) -> CocycleTable:
    m = group.order
    flat = data.get("omega")
    if flat is None or len(flat) != m ** 3:
        raise CocycleError(f"cocycle file needs 'omega' with {m ** 3} entries")
    return CocycleTable(group, np.array(flat, dtype=np.int64).reshape(m, m, m), int(data.get("q", m)))


def load_cocycle(path, group: GroupTable) -> CocycleTable:
    with open(path) as f:
        return cocycle_from_json(json.load(f), group)
