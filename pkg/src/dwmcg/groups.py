"""Finite groups as explicit multiplication tables.

Elements are dense indices ``0..m-1`` and the identity is always ``0``.
Every other module reads the tables through :class:`GroupTable`.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from itertools import permutations, product
from pathlib import Path

import numpy as np


class GroupError(ValueError):
    """Raised for invalid group tables or element indices."""


class InvalidOrderError(GroupError):
    pass


class TableInvalidError(GroupError):
    """A table failed validation; ``witness`` holds the offending indices."""

    def __init__(self, message, witness=()):
        super().__init__(message)
        self.witness = tuple(witness)


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its multiplication table.

    ``mul[a][b]`` is the index of ``a*b``; ``inv[a]`` the index of ``a^-1``.
    Instances are immutable; build them with :func:`make_cyclic`,
    :func:`make_from_table`, :func:`make_product` or :func:`builtin_group`.
    """

    order: int
    mul: tuple
    inv: tuple
    name: str = ""
    identity: int = field(default=0, init=False)

    @property
    def mul_array(self) -> np.ndarray:
        return np.array(self.mul, dtype=np.int64)

    @property
    def elements(self) -> range:
        return range(self.order)

    def check(self, *elements):
        for a in elements:
            if not (0 <= a < self.order):
                raise GroupError(f"element index {a} out of range for {self.name or 'group'} "
                                 f"of order {self.order}")

    def prod(self, *elements) -> int:
        """Ordered product of any number of elements."""
        out = 0
        mul = self.mul
        for a in elements:
            out = mul[out][a]
        return out

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = self.inv[a], -k
        out = 0
        for _ in range(k):
            out = self.mul[out][a]
        return out

    def element_order(self, a: int) -> int:
        k, x = 1, a
        while x != 0:
            x = self.mul[x][a]
            k += 1
        return k

    def is_abelian(self) -> bool:
        arr = self.mul_array
        return bool((arr == arr.T).all())

    def __eq__(self, other):
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.mul == other.mul

    def __hash__(self):
        return hash(self.mul)

    def __repr__(self):
        return f"GroupTable(name={self.name!r}, order={self.order})"

    def to_json(self) -> dict:
        return {"name": self.name, "order": self.order, "mul": [list(r) for r in self.mul]}


def commutator(g: GroupTable, a: int, b: int) -> int:
    """Return ``a b a^-1 b^-1``."""
    g.check(a, b)
    return g.prod(a, b, g.inv[a], g.inv[b])


def conjugate(g: GroupTable, x: int, a: int) -> int:
    """Return ``x a x^-1``."""
    g.check(x, a)
    return g.prod(x, a, g.inv[x])


def _freeze(arr) -> tuple:
    return tuple(tuple(int(v) for v in row) for row in arr)


def make_cyclic(n: int, name: str | None = None) -> GroupTable:
    if n < 1:
        raise InvalidOrderError(f"cyclic group needs n >= 1, got {n}")
    idx = np.arange(n)
    mul = (idx[:, None] + idx[None, :]) % n
    inv = tuple(int((-a) % n) for a in range(n))
    return GroupTable(n, _freeze(mul), inv, name or f"Z{n}")


def validate_table(mul) -> tuple[np.ndarray, int]:
    """Check the group axioms; return the array and the identity index."""
    arr = np.asarray(mul)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise TableInvalidError(f"table must be a non-empty square array, got shape {arr.shape}")
    m = arr.shape[0]
    if not np.issubdtype(arr.dtype, np.integer):
        raise TableInvalidError("table entries must be integers")
    if arr.min() < 0 or arr.max() >= m:
        bad = np.argwhere((arr < 0) | (arr >= m))[0]
        raise TableInvalidError("entry out of range", tuple(int(v) for v in bad))
    full = np.arange(m)
    for a in range(m):
        if not np.array_equal(np.sort(arr[a]), full):
            raise TableInvalidError(f"row {a} is not a permutation", (a,))
        if not np.array_equal(np.sort(arr[:, a]), full):
            raise TableInvalidError(f"column {a} is not a permutation", (a,))
    # (ab)c vs a(bc) over all triples at once
    left = arr[arr[:, :, None], np.arange(m)[None, None, :]]
    right = arr[np.arange(m)[:, None, None], arr[None, :, :]]
    bad = np.argwhere(left != right)
    if len(bad):
        a, b, c = (int(v) for v in bad[0])
        raise TableInvalidError(f"not associative at ({a}, {b}, {c})", (a, b, c))
    ids = [e for e in range(m) if np.array_equal(arr[e], full) and np.array_equal(arr[:, e], full)]
    if not ids:
        raise TableInvalidError("no identity element")
    return arr, ids[0]


def make_from_table(mul, name: str = "") -> GroupTable:
    """Validate a raw table and relabel so the identity sits at index 0."""
    arr, e = validate_table(mul)
    m = arr.shape[0]
    if e != 0:
        # swap labels 0 and e
        perm = np.arange(m)
        perm[0], perm[e] = e, 0
        arr = perm[arr[np.ix_(perm, perm)]]
    inv = tuple(int(np.flatnonzero(arr[a] == 0)[0]) for a in range(m))
    return GroupTable(m, _freeze(arr), inv, name)


def make_product(g: GroupTable, h: GroupTable, name: str | None = None) -> GroupTable:
    """Direct product; pair ``(a, b)`` gets index ``a * |h| + b``."""
    n = h.order
    m = g.order * n
    mul = np.empty((m, m), dtype=np.int64)
    for a, b, c, d in product(range(g.order), range(n), range(g.order), range(n)):
        mul[a * n + b, c * n + d] = g.mul[a][c] * n + h.mul[b][d]
    inv = tuple(g.inv[a] * n + h.inv[b] for a in range(g.order) for b in range(n))
    return GroupTable(m, _freeze(mul), inv, name or f"{g.name}x{h.name}")


def from_permutations(perms, name: str = "") -> GroupTable:
    """Group table of a list of permutations closed under composition.

    ``(p*q)[i] = p[q[i]]``; the identity permutation must be in the list.
    """
    perms = [tuple(p) for p in perms]
    index = {p: i for i, p in enumerate(perms)}
    mul = [[index[tuple(p[i] for i in q)] for q in perms] for p in perms]
    return make_from_table(mul, name)


def symmetric_group(n: int) -> GroupTable:
    return from_permutations(sorted(permutations(range(n))), f"S{n}")


def load_group(path, name: str | None = None) -> GroupTable:
    with open(path) as f:
        data = json.load(f)
    return group_from_json(data, name)


def group_from_json(data: dict, name: str | None = None) -> GroupTable:
    if "mul" not in data:
        raise TableInvalidError("group file needs a 'mul' table")
    if "order" in data and data["order"] != len(data["mul"]):
        raise TableInvalidError(f"declared order {data['order']} != table size {len(data['mul'])}")
    return make_from_table(data["mul"], name or data.get("name", ""))


def save_group(g: GroupTable, path) -> None:
    Path(path).write_text(json.dumps(g.to_json()))


_SHIPPED = ("S3", "D4", "Q8")


def builtin_group(spec: str) -> GroupTable:
    """Resolve names like ``Z4``, ``Z2xZ2``, ``S3``, ``D4``, ``Q8``, ``trivial``."""
    parts = spec.split("x")
    if len(parts) > 1 and all(parts):
        g = builtin_group(parts[0])
        for p in parts[1:]:
            g = make_product(g, builtin_group(p))
        return g
    if spec in ("trivial", "1", "Z1"):
        return make_cyclic(1, "Z1")
    if spec[:1] == "Z" and spec[1:].isdigit():
        return make_cyclic(int(spec[1:]))
    if spec in _SHIPPED:
        ref = resources.files("dwmcg") / "data" / "groups" / f"{spec.lower()}.json"
        return group_from_json(json.loads(ref.read_text()))
    raise GroupError(f"unknown builtin group {spec!r}")
