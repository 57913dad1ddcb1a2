"""Monomial matrices over ``mu_q`` and finite-closure certification.

A :class:`MonomialMatrix` of degree ``d`` sends basis vector ``i`` to
``zeta**phase[i]`` times basis vector ``perm[i]``.  Products compose right to
left: ``multiply(a, b)`` applies ``b`` first.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass

import numpy as np


class MonomialError(ValueError):
    pass


class ShapeMismatchError(MonomialError):
    pass


class UnknownGeneratorError(MonomialError):
    pass


@dataclass(frozen=True)
class MonomialMatrix:
    perm: tuple
    phase: tuple
    q: int

    def __post_init__(self):
        d = len(self.perm)
        if len(self.phase) != d:
            raise MonomialError("perm and phase lengths differ")
        if sorted(self.perm) != list(range(d)):
            raise MonomialError("perm is not a bijection")
        if self.q < 1 or any(not 0 <= p < self.q for p in self.phase):
            raise MonomialError(f"phases must lie in 0..{self.q - 1}")

    @property
    def degree(self) -> int:
        return len(self.perm)

    @classmethod
    def make(cls, perm, phase, q: int) -> "MonomialMatrix":
        return cls(tuple(int(p) for p in perm), tuple(int(x) % q for x in phase), int(q))

    @classmethod
    def identity(cls, d: int, q: int) -> "MonomialMatrix":
        return cls(tuple(range(d)), (0,) * d, q)

    def key(self) -> bytes:
        """Canonical hashable encoding."""
        return np.asarray(self.perm + self.phase, dtype=np.int32).tobytes()

    def to_dense(self) -> np.ndarray:
        """Dense complex matrix; column ``i`` holds the image of basis vector ``i``."""
        d = self.degree
        m = np.zeros((d, d), dtype=complex)
        z = np.exp(2j * np.pi / self.q)
        for i, (p, e) in enumerate(zip(self.perm, self.phase)):
            m[p, i] = z ** e
        return m

    def to_json(self) -> dict:
        return {"degree": self.degree, "q": self.q, "perm": list(self.perm),
                "phase": list(self.phase)}

    @classmethod
    def from_json(cls, data: dict) -> "MonomialMatrix":
        m = cls.make(data["perm"], data["phase"], data["q"])
        if m.degree != data.get("degree", m.degree):
            raise MonomialError("degree field disagrees with perm length")
        return m

    def __matmul__(self, other):
        return multiply(self, other)


def _check(a: MonomialMatrix, b: MonomialMatrix):
    if a.degree != b.degree or a.q != b.q:
        raise ShapeMismatchError(f"({a.degree}, q={a.q}) vs ({b.degree}, q={b.q})")


def multiply(a: MonomialMatrix, b: MonomialMatrix) -> MonomialMatrix:
    """``a b``: apply ``b`` then ``a``."""
    _check(a, b)
    q = a.q
    ap, aph = a.perm, a.phase
    perm = tuple(ap[j] for j in b.perm)
    phase = tuple((e + aph[j]) % q for j, e in zip(b.perm, b.phase))
    return MonomialMatrix(perm, phase, q)


def inverse(a: MonomialMatrix) -> MonomialMatrix:
    d, q = a.degree, a.q
    perm = [0] * d
    phase = [0] * d
    for i, (j, e) in enumerate(zip(a.perm, a.phase)):
        perm[j] = i
        phase[j] = (-e) % q
    return MonomialMatrix(tuple(perm), tuple(phase), q)


def power(a: MonomialMatrix, k: int) -> MonomialMatrix:
    if k < 0:
        a, k = inverse(a), -k
    out = MonomialMatrix.identity(a.degree, a.q)
    base = a
    while k:
        if k & 1:
            out = multiply(out, base)
        base = multiply(base, base)
        k >>= 1
    return out


def equal(a: MonomialMatrix, b: MonomialMatrix) -> bool:
    _check(a, b)
    return a.perm == b.perm and a.phase == b.phase


def equal_up_to_scalar(a: MonomialMatrix, b: MonomialMatrix):
    """The exponent ``c`` with ``b = zeta**c a``, or None."""
    _check(a, b)
    if a.perm != b.perm:
        return None
    if a.degree == 0:
        return 0
    diffs = {(y - x) % a.q for x, y in zip(a.phase, b.phase)}
    return diffs.pop() if len(diffs) == 1 else None


def is_permutation(a: MonomialMatrix) -> bool:
    return not any(a.phase)


def is_scalar(a: MonomialMatrix):
    """The exponent ``c`` if ``a = zeta**c I``, else None."""
    return equal_up_to_scalar(MonomialMatrix.identity(a.degree, a.q), a)


CAP_EXCEEDED = "cap-exceeded"


def element_order(a: MonomialMatrix, cap: int):
    """Smallest ``k <= cap`` with ``a**k = 1``, else :data:`CAP_EXCEEDED`."""
    if cap < 1:
        raise MonomialError("cap must be positive")
    ident = MonomialMatrix.identity(a.degree, a.q)
    x = a
    for k in range(1, cap + 1):
        if x == ident:
            return k
        x = multiply(a, x)
    return CAP_EXCEEDED


def order_from_cycles(a: MonomialMatrix) -> int:
    """Order via cycle structure: each cycle contributes ``len * q / gcd(q, phase sum)``."""
    seen = [False] * a.degree
    out = 1
    for i in range(a.degree):
        if seen[i]:
            continue
        j, length, tot = i, 0, 0
        while not seen[j]:
            seen[j] = True
            tot += a.phase[j]
            j = a.perm[j]
            length += 1
        k = length * (a.q // math.gcd(a.q, tot % a.q))
        out = out * k // math.gcd(out, k)
    return out


@dataclass(frozen=True)
class ClosureResult:
    order: int | None
    levels: int
    max_element_order: int
    cap_exceeded: bool = False

    def __bool__(self):
        return not self.cap_exceeded

    def to_json(self) -> dict:
        return {"order": self.order, "levels": self.levels,
                "max_element_order": self.max_element_order,
                "cap_exceeded": self.cap_exceeded}


def closure(generators, cap: int = 10 ** 6, sample: int = 64) -> ClosureResult:
    """Breadth-first closure of the group generated by ``generators``.

    Each level multiplies the frontier on the left by every generator and
    inverse.  ``max_element_order`` is the largest order among the first
    ``sample`` elements reached, a cheap fingerprint for certificates.
    """
    gens = list(generators)
    if not gens:
        raise MonomialError("closure needs at least one generator")
    for g in gens[1:]:
        _check(gens[0], g)
    d, q = gens[0].degree, gens[0].q
    step = gens + [inverse(g) for g in gens]
    ident = MonomialMatrix.identity(d, q)
    seen = {ident.key()}
    frontier = [ident]
    sampled = [ident]
    levels = 0
    while frontier:
        nxt = []
        for x in frontier:
            for g in step:
                y = multiply(g, x)
                k = y.key()
                if k in seen:
                    continue
                seen.add(k)
                if len(seen) > cap:
                    return ClosureResult(None, levels + 1, _max_order(sampled), True)
                nxt.append(y)
                if len(sampled) < sample:
                    sampled.append(y)
        if nxt:
            levels += 1
        frontier = nxt
    return ClosureResult(len(seen), levels, _max_order(sampled))


def _max_order(ms) -> int:
    return max(order_from_cycles(m) for m in ms)


def permutation_closure_order(perms, cap: int = 10 ** 6) -> int | None:
    """Order of a permutation group by plain BFS over tuples (an independent oracle)."""
    perms = [tuple(p) for p in perms]
    if not perms:
        return 1
    ident = tuple(range(len(perms[0])))
    seen = {ident}
    queue = deque([ident])
    while queue:
        x = queue.popleft()
        for p in perms:
            y = tuple(p[i] for i in x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    return None
                queue.append(y)
    return len(seen)


# words over named generators

def parse_word(text: str) -> list:
    """``"a b^-1 (a b)^3"`` style words; ``()`` or empty is the identity.

    Returns a list of ``(name, exponent)``; parenthesized groups are expanded.
    """
    tokens = _tokenize(text)
    out, pos = _parse_seq(tokens, 0)
    if pos != len(tokens):
        raise MonomialError(f"unexpected token {tokens[pos]!r} in {text!r}")
    return out


def _tokenize(text: str) -> list:
    toks, i = [], 0
    while i < len(text):
        ch = text[i]
        if ch.isspace() or ch in "*.":
            i += 1
        elif ch in "()":
            toks.append(ch)
            i += 1
        elif ch == "^":
            j = i + 1
            if j < len(text) and text[j] in "+-":
                j += 1
            while j < len(text) and text[j].isdigit():
                j += 1
            try:
                toks.append(("^", int(text[i + 1:j])))
            except ValueError:
                raise MonomialError(f"bad exponent in {text!r}") from None
            i = j
        else:
            j = i
            while j < len(text) and (text[j].isalnum() or text[j] in "_[],"):
                j += 1
            if j == i:
                raise MonomialError(f"unexpected character {ch!r} in {text!r}")
            toks.append(("name", text[i:j]))
            i = j
    return toks


def _parse_seq(toks, pos):
    out = []
    while pos < len(toks) and toks[pos] != ")":
        t = toks[pos]
        if t == "(":
            inner, pos = _parse_seq(toks, pos + 1)
            if pos >= len(toks) or toks[pos] != ")":
                raise MonomialError("unbalanced parentheses")
            pos += 1
            item = inner
        elif isinstance(t, tuple) and t[0] == "name":
            item = [(t[1], 1)]
            pos += 1
        else:
            raise MonomialError(f"unexpected token {t!r}")
        if pos < len(toks) and isinstance(toks[pos], tuple) and toks[pos][0] == "^":
            k = toks[pos][1]
            pos += 1
            if k < 0:
                item = [(n, -e) for n, e in reversed(item)] * (-k)
            else:
                item = item * k
        out += item
    return out, pos


def evaluate_word(word, generators: dict, degree: int | None = None, q: int | None = None):
    """Product of a parsed word, applied right to left like function composition."""
    if isinstance(word, str):
        word = parse_word(word)
    if generators:
        any_g = next(iter(generators.values()))
        degree, q = any_g.degree, any_g.q
    out = MonomialMatrix.identity(degree or 0, q or 1)
    for name, e in word:
        if name not in generators:
            raise UnknownGeneratorError(f"unknown generator {name!r}")
        out = multiply(out, power(generators[name], e))
    return out


@dataclass(frozen=True)
class RelationReport:
    lhs: str
    rhs: str
    mode: str
    ok: bool
    scalar: int | None = None
    lhs_digest: str = ""
    rhs_digest: str = ""

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        return {"lhs": self.lhs, "rhs": self.rhs, "mode": self.mode, "ok": self.ok,
                "scalar": self.scalar, "lhs_digest": self.lhs_digest,
                "rhs_digest": self.rhs_digest}


def _digest(m: MonomialMatrix) -> str:
    import hashlib
    return hashlib.sha256(m.key()).hexdigest()[:12]


def check_relation(lhs, rhs, generators: dict, mode: str = "exact") -> RelationReport:
    """Compare two words; ``mode`` is ``'exact'`` or ``'up-to-scalar'``."""
    if mode not in ("exact", "up-to-scalar"):
        raise MonomialError(f"unknown mode {mode!r}")
    a = evaluate_word(lhs, generators)
    b = evaluate_word(rhs, generators)
    c = equal_up_to_scalar(a, b)
    ok = c == 0 if mode == "exact" else c is not None
    return RelationReport(str(lhs), str(rhs), mode, ok, c if ok else None, _digest(a), _digest(b))


def save_matrices(path, matrices: dict) -> None:
    with open(path, "w") as f:
        json.dump({k: m.to_json() for k, m in matrices.items()}, f)
