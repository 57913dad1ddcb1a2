import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from dwmcg.monomial import (MonomialError, MonomialMatrix, ShapeMismatchError, UnknownGeneratorError,
                            check_relation, closure, element_order, equal_up_to_scalar, evaluate_word,
                            inverse, is_permutation, is_scalar, multiply, order_from_cycles,
                            parse_word, permutation_closure_order, power)


@st.composite
def monomials(draw, d=None, q=None):
    d = draw(st.integers(1, 6)) if d is None else d
    q = draw(st.integers(1, 8)) if q is None else q
    perm = draw(st.permutations(range(d)))
    phase = draw(st.lists(st.integers(0, q - 1), min_size=d, max_size=d))
    return MonomialMatrix.make(perm, phase, q)


@st.composite
def pairs(draw):
    d, q = draw(st.integers(1, 6)), draw(st.integers(1, 8))
    return draw(monomials(d, q)), draw(monomials(d, q))


@settings(max_examples=60)
@given(pairs())
def test_multiply_matches_dense(ab):
    a, b = ab
    assert np.allclose(multiply(a, b).to_dense(), a.to_dense() @ b.to_dense())


@settings(max_examples=60)
@given(monomials())
def test_inverse_and_order(a):
    ident = MonomialMatrix.identity(a.degree, a.q)
    assert multiply(a, inverse(a)) == ident
    k = order_from_cycles(a)
    assert element_order(a, 10 ** 4) == k
    assert power(a, k) == ident
    assert power(a, -1) == inverse(a)


def test_validation():
    with pytest.raises(MonomialError):
        MonomialMatrix((0, 0), (0, 0), 2)
    with pytest.raises(MonomialError):
        MonomialMatrix((0,), (3,), 2)
    with pytest.raises(ShapeMismatchError):
        multiply(MonomialMatrix.identity(2, 3), MonomialMatrix.identity(3, 3))


def test_scalar_detection():
    m = MonomialMatrix.make((0, 1, 2), (2, 2, 2), 5)
    assert is_scalar(m) == 2
    assert is_scalar(MonomialMatrix.make((1, 0), (0, 0), 5)) is None
    assert is_permutation(MonomialMatrix.make((1, 0), (0, 0), 5))
    a = MonomialMatrix.make((1, 0), (1, 3), 5)
    assert equal_up_to_scalar(a, multiply(MonomialMatrix.make((0, 1), (2, 2), 5), a)) == 2


def test_json_roundtrip():
    a = MonomialMatrix.make((2, 0, 1), (1, 0, 4), 6)
    assert MonomialMatrix.from_json(a.to_json()) == a
    bad = dict(a.to_json(), degree=5)
    with pytest.raises(MonomialError):
        MonomialMatrix.from_json(bad)


def test_parse_word():
    assert parse_word("a b^-1") == [("a", 1), ("b", -1)]
    assert parse_word("(a b)^2") == [("a", 1), ("b", 1), ("a", 1), ("b", 1)]
    assert parse_word("()") == []
    assert parse_word("") == []


def test_evaluate_and_relations():
    r = MonomialMatrix.make((1, 2, 0), (0, 0, 0), 3)
    s = MonomialMatrix.make((0, 2, 1), (0, 0, 0), 3)
    gens = {"r": r, "s": s}
    assert check_relation("r^3", "()", gens)
    assert check_relation("s r s", "r^-1", gens)
    assert not check_relation("r s", "s r", gens)
    z = {"z": MonomialMatrix.make((0, 1), (1, 1), 3)}
    assert not check_relation("z", "()", z, "exact")
    rep = check_relation("z", "()", z, "up-to-scalar")
    assert rep.ok and rep.scalar == 2   # rhs = zeta**c lhs
    with pytest.raises(UnknownGeneratorError):
        evaluate_word("t", gens)
    with pytest.raises(MonomialError):
        check_relation("r", "r", gens, "approx")


def test_closure_symmetric_groups():
    # S_n from a transposition and an n-cycle; phases add a cyclic factor
    for n in (3, 4, 5):
        t = MonomialMatrix.make([1, 0] + list(range(2, n)), [0] * n, 1)
        c = MonomialMatrix.make([(i + 1) % n for i in range(n)], [0] * n, 1)
        res = closure([t, c])
        assert res.order == permutation_closure_order([t.perm, c.perm])
        assert res.order == [6, 24, 120][n - 3]
    z = MonomialMatrix.make((0, 1), (1, 1), 4)
    assert closure([z]).order == 4


@settings(max_examples=25, deadline=None)
@given(st.lists(monomials(4, 1), min_size=1, max_size=3))
def test_closure_matches_permutation_oracle(ms):
    assert closure(ms).order == permutation_closure_order([m.perm for m in ms])


def test_closure_cap():
    t = MonomialMatrix.make([1, 0, 2, 3, 4], [0] * 5, 1)
    c = MonomialMatrix.make([1, 2, 3, 4, 0], [0] * 5, 1)
    res = closure([t, c], cap=50)
    assert res.cap_exceeded and res.order is None and not res
    assert element_order(c, 3) == "cap-exceeded"
