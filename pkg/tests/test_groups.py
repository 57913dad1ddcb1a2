import json
from itertools import permutations, product

import numpy as np
import pytest

from dwmcg.groups import (GroupError, InvalidOrderError, TableInvalidError, builtin_group, commutator,
                          from_permutations, load_group, make_cyclic, make_from_table, make_product,
                          save_group, symmetric_group, validate_table)


def test_cyclic_basics():
    g = make_cyclic(5)
    assert g.order == 5 and g.identity == 0
    assert g.prod(2, 4) == 1
    assert g.inv[2] == 3
    assert g.power(2, -1) == 3
    assert g.element_order(0) == 1 and g.element_order(2) == 5
    assert g.is_abelian()


def test_cyclic_rejects_bad_order():
    with pytest.raises(InvalidOrderError):
        make_cyclic(0)


@pytest.mark.parametrize("name,order,abelian", [("Z4", 4, True), ("Z2xZ2", 4, True), ("S3", 6, False),
                                                ("D4", 8, False), ("Q8", 8, False), ("trivial", 1, True)])
def test_builtins(name, order, abelian):
    g = builtin_group(name)
    assert g.order == order
    assert g.is_abelian() == abelian
    validate_table(g.mul)


def test_unknown_builtin():
    with pytest.raises(GroupError):
        builtin_group("Q9")


def test_s3_matches_permutation_composition():
    # oracle: compose the permutations directly
    perms = sorted(permutations(range(3)))
    g = symmetric_group(3)
    assert g.order == 6
    for i, j in product(range(6), repeat=2):
        comp = tuple(perms[i][perms[j][k]] for k in range(3))
        # symmetric_group relabels only if the identity is not first; it is first here
        assert perms[g.mul[i][j]] == comp


def test_element_orders_q8_d4():
    q8, d4 = builtin_group("Q8"), builtin_group("D4")
    assert sorted(q8.element_order(a) for a in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]
    assert sorted(d4.element_order(a) for a in range(8)) == [1, 2, 2, 2, 2, 2, 4, 4]


def test_product_indexing():
    g = make_product(make_cyclic(2), make_cyclic(3))
    assert g.order == 6
    # (1, 2) * (1, 2) = (0, 1)
    assert g.mul[1 * 3 + 2][1 * 3 + 2] == 0 * 3 + 1
    assert g.is_abelian()


def test_identity_relabelled_to_zero():
    # Z/3 with the identity stored at index 2
    mul = [[1, 2, 0], [2, 0, 1], [0, 1, 2]]
    g = make_from_table(mul)
    assert g.identity == 0
    assert all(g.mul[0][a] == a for a in range(3))


@pytest.mark.parametrize("mul", [
    [[0, 1], [1, 1]],              # row not a permutation
    [[0, 1, 2], [1, 2, 0]],        # not square
    [[0, 5], [5, 0]],              # out of range
])
def test_invalid_tables(mul):
    with pytest.raises(TableInvalidError):
        make_from_table(mul)


def test_non_associative_latin_square():
    # a Latin square with identity that is not associative
    mul = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(TableInvalidError) as err:
        make_from_table(mul)
    assert len(err.value.witness) == 3


def test_commutator_trivial_in_abelian():
    g = builtin_group("Z2xZ2")
    assert all(commutator(g, a, b) == 0 for a in range(4) for b in range(4))


def test_roundtrip(tmp_path):
    g = builtin_group("D4")
    save_group(g, tmp_path / "d4.json")
    h = load_group(tmp_path / "d4.json")
    assert h == g
    data = json.loads((tmp_path / "d4.json").read_text())
    assert data["order"] == 8


def test_check_range():
    with pytest.raises(GroupError):
        make_cyclic(3).check(3)


def test_from_permutations_matches_mul_array():
    g = from_permutations([(0, 1, 2), (1, 2, 0), (2, 0, 1)], "C3")
    assert np.array_equal(g.mul_array, make_cyclic(3).mul_array)
