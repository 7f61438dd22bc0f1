"""Group backends: tables, built-in families, subgroups, conjugation."""

from __future__ import annotations

import random

import pytest

from hrg import (
    SizeExceeded,
    Subgroup,
    TableInvalid,
    build_group,
    conjugate_subgroup,
    cyclic_group,
    dihedral_group,
    direct_product,
    max_group_order,
    subgroup,
    subgroup_generated,
    symmetric_group,
    table_group,
    trivial_subgroup,
)
from conftest import ids, naive_closure


def test_cyclic_three_table():
    g = cyclic_group(3)
    assert g.order == 3
    assert g.names == ("1", "x", "x2")
    assert g.mul(1, 1) == 2  # x * x = x2
    assert g.mul(1, 2) == 0
    assert g.inv(1) == 2


def test_dihedral_order_is_twice_m():
    for m in range(1, 7):
        g = dihedral_group(m)
        assert g.order == 2 * m
        # reflections square to the identity
        for k in range(m, 2 * m):
            assert g.mul(k, k) == 0


def test_dihedral_table_revalidates():
    g = dihedral_group(4)
    rebuilt = table_group(g.mul_table, g.names)
    assert rebuilt.mul_table == g.mul_table
    assert rebuilt.inv_table == g.inv_table


def test_symmetric_group_names_and_order():
    g = symmetric_group(3)
    assert g.order == 6
    assert g.names[0] == "1"
    assert "213" in g.names and "321" in g.names
    with pytest.raises(ValueError):
        symmetric_group(6)


def test_table_without_inverse_rejected():
    # mul(1,1) = 1 leaves element 1 with no inverse
    with pytest.raises(TableInvalid):
        table_group([[0, 1], [1, 1]])


def test_table_identity_must_be_zero():
    with pytest.raises(TableInvalid):
        table_group([[1, 0], [0, 1]])


def test_table_associativity_checked():
    g = symmetric_group(3)
    rows = [list(r) for r in g.mul_table]
    rows[1][2] = 4 if rows[1][2] != 4 else 5  # corrupt one product
    with pytest.raises(TableInvalid):
        table_group(rows)


def test_table_names_must_be_distinct():
    with pytest.raises(TableInvalid):
        table_group([[0, 1], [1, 0]], ["e", "e"])


def test_build_group_specs():
    assert build_group({"type": "cyclic", "n": 3}).order == 3
    assert build_group({"type": "dihedral", "m": 4}).order == 8
    assert build_group({"type": "symmetric", "k": 3}).order == 6
    prod = build_group(
        {"type": "product", "factors": [{"type": "cyclic", "n": 2}, {"type": "cyclic", "n": 3}]}
    )
    assert prod.order == 6
    with pytest.raises(ValueError):
        build_group({"type": "frobnicate"})
    with pytest.raises(ValueError):
        build_group({"type": "cyclic"})


def test_size_cap(monkeypatch):
    with pytest.raises(SizeExceeded):
        cyclic_group(30_001)
    monkeypatch.setenv("HRG_MAX_GROUP_ORDER", "10")
    assert max_group_order() == 10
    with pytest.raises(SizeExceeded):
        cyclic_group(12)
    assert cyclic_group(10).order == 10
    monkeypatch.setenv("HRG_MAX_GROUP_ORDER", "zero")
    with pytest.raises(SizeExceeded):
        max_group_order()


def test_subgroup_generated_examples(s3):
    s, t = ids(s3, "s", "t")
    st, ts = ids(s3, "st", "ts")
    assert subgroup_generated(s3.group, [s]).elements == (0, s)
    assert subgroup_generated(s3.group, [st]).elements == tuple(sorted((0, st, ts)))
    assert len(subgroup_generated(s3.group, [s, t])) == 6
    assert subgroup_generated(s3.group, []).elements == (0,)


def test_subgroup_generated_matches_naive_closure():
    rng = random.Random(7)
    for grp in (dihedral_group(6), symmetric_group(4)):
        for _ in range(20):
            gens = rng.sample(range(grp.order), rng.randint(0, 3))
            got = subgroup_generated(grp, gens)
            assert got.element_set == naive_closure(grp, gens)
            regen = subgroup_generated(grp, got.elements)
            assert regen.elements == got.elements


def test_conjugate_subgroup_examples(s3, z2z2):
    a = z2z2.group.id_of("a")
    b = z2z2.group.id_of("b")
    sub_a = subgroup(z2z2.group, [a])
    assert conjugate_subgroup(sub_a, b).elements == sub_a.elements  # abelian

    t, ts, s = ids(s3, "t", "ts", "s")
    sub_t = subgroup(s3.group, [t])
    assert conjugate_subgroup(sub_t, ts).elements == (0, s)
    assert conjugate_subgroup(subgroup(s3.group, [s]), 0).elements == (0, s)


def test_conjugate_preserves_order():
    grp = symmetric_group(4)
    rng = random.Random(3)
    for _ in range(25):
        sub = subgroup_generated(grp, rng.sample(range(grp.order), 2))
        g = rng.randrange(grp.order)
        conj = conjugate_subgroup(sub, g)
        assert len(conj) == len(sub)


def test_subgroup_equality_is_element_set_equality(s3):
    s, t = ids(s3, "s", "t")
    assert subgroup(s3.group, [s]) == subgroup_generated(s3.group, [s])
    assert subgroup(s3.group, [s]) != subgroup(s3.group, [t])
    assert trivial_subgroup(s3.group) == Subgroup(s3.group, (0,))


def test_subgroup_validation():
    grp = symmetric_group(3)
    with pytest.raises(ValueError):
        Subgroup(grp, (1,))  # missing identity
    with pytest.raises(ValueError):
        Subgroup(grp, (0, grp.id_of("231")))  # 3-cycle alone is not closed


def test_builtin_tables_are_associative():
    for grp in (cyclic_group(5), dihedral_group(5), symmetric_group(3),
                direct_product(cyclic_group(2), cyclic_group(3))):
        n = grp.order
        for a in range(n):
            for b in range(n):
                for c in range(n):
                    assert grp.mul(grp.mul(a, b), c) == grp.mul(a, grp.mul(b, c))


def test_name_lookup_roundtrip():
    grp = dihedral_group(3)
    for i in range(grp.order):
        assert grp.id_of(grp.names[i]) == i
    with pytest.raises(ValueError):
        grp.id_of("nope")
