from __future__ import annotations

import itertools

import pytest

from dseq.groups import (
    GroupConstructionError,
    FiniteGroup,
    build_group,
    classify,
    cyclic_group,
    dihedral_group,
    direct_product,
    frobenius21_group,
    parse_group_spec,
    primary_decomposition,
    quaternion_group,
    table_from_file,
)

CATALOG = ["Z1", "Z4", "Z2xZ2", "D6", "D8", "Q8", "Z12", "F21", "D10xZ2", "Z2xZ2xZ2"]


def assert_group_axioms(g: FiniteGroup) -> None:
    n = g.order
    for j in range(n):
        assert g.mul(0, j) == j
        assert g.mul(j, 0) == j
    full = set(range(n))
    for i in range(n):
        assert set(g.table[i]) == full
        assert {g.table[r][i] for r in range(n)} == full
    for a in range(n):
        assert g.mul(a, g.inv(a)) == 0
        assert g.mul(g.inv(a), a) == 0
    if n <= 64:
        for a, b, c in itertools.product(range(n), repeat=3):
            assert g.mul(g.mul(a, b), c) == g.mul(a, g.mul(b, c))


@pytest.mark.parametrize("spec", CATALOG)
def test_catalog_groups_satisfy_axioms(spec):
    assert_group_axioms(build_group(spec))


def test_trivial_group():
    g = cyclic_group(1)
    assert g.order == 1
    assert g.table == ((0,),)


def test_cyclic_is_modular_addition():
    g = cyclic_group(4)
    assert all(g.mul(i, j) == (i + j) % 4 for i in range(4) for j in range(4))
    assert g.mul(3, 2) == 1
    assert g.mul(3, g.inv(3)) == 0


def test_dihedral6_structure():
    # oracle: orders from the presentation r^3 = s^2 = 1, s r s = r^-1
    g = dihedral_group(6)
    assert not g.is_abelian
    assert sorted(g.element_order(x) for x in range(6)) == [1, 2, 2, 2, 3, 3]
    assert len(g.involutions()) == 3


def test_dihedral_rejects_bad_orders():
    with pytest.raises(GroupConstructionError):
        dihedral_group(7)
    with pytest.raises(GroupConstructionError):
        dihedral_group(4)


def test_quaternion_structure():
    # oracle: i^2 = j^2 = k^2 = ijk = -1 forces one involution, six order-4 elements
    g = quaternion_group()
    assert sorted(g.element_order(x) for x in range(8)) == [1, 2, 4, 4, 4, 4, 4, 4]
    minus_one = next(x for x in range(1, 8) if g.element_order(x) == 2)
    assert g.inv(minus_one) == minus_one


def test_classify_examples():
    assert classify(quaternion_group()).binary is True
    assert classify(quaternion_group()).abelian is False
    assert classify(build_group("Z2xZ2")).binary is False
    f21 = classify(frobenius21_group())
    assert f21.odd and not f21.abelian
    assert classify(dihedral_group(6)).binary is False
    # Z_2m is binary exactly when it has a unique involution, i.e. always
    for m in (1, 2, 3, 5):
        assert classify(cyclic_group(2 * m)).binary is True


def test_product_order_and_projections():
    specs = ["Z3", "Z4", "D6", "Q8"]
    for a, b in itertools.product(specs, repeat=2):
        ga, gb = build_group(a), build_group(b)
        prod = direct_product([ga, gb])
        assert prod.order == ga.order * gb.order
        nb = gb.order
        for x, y in itertools.product(range(prod.order), repeat=2):
            z = prod.mul(x, y)
            assert z // nb == ga.mul(x // nb, y // nb)
            assert z % nb == gb.mul(x % nb, y % nb)


def test_mixed_radix_first_factor_most_significant():
    prod = build_group("Z2xZ3")
    # element (1, 2) must be index 1*3 + 2
    assert prod.mul(3, 2) == (1 * 3 + 2)


def test_primary_decomposition_examples():
    assert primary_decomposition([12]) == (0, [3, 4])
    assert primary_decomposition([2, 2, 6]) == (3, [3])
    assert primary_decomposition([8, 9]) == (0, [8, 9])
    assert primary_decomposition([1]) == (0, [])


def test_spec_parsing_roundtrip():
    spec = parse_group_spec("D10xZ4xZ9")
    assert str(spec) == "D10xZ4xZ9"
    assert build_group(spec).order == 360
    assert build_group("q8").order == 8
    assert build_group("f21").order == 21
    with pytest.raises(ValueError):
        parse_group_spec("Z0")
    with pytest.raises(ValueError):
        parse_group_spec("D7")
    with pytest.raises(ValueError):
        parse_group_spec("E8")
    with pytest.raises(ValueError):
        parse_group_spec("")


def test_table_file_roundtrip(tmp_path):
    g = dihedral_group(6)
    path = tmp_path / "d6.tbl"
    lines = [str(g.order)] + [" ".join(map(str, row)) for row in g.table]
    path.write_text("\n".join(lines) + "\n")
    loaded = table_from_file(path)
    assert loaded.table == g.table
    assert build_group(f"file:{path}").order == 6


def test_table_file_errors_name_the_axiom(tmp_path):
    bad_identity = tmp_path / "badid.tbl"
    bad_identity.write_text("2\n1 0\n0 1\n")
    with pytest.raises(GroupConstructionError, match="identity"):
        table_from_file(bad_identity)

    bad_latin = tmp_path / "badlatin.tbl"
    bad_latin.write_text("2\n0 1\n1 1\n")
    with pytest.raises(GroupConstructionError, match="latin"):
        table_from_file(bad_latin)

    # latin square with identity but a failing triple product
    loop = [
        [0, 1, 2, 3, 4],
        [1, 0, 3, 4, 2],
        [2, 3, 4, 0, 1],
        [3, 4, 1, 2, 0],
        [4, 2, 0, 1, 3],
    ]
    bad_assoc = tmp_path / "badassoc.tbl"
    bad_assoc.write_text("5\n" + "\n".join(" ".join(map(str, r)) for r in loop) + "\n")
    with pytest.raises(GroupConstructionError, match="associativity"):
        table_from_file(bad_assoc)


def test_frobenius21_is_the_semidirect_product():
    g = frobenius21_group()
    assert g.order == 21
    # the Z3 generator acts on the Z7 part by doubling: b (1,0) b^-1 = (2,0)
    a = 3  # (1, 0)
    b = 1  # (0, 1)
    conj = g.mul(g.mul(b, a), g.inv(b))
    assert conj == 6  # (2, 0) -> index 2*3
