import pytest

from planeschemes.errors import UnsupportedPrime
from planeschemes.permgroup import perm_order
from planeschemes.subgroups import (
    SubgroupSpec,
    element_order_profile,
    exceptional_subgroups,
    find_subgroup,
    lattice_subgroup,
    lemma_orbit_size_bound,
    parse_spec,
    subgroup_lattice,
)


def test_parse_spec():
    assert parse_spec("Cyclic:4") == SubgroupSpec("cyclic", 4)
    assert parse_spec("Dihedral:3") == SubgroupSpec("dihedral", 3)
    assert parse_spec("FrobeniusPD:2") == SubgroupSpec("frobenius", 2)
    assert parse_spec("A4") == SubgroupSpec("alt4")
    assert parse_spec("S4") == SubgroupSpec("sym4")
    assert parse_spec("A5") == SubgroupSpec("alt5")
    with pytest.raises(ValueError):
        parse_spec("B7")


def test_spec_validation():
    with pytest.raises(ValueError):
        SubgroupSpec("cyclic", 0)
    with pytest.raises(ValueError):
        SubgroupSpec("dihedral", 1)
    with pytest.raises(ValueError):
        SubgroupSpec("nonsense")


def test_cyclic_subgroups():
    sub = find_subgroup(5, SubgroupSpec("cyclic", 1))
    assert sub.order() == 1
    assert sub.orbit_data().sizes == (1,) * 6

    sub = find_subgroup(5, SubgroupSpec("cyclic", 4))
    assert sub.order() == 4
    # no element of order 7 in PGL(2,5): orders divide 4, 5, or 6
    assert find_subgroup(5, SubgroupSpec("cyclic", 7)) is None


def test_dihedral_subgroups():
    sub = find_subgroup(7, SubgroupSpec("dihedral", 3))
    assert sub.order() == 6
    profile = element_order_profile(sub.group)
    assert profile == {1: 1, 2: 3, 3: 2}
    data = sub.orbit_data()
    assert data.size_set <= {2, 3, 6}


def test_frobenius_subgroups():
    sub = find_subgroup(7, SubgroupSpec("frobenius", 2))
    assert sub.order() == 14
    assert sub.orbit_data().size_set <= {1, 7}
    assert find_subgroup(7, SubgroupSpec("frobenius", 4)) is None   # 4 | 6 fails


def test_exceptional_subgroups_found():
    a4 = find_subgroup(7, SubgroupSpec("alt4"))
    assert a4.order() == 12
    profile = element_order_profile(a4.group)
    assert profile == {1: 1, 2: 3, 3: 8}
    assert 4 not in profile

    s4 = find_subgroup(5, SubgroupSpec("sym4"))
    assert s4.order() == 24
    assert element_order_profile(s4.group) == {1: 1, 2: 9, 3: 8, 4: 6}

    a5 = find_subgroup(5, SubgroupSpec("alt5"))
    assert a5.order() == 60
    # alt(5) needs p = 5 or p = +-1 mod 5
    assert find_subgroup(7, SubgroupSpec("alt5")) is None
    a5_19 = find_subgroup(19, SubgroupSpec("alt5"))
    assert a5_19 is not None and a5_19.order() == 60


def test_lemma_orbit_bounds():
    assert lemma_orbit_size_bound(SubgroupSpec("cyclic", 4), 7) == {1, 4}
    assert lemma_orbit_size_bound(SubgroupSpec("dihedral", 3), 7) == {2, 3, 6}
    assert lemma_orbit_size_bound(SubgroupSpec("frobenius", 2), 7) == {1, 7}
    # a dihedral group of order 2p is also C_p : C_2: the union applies
    assert lemma_orbit_size_bound(SubgroupSpec("dihedral", 7), 7) == {1, 2, 7, 14}


def test_subgroup_lattice_counts():
    lat3 = subgroup_lattice(3)
    assert len(lat3) == 30          # the 30 subgroups of sym(4)
    assert {len(s) for s in lat3} <= {1, 2, 3, 4, 6, 8, 12, 24}
    lat5 = subgroup_lattice(5)
    assert len(lat5) == 156         # the 156 subgroups of sym(5)
    with pytest.raises(UnsupportedPrime):
        subgroup_lattice(11)


def test_lattice_entries_are_groups():
    for ids in subgroup_lattice(3):
        sub = lattice_subgroup(3, ids)
        assert sub.group.order() == len(ids)
        assert (sub.order() == 1) == (len(ids) == 1)
        assert 24 % sub.order() == 0


def test_exceptional_enumeration():
    a4s = exceptional_subgroups(5, "alt4")
    assert len(a4s) == 5
    for sub in a4s:
        assert sub.order() == 12
    assert exceptional_subgroups(7, "alt5") == []
    a4s7 = exceptional_subgroups(7, "alt4")
    assert len(a4s7) == 14
    for sub in a4s7:
        assert sub.orbit_data().sizes == (4, 4)


def test_orbit_sizes_divide_group_order():
    for p in (5, 7, 11, 13):
        for spec in (SubgroupSpec("cyclic", 3), SubgroupSpec("dihedral", 2),
                     SubgroupSpec("frobenius", 1), SubgroupSpec("alt4")):
            sub = find_subgroup(p, spec)
            if sub is None:
                continue
            data = sub.orbit_data()
            assert sum(data.sizes) == p + 1
            for s in data.size_set:
                assert sub.order() % s == 0


def test_unsupported_prime_bound():
    with pytest.raises(UnsupportedPrime):
        find_subgroup(37, SubgroupSpec("cyclic", 2))
