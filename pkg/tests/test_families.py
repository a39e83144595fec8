import pytest

from pachner4.canonical import is_isomorphic
from pachner4.errors import NotAChainGluing
from pachner4.families import (alternative_regluings, chain_sites, double_prism_cylinder,
                               dsb2, expected_b2, expected_size, family, family_from_units,
                               family_table_text, split_at, unit, unit_symmetry, cylinder_c)
from pachner4.homology import homology
from pachner4.kernel import boundary, validate


def test_shared_base():
    text = family_table_text("P", 0)
    assert text == ("1(0123) 0(0324) 0(3214) 0(0214) 0(3104)\n"
                    "0(0123) 1(0324) 1(3214) 1(0214) 1(3104)\n")
    for kind in "EAD":
        assert family_table_text(kind, 0) == text


def test_e1_table_block():
    lines = family_table_text("E", 1).splitlines()
    assert len(lines) == 6
    assert lines[2] == "4(0123) 2(3014) 2(1204) 1(3104) 1(1234)"
    assert lines[5] == "3(0123) 5(0324) 5(3214) 5(0214) 5(3104)"


@pytest.mark.parametrize("kind,k,l", [("P", 3, 0), ("E", 2, 0), ("A", 2, 0), ("D", 2, 1),
                                      ("D", 1, 2)])
def test_members(kind, k, l):
    t = family(kind, k, l)
    assert t.size == expected_size(kind, k, l)
    assert validate(t).valid and t.is_closed()
    assert homology(t).betti == (1, 0, expected_b2(kind, k, l), 0, 1)


def test_e_sizes_up_to_eight():
    for k in range(9):
        assert family("E", k).size == 4 * k + 2


def test_degenerate_d_parameters():
    assert family_table_text("D", 3, 0) == family_table_text("P", 3)
    assert family_table_text("D", 0, 2) == family_table_text("E", 2)


def test_unknown_family():
    with pytest.raises(ValueError):
        family("Q", 1)
    with pytest.raises(ValueError):
        family("P", -1)


@pytest.mark.parametrize("kind,k,l", [("P", 2, 0), ("E", 2, 0), ("A", 3, 0), ("D", 2, 2)])
def test_chain_builder_matches_tables(kind, k, l):
    assert is_isomorphic(family_from_units(kind, k, l), family(kind, k, l))


def test_units_have_two_s_boundaries():
    for name in ("bow", "even_hook", "odd_hook"):
        u = unit(name)
        assert len(u.triangulation.boundary_facets()) == 2
        assert validate(u.triangulation).valid


def test_unit_symmetries():
    for name in ("bow", "even_hook", "odd_hook"):
        unit_symmetry(unit(name))
    unit_symmetry(dsb2())


def test_two_regluings_per_chain_site():
    t = family("A", 2)
    for site in chain_sites("A", 2):
        assert len(alternative_regluings(t, site)) == 2


def test_non_chain_site_rejected():
    t = family("P", 2)
    with pytest.raises(NotAChainGluing):
        split_at(t, (1, 2))


def test_cylinder_pieces():
    assert double_prism_cylinder() == cylinder_c()
    assert boundary(cylinder_c()).size == 4
