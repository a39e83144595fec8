import random

import pytest
from hypothesis import given, settings, strategies as st

from pachner4.canonical import is_isomorphic, signature
from pachner4.errors import InvalidSite, ParseError
from pachner4.families import dsb2, family, pillow_s4
from pachner4.homology import homology
from pachner4.kernel import skeleton, validate
from pachner4.moves import (MoveStep, apply_move, collapse_edge, collapse_sites,
                            format_sequence, insert_pillow, pachner, pachner_apply,
                            pachner_inverse_site, pachner_sites, pachner_valid, parse_sequence,
                            two_zero, two_zero_sites)


def test_one_five_on_p0():
    t = family("P", 0)
    u = pachner_apply(t, (4, 0))
    assert u.size == 6
    assert validate(u).valid
    assert homology(u).betti == (1, 0, 0, 0, 1)


def test_five_one_undoes_one_five():
    t = family("P", 1)
    u, back = pachner_inverse_site(t, (4, 2))
    assert signature(pachner_apply(u, back)) == signature(t)


def test_every_move_kind_round_trips():
    t = family("E", 1)
    for dim in range(5):
        sites = [s for s in pachner_sites(t) if s[0] == dim]
        for site in sites[:3]:
            u, back = pachner_inverse_site(t, site)
            assert signature(pachner_apply(u, back)) == signature(t)


def test_size_changes():
    t = family("P", 1)
    for site in pachner_sites(t):
        u = pachner_apply(t, site)
        assert u.size - t.size == 2 * site[0] - 4


def test_boundary_faces_are_not_sites():
    t = dsb2()
    for fc in skeleton(t).faces[3]:
        if fc.boundary:
            assert not pachner_valid(t, fc)


def test_invalid_site_raises():
    t = family("P", 0)
    low = [fc for fc in skeleton(t).faces[1] if fc.degree != 4]
    assert low
    with pytest.raises(InvalidSite):
        pachner_apply(t, low[0], check=True)
    with pytest.raises(InvalidSite):
        two_zero(t, (0, 99))


@settings(max_examples=30, deadline=None)
@given(st.randoms(use_true_random=False))
def test_random_moves_keep_homology(r):
    t = family(r.choice("PEA"), r.randint(0, 2))
    ref = homology(t)
    for _ in range(3):
        t = pachner_apply(t, r.choice(pachner_sites(t, max_size=t.size + 4)))
        assert validate(t).valid
        h = homology(t)
        assert (h.betti, h.torsion) == (ref.betti, ref.torsion)


def test_insert_pillow_then_two_zero():
    for params in [("P", 1), ("E", 1), ("A", 2)]:
        t = family(*params)
        u = insert_pillow(t, (0, 0))
        assert u.size == t.size + 2
        vertex = skeleton(u).face_of(0, t.size, (4,))
        assert vertex.degree == 2
        assert is_isomorphic(two_zero(u, vertex), t)


def test_collapse_after_one_five():
    t = family("P", 1)
    u = pachner_apply(t, (4, 0))
    sites = collapse_sites(u)
    assert sites
    for step in sites:
        w = apply_move(u, step)
        assert w.size < u.size and validate(w).valid
        assert homology(w).betti == homology(t).betti


def test_two_zero_sites_are_sound():
    rng = random.Random(4)
    t = insert_pillow(family("A", 1), (3, 2))
    t = pachner_apply(t, rng.choice(pachner_sites(t, max_size=t.size + 2)))
    for step in two_zero_sites(t):
        w = apply_move(t, step)
        assert w.size == t.size - 2
        assert validate(w).valid


def test_pillow_collapses_to_nothing_is_refused():
    # the only 2-0 move on the pillow would leave an empty triangulation
    t = pillow_s4()
    assert two_zero_sites(t) == [] or all(apply_move(t, s).size > 0 for s in two_zero_sites(t))


def test_step_notation():
    for token in ["0,3", "4,12", "V,1", "E,0", "T,7", "C,2"]:
        assert str(MoveStep.parse(token)) == token
    assert MoveStep.parse("C,2").kind == "collapse"
    with pytest.raises(ParseError):
        MoveStep.parse("X,1")
    with pytest.raises(ParseError):
        MoveStep.parse("3")


def test_sequence_text_round_trip():
    steps = [pachner(4, 0), MoveStep.parse("V,1"), pachner(1, 5)]
    text = format_sequence(steps, {"cap": 8})
    back, header = parse_sequence(text)
    assert back == steps
    assert header["cap"] == "8"
