import random

import pytest
from hypothesis import given, settings, strategies as st

from pachner4.canonical import (automorphisms, canonical_form, is_isomorphic,
                                parse_signature, random_relabel, signature)
from pachner4.errors import ParseError
from pachner4.families import boundary_s, cylinder_c, dsb2, family, pillow_s4
from pachner4.kernel import disjoint_union, relabel

SPECS = [("P", 0), ("P", 2), ("E", 1), ("A", 1), ("D", 1, 1)]


@settings(max_examples=40, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from(SPECS))
def test_signature_is_relabelling_invariant(r, params):
    t = family(*params)
    assert signature(random_relabel(t, r)) == signature(t)


def test_signature_round_trip():
    for t in (family("D", 2, 1), dsb2(), cylinder_c(), boundary_s()):
        sig = signature(t)
        assert signature(parse_signature(sig)) == sig
        assert is_isomorphic(parse_signature(sig), t)


def test_canonical_form_relabelling_maps_input_to_output():
    t = random_relabel(family("E", 1), random.Random(3))
    c, (smap, vmaps) = canonical_form(t)
    assert relabel(t, smap, vmaps) == c


def test_e1_and_a1_differ():
    assert signature(family("E", 1)) != signature(family("A", 1))
    assert signature(family("P", 2)) != signature(family("E", 1))


def test_disconnected_components_sorted():
    a, b = family("P", 0), family("P", 1)
    assert signature(disjoint_union(a, b)) == signature(disjoint_union(b, a))


def test_automorphisms():
    assert len(automorphisms(dsb2())) == 2
    assert len(automorphisms(pillow_s4())) >= 2


def test_bad_signature():
    with pytest.raises(ParseError):
        parse_signature("not a signature")


def test_empty_signature():
    from pachner4.kernel import empty
    assert signature(parse_signature(signature(empty()))) == signature(empty())
