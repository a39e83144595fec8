import pytest
from hypothesis import given, settings, strategies as st

from pachner4 import perm as P
from pachner4.canonical import is_isomorphic, random_relabel
from pachner4.errors import (InconsistentGluing, IndexOutOfRange, NotBoundary,
                             NotInternal, SelfIdentification)
from pachner4.families import (boundary_s, cylinder_c, dsb2, family, pillow_s3,
                               pillow_s4)
from pachner4.homology import euler_characteristic
from pachner4.kernel import (Gluing, boundary, build, components, dual_graph, empty,
                             f_vector, link, parse_table_text, reglue, relabel,
                             skeleton, star, to_table_text, unglue, validate)

# DSB2 decoded by hand from its table row "- 0(0324) 0(3214) 0(0214) 0(3104)":
# columns run over facets 4..0, each cell lists the images of the facet's
# vertices in ascending order, and the missing image is perm[facet].
DSB2_ROWS = [[(0, (2, 3, 1, 0, 4)), (0, (0, 3, 2, 1, 4)), (0, (3, 2, 0, 1, 4)),
              (0, (0, 3, 2, 1, 4)), None]]


def reversed_edge_table():
    """Pillow S^4 with one gluing twisted so that edge {2,3} meets itself reversed."""
    ident = P.identity(5)
    twist = (0, 1, 3, 2, 4)
    rows = [[(1, twist)] + [(1, ident)] * 4, [(0, twist)] + [(0, ident)] * 4]
    return build(rows)


def test_build_dsb2_from_rows():
    t = build(DSB2_ROWS)
    assert t == dsb2()
    assert t.size == 1
    assert t.boundary_facets() == [(0, 4)]


def test_build_empty():
    t = build([])
    assert t.size == 0
    assert t.is_closed()
    assert validate(t).valid


def test_build_rejects_non_inverse_partner():
    rows = [list(r) for r in DSB2_ROWS]
    rows[0][0] = (0, (2, 3, 1, 0, 4))       # facet 0 -> facet 2 ...
    rows[0][2] = (0, (0, 3, 2, 1, 4))       # ... but facet 2 points elsewhere
    with pytest.raises(InconsistentGluing):
        build(rows)


def test_build_rejects_out_of_range():
    rows = [[(3, P.identity(5))] * 5]
    with pytest.raises(IndexOutOfRange):
        build(rows)


def test_pillow_f_vector():
    assert f_vector(pillow_s4()) == (5, 10, 10, 5, 2)


def test_p0_closed_two_pentachora():
    t = family("P", 0)
    assert t.is_closed() and t.size == 2
    assert validate(t).closed


def test_reversed_edge_is_reported():
    t = reversed_edge_table()
    with pytest.raises(SelfIdentification) as info:
        skeleton(t)
    assert any(d == 1 for d, _ in info.value.faces)
    rep = validate(t)
    assert not rep.no_reverse_self_identification
    assert not rep.valid


def test_link_of_internal_tetrahedron_is_two_points():
    t = family("P", 1)
    ridge = skeleton(t).faces[3][0]
    lk = link(t, ridge)
    assert lk.dim == 0 and lk.size == 2


def test_vertex_links_of_pillow_are_pillow_s3():
    t = pillow_s4()
    for v in skeleton(t).faces[0]:
        assert is_isomorphic(link(t, v), pillow_s3())


def test_dsb2_boundary_vertex_link_has_boundary():
    t = dsb2()
    links = [link(t, v) for v in skeleton(t).faces[0]]
    assert any(not lk.is_closed() for lk in links)


def test_star_sizes():
    t = family("P", 1)
    sk = skeleton(t)
    for ridge in sk.faces[3]:
        assert len(star(t, ridge)) == 2
    d = dsb2()
    dsk = skeleton(d)
    for v in dsk.faces[0]:
        assert len(star(d, v)) == v.degree
    assert [len(star(d, r)) for r in dsk.faces[3] if r.boundary] == [1]


def test_dual_graphs():
    g = dual_graph(family("P", 4))
    assert g.number_of_nodes() == 10 and g.number_of_edges() == 25
    g = dual_graph(dsb2())
    assert g.number_of_nodes() == 1 and g.number_of_edges() == 2
    g = dual_graph(cylinder_c())
    assert g.number_of_nodes() == 8 and g.number_of_edges() == 18


def test_boundaries():
    assert is_isomorphic(boundary(dsb2()), boundary_s())
    assert boundary(family("P", 0)).size == 0
    b = boundary(cylinder_c())
    comps = components(b)
    assert len(comps) == 2
    for comp in comps:
        from pachner4.kernel import subtriangulation
        assert is_isomorphic(subtriangulation(b, comp), pillow_s3())


def test_validate_examples():
    rep = validate(dsb2())
    assert rep.valid and not rep.closed
    for kind in "PEA":
        rep = validate(family(kind, 2))
        assert rep.valid and rep.closed


def test_unglue_reglue_round_trip():
    t = family("P", 0)
    for p in range(t.size):
        for f in range(5):
            g = t.gluings[p][f]
            opened = unglue(t, (p, f))
            assert reglue(opened, (p, f), (g.target, g.perm[f]), g.perm) == t


def test_unglue_errors():
    with pytest.raises(NotInternal):
        unglue(dsb2(), (0, 4))
    with pytest.raises(NotBoundary):
        reglue(family("P", 0), (0, 4), (1, 4), P.identity(5))


def test_unglue_e1_chain_gluing_gives_two_s_boundaries():
    t = family("E", 1)
    opened = unglue(t, (3, 4))
    comps = components(opened)
    assert len(comps) == 2
    from pachner4.kernel import subtriangulation
    for comp in comps:
        assert is_isomorphic(boundary(subtriangulation(opened, comp)), boundary_s())


def test_reglue_reversed_edge_fails():
    t = family("E", 1)
    g = t.gluings[3][4]
    opened = unglue(t, (3, 4))
    bad = [s for s in P.all_perms(5) if s[4] == g.perm[4] and s != g.perm]
    errors = 0
    for s in bad:
        try:
            reglue(opened, (3, 4), (g.target, g.perm[4]), s)
        except SelfIdentification as exc:
            errors += 1
            assert any(d == 1 for d, _ in exc.faces)
    assert errors == 22


def test_table_text_round_trip():
    for t in (family("D", 2, 1), dsb2(), cylinder_c()):
        assert parse_table_text(to_table_text(t)) == t
    s = boundary_s()
    assert parse_table_text(to_table_text(s)) == s
    assert to_table_text(s) == "0(032) 0(321) 0(021) 0(310)\n"


def test_ridge_degree_identity():
    for t in (dsb2(), cylinder_c(), family("A", 2)):
        sk = skeleton(t)
        assert sum(2 - r.degree for r in sk.faces[3]) == len(t.boundary_facets())
        assert all(r.degree == 2 for r in sk.faces[3] if not r.boundary)


def test_euler_characteristic_matches_f_vector():
    assert euler_characteristic(pillow_s4()) == 2
    assert euler_characteristic(dsb2()) == 1


@settings(max_examples=25, deadline=None)
@given(st.randoms(use_true_random=False), st.sampled_from([("P", 2), ("E", 1), ("A", 1), ("D", 1, 1)]))
def test_skeleton_is_label_invariant(r, params):
    t = family(*params)
    u = random_relabel(t, r)
    a, b = skeleton(t), skeleton(u)
    assert a.f_vector == b.f_vector
    for k in range(4):
        assert sorted(f.degree for f in a.faces[k]) == sorted(f.degree for f in b.faces[k])


def test_relabel_identity_is_noop():
    t = family("P", 1)
    assert relabel(t, list(range(t.size)), [P.identity(5)] * t.size) == t


def test_empty_helper():
    assert empty().size == 0
