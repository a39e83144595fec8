import pytest
from hypothesis import given, strategies as st

from pachner4.families import cylinder_c, dsb2, family, pillow_s4
from pachner4.homology import (betti_numbers, chain_complex, euler_characteristic,
                               homology, smith_diagonal)
from pachner4.errors import TriangulationError
from pachner4.kernel import f_vector

from tests.test_kernel import reversed_edge_table


def test_spheres():
    for t in (family("P", 0), pillow_s4()):
        h = homology(t)
        assert h.betti == (1, 0, 0, 0, 1)
        assert str(h) == "(Z, 0, 0, 0, Z)"


def test_cylinder_and_ball():
    assert homology(cylinder_c()).betti == (1, 0, 0, 1, 0)
    assert homology(dsb2()).betti == (1, 0, 0, 0, 0)


def test_cp2_sums():
    assert str(homology(family("E", 1))) == "(Z, 0, Z^2, 0, Z)"
    assert homology(family("D", 1, 1)).betti == (1, 0, 3, 0, 1)


def test_boundary_squares_to_zero():
    for t in (family("A", 2), cylinder_c(), dsb2()):
        assert chain_complex(t).check()


def test_euler_characteristic_against_betti():
    for t in (family("P", 3), cylinder_c(), dsb2()):
        b = betti_numbers(t)
        assert euler_characteristic(t) == sum((-1) ** i * x for i, x in enumerate(b))
        assert euler_characteristic(t) == sum((-1) ** i * x for i, x in enumerate(f_vector(t)))


def test_smith_known():
    assert smith_diagonal([[2, 4], [6, 8]]) == [2, 4]
    assert smith_diagonal([[0, 0], [0, 0]]) == []


@given(st.lists(st.lists(st.integers(-6, 6), min_size=3, max_size=3), min_size=3, max_size=3))
def test_smith_divisibility_and_determinant(m):
    d = smith_diagonal(m)
    assert all(x > 0 for x in d)
    assert all(b % a == 0 for a, b in zip(d, d[1:]))
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    if len(d) == 3:
        assert abs(det) == d[0] * d[1] * d[2]
    else:
        assert det == 0


def test_self_identified_input_rejected():
    with pytest.raises(TriangulationError):
        homology(reversed_edge_table())
