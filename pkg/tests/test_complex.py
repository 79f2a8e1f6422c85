import pytest

from cstriang.complex import (
    DisjointStarError,
    Involution,
    SimplicialComplex,
    antipodal_quotient,
    check_disjoint_stars,
    compact,
    f_vector,
    link,
    skeleton_graph,
    star,
)
from cstriang.hull import boundary_complex, facet_enumeration

from conftest import cross_polytope


def tetra_boundary():
    return SimplicialComplex(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])


def test_faces_and_f_vector():
    c = tetra_boundary()
    assert f_vector(c) == (4, 6, 4)
    assert c.euler_characteristic() == 2
    assert c.is_pure()
    assert c.has_face((0, 2)) and not c.has_face((0, 1, 2, 3))


def test_non_maximal_faces_are_absorbed():
    c = SimplicialComplex(4, [(0, 1, 2), (0, 1), (3,)])
    assert c.facets == {(0, 1, 2), (3,)}
    assert not c.is_pure()


def test_star_and_link():
    c = tetra_boundary()
    assert star(c, (0,)).facets == {(0, 1, 2), (0, 1, 3), (0, 2, 3)}
    lk = link(c, (0,))
    assert lk.facets == {(1, 2), (1, 3), (2, 3)}
    small, used = compact(lk)
    assert used == [1, 2, 3] and small.n_vertices == 3


def test_p648_vertex_links(p648_complex):
    lk, _ = compact(link(p648_complex, (0,)))
    assert lk.n_vertices == 23 and len(lk.facets) == 178


def test_octahedron_fails_disjoint_stars():
    cfg = cross_polytope(3)
    cx = boundary_complex(facet_enumeration(cfg))
    ok, bad = check_disjoint_stars(cx, Involution(cfg.pairing))
    assert not ok and len(bad) == 3
    with pytest.raises(DisjointStarError):
        antipodal_quotient(cx, Involution(cfg.pairing))


def test_icosahedron_quotient_is_rp2(rp2):
    assert f_vector(rp2) == (6, 15, 10)
    assert skeleton_graph(rp2).is_complete()
    assert rp2.euler_characteristic() == 1


def test_p648_quotient(rp5, p648_complex):
    assert f_vector(p648_complex) == (48, 552, 2432, 4776, 4272, 1424)
    assert f_vector(rp5) == (24, 276, 1216, 2388, 2136, 712)
    assert skeleton_graph(rp5).is_complete()


def test_involution_validation():
    with pytest.raises(ValueError):
        Involution([0, 1])
    with pytest.raises(ValueError):
        Involution([1, 2, 0])
    assert Involution([2, 3, 0, 1]).pairs() == [(0, 2), (1, 3)]
