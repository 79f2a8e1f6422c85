import random
from fractions import Fraction

import pytest

from cstriang.hull import (
    DegenerateConfigurationError,
    NonSimplicialError,
    PointConfiguration,
    boundary_complex,
    facet_enumeration,
    hull_edges,
    is_simplicial,
)

from conftest import cross_polytope


def facets_of(points):
    return facet_enumeration(PointConfiguration(tuple(points)))


def test_octahedron():
    h = facet_enumeration(cross_polytope(3))
    assert len(h.facets) == 8
    assert is_simplicial(h) == (True, None)
    assert len(h.hull_vertices) == 6
    assert all(len(adj) == 3 for adj in h.ridges.values())


def test_square_has_four_edges():
    h = facets_of([(0, 0), (1, 0), (1, 1), (0, 1)])
    assert {frozenset(v) for v, _ in h.facets} == {
        frozenset(s) for s in ({0, 1}, {1, 2}, {2, 3}, {0, 3})
    }


def test_cube_is_not_simplicial():
    pts = [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    h = facets_of(pts)
    assert len(h.facets) == 6
    ok, witness = is_simplicial(h)
    assert not ok and len(witness) == 4
    with pytest.raises(NonSimplicialError):
        boundary_complex(h)
    assert len(hull_edges(h)) == 12


def test_interior_point_is_not_a_vertex():
    h = facets_of([(0, 0), (2, 0), (2, 2), (0, 2), (1, 1)])
    assert h.hull_vertices == frozenset({0, 1, 2, 3})
    assert all(4 not in v for v, _ in h.facets)


def test_point_on_boundary_joins_the_facet():
    h = facets_of([(0, 0), (2, 0), (2, 2), (0, 2), (1, 0)])
    assert frozenset({0, 1, 4}) in h.facet_sets()
    assert 4 not in h.hull_vertices


def test_degenerate_configuration():
    with pytest.raises(DegenerateConfigurationError) as err:
        facets_of([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)])
    assert err.value.achieved_rank == 2


def test_hyperplanes_support_the_hull(p648_hull):
    pts = p648_hull.config.points
    for verts, hp in p648_hull.facets[:200]:
        values = [hp.value(p) for p in pts]
        assert max(values) == 0
        assert {i for i, v in enumerate(values) if v == 0} == set(verts)


def test_insertion_order_independence(p648, p648_hull):
    reference = p648_hull.facet_sets()
    rng = random.Random(2024)
    for _ in range(10):
        order = list(range(len(p648)))
        rng.shuffle(order)
        shuffled = PointConfiguration(tuple(p648.points[i] for i in order))
        h = facet_enumeration(shuffled)
        back = {frozenset(order[i] for i in verts) for verts in h.facet_sets()}
        assert back == reference


def test_pairing_validation():
    with pytest.raises(ValueError):
        PointConfiguration(((1, 0), (0, 1)), (1, 0))
    cfg = PointConfiguration.detect_pairing([(1, 0), (0, 1), (-1, 0), (0, -1)])
    assert cfg.pairing == (2, 3, 0, 1)
    assert PointConfiguration.detect_pairing([(1, 0), (0, 1), (-1, 0)]).pairing is None
    assert cross_polytope(2).points[2] == (Fraction(-1), Fraction(0))
