import random

from hypothesis import given, settings
from hypothesis import strategies as st

from cstriang.canonical import (
    automorphism_group,
    canonical_form,
    classify_face_links,
    is_automorphism,
    is_isomorphic,
)
from cstriang.complex import SimplicialComplex
from cstriang.hull import boundary_complex, facet_enumeration

from conftest import cross_polytope


def test_relabeling_invariance_100_permutations(rp5):
    rng = random.Random(7)
    key = canonical_form(rp5).key()
    for _ in range(100):
        perm = list(range(rp5.n_vertices))
        rng.shuffle(perm)
        assert canonical_form(rp5.relabel(perm)).key() == key


@settings(max_examples=60, deadline=None)
@given(
    st.lists(st.sets(st.integers(0, 6), min_size=3, max_size=3), min_size=1, max_size=10),
    st.permutations(list(range(7))),
)
def test_random_complexes_relabeling(facets, perm):
    c = SimplicialComplex(7, [tuple(sorted(f)) for f in facets])
    assert canonical_form(c).key() == canonical_form(c.relabel(perm)).key()


def test_non_isomorphic_distinguished():
    path = SimplicialComplex(4, [(0, 1), (1, 2), (2, 3)])
    star = SimplicialComplex(4, [(0, 1), (0, 2), (0, 3)])
    assert not is_isomorphic(path, star)
    # same f-vector, different type: a 6-cycle versus two triangles
    hexagon = SimplicialComplex(6, [(i, (i + 1) % 6) for i in range(6)])
    triangles = SimplicialComplex(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert not is_isomorphic(hexagon, triangles)


def test_small_automorphism_groups():
    octa = boundary_complex(facet_enumeration(cross_polytope(3)))
    assert automorphism_group(octa).order == 48
    triangle = SimplicialComplex(3, [(0, 1), (1, 2), (0, 2)])
    assert automorphism_group(triangle).order == 6


def test_p648_automorphisms(p648_complex):
    grp = automorphism_group(p648_complex)
    assert grp.order == 192
    assert all(is_automorphism(p648_complex, g) for g in grp.generators)


def test_rp2_automorphisms(rp2):
    # the icosahedral rotation group A5 acts on the 6-vertex RP^2
    assert automorphism_group(rp2).order == 60


def test_link_classes(p648_complex):
    vertex = classify_face_links(p648_complex, 0)
    assert len(vertex) == 1 and vertex[0].count == 48
    assert vertex[0].f_vector == (23, 152, 398, 445, 178)
    two = classify_face_links(p648_complex, 2)
    assert len(two) == 9
    assert sum(cl.count for cl in two) == 2432
