from fractions import Fraction

import pytest

from cstriang.constructions import (
    B_MATRIX,
    C_MATRIX,
    ConstructionError,
    align_to_family,
    arnoux_marin_bound,
    build_p648,
    build_p790,
    cone_cylinder,
    linear_symmetry_group,
    matrix_action,
    squared_norms,
    support_partition,
)
from cstriang.hull import facet_enumeration, is_simplicial
from cstriang.ratmath import identity, matvec


def test_p648_basics(p648):
    assert len(p648) == 48 and p648.dim == 6
    assert squared_norms(p648) == {Fraction(50, 49)}
    assert all(p648.points[(i + 24) % 48] == tuple(-x for x in p648.points[i]) for i in range(48))


@pytest.mark.parametrize("params", [(1, 1, 2), (Fraction(3, 7), Fraction(5, 7), Fraction(4, 7)), (0, 1, 2), (-1, 1, 2)])
def test_p648_rejects_bad_parameters(params):
    with pytest.raises(ConstructionError):
        build_p648(*params)


def test_matrices_stabilise(p648):
    pts = set(p648.points)
    for m in (B_MATRIX, C_MATRIX):
        assert {matvec(m, p) for p in pts} == pts
        for row in m:
            assert sorted(abs(x) for x in row) == [0, 0, 0, 0, 0, 1]
    assert matrix_action(identity(6), p648) == tuple(range(48))
    minus = [[-x for x in row] for row in identity(6)]
    assert matrix_action(minus, p648) == p648.pairing
    assert linear_symmetry_group(p648).order == 192


def test_non_stabilising_matrix_rejected(p648):
    m = [[Fraction(2) if i == j else Fraction(0) for j in range(6)] for i in range(6)]
    with pytest.raises(ConstructionError, match="image"):
        matrix_action(m, p648)


def test_support_partition(p648, p648_complex):
    sp = support_partition(p648)
    assert len(sp.classes) == 6
    assert all(len(v) == 8 and sp.is_cube(s) for s, v in sp.classes.items())
    assert sorted(sp.classes[frozenset({1, 4, 5})]) == sorted(
        i for i, p in enumerate(p648.points) if p[0] and p[3] and p[4]
    )
    assert sp.max_facet_contribution(p648_complex.facets) == 2


def test_p790():
    cfg = build_p790()
    assert len(cfg) == 90 and cfg.dim == 7
    assert cfg.points[0] == (Fraction(103, 134), 0, 0, 0, 0, Fraction(-27, 73), Fraction(107, 205))
    assert all(cfg.points[i + 45] == tuple(-x for x in cfg.points[i]) for i in range(45))


def test_cone_cylinder_shape(p648):
    cfg = cone_cylinder(p648)
    assert len(cfg) == 98 and cfg.dim == 7
    assert cfg.pairing is not None
    flat = cone_cylinder(p648, delta=0)
    assert (0,) * 6 + (2,) in flat.points and (0,) * 6 + (-2,) in flat.points
    bound = Fraction(1, 1000)
    for p, q in zip(cfg.points, flat.points):
        assert max(abs(a - b) for a, b in zip(p, q)) <= bound


def test_cone_cylinder_unperturbed_is_not_simplicial(p648):
    h = facet_enumeration(cone_cylinder(p648, delta=0))
    ok, witness = is_simplicial(h)
    assert not ok and len(witness) > 7


def test_alignment_recovers_signed_permutation(p648):
    moved = tuple((-p[3], p[0], p[1], p[2], p[5], -p[4]) for p in p648.points)
    from cstriang.hull import PointConfiguration

    found = align_to_family(PointConfiguration(moved, p648.pairing))
    assert found is not None
    aligned, _, mags = found
    assert set(aligned.points) == set(p648.points)
    assert mags == (Fraction(3, 7), Fraction(4, 7), Fraction(5, 7))


def test_arnoux_marin():
    assert arnoux_marin_bound(3) == 11
    assert arnoux_marin_bound(5) == 22
    assert arnoux_marin_bound(6) == 29
    with pytest.raises(ValueError):
        arnoux_marin_bound(2)
