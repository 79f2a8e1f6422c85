from fractions import Fraction
from itertools import combinations, product

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cstriang.graphs import (
    Graph,
    chromatic_number,
    complete_graph,
    degree_profile,
    dsatur,
    independence_number,
    is_proper_coloring,
    k_coloring,
    max_clique,
    tabucol,
    threshold_graph,
    verify_edge_rule,
)


def brute_chromatic(g):
    for k in range(1, g.n + 1):
        for col in product(range(k), repeat=g.n):
            if is_proper_coloring(g, col):
                return k
    return 0


graphs = st.integers(1, 7).flatmap(
    lambda n: st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), max_size=15).map(
        lambda es: Graph(n, {tuple(sorted(e)) for e in es if e[0] != e[1]})
    )
)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_chromatic_matches_brute_force(g):
    res = chromatic_number(g)
    assert res.proof_status == "exact"
    assert res.chromatic_number == brute_chromatic(g)
    assert is_proper_coloring(g, res.witness)


@settings(max_examples=60, deadline=None)
@given(graphs)
def test_clique_matches_networkx(g):
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    clique, exact = max_clique(g)
    assert exact
    assert len(clique) == max(len(c) for c in nx.find_cliques(h))
    assert all(b in g.adj[a] for a, b in combinations(clique, 2))


def test_known_graphs():
    petersen = nx.petersen_graph()
    g = Graph(10, petersen.edges())
    assert chromatic_number(g).chromatic_number == 3
    assert independence_number(g)[0] == 4
    c5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])
    assert chromatic_number(c5).chromatic_number == 3
    assert k_coloring(c5, 2) is None
    assert chromatic_number(complete_graph(6)).chromatic_number == 6
    assert is_proper_coloring(g, dsatur(g))
    assert tabucol(g, 3) is not None


def test_timeout_gives_bounds():
    g = Graph(30, nx.gnp_random_graph(30, 0.5, seed=1).edges())
    res = chromatic_number(g, time_limit=0.0)
    assert res.lower_bound <= res.upper_bound
    assert is_proper_coloring(g, res.witness)


THRESHOLD_ROWS = [
    (Fraction(19, 49), 10, 240, 4),
    (Fraction(17, 49), 11, 264, 6),
    (Fraction(15, 49), 15, 360, 7),
    (Fraction(11, 49), 23, 552, 12),
]


@pytest.mark.parametrize("t,deg,edges,chi", THRESHOLD_ROWS)
def test_threshold_table(p648, t, deg, edges, chi):
    g = threshold_graph(p648, t)
    prof = degree_profile(g)
    assert (prof.regular, prof.edges) == (deg, edges)
    res = chromatic_number(g, time_limit=600)
    assert res.proof_status == "exact" and res.chromatic_number == chi
    assert is_proper_coloring(g, res.witness) and max(res.witness) + 1 == chi


def test_threshold_above_max_norm(p648):
    g = threshold_graph(p648, 2)
    assert degree_profile(g).regular == 0 and g.edge_count() == 0
    assert chromatic_number(g).chromatic_number == 1


def test_edge_rule(p648, p648_hull, icosahedron):
    from cstriang.hull import facet_enumeration

    assert verify_edge_rule(p648, p648_hull) == (True, None)
    assert verify_edge_rule(icosahedron, facet_enumeration(icosahedron)) == (True, None)


def test_minimum_positive_edge_inner_product(p648, p648_complex):
    # brute force over the 552 hull edges
    pts = p648.points
    edges = {e for f in p648_complex.facets for e in combinations(f, 2)}
    assert len(edges) == 552
    values = [sum(a * b for a, b in zip(pts[i], pts[j])) for i, j in edges]
    assert min(values) == Fraction(12, 49)
    assert Fraction(11, 49) < min(values) <= Fraction(15, 49)
