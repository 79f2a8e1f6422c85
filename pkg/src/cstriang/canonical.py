"""Canonical labelling, isomorphism and automorphisms of simplicial complexes.

Individualisation-refinement on the vertex/facet incidence structure.  A
vertex colouring is refined until stable by colouring each facet with the
multiset of its vertex colours and each vertex with its old colour plus the
multiset of colours of its facets.  Search nodes individualise one vertex of
the first smallest non-singleton cell.  Every refinement step emits a
label-invariant trace used to discard branches early.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .complex import SimplicialComplex, compact, f_vector, link
from .groups import PermutationGroup, group_closure, identity_perm, schreier_sims_order


class _Refiner:
    def __init__(self, c: SimplicialComplex):
        self.n = c.n_vertices
        self.facets = sorted(c.facets)
        self.vf = [[] for _ in range(self.n)]
        for k, f in enumerate(self.facets):
            for v in f:
                self.vf[v].append(k)

    def refine(self, colors: list) -> tuple[list, tuple]:
        facets, vf = self.facets, self.vf
        ncol = len(set(colors))
        trace = []
        while True:
            fs = [tuple(sorted([colors[v] for v in f])) for f in facets]
            fmap = {s: i for i, s in enumerate(sorted(set(fs)))}
            fr = [fmap[s] for s in fs]
            vs = [(colors[v], tuple(sorted([fr[k] for k in vf[v]]))) for v in range(self.n)]
            distinct = sorted(set(vs))
            vmap = {s: i for i, s in enumerate(distinct)}
            new = [vmap[s] for s in vs]
            trace.append(hash((tuple(sorted(vs)), tuple(sorted(fmap.items())))))
            if len(distinct) == ncol:
                return new, tuple(trace)
            colors, ncol = new, len(distinct)

    @staticmethod
    def target_cell(colors: list) -> Optional[list]:
        cells: dict = {}
        for v, col in enumerate(colors):
            cells.setdefault(col, []).append(v)
        best = None
        for col in sorted(cells):
            cell = cells[col]
            if len(cell) > 1 and (best is None or len(cell) < len(best)):
                best = cell
        return best

    @staticmethod
    def individualize(colors: list, v: int) -> list:
        keys = [(col, u != v) for u, col in enumerate(colors)]
        order = {k: i for i, k in enumerate(sorted(set(keys)))}
        return [order[k] for k in keys]

    def certificate(self, colors: list) -> tuple:
        return tuple(sorted(tuple(sorted(colors[v] for v in f)) for f in self.facets))


def _orbit(gens: list, point: int, n: int) -> set:
    seen = {point}
    stack = [point]
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return seen


def _automorphism(first_labels: list, other_labels: list) -> tuple:
    """Map taking a vertex to the vertex with the same position in the first leaf."""
    inv = [0] * len(first_labels)
    for v, pos in enumerate(first_labels):
        inv[pos] = v
    return tuple(inv[other_labels[u]] for u in range(len(other_labels)))


@dataclass
class CanonicalForm:
    n_vertices: int
    facets: tuple  # sorted tuple of sorted facets on relabelled vertices
    relabeling: tuple  # old vertex -> new vertex

    def key(self) -> tuple:
        return (self.n_vertices, self.facets)


def _search_tree(c: SimplicialComplex, known_gens: Sequence = ()):
    """Minimal (trace, certificate) leaf with automorphism pruning."""
    r = _Refiner(c)
    n = c.n_vertices
    best: dict = {}
    gens = [tuple(g) for g in known_gens]

    def visit(colors, prefix, trace):
        colors, tr = r.refine(colors)
        trace = trace + (tr,)
        if best:
            head = best["trace"][: len(trace)]
            if trace > head:
                return
            if trace < head:
                best.clear()
        cell = r.target_cell(colors)
        if cell is None:
            cert = r.certificate(colors)
            if not best or (trace, cert) < (best["trace"], best["cert"]):
                best.update(trace=trace, cert=cert, labels=colors)
            elif (trace, cert) == (best["trace"], best["cert"]):
                g = _automorphism(best["labels"], colors)
                if g != identity_perm(n) and g not in gens:
                    gens.append(g)
            return
        done: list = []
        for v in cell:
            fixing = [g for g in gens if all(g[p] == p for p in prefix)]
            if any(v in _orbit(fixing, w, n) for w in done):
                continue
            visit(r.individualize(colors, v), prefix + (v,), trace)
            done.append(v)

    visit([0] * n, (), ())
    return best, gens


def canonical_form(c: SimplicialComplex, known_gens: Sequence = ()) -> CanonicalForm:
    """Label-invariant representative: equal for two complexes iff isomorphic."""
    if c.n_vertices == 0:
        return CanonicalForm(0, (), ())
    best, _ = _search_tree(c, known_gens)
    return CanonicalForm(c.n_vertices, best["cert"], tuple(best["labels"]))


def is_isomorphic(a: SimplicialComplex, b: SimplicialComplex) -> bool:
    if a.n_vertices != b.n_vertices or f_vector(a) != f_vector(b):
        return False
    return canonical_form(a).key() == canonical_form(b).key()


def automorphism_group(c: SimplicialComplex, cap: int = 10**5) -> PermutationGroup:
    """Generators and exact order of the combinatorial automorphism group.

    The order is the product, along the leftmost path of the search tree, of
    the orbit length of each individualised vertex under the pointwise
    stabiliser of the earlier ones; it is cross-checked against the closure of
    the generators found.
    """
    n = c.n_vertices
    r = _Refiner(c)
    # leftmost path
    path = []  # (colors after refinement, cell, chosen vertex)
    traces = []
    colors = [0] * n
    while True:
        colors, tr = r.refine(colors)
        traces.append(tr)
        cell = r.target_cell(colors)
        if cell is None:
            break
        path.append((colors, cell, cell[0]))
        colors = r.individualize(colors, cell[0])
    first_labels = colors
    first_cert = r.certificate(colors)

    def find_equivalent(colors, depth):
        colors, tr = r.refine(colors)
        if depth >= len(traces) or tr != traces[depth]:
            return None
        cell = r.target_cell(colors)
        if cell is None:
            if r.certificate(colors) == first_cert:
                return colors
            return None
        for v in cell:
            leaf = find_equivalent(r.individualize(colors, v), depth + 1)
            if leaf is not None:
                return leaf
        return None

    gens: list = []
    order = 1
    for level in range(len(path) - 1, -1, -1):
        colors, cell, chosen = path[level]
        prefix = [p[2] for p in path[:level]]
        fixing = [g for g in gens if all(g[p] == p for p in prefix)]
        orbit = _orbit(fixing, chosen, n)
        for w in cell:
            if w in orbit:
                continue
            leaf = find_equivalent(r.individualize(colors, w), level + 1)
            if leaf is not None:
                g = _automorphism(first_labels, leaf)
                gens.append(g)
                fixing.append(g)
                orbit = _orbit(fixing, chosen, n)
        order *= len(orbit & set(cell))
    group = group_closure(gens, n, cap) if gens else group_closure([], n, cap)
    if group.order != order:
        raise AssertionError(f"orbit product {order} differs from closure order {group.order}")
    return group


def is_automorphism(c: SimplicialComplex, perm: Sequence[int]) -> bool:
    return {tuple(sorted(perm[v] for v in f)) for f in c.facets} == set(c.facets)


@dataclass
class LinkClass:
    form: CanonicalForm
    count: int
    f_vector: tuple
    sample_face: tuple


def classify_face_links(c: SimplicialComplex, k: int) -> list:
    """Partition the links of all k-faces into isomorphism classes."""
    if not 0 <= k <= c.dim:
        raise ValueError(f"k must lie in [0, {c.dim}]")
    classes: dict = {}
    for face in sorted(c.faces(k)):
        lk, _ = compact(link(c, face))
        form = canonical_form(lk)
        key = form.key()
        if key not in classes:
            classes[key] = LinkClass(form, 0, f_vector(lk), face)
        classes[key].count += 1
    return sorted(classes.values(), key=lambda cl: (cl.f_vector, cl.form.facets))
