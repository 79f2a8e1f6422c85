"""Finite simplicial complexes stored by their facets."""

from __future__ import annotations

from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .graphs import Graph


class FaceError(ValueError):
    pass


class DisjointStarError(ValueError):
    def __init__(self, violations):
        self.violations = violations
        super().__init__(f"{len(violations)} antipodal pairs violate the disjoint-star condition")


class SimplicialComplex:
    """A complex on vertices ``0..n_vertices-1`` given by inclusion-maximal facets."""

    def __init__(self, n_vertices: int, facets: Iterable[Sequence[int]]):
        faces = {tuple(sorted(set(f))) for f in facets}
        faces.discard(())
        for f in faces:
            if f[0] < 0 or f[-1] >= n_vertices:
                raise ValueError(f"facet {f} has a vertex outside [0, {n_vertices})")
        if len({len(f) for f in faces}) > 1:
            faces = _maximal(faces)
        self.n_vertices = n_vertices
        self.facets = frozenset(faces)

    def __repr__(self):
        return f"SimplicialComplex(n_vertices={self.n_vertices}, facets={len(self.facets)})"

    def __eq__(self, other):
        return (isinstance(other, SimplicialComplex) and self.n_vertices == other.n_vertices
                and self.facets == other.facets)

    def __hash__(self):
        return hash((self.n_vertices, self.facets))

    @property
    def dim(self) -> int:
        return max((len(f) for f in self.facets), default=0) - 1

    def is_pure(self) -> bool:
        return len({len(f) for f in self.facets}) <= 1

    def sorted_facets(self) -> list:
        return sorted(self.facets)

    @cached_property
    def _faces(self) -> list:
        out = [set() for _ in range(self.dim + 1)]
        for f in self.facets:
            for k in range(1, len(f) + 1):
                out[k - 1].update(combinations(f, k))
        return out

    def faces(self, k: int) -> set:
        """All k-dimensional faces as sorted tuples."""
        if k < 0 or k > self.dim:
            return set()
        return self._faces[k]

    def all_faces(self) -> set:
        out = set()
        for layer in self._faces:
            out |= layer
        return out

    def vertices(self) -> set:
        return {f[0] for f in self.faces(0)}

    def has_face(self, face: Sequence[int]) -> bool:
        face = tuple(sorted(face))
        k = len(face) - 1
        return 0 <= k <= self.dim and face in self._faces[k]

    @cached_property
    def vertex_facets(self) -> dict:
        out: dict = {}
        for f in self.facets:
            for v in f:
                out.setdefault(v, []).append(f)
        return out

    def facets_containing(self, face: Sequence[int]) -> list:
        face = tuple(sorted(face))
        if not face:
            return list(self.facets)
        s = set(face)
        return [f for f in self.vertex_facets.get(face[0], ()) if s.issubset(f)]

    def relabel(self, perm: Sequence[int], n_vertices: Optional[int] = None) -> "SimplicialComplex":
        n = self.n_vertices if n_vertices is None else n_vertices
        return SimplicialComplex(n, (tuple(perm[v] for v in f) for f in self.facets))

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * x for k, x in enumerate(f_vector(self)))


def _maximal(faces: set) -> set:
    ordered = sorted(faces, key=len, reverse=True)
    kept: list = []
    for f in ordered:
        fs = set(f)
        if not any(fs < set(g) for g in kept):
            kept.append(f)
    return set(kept)


def f_vector(c: SimplicialComplex) -> tuple:
    return tuple(len(c.faces(k)) for k in range(c.dim + 1))


def star(c: SimplicialComplex, face: Sequence[int]) -> SimplicialComplex:
    """Subcomplex generated by the facets that contain ``face``."""
    if not c.has_face(face):
        raise FaceError(f"{tuple(face)} is not a face of the complex")
    return SimplicialComplex(c.n_vertices, c.facets_containing(face))


def link(c: SimplicialComplex, face: Sequence[int]) -> SimplicialComplex:
    """Faces of the star disjoint from ``face``; labels are kept."""
    if not c.has_face(face):
        raise FaceError(f"{tuple(face)} is not a face of the complex")
    s = set(face)
    out = [tuple(v for v in f if v not in s) for f in c.facets_containing(face)]
    return SimplicialComplex(c.n_vertices, [f for f in out if f])


def compact(c: SimplicialComplex) -> tuple[SimplicialComplex, list]:
    """Relabel the used vertices to ``0..m-1``; returns the complex and old labels."""
    used = sorted(c.vertices())
    pos = {v: i for i, v in enumerate(used)}
    return SimplicialComplex(len(used), (tuple(pos[v] for v in f) for f in c.facets)), used


def skeleton_graph(c: SimplicialComplex) -> Graph:
    edges = set()
    for f in c.facets:
        edges.update(combinations(f, 2))
    return Graph(c.n_vertices, edges)


class Involution:
    """A fixed-point-free involution on vertex labels."""

    def __init__(self, mapping: Sequence[int]):
        m = tuple(int(x) for x in mapping)
        for i, j in enumerate(m):
            if j == i:
                raise ValueError(f"involution fixes vertex {i}")
            if not 0 <= j < len(m) or m[j] != i:
                raise ValueError(f"map is not an involution at {i}")
        self.map = m

    def __call__(self, v: int) -> int:
        return self.map[v]

    def __len__(self):
        return len(self.map)

    def pairs(self) -> list:
        return [(i, j) for i, j in enumerate(self.map) if i < j]


def _check_tau(c: SimplicialComplex, tau: Involution):
    if len(tau) != c.n_vertices:
        raise ValueError("involution size differs from the vertex count")


def disjoint_stars_by_neighbours(c: SimplicialComplex, tau: Involution) -> list:
    """Pairs ``(v, tau v)`` that are adjacent or share a neighbour."""
    g = skeleton_graph(c)
    bad = []
    for v, w in tau.pairs():
        nv = g.adj[v] | {v}
        nw = g.adj[w] | {w}
        if nv & nw:
            bad.append((v, w))
    return bad


def disjoint_stars_by_intersection(c: SimplicialComplex, tau: Involution) -> list:
    """Pairs whose closed stars, built from facets, share a face."""
    bad = []
    for v, w in tau.pairs():
        sv = set().union(*c.facets_containing((v,))) if c.has_face((v,)) else set()
        sw = set().union(*c.facets_containing((w,))) if c.has_face((w,)) else set()
        # two subcomplexes meet iff they share a vertex
        if sv & sw:
            bad.append((v, w))
    return bad


def check_disjoint_stars(c: SimplicialComplex, tau: Involution) -> tuple[bool, list]:
    """Whether ``star(v)`` and ``star(tau v)`` are disjoint for every vertex.

    Evaluated on the 1-skeleton and cross-checked against the stars
    themselves; disagreement between the two is a bug and raises.
    """
    _check_tau(c, tau)
    a = disjoint_stars_by_neighbours(c, tau)
    b = disjoint_stars_by_intersection(c, tau)
    if a != b:
        raise AssertionError(f"star test disagreement: {a[:3]} vs {b[:3]}")
    return not a, a


def antipodal_quotient(c: SimplicialComplex, tau: Involution) -> SimplicialComplex:
    """Identify each vertex with its partner; vertex ``min(i, tau i)`` represents the orbit.

    The result is relabelled to ``0..n/2-1`` in order of representatives.
    """
    ok, bad = check_disjoint_stars(c, tau)
    if not ok:
        raise DisjointStarError(bad)
    reps = sorted(min(i, tau(i)) for i in range(len(tau)) if i < tau(i))
    pos = {r: k for k, r in enumerate(reps)}
    label = [pos[min(i, tau(i))] for i in range(len(tau))]
    return SimplicialComplex(len(reps), (tuple(label[v] for v in f) for f in c.facets))
