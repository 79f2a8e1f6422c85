"""Exact convex hulls of rational point configurations.

The hull is built by beneath-beyond insertion over a triangulated boundary:
a new point is joined to every horizon ridge between facets it sees strictly
and facets it does not.  Simplices that end up on a common supporting
hyperplane are merged afterwards, so non-simplicial polytopes come out with
their true facets.  All predicates are evaluated on integer homogeneous
coordinates; there is no floating point anywhere.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .ratmath import RatVector, int_rank, integer_nullvector, integer_row, neg, vector


class DegenerateConfigurationError(ValueError):
    """Raised when the points do not span the ambient space affinely."""

    def __init__(self, achieved_rank: int, dim: int):
        self.achieved_rank = achieved_rank
        self.dim = dim
        super().__init__(
            f"points span an affine subspace of dimension {achieved_rank}, need {dim}"
        )


class NonSimplicialError(ValueError):
    def __init__(self, facet):
        self.facet = facet
        super().__init__(f"facet {sorted(facet)} is not a simplex")


@dataclass(frozen=True)
class PointConfiguration:
    """Labelled exact points in R^d, optionally with an antipodal pairing."""

    points: tuple
    pairing: Optional[tuple] = None

    def __post_init__(self):
        pts = tuple(vector(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("empty configuration")
        d = len(pts[0])
        if any(len(p) != d for p in pts):
            raise ValueError("points have mixed dimensions")
        if self.pairing is not None:
            pair = tuple(int(j) for j in self.pairing)
            object.__setattr__(self, "pairing", pair)
            if len(pair) != len(pts):
                raise ValueError("pairing length differs from point count")
            for i, j in enumerate(pair):
                if j == i or pair[j] != i:
                    raise ValueError(f"pairing is not a free involution at {i}")
                if pts[j] != neg(pts[i]):
                    raise ValueError(f"points {i} and {j} are not antipodal")

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    @classmethod
    def centrally_symmetric(cls, half: Sequence) -> "PointConfiguration":
        """Points ``half + (-half)`` with pairing ``i <-> i + len(half)``."""
        half = [vector(p) for p in half]
        n = len(half)
        pts = half + [neg(p) for p in half]
        pairing = [i + n for i in range(n)] + list(range(n))
        return cls(tuple(pts), tuple(pairing))

    @classmethod
    def detect_pairing(cls, points: Sequence) -> "PointConfiguration":
        """Build a configuration, pairing points with their negatives if possible."""
        pts = tuple(vector(p) for p in points)
        index = {p: i for i, p in enumerate(pts)}
        pairing = []
        for p in pts:
            j = index.get(neg(p))
            if j is None or pts[j] == p:
                return cls(pts)
            pairing.append(j)
        return cls(pts, tuple(pairing))


@dataclass(frozen=True)
class Hyperplane:
    """``normal . x <= offset`` on the hull; primitive integer data."""

    normal: tuple
    offset: int

    def value(self, point: Sequence) -> Fraction:
        return sum(a * x for a, x in zip(self.normal, point)) - self.offset


@dataclass
class HullStructure:
    config: PointConfiguration
    facets: list  # list of (frozenset of indices, Hyperplane)
    ridges: dict = field(default_factory=dict)  # facet index -> set of adjacent facet indices
    hull_vertices: frozenset = frozenset()
    triangulation: list = field(default_factory=list)

    @property
    def dim(self) -> int:
        return self.config.dim

    def facet_sets(self) -> set:
        return {verts for verts, _ in self.facets}


def _homogeneous(points: Sequence[RatVector]) -> list[tuple]:
    out = []
    for p in points:
        ints, den = integer_row(p)
        out.append(tuple(ints) + (den,))
    return out


def _initial_simplex(hom: list[tuple], d: int) -> list[int]:
    chosen: list[int] = []
    for i, h in enumerate(hom):
        if int_rank([hom[j] for j in chosen] + [h]) > len(chosen):
            chosen.append(i)
            if len(chosen) == d + 1:
                return chosen
    raise DegenerateConfigurationError(len(chosen) - 1, d)


class _TriangulatedHull:
    """Mutable beneath-beyond state over simplicial boundary facets."""

    def __init__(self, hom: list[tuple], d: int):
        self.hom = hom
        self.d = d
        self.facets: dict[int, tuple] = {}  # id -> (verts, plane) with plane = (a..., -b)
        self.ridge_map: dict[tuple, list] = {}
        self.next_id = 0
        self.interior: tuple = ()

    def side(self, plane: tuple, i: int) -> int:
        h = self.hom[i]
        s = 0
        for a, x in zip(plane, h):
            s += a * x
        return s

    def make_plane(self, verts: tuple) -> tuple:
        plane = integer_nullvector([self.hom[v] for v in verts])
        if plane is None:
            raise DegenerateConfigurationError(self.d - 1, self.d)
        s = 0
        for a, x in zip(plane, self.interior):
            s += a * x
        if s > 0:
            plane = [-a for a in plane]
        elif s == 0:
            raise AssertionError("interior point lies on a facet hyperplane")
        return tuple(plane)

    def add_facet(self, verts: tuple, plane: tuple) -> None:
        fid = self.next_id
        self.next_id += 1
        self.facets[fid] = (verts, plane)
        for k in range(len(verts)):
            ridge = verts[:k] + verts[k + 1:]
            self.ridge_map.setdefault(ridge, []).append(fid)

    def remove_facet(self, fid: int) -> None:
        verts, _ = self.facets.pop(fid)
        for k in range(len(verts)):
            ridge = verts[:k] + verts[k + 1:]
            lst = self.ridge_map[ridge]
            lst.remove(fid)
            if not lst:
                del self.ridge_map[ridge]

    def start(self, simplex: list[int]) -> None:
        d = self.d
        # barycentre of the simplex in homogeneous coordinates
        total_den = 1
        for v in simplex:
            total_den = math.lcm(total_den, self.hom[v][d])
        coords = [0] * d
        for v in simplex:
            h = self.hom[v]
            scale = total_den // h[d]
            for k in range(d):
                coords[k] += h[k] * scale
        self.interior = tuple(coords) + (total_den * (d + 1),)
        for verts in combinations(sorted(simplex), d):
            self.add_facet(verts, self.make_plane(verts))

    def insert(self, q: int) -> bool:
        values = {fid: self.side(plane, q) for fid, (_, plane) in self.facets.items()}
        visible = [fid for fid, s in values.items() if s > 0]
        if not visible:
            return False
        vis = set(visible)
        horizon = []
        for fid in visible:
            verts = self.facets[fid][0]
            for k in range(len(verts)):
                ridge = verts[:k] + verts[k + 1:]
                for other in self.ridge_map[ridge]:
                    if other != fid and other not in vis:
                        horizon.append((ridge, fid, other))
        new = []
        for ridge, fid, other in horizon:
            # planes through the ridge form a pencil; pick the member through q
            h1, h2 = self.facets[fid][1], self.facets[other][1]
            s1, s2 = values[fid], values[other]
            plane = _primitive(tuple(s1 * b - s2 * a for a, b in zip(h1, h2)))
            new.append((tuple(sorted(ridge + (q,))), plane))
        for fid in visible:
            self.remove_facet(fid)
        for verts, plane in new:
            self.add_facet(verts, plane)
        return True


def _primitive(plane: tuple) -> tuple:
    g = 0
    for a in plane:
        g = math.gcd(g, a)
    return tuple(a // g for a in plane)


def facet_enumeration(config: PointConfiguration) -> HullStructure:
    """Enumerate all facets of ``conv(config.points)`` exactly."""
    pts = config.points
    d = config.dim
    if len(set(pts)) != len(pts):
        raise ValueError("configuration contains repeated points")
    if len(pts) < d + 1:
        raise DegenerateConfigurationError(len(pts) - 1, d)
    hom = _homogeneous(pts)
    simplex = _initial_simplex(hom, d)
    state = _TriangulatedHull(hom, d)
    state.start(simplex)
    chosen = set(simplex)
    for q in range(len(pts)):
        if q not in chosen:
            state.insert(q)

    # merge coplanar simplices into polytope facets
    by_plane: dict[tuple, list[int]] = {}
    for fid, (_, plane) in state.facets.items():
        by_plane.setdefault(_primitive(plane), []).append(fid)
    planes = sorted(by_plane)
    plane_index = {}
    facets = []
    for k, plane in enumerate(planes):
        on = frozenset(i for i in range(len(pts)) if state.side(plane, i) == 0)
        facets.append((on, Hyperplane(tuple(plane[:d]), -plane[d])))
        for fid in by_plane[plane]:
            plane_index[fid] = k
    ridges: dict[int, set] = {k: set() for k in range(len(facets))}
    for lst in state.ridge_map.values():
        a, b = (plane_index[f] for f in lst)
        if a != b:
            ridges[a].add(b)
            ridges[b].add(a)

    order = sorted(range(len(facets)), key=lambda k: sorted(facets[k][0]))
    renum = {old: new for new, old in enumerate(order)}
    facets = [facets[k] for k in order]
    ridges = {renum[k]: {renum[j] for j in adj} for k, adj in ridges.items()}

    vertices = set()
    incident: dict[int, list] = {}
    for verts, hp in facets:
        for v in verts:
            incident.setdefault(v, []).append(hp.normal)
    for v, normals in incident.items():
        if int_rank(normals) == d:
            vertices.add(v)
    triangulation = sorted(tuple(v) for v, _ in state.facets.values())
    return HullStructure(config, facets, ridges, frozenset(vertices), triangulation)


def is_simplicial(h: HullStructure) -> tuple[bool, Optional[frozenset]]:
    """``(True, None)`` or ``(False, first facet that is not a simplex)``."""
    for verts, _ in h.facets:
        if len(verts) != h.dim:
            return False, verts
    return True, None


def hull_vertices(h: HullStructure) -> frozenset:
    return h.hull_vertices


def boundary_complex(h: HullStructure):
    from .complex import SimplicialComplex

    ok, witness = is_simplicial(h)
    if not ok:
        raise NonSimplicialError(witness)
    return SimplicialComplex(len(h.config), [tuple(sorted(v)) for v, _ in h.facets])


def hull_edges(h: HullStructure) -> set:
    """Edges of the polytope (pairs of vertices spanning a 1-face).

    For a simplicial hull every pair inside a facet is an edge.  In general a
    pair is an edge when the facets containing both cut out exactly that pair.
    """
    d = h.dim
    ok, _ = is_simplicial(h)
    edges = set()
    if ok:
        for verts, _ in h.facets:
            edges.update(combinations(sorted(verts), 2))
        return edges
    containing: dict[tuple, list] = {}
    for k, (verts, _) in enumerate(h.facets):
        vs = sorted(v for v in verts if v in h.hull_vertices)
        for pair in combinations(vs, 2):
            containing.setdefault(pair, []).append(k)
    for pair, ks in containing.items():
        common = frozenset.intersection(*(h.facets[k][0] for k in ks))
        if int_rank([h.facets[k][1].normal for k in ks]) == d - 1 and len(
            common & h.hull_vertices
        ) == 2:
            edges.add(pair)
    return edges
