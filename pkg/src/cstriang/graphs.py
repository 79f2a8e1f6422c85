"""Simple graphs, threshold graphs on point sets, and exact chromatic numbers."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional

DEFAULT_TIME_LIMIT = 600.0


class Graph:
    """Undirected simple graph on ``0..n-1``."""

    def __init__(self, n: int, edges: Iterable = ()):
        self.n = n
        self.adj = [set() for _ in range(n)]
        for a, b in edges:
            if a == b:
                raise ValueError(f"loop at vertex {a}")
            self.adj[a].add(b)
            self.adj[b].add(a)

    def edges(self) -> set:
        return {(a, b) for a in range(self.n) for b in self.adj[a] if a < b}

    def edge_count(self) -> int:
        return sum(len(s) for s in self.adj) // 2

    def degrees(self) -> list:
        return [len(s) for s in self.adj]

    def masks(self) -> list:
        out = []
        for s in self.adj:
            m = 0
            for b in s:
                m |= 1 << b
            out.append(m)
        return out

    def complement(self) -> "Graph":
        return Graph(self.n, ((a, b) for a, b in combinations(range(self.n), 2)
                              if b not in self.adj[a]))

    def is_complete(self) -> bool:
        return self.edge_count() == self.n * (self.n - 1) // 2

    def __eq__(self, other):
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edge_count()})"


def complete_graph(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def threshold_graph(config, t) -> Graph:
    """Edge ``{i, j}`` iff the exact inner product of points i and j exceeds ``t``."""
    t = Fraction(t)
    pts = config.points
    if not pts:
        raise ValueError("empty configuration")
    edges = []
    for i, j in combinations(range(len(pts)), 2):
        if sum(a * b for a, b in zip(pts[i], pts[j])) > t:
            edges.append((i, j))
    return Graph(len(pts), edges)


@dataclass
class DegreeProfile:
    regular: Optional[int]
    degrees: list
    edges: int


def degree_profile(g: Graph) -> DegreeProfile:
    degs = g.degrees()
    reg = degs[0] if degs and len(set(degs)) == 1 else None
    return DegreeProfile(reg, degs, g.edge_count())


def max_clique(g: Graph, deadline: Optional[float] = None) -> tuple[list, bool]:
    """Maximum clique by branch and bound with greedy-colouring bounds.

    Returns ``(clique, exact)``; ``exact`` is False if the deadline expired.
    """
    masks = g.masks()
    best: list = []
    timed_out = False

    def colour_bound(cand: int) -> list:
        # greedy colouring of the candidate set; returns (vertex, colour) sorted by colour
        order = []
        colour = 0
        rest = cand
        while rest:
            colour += 1
            avail = rest
            while avail:
                v = avail.bit_length() - 1
                avail &= ~(1 << v)
                avail &= ~masks[v]
                rest &= ~(1 << v)
                order.append((v, colour))
        return order

    def expand(clique: list, cand: int):
        nonlocal best, timed_out
        if deadline is not None and time.monotonic() > deadline:
            timed_out = True
            return
        for v, col in reversed(colour_bound(cand)):
            if len(clique) + col <= len(best):
                return
            new = clique + [v]
            nc = cand & masks[v]
            if nc:
                expand(new, nc)
            elif len(new) > len(best):
                best = new
            cand &= ~(1 << v)
            if timed_out:
                return

    expand([], (1 << g.n) - 1)
    return sorted(best), not timed_out


def independence_number(g: Graph, deadline: Optional[float] = None) -> tuple[int, bool]:
    clique, exact = max_clique(g.complement(), deadline)
    return len(clique), exact


def is_proper_coloring(g: Graph, coloring) -> bool:
    if len(coloring) != g.n:
        return False
    return all(coloring[a] != coloring[b] for a, b in g.edges())


def dsatur(g: Graph) -> list:
    """DSATUR greedy colouring; ties go to higher degree, then lowest index."""
    n = g.n
    colors = [-1] * n
    sat = [set() for _ in range(n)]
    for _ in range(n):
        v = max((u for u in range(n) if colors[u] < 0),
                key=lambda u: (len(sat[u]), len(g.adj[u]), -u))
        c = 0
        while c in sat[v]:
            c += 1
        colors[v] = c
        for w in g.adj[v]:
            sat[w].add(c)
    return colors


def tabucol(g: Graph, k: int, seed: int = 0, max_iters: int = 20000) -> Optional[list]:
    """Tabu-search for a proper k-colouring; ``None`` if none is met in time.

    Only a witness finder: failure proves nothing.
    """
    if k <= 0:
        return None
    rng = random.Random(seed)
    n = g.n
    adj = [sorted(s) for s in g.adj]
    col = [rng.randrange(k) for _ in range(n)]
    gamma = [[0] * k for _ in range(n)]
    for v in range(n):
        for w in adj[v]:
            gamma[v][col[w]] += 1
    conflicts = sum(gamma[v][col[v]] for v in range(n)) // 2
    best = conflicts
    tabu: dict = {}
    for it in range(max_iters):
        if conflicts == 0:
            return col
        move, delta = None, None
        for v in range(n):
            gv, cv = gamma[v], col[v]
            if gv[cv] == 0:
                continue
            for c in range(k):
                if c == cv:
                    continue
                d = gv[c] - gv[cv]
                if tabu.get((v, c), -1) > it and conflicts + d >= best:
                    continue
                if delta is None or d < delta or (d == delta and rng.random() < 0.3):
                    move, delta = (v, c), d
        if move is None:
            continue
        v, c = move
        old = col[v]
        col[v] = c
        for w in adj[v]:
            gamma[w][old] -= 1
            gamma[w][c] += 1
        conflicts += delta
        best = min(best, conflicts)
        tabu[(v, old)] = it + rng.randrange(10) + int(0.6 * conflicts)
    return col if conflicts == 0 else None


class _Timeout(Exception):
    pass


def k_coloring(g: Graph, k: int, clique=(), alpha: Optional[int] = None,
               deadline: Optional[float] = None) -> Optional[list]:
    """A proper colouring with at most ``k`` colours, or ``None`` if none exists.

    Exhaustive DSATUR-ordered backtracking.  The vertices of ``clique`` are
    pinned to colours ``0..len(clique)-1``; new colours are opened only in
    order.  When ``alpha`` (the independence number) is given, a branch is
    cut once the colour classes cannot absorb the uncoloured vertices.
    Raises ``TimeoutError`` when ``deadline`` passes.
    """
    n = g.n
    if k <= 0:
        return [] if n == 0 else None
    if len(clique) > k:
        return None
    masks = g.masks()
    colors = [-1] * n
    class_size = [0] * k
    forbidden = [0] * n  # bitmask of colours used by neighbours
    counter = [0]

    def assign(v, c):
        colors[v] = c
        class_size[c] += 1
        changed = []
        for w in g.adj[v]:
            if not forbidden[w] >> c & 1:
                forbidden[w] |= 1 << c
                changed.append(w)
        return changed

    def unassign(v, c, changed):
        colors[v] = -1
        class_size[c] -= 1
        for w in changed:
            forbidden[w] &= ~(1 << c)

    for c, v in enumerate(clique):
        assign(v, c)
    used0 = len(clique)

    def search(n_left, used):
        if n_left == 0:
            return True
        counter[0] += 1
        if deadline is not None and counter[0] % 256 == 0 and time.monotonic() > deadline:
            raise _Timeout
        if alpha is not None:
            room = sum(alpha - class_size[c] for c in range(used)) + (k - used) * alpha
            if room < n_left:
                return False
        best_v, best_key = -1, None
        for u in range(n):
            if colors[u] >= 0:
                continue
            s = bin(forbidden[u]).count("1")
            if s >= k:
                return False
            key = (s, len(g.adj[u]))
            if best_key is None or key > best_key:
                best_v, best_key = u, key
        v = best_v
        limit = min(used + 1, k)
        for c in range(limit):
            if forbidden[v] >> c & 1:
                continue
            if alpha is not None and class_size[c] >= alpha:
                continue
            changed = assign(v, c)
            if search(n_left - 1, max(used, c + 1)):
                return True
            unassign(v, c, changed)
        return False

    try:
        found = search(n - used0, used0)
    except _Timeout:
        raise TimeoutError(f"k-colouring search for k={k} exceeded its time limit")
    return list(colors) if found else None


@dataclass
class ColoringResult:
    lower_bound: int
    upper_bound: int
    witness: list
    proof_status: str  # "exact" or "bounded"
    clique: list
    independence_number: Optional[int]
    elapsed: float

    @property
    def chromatic_number(self) -> Optional[int]:
        return self.upper_bound if self.proof_status == "exact" else None


def chromatic_number(g: Graph, time_limit: float = DEFAULT_TIME_LIMIT) -> ColoringResult:
    """Exact chromatic number, or bounds if the time limit is reached.

    Exactness means: a proper colouring with ``chi`` colours is returned and
    the search for a ``chi - 1`` colouring was exhausted.
    """
    start = time.monotonic()
    deadline = start + time_limit
    if g.n == 0:
        return ColoringResult(0, 0, [], "exact", [], 0, 0.0)
    witness = dsatur(g)
    upper = max(witness) + 1
    clique, clique_exact = max_clique(g, deadline)
    lower = max(len(clique), 1)
    try:
        alpha, alpha_exact = independence_number(g, deadline)
    except Exception:
        alpha, alpha_exact = None, False
    if not alpha_exact:
        alpha = None
    if alpha:
        lower = max(lower, -(-g.n // alpha))
    try:
        while upper > 1:
            k = upper - 1
            col = tabucol(g, k) if k >= lower else None
            if col is None:
                # exhaustive; this is the certificate once it comes back empty
                col = k_coloring(g, k, clique, alpha, deadline)
            if col is None:
                break
            witness, upper = col, max(col) + 1
    except TimeoutError:
        return ColoringResult(lower, upper, witness, "bounded", clique, alpha,
                              time.monotonic() - start)
    return ColoringResult(upper, upper, witness, "exact", clique, alpha,
                          time.monotonic() - start)


def verify_edge_rule(config, hull) -> tuple[bool, Optional[tuple]]:
    """Whether hull edges are exactly the pairs with positive inner product.

    Returns ``(ok, counterexample pair)``.
    """
    from .hull import hull_edges

    positive = threshold_graph(config, 0).edges()
    edges = hull_edges(hull)
    diff = sorted(positive ^ edges)
    if diff:
        return False, diff[0]
    return True, None
