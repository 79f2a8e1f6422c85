"""Simplicial homology over GF(2) and over the integers.

Faces are oriented by increasing vertex labels.  Mod-2 ranks use column
reduction on Python integers as bitsets, with the clearing shortcut (a
column whose face is a pivot of the next boundary reduces to zero).  Integer
homology uses sparse elimination on unit pivots chosen to limit fill, and
finishes any non-unit remainder with a dense Smith normal form.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Optional

from .complex import SimplicialComplex


@dataclass
class BoundaryMatrix:
    """Sparse matrix of the k-th boundary map; columns are k-faces."""

    k: int
    rows: list  # (k-1)-faces in sorted order
    cols: list  # k-faces in sorted order
    columns: list  # per column: list of (row index, +1 or -1)

    @property
    def shape(self) -> tuple:
        return len(self.rows), len(self.cols)

    def dense(self) -> list:
        out = [[0] * len(self.cols) for _ in self.rows]
        for j, col in enumerate(self.columns):
            for i, s in col:
                out[i][j] = s
        return out


@dataclass
class HomologySummary:
    betti: list
    torsion: list = field(default_factory=list)  # per dimension, invariant factors > 1

    def describe(self) -> list:
        out = []
        for b, t in zip(self.betti, self.torsion):
            parts = ["Z"] * b + [f"Z/{q}" for q in t]
            out.append(" + ".join(parts) if parts else "0")
        return out


def boundary_matrices(c: SimplicialComplex) -> list:
    """Boundary maps for k = 1..dim."""
    faces = [sorted(c.faces(k)) for k in range(c.dim + 1)]
    out = []
    for k in range(1, c.dim + 1):
        index = {f: i for i, f in enumerate(faces[k - 1])}
        columns = []
        for f in faces[k]:
            col = []
            for j in range(len(f)):
                col.append((index[f[:j] + f[j + 1:]], -1 if j % 2 else 1))
            columns.append(col)
        out.append(BoundaryMatrix(k, faces[k - 1], faces[k], columns))
    return out


def compose_is_zero(lower: BoundaryMatrix, upper: BoundaryMatrix) -> bool:
    """Whether ``lower @ upper`` vanishes (lower is the k-1 map, upper the k map)."""
    lcols = lower.columns
    for col in upper.columns:
        acc: dict = {}
        for i, s in col:
            for r, t in lcols[i]:
                acc[r] = acc.get(r, 0) + s * t
        if any(acc.values()):
            return False
    return True


def _gf2_rank(bm: BoundaryMatrix, skip: set) -> tuple[int, set]:
    """Rank over GF(2); returns the rank and the pivot rows found."""
    pivots: dict = {}
    for j, col in enumerate(bm.columns):
        if j in skip:
            continue
        v = 0
        for i, _ in col:
            v ^= 1 << i
        while v:
            low = v.bit_length() - 1
            other = pivots.get(low)
            if other is None:
                pivots[low] = v
                break
            v ^= other
    return len(pivots), set(pivots)


def boundary_ranks_mod2(c: SimplicialComplex) -> list:
    """``ranks[k]`` is the GF(2) rank of the k-th boundary (``ranks[0] == 0``)."""
    mats = boundary_matrices(c)
    ranks = [0] * (c.dim + 2)
    skip: set = set()
    for bm in reversed(mats):
        r, pivot_rows = _gf2_rank(bm, skip)
        ranks[bm.k] = r
        skip = pivot_rows
    return ranks


def betti_mod2(c: SimplicialComplex) -> list:
    fv = [len(c.faces(k)) for k in range(c.dim + 1)]
    ranks = boundary_ranks_mod2(c)
    return [fv[k] - ranks[k] - ranks[k + 1] for k in range(c.dim + 1)]


def _dense_snf_diagonal(rows: list) -> list:
    """Nonzero invariant factors of a small dense integer matrix."""
    a = [list(r) for r in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry in the trailing block becomes the pivot
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, m):
                q = a[i][t] // p
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = a[t][j] // p
                if q:
                    for row in a:
                        row[j] -= q * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # move a smaller remainder into the pivot position and repeat
                cand = [(abs(a[i][t]), i, t) for i in range(t + 1, m) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t + 1, n) if a[t][j]]
                _, i, j = min(cand)
                if j == t:
                    a[t], a[i] = a[i], a[t]
                else:
                    for row in a:
                        row[t], row[j] = row[j], row[t]
                continue
            # pivot must divide the whole trailing block
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def smith_invariants(bm: BoundaryMatrix) -> list:
    """Nonzero invariant factors of a boundary matrix (with multiplicity)."""
    rows: dict = {}
    cols: dict = {}
    for j, col in enumerate(bm.columns):
        cols[j] = {}
        for i, s in col:
            rows.setdefault(i, {})[j] = s
            cols[j][i] = s
    factors = []
    heap = [(len(cols[j]), j) for j in cols]
    heapq.heapify(heap)
    deferred = set()
    while heap:
        cnt, j = heapq.heappop(heap)
        if j not in cols or j in deferred or cnt != len(cols[j]):
            continue
        col = cols[j]
        if not col:
            del cols[j]
            continue
        units = [i for i, v in col.items() if v in (1, -1)]
        if not units:
            deferred.add(j)
            continue
        i = min(units, key=lambda r: (len(rows[r]), r))
        pivot_row = rows[i]
        pv = pivot_row[j]
        touched = set()
        for r, a in list(col.items()):
            if r == i:
                continue
            q = a * pv  # a / pv for pv = +-1
            target = rows[r]
            for c2, b in pivot_row.items():
                nv = target.get(c2, 0) - q * b
                if nv:
                    target[c2] = nv
                    cols[c2][r] = nv
                else:
                    target.pop(c2, None)
                    cols[c2].pop(r, None)
                touched.add(c2)
        for c2 in pivot_row:
            if c2 != j:
                cols[c2].pop(i, None)
                touched.add(c2)
        del rows[i]
        del cols[j]
        factors.append(1)
        for c2 in touched:
            if c2 in cols and c2 != j:
                deferred.discard(c2)
                heapq.heappush(heap, (len(cols[c2]), c2))
    rest_cols = sorted(c2 for c2, v in cols.items() if v)
    rest_rows = sorted({r for c2 in rest_cols for r in cols[c2]})
    if rest_cols:
        ri = {r: k for k, r in enumerate(rest_rows)}
        dense = [[0] * len(rest_cols) for _ in rest_rows]
        for k, c2 in enumerate(rest_cols):
            for r, v in cols[c2].items():
                dense[ri[r]][k] = v
        factors += _dense_snf_diagonal(dense)
    return sorted(factors)


def integer_homology(c: SimplicialComplex) -> HomologySummary:
    fv = [len(c.faces(k)) for k in range(c.dim + 1)]
    invariants = {bm.k: smith_invariants(bm) for bm in boundary_matrices(c)}
    rank = {k: len(v) for k, v in invariants.items()}
    betti, torsion = [], []
    for k in range(c.dim + 1):
        betti.append(fv[k] - rank.get(k, 0) - rank.get(k + 1, 0))
        torsion.append([q for q in invariants.get(k + 1, []) if q > 1])
    return HomologySummary(betti, torsion)


def mod2_from_integer(h: HomologySummary) -> list:
    """Universal coefficients: mod-2 Betti numbers implied by integer homology."""
    out = []
    for k, b in enumerate(h.betti):
        even_here = sum(1 for q in h.torsion[k] if q % 2 == 0)
        even_below = sum(1 for q in h.torsion[k - 1] if q % 2 == 0) if k else 0
        out.append(b + even_here + even_below)
    return out
