"""Exact rational scalars, vectors and matrices.

Scalars are :class:`fractions.Fraction` (always reduced, positive
denominator).  Vectors and matrices are plain tuples of fractions so they are
immutable and hashable.  Determinant and rank use fraction-free (Bareiss)
elimination on integer-scaled rows.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Rational = Fraction
RatVector = tuple  # tuple[Fraction, ...]
RatMatrix = tuple  # tuple[RatVector, ...]


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"``, an integer, or a decimal literal into a Fraction."""
    text = text.strip()
    if "/" in text:
        num, _, den = text.partition("/")
        n, d = int(num), int(den)
        if d == 0:
            raise ValueError(f"zero denominator in {text!r}")
        return Fraction(n, d)
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def vector(entries: Iterable) -> RatVector:
    return tuple(Fraction(e) for e in entries)


def matrix(rows: Iterable[Iterable]) -> RatMatrix:
    rows = tuple(vector(r) for r in rows)
    if rows and len({len(r) for r in rows}) != 1:
        raise ValueError("matrix rows have unequal length")
    return rows


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def neg(v: Sequence) -> RatVector:
    return tuple(-a for a in v)


def matvec(m: Sequence[Sequence], v: Sequence) -> RatVector:
    return tuple(dot(row, v) for row in m)


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> RatMatrix:
    cols = list(zip(*b))
    return tuple(tuple(dot(row, col) for col in cols) for row in a)


def identity(n: int) -> RatMatrix:
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


def integer_row(row: Sequence) -> tuple[list[int], int]:
    """Scale a rational row to integers; return ``(ints, multiplier)``."""
    den = 1
    for x in row:
        den = math.lcm(den, Fraction(x).denominator)
    return [int(Fraction(x) * den) for x in row], den


def _bareiss(rows: list[list[int]]) -> tuple[list[list[int]], int, int]:
    """In-place fraction-free row echelon form.

    Returns ``(rows, rank, sign)`` where ``sign`` tracks row swaps.  For a
    square nonsingular input the last pivot equals the determinant.
    """
    m = len(rows)
    n = len(rows[0]) if rows else 0
    sign = 1
    prev = 1
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if rows[i][c] != 0), None)
        if piv is None:
            continue
        if piv != r:
            rows[r], rows[piv] = rows[piv], rows[r]
            sign = -sign
        p = rows[r][c]
        pr = rows[r]
        for i in range(r + 1, m):
            ri = rows[i]
            a = ri[c]
            for j in range(c + 1, n):
                ri[j] = (p * ri[j] - a * pr[j]) // prev
            ri[c] = 0
        prev = p
        r += 1
    return rows, r, sign


def det(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant of a square rational matrix."""
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("det requires a square matrix")
    if n == 0:
        return Fraction(1)
    rows, scale = [], 1
    for row in m:
        ints, mult = integer_row(row)
        rows.append(ints)
        scale *= mult
    rows, rank, sign = _bareiss(rows)
    if rank < n:
        return Fraction(0)
    return Fraction(sign * rows[n - 1][n - 1], scale)


def int_det(rows: Sequence[Sequence[int]]) -> int:
    """Determinant of a square integer matrix (fraction-free)."""
    n = len(rows)
    if n == 0:
        return 1
    work, rank, sign = _bareiss([list(r) for r in rows])
    if rank < n:
        return 0
    return sign * work[n - 1][n - 1]


def rank(m: Sequence[Sequence]) -> int:
    """Exact row rank."""
    if not m or not m[0]:
        return 0
    rows = [integer_row(row)[0] for row in m]
    return _bareiss(rows)[1]


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    if not rows or not rows[0]:
        return 0
    return _bareiss([list(r) for r in rows])[1]


def solve(a: Sequence[Sequence], b: Sequence) -> Optional[RatVector]:
    """Solve ``a x = b`` exactly.

    Returns one solution (free variables set to zero) or ``None`` when the
    system is inconsistent.
    """
    if len(a) != len(b):
        raise ValueError("row count of a must equal length of b")
    n = len(a[0]) if a else 0
    aug = [[Fraction(x) for x in row] + [Fraction(y)] for row, y in zip(a, b)]
    pivots = []
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, len(aug)) if aug[i][c] != 0), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        p = aug[r][c]
        aug[r] = [x / p for x in aug[r]]
        for i in range(len(aug)):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        pivots.append(c)
        r += 1
        if r == len(aug):
            break
    for row in aug[r:]:
        if row[n] != 0:
            return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x[c] = aug[i][n]
    return tuple(x)


def integer_nullvector(rows: Sequence[Sequence[int]]) -> Optional[list[int]]:
    """Primitive integer generator of a one-dimensional right kernel.

    ``rows`` is a k x (k+1) integer matrix.  Returns ``None`` unless the rank
    is exactly k.  The sign is not normalised.
    """
    k = len(rows)
    n = k + 1
    if any(len(r) != n for r in rows):
        raise ValueError("integer_nullvector expects a k x (k+1) matrix")
    work, r, _ = _bareiss([list(row) for row in rows])
    if r != k:
        return None
    pivots = []
    for i in range(k):
        pivots.append(next(c for c in range(n) if work[i][c] != 0))
    free = next(c for c in range(n) if c not in pivots)
    x = [Fraction(0)] * n
    x[free] = Fraction(1)
    for i in range(k - 1, -1, -1):
        row = work[i]
        c = pivots[i]
        s = sum(row[j] * x[j] for j in range(c + 1, n) if row[j])
        x[c] = -Fraction(s) / row[c]
    den = 1
    for v in x:
        den = math.lcm(den, v.denominator)
    out = [int(v * den) for v in x]
    g = 0
    for v in out:
        g = math.gcd(g, v)
    return [v // g for v in out]


def orientation(points: Sequence[Sequence]) -> int:
    """Sign of the homogeneous determinant of d+1 points in R^d."""
    if not points:
        raise ValueError("no points")
    d = len(points[0])
    if len(points) != d + 1 or any(len(p) != d for p in points):
        raise ValueError("orientation needs d+1 points of dimension d")
    value = det([tuple(p) + (Fraction(1),) for p in points])
    return (value > 0) - (value < 0)
