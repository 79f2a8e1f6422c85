"""Permutation groups given by generators.

Permutations are tuples of images: ``p[i]`` is the image of ``i``.  Products
compose right to left, ``mul(p, q)[i] == p[q[i]]``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

DEFAULT_ELEMENT_CAP = 10**5


def identity_perm(n: int) -> tuple:
    return tuple(range(n))


def mul(p: Sequence[int], q: Sequence[int]) -> tuple:
    return tuple(p[i] for i in q)


def inverse(p: Sequence[int]) -> tuple:
    inv = [0] * len(p)
    for i, j in enumerate(p):
        inv[j] = i
    return tuple(inv)


def is_permutation(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(len(p)))


def closure(generators: Iterable[Sequence[int]], n: int, cap: int = DEFAULT_ELEMENT_CAP) -> Optional[set]:
    """All elements generated, by breadth-first search; ``None`` past ``cap``."""
    gens = [tuple(g) for g in generators]
    e = identity_perm(n)
    seen = {e}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(g, x)
            if y not in seen:
                seen.add(y)
                if len(seen) > cap:
                    return None
                queue.append(y)
    return seen


def _orbit_transversal(point: int, gens: Sequence[tuple], n: int) -> dict:
    trans = {point: identity_perm(n)}
    queue = deque([point])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = g[x]
            if y not in trans:
                trans[y] = mul(g, trans[x])
                queue.append(y)
    return trans


def schreier_sims_order(generators: Sequence[Sequence[int]], n: int) -> int:
    """Group order from a Schreier-Sims base and strong generating set."""
    e = identity_perm(n)
    strong = [tuple(g) for g in generators if tuple(g) != e]
    base: list[int] = []

    def extend_base(g):
        if all(g[b] == b for b in base):
            base.append(next(i for i, x in enumerate(g) if x != i))

    for g in strong:
        extend_base(g)

    while True:
        levels = []
        for k, b in enumerate(base):
            gens_k = [s for s in strong if all(s[c] == c for c in base[:k])]
            levels.append((gens_k, _orbit_transversal(b, gens_k, n)))

        def sift(h, start):
            for j in range(start, len(base)):
                image = h[base[j]]
                trans = levels[j][1]
                if image not in trans:
                    return h, j
                h = mul(inverse(trans[image]), h)
            return h, len(base)

        residue = None
        for k, (gens_k, trans) in enumerate(levels):
            for u, tu in trans.items():
                for s in gens_k:
                    h = mul(inverse(trans[s[u]]), mul(s, tu))
                    r, _ = sift(h, k + 1)
                    if r != e:
                        residue = r
                        break
                if residue:
                    break
            if residue:
                break
        if residue is None:
            break
        strong.append(residue)
        extend_base(residue)

    order = 1
    for _, trans in levels:
        order *= len(trans)
    return order


@dataclass
class PermutationGroup:
    n: int
    generators: list
    order: int
    elements: Optional[frozenset] = field(default=None, repr=False)

    def __contains__(self, p) -> bool:
        if self.elements is None:
            raise ValueError("element listing not available for this group")
        return tuple(p) in self.elements


def group_closure(perms: Iterable[Sequence[int]], n: Optional[int] = None,
                  cap: int = DEFAULT_ELEMENT_CAP) -> PermutationGroup:
    """Closure of a set of permutations on a common ground set."""
    gens = [tuple(p) for p in perms]
    if n is None:
        if not gens:
            raise ValueError("need n when no generators are given")
        n = len(gens[0])
    if any(len(g) != n or not is_permutation(g) for g in gens):
        raise ValueError("generators must be permutations of range(n)")
    elements = closure(gens, n, cap)
    if elements is not None:
        return PermutationGroup(n, gens, len(elements), frozenset(elements))
    return PermutationGroup(n, gens, schreier_sims_order(gens, n), None)
