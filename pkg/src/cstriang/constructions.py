"""Generators for the configurations studied by the toolkit.

* the 48-point family in R^6 built from three parameters ``alpha < beta < gamma``;
* the embedded 90-point configuration in R^7;
* the cylinder-plus-cones doubling ``P x [-1, 1]`` with two apexes, followed by
  a seeded antipodally symmetric perturbation;
* the two signed-permutation symmetries ``b`` and ``c`` of the 48-point set.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from itertools import combinations, permutations, product
from typing import Optional

from .groups import PermutationGroup, group_closure
from .hull import PointConfiguration
from .ratmath import format_rational, matrix, matvec, parse_rational, vector

DEFAULT_ALPHA = Fraction(3, 7)
DEFAULT_BETA = Fraction(4, 7)
DEFAULT_GAMMA = Fraction(5, 7)

# Vertex list of the 48-point polytope, in printed order; a/b/g stand for
# alpha/beta/gamma.  Rows 25..48 are the negatives of rows 1..24.
_P648_PATTERN = (
    "0 g a b 0 0", "a 0 0 -g -b 0", "b g -a 0 0 0", "-b g -a 0 0 0",
    "-g 0 0 -a -b 0", "0 0 b 0 a -g", "0 0 b 0 -g -a", "-g 0 0 -a b 0",
    "0 b 0 0 -a -g", "0 -g -a b 0 0", "0 -b 0 0 g -a", "0 -b 0 0 -g a",
    "-g 0 0 a 0 b", "-g 0 0 a 0 -b", "0 0 b 0 -a g", "a 0 0 g 0 b",
    "0 a -g b 0 0", "a 0 0 -g b 0", "b -a -g 0 0 0", "0 b 0 0 a g",
    "0 0 b 0 g a", "b a g 0 0 0", "a 0 0 g 0 -b", "0 a -g -b 0 0",
    "0 -g -a -b 0 0", "-a 0 0 g b 0", "-b -g a 0 0 0", "b -g a 0 0 0",
    "g 0 0 a b 0", "0 0 -b 0 -a g", "0 0 -b 0 g a", "g 0 0 a -b 0",
    "0 -b 0 0 a g", "0 g a -b 0 0", "0 b 0 0 -g a", "0 b 0 0 g -a",
    "g 0 0 -a 0 -b", "g 0 0 -a 0 b", "0 0 -b 0 a -g", "-a 0 0 -g 0 -b",
    "0 -a g -b 0 0", "-a 0 0 g -b 0", "-b a g 0 0 0", "0 -b 0 0 -a -g",
    "0 0 -b 0 -g -a", "-b -a -g 0 0 0", "-a 0 0 -g 0 b", "0 -a g b 0 0",
)

# Column i of each matrix is the image of e_i.
B_MATRIX = matrix([
    [-1, 0, 0, 0, 0, 0],
    [0, 1, 0, 0, 0, 0],
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 1, 0, 0],
    [0, 0, 0, 0, 0, -1],
    [0, 0, 0, 0, 1, 0],
])
C_MATRIX = matrix([
    [0, 0, 1, 0, 0, 0],
    [0, 0, 0, 0, 1, 0],
    [0, 0, 0, 0, 0, -1],
    [0, -1, 0, 0, 0, 0],
    [0, 0, 0, -1, 0, 0],
    [-1, 0, 0, 0, 0, 0],
])

# 1-based coordinate supports of the six cube classes.
SUPPORT_FAMILY = (
    frozenset({1, 2, 3}), frozenset({1, 4, 5}), frozenset({1, 4, 6}),
    frozenset({2, 3, 4}), frozenset({2, 5, 6}), frozenset({3, 5, 6}),
)

P790_SHA256 = "6a07229368a3a23c67520419f176189e32d58a727d29ccb18e30d9ff0e5ddc52"


class ConstructionError(ValueError):
    pass


class PerturbationRetryError(ConstructionError):
    """No seed in the allowed range produced a usable perturbation."""

    def __init__(self, seeds, diagnostics):
        self.seeds = list(seeds)
        self.diagnostics = diagnostics
        super().__init__(
            f"no simplicial perturbation satisfying the disjoint-star condition "
            f"among seeds {self.seeds[0]}..{self.seeds[-1]}"
        )


def build_p648(alpha=DEFAULT_ALPHA, beta=DEFAULT_BETA, gamma=DEFAULT_GAMMA) -> PointConfiguration:
    """The 48 points in R^6 with pairing ``i <-> i + 24``."""
    alpha, beta, gamma = Fraction(alpha), Fraction(beta), Fraction(gamma)
    if min(alpha, beta, gamma) <= 0:
        raise ConstructionError("alpha, beta, gamma must be positive")
    if not alpha < beta < gamma:
        raise ConstructionError("need alpha < beta < gamma (all distinct)")
    values = {"a": alpha, "b": beta, "g": gamma, "0": Fraction(0)}
    points = []
    for row in _P648_PATTERN:
        coords = []
        for tok in row.split():
            sign = -1 if tok.startswith("-") else 1
            coords.append(sign * values[tok.lstrip("-")])
        points.append(tuple(coords))
    pairing = [(i + 24) % 48 for i in range(48)]
    return PointConfiguration(tuple(points), tuple(pairing))


def support(point) -> frozenset:
    """1-based positions of nonzero coordinates."""
    return frozenset(i + 1 for i, x in enumerate(point) if x != 0)


@dataclass
class SupportPartition:
    classes: dict  # support (1-based frozenset) -> sorted list of vertex indices
    cube_edges: dict  # support -> list of index pairs differing in exactly one sign

    def is_cube(self, s) -> bool:
        verts = self.classes[s]
        edges = self.cube_edges[s]
        deg = {v: 0 for v in verts}
        for a, b in edges:
            deg[a] += 1
            deg[b] += 1
        return len(verts) == 8 and len(edges) == 12 and set(deg.values()) == {3}

    def max_facet_contribution(self, facets) -> int:
        where = {v: s for s, vs in self.classes.items() for v in vs}
        worst = 0
        for f in facets:
            counts: dict = {}
            for v in f:
                counts[where[v]] = counts.get(where[v], 0) + 1
            worst = max(worst, max(counts.values()))
        return worst


def support_partition(config: PointConfiguration, family=SUPPORT_FAMILY) -> SupportPartition:
    """Group vertices by support and read off the cube graph of each class."""
    classes: dict = {}
    for i, p in enumerate(config.points):
        s = support(p)
        if family is not None and s not in family:
            raise ConstructionError(f"vertex {i} has unexpected support {sorted(s)}")
        classes.setdefault(s, []).append(i)
    cube_edges = {}
    for s, verts in classes.items():
        edges = []
        for a, b in combinations(verts, 2):
            pa, pb = config.points[a], config.points[b]
            # sign vectors on the common support differ in exactly one place
            flips = sum(1 for x, y in zip(pa, pb) if x != 0 and (x > 0) != (y > 0))
            if flips == 1:
                edges.append((a, b))
        cube_edges[s] = edges
    return SupportPartition(classes, cube_edges)


def matrix_action(m, config: PointConfiguration) -> tuple:
    """Permutation of vertex labels induced by ``x -> m x``."""
    index = {p: i for i, p in enumerate(config.points)}
    perm = []
    for p in config.points:
        image = matvec(m, p)
        j = index.get(image)
        if j is None:
            raise ConstructionError(
                f"matrix does not stabilise the configuration: image {image} missing"
            )
        perm.append(j)
    return tuple(perm)


def linear_symmetry_group(config: PointConfiguration, generators=(B_MATRIX, C_MATRIX)) -> PermutationGroup:
    return group_closure([matrix_action(m, config) for m in generators], len(config))


def _load_p790_half() -> list:
    text = resources.files("cstriang.data").joinpath("p790_half.txt").read_text()
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    body = "\n".join(" ".join(r) for r in rows) + "\n"
    digest = hashlib.sha256(body.encode()).hexdigest()
    if digest != P790_SHA256:
        raise ConstructionError(f"embedded 90-point table is corrupt (sha256 {digest})")
    return [tuple(parse_rational(x) for x in r) for r in rows]


def build_p790() -> PointConfiguration:
    """The 90 points in R^7 with pairing ``i <-> i + 45``."""
    return PointConfiguration.centrally_symmetric(_load_p790_half())


def _half(config: PointConfiguration) -> list[int]:
    if config.pairing is None:
        raise ConstructionError("configuration needs an antipodal pairing")
    return [i for i, j in enumerate(config.pairing) if i < j]


def cone_cylinder(config: PointConfiguration, apex_height=Fraction(2), delta=Fraction(1, 1000),
                  seed: int = 0, denominator: int = 10**4) -> PointConfiguration:
    """Prism over ``config`` with apexes above and below, symmetrically perturbed.

    Labels: the first half lists ``(p, 1)`` for one representative ``p`` of each
    antipodal pair and then the top apex; the second half is the negation.
    Each perturbation entry is a multiple of ``1/denominator`` bounded by
    ``delta`` in absolute value.
    """
    apex_height, delta = Fraction(apex_height), Fraction(delta)
    if apex_height <= 1:
        raise ConstructionError("apex height must exceed 1 to cone over the cylinder")
    if delta < 0:
        raise ConstructionError("delta must be non-negative")
    reps = _half(config)
    d = config.dim
    half = [tuple(config.points[i]) + (Fraction(1),) for i in reps]
    # the other sign class of the top layer, so that all 2n prism points appear
    half += [tuple(-x for x in config.points[i]) + (Fraction(1),) for i in reps]
    half.append((Fraction(0),) * d + (apex_height,))
    rng = random.Random(seed)
    bound = int(delta * denominator)
    if bound:
        half = [
            tuple(x + Fraction(rng.randint(-bound, bound), denominator) for x in p)
            for p in half
        ]
    return PointConfiguration.centrally_symmetric(half)


def find_simplicial_cone_cylinder(config: PointConfiguration, apex_height=Fraction(2),
                                  delta=Fraction(1, 1000), seeds=range(32)):
    """First seed whose perturbed prism is simplicial with disjoint antipodal stars.

    Returns ``(configuration, hull, seed)``.
    """
    from .complex import Involution, check_disjoint_stars
    from .hull import boundary_complex, facet_enumeration, is_simplicial

    diagnostics = []
    for seed in seeds:
        cfg = cone_cylinder(config, apex_height, delta, seed)
        hull = facet_enumeration(cfg)
        ok, witness = is_simplicial(hull)
        if not ok:
            diagnostics.append((seed, f"non-simplicial facet of size {len(witness)}"))
            continue
        cx = boundary_complex(hull)
        good, bad = check_disjoint_stars(cx, Involution(cfg.pairing))
        if not good:
            diagnostics.append((seed, f"{len(bad)} antipodal pairs with meeting stars"))
            continue
        return cfg, hull, seed
    raise PerturbationRetryError(seeds, diagnostics)


def arnoux_marin_bound(d: int) -> int:
    """Minimum vertex count of a triangulation of RP^d, d >= 3."""
    if d < 3:
        raise ValueError("the bound needs d >= 3")
    return (d + 2) * (d + 1) // 2 + 1


def squared_norms(config: PointConfiguration) -> set:
    return {sum(x * x for x in p) for p in config.points}


def describe_point(p) -> str:
    return "(" + ", ".join(format_rational(x) for x in p) + ")"


def family_magnitudes(config: PointConfiguration) -> Optional[tuple]:
    """The distinct nonzero absolute coordinate values, if there are exactly three."""
    mags = sorted({abs(x) for p in config.points for x in p if x != 0})
    return tuple(mags) if len(mags) == 3 else None


def align_to_family(config: PointConfiguration):
    """Signed coordinate permutation carrying ``config`` onto ``build_p648`` as a set.

    The parameters are read off the coordinate magnitudes.  Returns
    ``(aligned configuration, (perm, signs), (alpha, beta, gamma))`` with
    labels and pairing kept, or ``None`` when no such map exists.
    """
    mags = family_magnitudes(config)
    if mags is None or config.dim != 6:
        return None
    try:
        target = set(build_p648(*mags).points)
    except ConstructionError:
        return None
    if len(config) != len(target):
        return None
    first = config.points[0]
    for perm in permutations(range(6)):
        for signs in product((1, -1), repeat=6):
            # new coordinate k is signs[k] * old coordinate perm[k]
            image = tuple(signs[k] * first[perm[k]] for k in range(6))
            if image not in target:
                continue
            moved = tuple(
                tuple(signs[k] * p[perm[k]] for k in range(6)) for p in config.points
            )
            if set(moved) == target:
                return PointConfiguration(moved, config.pairing), (perm, signs), mags
    return None
