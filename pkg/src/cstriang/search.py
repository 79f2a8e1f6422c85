"""Floating-point search for well-spread centrally symmetric configurations.

Three stages: simulated annealing that maximises the smallest inner product
across hull edges, L1 sparsification of a configuration over rotations, and
rounding back to exact rationals.  Only the last stage produces data that the
exact pipeline accepts; the first two are heuristics.
"""

from __future__ import annotations

import logging
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

import numpy as np
from scipy.spatial import ConvexHull, QhullError

from .hull import PointConfiguration

log = logging.getLogger(__name__)

INCIDENCE_TOL = 1e-9
_GOLDEN = (math.sqrt(5) - 1) / 2


# ---------------------------------------------------------------- objective

def full_configuration(half: np.ndarray) -> np.ndarray:
    """Stack ``half`` on top of its negatives (pairing ``i <-> i + len(half)``)."""
    return np.vstack([half, -half])


def float_hull_edges(points: np.ndarray, tol: float = INCIDENCE_TOL) -> set:
    """Edges of conv(points) from a Qhull facet list, merging coplanar facets.

    A point is on a facet when its distance to the facet plane is below
    ``tol``.  When every facet is a simplex, all pairs inside a facet are
    edges; otherwise a pair is an edge when the facets containing it have
    normals of rank d-1 and meet in exactly that pair.
    """
    n, d = points.shape
    hull = ConvexHull(points)
    eq = hull.equations
    dist = np.abs(points @ eq[:, :d].T + eq[:, d])
    facets = {frozenset(np.flatnonzero(col < tol).tolist()): k for k, col in enumerate(dist.T)}
    edges = set()
    if all(len(f) == d for f in facets):
        for f in facets:
            edges.update(combinations(sorted(f), 2))
        return edges
    containing: dict = {}
    for f, k in facets.items():
        for pair in combinations(sorted(f), 2):
            containing.setdefault(pair, []).append((f, k))
    for pair, fs in containing.items():
        common = frozenset.intersection(*(f for f, _ in fs))
        normals = eq[[k for _, k in fs], :d]
        if len(common) == 2 and np.linalg.matrix_rank(normals, tol=1e-7) == d - 1:
            edges.add(pair)
    return edges


def edge_objective(half: np.ndarray, normalize: bool = True, tol: float = INCIDENCE_TOL) -> float:
    """Smallest inner product between hull-adjacent points of ``half ∪ -half``.

    With ``normalize`` the points are first scaled onto the unit sphere.
    """
    half = np.asarray(half, dtype=float)
    if normalize:
        half = half / np.linalg.norm(half, axis=1, keepdims=True)
    pts = full_configuration(half)
    edges = float_hull_edges(pts, tol)
    if not edges:
        raise ValueError("hull has no edges")
    i, j = np.array(sorted(edges)).T
    return float(np.min(np.einsum("ij,ij->i", pts[i], pts[j])))


# ---------------------------------------------------------------- annealing

@dataclass(frozen=True)
class AnnealingSchedule:
    """Geometric cooling from ``t_start`` to ``t_end``; the step size follows
    ``sigma = sigma_start * (T / t_start) ** sigma_power``."""

    t_start: float = 0.02
    t_end: float = 1e-6
    sigma_start: float = 0.25
    sigma_power: float = 0.5
    sigma_min: float = 1e-5

    def temperature(self, k: int, iterations: int) -> float:
        frac = k / max(iterations, 1)
        return self.t_start * (self.t_end / self.t_start) ** frac

    def sigma(self, temperature: float) -> float:
        return max(self.sigma_min, self.sigma_start * (temperature / self.t_start) ** self.sigma_power)


@dataclass
class SearchState:
    points: np.ndarray  # n/2 unit vectors, antipodes implicit
    objective: float
    best_points: np.ndarray
    best_so_far: float
    seed: int
    iterations: int
    temperature: float
    accepted: int = 0
    trace: np.ndarray = field(default_factory=lambda: np.zeros(0))  # best_so_far per iteration

    def full_points(self) -> np.ndarray:
        return full_configuration(self.best_points)


def _unit_rows(x: np.ndarray) -> np.ndarray:
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def _safe_objective(half: np.ndarray, rng: np.random.Generator, retries: int = 20):
    """Objective of ``half``; a degenerate hull gets a tiny random kick and a retry."""
    for _ in range(retries):
        try:
            return half, edge_objective(half, normalize=False)
        except (QhullError, ValueError):
            half = _unit_rows(half + 1e-7 * rng.standard_normal(half.shape))
    raise RuntimeError("could not obtain a full-dimensional configuration")


def minmax_edge_search(n: int, d: int, seed: int = 0, iterations: int = 20000,
                       schedule: AnnealingSchedule = AnnealingSchedule(),
                       initial: Optional[np.ndarray] = None) -> SearchState:
    """Simulated annealing on ``n/2`` free unit vectors in R^d.

    Each move perturbs one point by a Gaussian step and renormalises it; the
    move is kept when the objective does not drop, or otherwise with
    probability ``exp(delta / T)``.  Fully determined by the arguments.
    """
    if n % 2 or n < 2 * (d + 1):
        raise ValueError("need an even n with n >= 2(d+1)")
    rng = np.random.default_rng(seed)
    m = n // 2
    if initial is None:
        half = _unit_rows(rng.standard_normal((m, d)))
    else:
        half = np.array(initial, dtype=float)
        if half.shape == (n, d):
            half = half[:m]
        if half.shape != (m, d):
            raise ValueError(f"initial points must have shape ({m}, {d})")
        half = _unit_rows(half)
    half, cur = _safe_objective(half, rng)
    best, best_pts = cur, half.copy()
    trace = np.empty(iterations)
    accepted = 0
    temp = schedule.t_start
    for k in range(iterations):
        temp = schedule.temperature(k, iterations)
        sigma = schedule.sigma(temp)
        i = int(rng.integers(m))
        cand = half.copy()
        cand[i] = cand[i] + sigma * rng.standard_normal(d)
        cand[i] /= np.linalg.norm(cand[i])
        u = rng.random()
        try:
            val = edge_objective(cand, normalize=False)
        except (QhullError, ValueError):
            trace[k] = best
            continue
        if val >= cur or u < math.exp((val - cur) / temp):
            half, cur = cand, val
            accepted += 1
            if cur > best:
                best, best_pts = cur, half.copy()
        trace[k] = best
    return SearchState(half, cur, best_pts, best, seed, iterations, temp, accepted, trace)


def _search_job(args):
    return minmax_edge_search(*args)


def multi_start_search(n: int, d: int, seeds: Sequence[int], iterations: int = 20000,
                       schedule: AnnealingSchedule = AnnealingSchedule(),
                       workers: int = 1) -> SearchState:
    """Independent runs, one per seed; returns the best (ties go to the earliest seed)."""
    jobs = [(n, d, s, iterations, schedule) for s in seeds]
    if workers > 1:
        with ProcessPoolExecutor(workers) as pool:
            states = list(pool.map(_search_job, jobs))
    else:
        states = [_search_job(j) for j in jobs]
    return max(states, key=lambda s: s.best_so_far)


# ---------------------------------------------------------- sparsification

@dataclass
class OrthogonalFrame:
    """``Q = G_k ... G_1 base`` for the Givens rotations ``(p, q, theta)`` listed."""

    Q: np.ndarray
    rotations: list
    base: np.ndarray

    def apply(self, points: np.ndarray) -> np.ndarray:
        return np.asarray(points) @ self.Q.T

    def orthogonality_error(self) -> float:
        return float(np.max(np.abs(self.Q.T @ self.Q - np.eye(len(self.Q)))))


def random_rotation(d: int, seed: int = 0) -> np.ndarray:
    """Haar-random element of SO(d)."""
    rng = np.random.default_rng(seed)
    q, r = np.linalg.qr(rng.standard_normal((d, d)))
    q = q * np.sign(np.diag(r))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def l1_objective(points: np.ndarray) -> float:
    return float(np.abs(points).sum())


def _plane_cost(a: np.ndarray, b: np.ndarray, theta) -> np.ndarray:
    theta = np.atleast_1d(theta)
    c, s = np.cos(theta)[:, None], np.sin(theta)[:, None]
    return (np.abs(c * a - s * b) + np.abs(s * a + c * b)).sum(axis=1)


def _golden(fun, lo: float, hi: float, tol: float = 1e-12) -> tuple[float, float]:
    x1 = hi - _GOLDEN * (hi - lo)
    x2 = lo + _GOLDEN * (hi - lo)
    f1, f2 = fun(x1), fun(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _GOLDEN * (hi - lo)
            f1 = fun(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _GOLDEN * (hi - lo)
            f2 = fun(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _best_angle(a: np.ndarray, b: np.ndarray) -> tuple[float, float]:
    """Minimise the L1 cost of rotating columns (a, b) over one period.

    The cost has period pi/2 and is smooth except where a rotated coordinate
    vanishes, so the kinks are evaluated directly and the two intervals next
    to the best kink are refined by golden-section search.
    """
    quarter = math.pi / 2
    kinks = np.arctan2(a, b)
    kinks = np.mod(kinks + math.pi / 4, quarter) - math.pi / 4
    kinks = np.unique(np.concatenate([kinks, [0.0]]))
    costs = _plane_cost(a, b, kinks)
    k = int(np.argmin(costs))
    best_t, best_f = float(kinks[k]), float(costs[k])
    fun = lambda t: float(_plane_cost(a, b, t)[0])
    prev_t = kinks[k - 1] if k > 0 else kinks[-1] - quarter
    next_t = kinks[k + 1] if k + 1 < len(kinks) else kinks[0] + quarter
    for lo, hi in ((prev_t, best_t), (best_t, next_t)):
        if hi - lo > 1e-12:
            t, f = _golden(fun, float(lo), float(hi))
            if f < best_f:
                best_t, best_f = t, f
    return best_t, best_f


def _descend(x: np.ndarray, base: np.ndarray, sweeps: int, tol: float = 1e-10):
    d = x.shape[1]
    y = x @ base.T
    q = base.copy()
    rotations = []
    f = l1_objective(y)
    for _ in range(sweeps):
        start = f
        for p, r in combinations(range(d), 2):
            a, b = y[:, p].copy(), y[:, r].copy()
            now = float(np.abs(a).sum() + np.abs(b).sum())
            theta, new = _best_angle(a, b)
            if new < now - 1e-15:
                c, s = math.cos(theta), math.sin(theta)
                y[:, p], y[:, r] = c * a - s * b, s * a + c * b
                qp, qr = q[p].copy(), q[r].copy()
                q[p], q[r] = c * qp - s * qr, s * qp + c * qr
                rotations.append((p, r, theta))
                f = l1_objective(y)
        if start - f < tol:
            break
    return OrthogonalFrame(q, rotations, base), f


def l1_sparsify(points: np.ndarray, seed: int = 0, sweeps: int = 200,
                restarts: int = 8) -> tuple[OrthogonalFrame, float]:
    """Rotation Q minimising ``sum_i ||Q x_i||_1`` by Givens coordinate descent.

    The descent starts from the identity and from ``restarts`` random frames
    drawn from ``seed``; the best local optimum is returned.
    """
    x = np.atleast_2d(np.asarray(points, dtype=float))
    if x.size == 0:
        raise ValueError("empty configuration")
    d = x.shape[1]
    rng = np.random.default_rng(seed)
    starts = [np.eye(d)]
    for _ in range(restarts):
        starts.append(random_rotation(d, int(rng.integers(2**63))))
    best = None
    for base in starts:
        frame, f = _descend(x, base, sweeps)
        if best is None or f < best[1] - 1e-12:
            best = (frame, f)
    return best


def near_zero_count(points: np.ndarray, tol: float = 1e-6) -> int:
    return int(np.sum(np.abs(points) < tol))


# ----------------------------------------------------------- rationalising

def detect_float_pairing(points: np.ndarray, tol: float = 1e-6) -> Optional[list]:
    """``tau`` with ``x[tau[i]] ≈ -x[i]``, or ``None`` if some point has no antipode."""
    pts = np.asarray(points, dtype=float)
    dist = np.linalg.norm(pts[:, None, :] + pts[None, :, :], axis=2)
    tau = [int(j) for j in np.argmin(dist, axis=1)]
    for i, j in enumerate(tau):
        if j == i or tau[j] != i or dist[i, j] > tol:
            return None
    return tau


def rationalize(points: np.ndarray, max_denominator: int,
                pairing: Optional[Sequence[int]] = None) -> PointConfiguration:
    """Round every coordinate to its best rational approximation.

    Antipodal pairs (given, or detected to 1e-6) are first symmetrised to
    ``(x_i - x_tau(i)) / 2`` so that the rounded points are exact negatives.
    """
    if max_denominator < 1:
        raise ValueError("max_denominator must be at least 1")
    pts = np.atleast_2d(np.asarray(points, dtype=float))
    tau = list(pairing) if pairing is not None else detect_float_pairing(pts)

    def rnd(row):
        return tuple(Fraction(float(v)).limit_denominator(max_denominator) for v in row)

    if tau is None:
        return PointConfiguration(tuple(rnd(p) for p in pts))
    out: list = [None] * len(pts)
    for i, j in enumerate(tau):
        if out[i] is None:
            out[i] = rnd((pts[i] - pts[j]) / 2)
            out[j] = tuple(-v for v in out[i])
    return PointConfiguration(tuple(out), tuple(tau))
