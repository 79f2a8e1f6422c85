"""Verification pipelines and their structured reports.

A report is an ordered list of named checks.  Each check records what was
expected, what was found, and how long it took; a check whose prerequisites
did not pass is recorded as skipped rather than run.  The overall verdict is
``pass`` iff no check that ran failed.
"""

from __future__ import annotations

import json
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Optional, Sequence

from . import __version__
from .canonical import automorphism_group, classify_face_links
from .complex import (
    Involution,
    antipodal_quotient,
    check_disjoint_stars,
    f_vector,
    skeleton_graph,
)
from .constructions import (
    ConstructionError,
    PerturbationRetryError,
    align_to_family,
    build_p648,
    build_p790,
    find_simplicial_cone_cylinder,
    linear_symmetry_group,
    B_MATRIX,
    C_MATRIX,
    SUPPORT_FAMILY,
    squared_norms,
    support_partition,
)
from .graphs import DEFAULT_TIME_LIMIT, chromatic_number, degree_profile, threshold_graph, verify_edge_rule
from .homology import betti_mod2, integer_homology
from .hull import PointConfiguration, boundary_complex, facet_enumeration, is_simplicial
from .ratmath import format_rational

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"

# threshold table of the 48-point family at the default parameters: (t, degree, edges, chi)
THRESHOLD_TABLE = (
    (Fraction(19, 49), 10, 240, 4),
    (Fraction(17, 49), 11, 264, 6),
    (Fraction(15, 49), 15, 360, 7),
    (Fraction(11, 49), 23, 552, 12),
)
RP5_F_VECTOR = (48, 552, 2432, 4776, 4272, 1424)


@dataclass
class Check:
    name: str
    status: str
    expected: object
    actual: object
    elapsed_ms: float = 0.0
    detail: str = ""


@dataclass
class VerificationReport:
    command: str
    checks: list = field(default_factory=list)
    version: str = __version__
    inputs: dict = field(default_factory=dict)  # input name -> sha256 or description

    @property
    def verdict(self) -> str:
        return FAIL if any(c.status == FAIL for c in self.checks) else PASS

    def check(self, name: str) -> Check:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)

    def to_dict(self) -> dict:
        return {
            "command": self.command,
            "verdict": self.verdict,
            "version": self.version,
            "inputs": dict(self.inputs),
            "checks": [asdict(c) for c in self.checks],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @classmethod
    def from_dict(cls, data: dict) -> "VerificationReport":
        rep = cls(data["command"], [Check(**c) for c in data["checks"]],
                  data["version"], dict(data["inputs"]))
        if rep.verdict != data["verdict"]:
            raise ValueError("stored verdict disagrees with the checks")
        return rep

    @classmethod
    def from_json(cls, text: str) -> "VerificationReport":
        return cls.from_dict(json.loads(text))

    def outcome(self) -> list:
        """The deterministic part: (name, status, expected, actual) per check."""
        return [(c.name, c.status, c.expected, c.actual) for c in self.checks]

    def render(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"{self.command} (toolkit {self.version})"]
        for key, val in self.inputs.items():
            lines.append(f"  input {key}: {val}")
        for c in self.checks:
            line = f"  [{c.status:>7}] {c.name:<{width}}  actual={_short(c.actual)}"
            if c.status != SKIPPED:
                line += f"  expected={_short(c.expected)}  ({c.elapsed_ms:.0f} ms)"
            if c.detail:
                line += f"  -- {c.detail}"
            lines.append(line)
        lines.append(f"verdict: {self.verdict}")
        return "\n".join(lines)


def _short(value, limit: int = 100) -> str:
    text = json.dumps(value) if not isinstance(value, str) else value
    return text if len(text) <= limit else text[: limit - 3] + "..."


class _Pipeline:
    """Runs checks in order, skipping those whose prerequisites did not pass."""

    def __init__(self, report: VerificationReport):
        self.report = report
        self.status: dict = {}

    def run(self, name: str, fn: Callable, needs: Sequence[str] = (),
            enabled: bool = True, disabled_reason: str = "") -> bool:
        missing = [n for n in needs if self.status.get(n) != PASS]
        if not enabled or missing:
            detail = disabled_reason if not enabled else "needs " + ", ".join(missing)
            self._add(Check(name, SKIPPED, None, None, 0.0, detail))
            return False
        start = time.perf_counter()
        try:
            result = fn()
            ok, expected, actual = result[:3]
            detail = result[3] if len(result) > 3 else ""
            status = PASS if ok else FAIL
        except Exception as exc:  # a crashing check is a failing check
            status, expected, actual, detail = FAIL, None, None, f"{type(exc).__name__}: {exc}"
        elapsed = (time.perf_counter() - start) * 1000
        self._add(Check(name, status, expected, actual, round(elapsed, 3), detail))
        return status == PASS

    def _add(self, check: Check):
        self.status[check.name] = check.status
        self.report.checks.append(check)


def _frac(x) -> str:
    return format_rational(Fraction(x))


def _common_checks(pipe: _Pipeline, ctx: dict, expected_f=None) -> None:
    """Hull, simpliciality, f-vector, antipodal stars and quotient."""

    def hull():
        h = ctx.pop("hull_cache", None) or facet_enumeration(ctx["config"])
        ctx["hull"] = h
        n = len(ctx["config"])
        return len(h.hull_vertices) == n, n, len(h.hull_vertices), f"{len(h.facets)} facets"

    def simplicial():
        ok, witness = is_simplicial(ctx["hull"])
        if ok:
            ctx["complex"] = boundary_complex(ctx["hull"])
        return ok, True, ok, "" if ok else f"facet with {len(witness)} vertices"

    def fvec():
        fv = list(f_vector(ctx["complex"]))
        if expected_f is None:
            return True, None, fv, "recorded"
        return fv == list(expected_f), list(expected_f), fv

    def stars():
        ok, bad = check_disjoint_stars(ctx["complex"], Involution(ctx["config"].pairing))
        return ok, [], [list(p) for p in bad], "neighbour test and star intersection agree"

    pipe.run("hull", hull, needs=["construction"])
    pipe.run("simplicial", simplicial, needs=["hull"])
    pipe.run("f_vector", fvec, needs=["simplicial"])
    pipe.run("disjoint_stars", stars, needs=["simplicial", "central_symmetry"])

    def quotient():
        q = antipodal_quotient(ctx["complex"], Involution(ctx["config"].pairing))
        ctx["quotient"] = q
        n = len(ctx["config"]) // 2
        return q.n_vertices == n, n, q.n_vertices

    pipe.run("quotient", quotient, needs=["disjoint_stars"])

    def quotient_fvec():
        fv = list(f_vector(ctx["quotient"]))
        exp = [x // 2 for x in f_vector(ctx["complex"])]
        return fv == exp, exp, fv

    pipe.run("quotient_f_vector", quotient_fvec, needs=["quotient"])


def _homology_checks(pipe: _Pipeline, ctx: dict, dim: int, integer: bool) -> None:
    def mod2():
        b = betti_mod2(ctx["quotient"])
        return b == [1] * (dim + 1), [1] * (dim + 1), b

    def integral():
        h = integer_homology(ctx["quotient"])
        got = h.describe()
        exp = ["Z"] + ["Z/2" if k % 2 else "0" for k in range(1, dim)] + ["Z" if dim % 2 else "0"]
        return got == exp, exp, got

    pipe.run("homology_mod2", mod2, needs=["quotient"])
    pipe.run("homology_integer", integral, needs=["quotient"], enabled=integer,
             disabled_reason="enable with --integer-homology")


def verify_rp5(alpha=Fraction(3, 7), beta=Fraction(4, 7), gamma=Fraction(5, 7),
               points: Optional[PointConfiguration] = None, integer_homology: bool = False,
               chromatic: bool = False, time_limit: float = DEFAULT_TIME_LIMIT,
               inputs: Optional[dict] = None) -> VerificationReport:
    """Full check list for the 48-point family, or for a 48-point file.

    Parameter errors raise ``ConstructionError`` before anything is computed.
    A file is first aligned to the family by a signed coordinate permutation,
    so that frame-dependent checks (symmetry matrices, supports) apply.
    """
    if points is None:
        build_p648(alpha, beta, gamma)  # validates the parameters up front
    report = VerificationReport("verify-rp5", inputs=dict(inputs or {}))
    if points is None:
        report.inputs.setdefault("parameters", ", ".join(_frac(x) for x in (alpha, beta, gamma)))
    pipe = _Pipeline(report)
    ctx: dict = {}

    def construction():
        cfg = build_p648(alpha, beta, gamma) if points is None else points
        ctx["config"] = cfg
        return (len(cfg), cfg.dim) == (48, 6), "48 points in R^6", f"{len(cfg)} points in R^{cfg.dim}"

    def alignment():
        found = align_to_family(ctx["config"])
        exp = "signed coordinate permutation onto the 48-point family"
        if found is None:
            return False, exp, "no alignment"
        ctx["config"], (perm, signs), mags = found
        ctx["params"] = mags
        return True, exp, "aligned", f"perm {list(perm)}, signs {list(signs)}"

    def norms():
        a, b, g = ctx.get("params", (alpha, beta, gamma))
        exp = [_frac(a * a + b * b + g * g)]
        got = sorted(_frac(x) for x in squared_norms(ctx["config"]))
        return got == exp, exp, got

    def symmetry():
        cfg = ctx["config"]
        ok = cfg.pairing is not None
        pairs = len(cfg) // 2 if ok else 0
        return ok, f"{len(cfg) // 2} antipodal pairs", f"{pairs} antipodal pairs"

    pipe.run("construction", construction)
    pipe.run("alignment", alignment, needs=["construction"])
    pipe.run("squared_norm", norms, needs=["construction"])
    pipe.run("central_symmetry", symmetry, needs=["construction"])
    _common_checks(pipe, ctx, RP5_F_VECTOR)

    def skeleton():
        g = skeleton_graph(ctx["quotient"])
        n = g.n
        return g.is_complete(), f"K_{n}", f"K_{n}" if g.is_complete() else f"{g.edge_count()} edges"

    pipe.run("quotient_skeleton", skeleton, needs=["quotient"])
    _homology_checks(pipe, ctx, 5, integer_homology)

    def linear():
        grp = linear_symmetry_group(ctx["config"], (B_MATRIX, C_MATRIX))
        ctx["linear"] = grp
        return grp.order == 192, 192, grp.order

    def automorphisms():
        grp = automorphism_group(ctx["complex"])
        lin = ctx.get("linear")
        same = lin is not None and lin.elements is not None and lin.elements == grp.elements
        exp = {"order": 192, "equals_linear": True}
        got = {"order": grp.order, "equals_linear": same}
        return got == exp, exp, got

    pipe.run("linear_symmetries", linear, needs=["alignment"])
    pipe.run("automorphism_group", automorphisms, needs=["simplicial", "linear_symmetries"])

    def vertex_links():
        classes = classify_face_links(ctx["complex"], 0)
        got = [{"count": cl.count, "vertices": cl.f_vector[0], "facets": cl.f_vector[-1]}
               for cl in classes]
        exp = [{"count": 48, "vertices": 23, "facets": 178}]
        return got == exp, exp, got

    def face_links():
        classes = classify_face_links(ctx["complex"], 2)
        return len(classes) == 9, 9, len(classes), "counts " + str([cl.count for cl in classes])

    pipe.run("vertex_links", vertex_links, needs=["simplicial"])
    pipe.run("two_face_links", face_links, needs=["simplicial"])

    def supports():
        sp = support_partition(ctx["config"], SUPPORT_FAMILY)
        facets = ctx["complex"].facets
        cube_pairs = {tuple(sorted(e)) for s in sp.classes for e in sp.cube_edges[s]}
        where = {v: s for s, vs in sp.classes.items() for v in vs}
        non_cube = 0
        for f in facets:
            for i, u in enumerate(f):
                for w in f[i + 1:]:
                    if where[u] == where[w] and (min(u, w), max(u, w)) not in cube_pairs:
                        non_cube += 1
        got = {
            "classes": len(sp.classes),
            "sizes": sorted(len(v) for v in sp.classes.values()),
            "cubes": sum(1 for s in sp.classes if sp.is_cube(s)),
            "max_per_facet": sp.max_facet_contribution(facets),
            "same_class_non_cube_pairs": non_cube,
        }
        exp = {"classes": 6, "sizes": [8] * 6, "cubes": 6, "max_per_facet": 2,
               "same_class_non_cube_pairs": 0}
        return got == exp, exp, got

    pipe.run("support_partition", supports, needs=["alignment", "simplicial"])

    def edge_rule():
        ok, bad = verify_edge_rule(ctx["config"], ctx["hull"])
        return ok, "edges = pairs with positive inner product", \
            "holds" if ok else f"differs at {list(bad)}"

    pipe.run("edge_rule", edge_rule, needs=["hull"])

    def thresholds():
        exp, got = [], []
        for t, deg, edges, _ in THRESHOLD_TABLE:
            prof = degree_profile(threshold_graph(ctx["config"], t))
            exp.append([_frac(t), deg, edges])
            got.append([_frac(t), prof.regular, prof.edges])
        return got == exp, exp, got

    def chromatic_numbers():
        exp, got, notes = [], [], []
        for t, _, _, chi in THRESHOLD_TABLE:
            res = chromatic_number(threshold_graph(ctx["config"], t), time_limit)
            exp.append([_frac(t), chi, "exact"])
            got.append([_frac(t), res.upper_bound if res.proof_status == "exact"
                        else [res.lower_bound, res.upper_bound], res.proof_status])
            notes.append(f"{_frac(t)}: {res.elapsed:.1f}s")
        return got == exp, exp, got, ", ".join(notes)

    pipe.run("threshold_graphs", thresholds, needs=["construction"])
    pipe.run("chromatic_numbers", chromatic_numbers, needs=["construction"], enabled=chromatic,
             disabled_reason="enable with --chromatic")
    return report


def verify_rp6(source: str = "builtin-p790", points: Optional[PointConfiguration] = None,
               integer_homology: bool = False, seeds: Sequence[int] = range(32),
               inputs: Optional[dict] = None) -> VerificationReport:
    """Hull, antipodal star condition, quotient and homology for a 7-dimensional source.

    ``source`` is ``builtin-p790``, ``cone-cylinder`` or ``points`` (with
    ``points`` given).
    """
    if source not in ("builtin-p790", "cone-cylinder", "points"):
        raise ValueError(f"unknown source {source!r}")
    if source == "points" and points is None:
        raise ValueError("source 'points' needs a configuration")
    report = VerificationReport("verify-rp6", inputs=dict(inputs or {}))
    report.inputs.setdefault("source", source)
    pipe = _Pipeline(report)
    ctx: dict = {}

    def construction():
        detail = ""
        if source == "builtin-p790":
            cfg = build_p790()
            exp = "90 points in R^7"
        elif source == "cone-cylinder":
            exp = "98 points in R^7"
            try:
                cfg, hull, seed = find_simplicial_cone_cylinder(build_p648(), seeds=seeds)
            except PerturbationRetryError as exc:
                tried = [s for s, _ in exc.diagnostics]
                return False, exp, "no usable perturbation", f"seeds tried: {tried}"
            ctx["hull_cache"] = hull
            detail = f"perturbation seed {seed}"
        else:
            cfg = points
            exp = f"{len(cfg)} points in R^7"
        ctx["config"] = cfg
        got = f"{len(cfg)} points in R^{cfg.dim}"
        return got == exp and cfg.dim == 7, exp, got, detail

    def symmetry():
        cfg = ctx["config"]
        ok = cfg.pairing is not None
        return ok, f"{len(cfg) // 2} antipodal pairs", \
            f"{len(cfg) // 2 if ok else 0} antipodal pairs"

    pipe.run("construction", construction)
    pipe.run("central_symmetry", symmetry, needs=["construction"])
    _common_checks(pipe, ctx, None)
    _homology_checks(pipe, ctx, 6, integer_homology)
    return report


def analyze(config: PointConfiguration, thresholds: Sequence, chromatic: bool = True,
            time_limit: float = DEFAULT_TIME_LIMIT) -> list:
    """Per-threshold rows ``(t, regular degree or None, edges, chi or (lo, hi), status)``."""
    rows = []
    for t in thresholds:
        g = threshold_graph(config, t)
        prof = degree_profile(g)
        if chromatic:
            res = chromatic_number(g, time_limit)
            chi = res.upper_bound if res.proof_status == "exact" else (res.lower_bound, res.upper_bound)
            status = res.proof_status
        else:
            chi, status = None, "not computed"
        rows.append((Fraction(t), prof.regular, prof.edges, chi, status))
    return rows


def describe_complex(c) -> dict:
    """f-vector, edge deficit from a complete graph, and automorphism order."""
    fv = f_vector(c)
    grp = automorphism_group(c)
    return {
        "f_vector": list(fv),
        "missing_edges": comb(fv[0], 2) - fv[1] if len(fv) > 1 else None,
        "automorphism_order": grp.order,
    }
