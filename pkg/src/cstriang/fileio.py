"""Plain-text points and facets files.

Points file::

    # comment
    d n
    p/q p/q ... (d entries)     <- n such lines

Entries are integers, ``p/q`` rationals, or decimals.  Facets file: one facet
per line as whitespace-separated 0-based vertex indices.  ``#`` starts a
comment line in both formats.
"""

from __future__ import annotations

import hashlib
import logging
import re
from pathlib import Path
from typing import Iterable

from .complex import SimplicialComplex
from .hull import PointConfiguration
from .ratmath import format_rational, parse_rational

log = logging.getLogger(__name__)


class ParseError(ValueError):
    def __init__(self, path, line_no: int, message: str):
        self.path = str(path)
        self.line_no = line_no
        super().__init__(f"{path}:{line_no}: {message}")


def _content_lines(text: str) -> Iterable[tuple[int, str]]:
    for k, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield k, line


def _read_table(path, convert):
    text = Path(path).read_text()
    lines = list(_content_lines(text))
    if not lines:
        raise ParseError(path, 0, "missing header line 'd n'")
    k, header = lines[0]
    try:
        d, n = (int(x) for x in header.split())
    except ValueError:
        raise ParseError(path, k, f"bad header {header!r}; expected 'd n'") from None
    rows = []
    for k, line in lines[1:]:
        toks = line.split()
        if len(toks) != d:
            raise ParseError(path, k, f"expected {d} coordinates, found {len(toks)}")
        try:
            rows.append(tuple(convert(t) for t in toks))
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(path, k, str(exc)) from None
    if len(rows) != n:
        raise ParseError(path, lines[-1][0], f"header announces {n} points, found {len(rows)}")
    return d, rows


def load_points(path) -> PointConfiguration:
    """Exact points; the antipodal pairing is detected when every point has its negative."""
    _, rows = _read_table(path, parse_rational)
    return PointConfiguration.detect_pairing(rows)


def save_points(path, config: PointConfiguration, comment: str = "") -> None:
    lines = [f"# {c}" for c in comment.splitlines()]
    lines.append(f"{config.dim} {len(config)}")
    for p in config.points:
        lines.append(" ".join(format_rational(x) for x in p))
    Path(path).write_text("\n".join(lines) + "\n")


def load_float_points(path):
    import numpy as np

    _, rows = _read_table(path, lambda t: float(parse_rational(t)))
    return np.array(rows, dtype=float)


def save_float_points(path, points, comment: str = "") -> None:
    lines = [f"# {c}" for c in comment.splitlines()]
    n, d = points.shape
    lines.append(f"{d} {n}")
    for row in points:
        lines.append(" ".join(repr(float(x)) for x in row))
    Path(path).write_text("\n".join(lines) + "\n")


def _bracketed_facets(path, text: str) -> list:
    # nested-list dumps such as "[[1,2,3],[1,2,4],...]"; 1-based when no 0 occurs
    groups = re.findall(r"\[([\d,\s]+)\]", text)
    facets = [tuple(int(t) for t in re.split(r"[,\s]+", g.strip()) if t) for g in groups]
    if not facets:
        raise ParseError(path, 1, "no bracketed facets found")
    if min(min(f) for f in facets) == 1:
        facets = [tuple(v - 1 for v in f) for f in facets]
    return facets


def load_facets(path, n_vertices: int | None = None) -> SimplicialComplex:
    """Facet list; rejects facets contained in other facets, warns on impurity.

    Besides the line format, a nested bracketed list (as published for many
    small triangulations) is accepted and shifted to 0-based labels.
    """
    text = Path(path).read_text()
    facets = []
    if "[" in text:
        for f in _bracketed_facets(path, text):
            if len(set(f)) != len(f):
                raise ParseError(path, 0, f"repeated vertex in facet {f}")
            facets.append(tuple(sorted(f)))
    for k, line in _content_lines(text if "[" not in text else ""):
        try:
            f = tuple(int(t) for t in line.split())
        except ValueError:
            raise ParseError(path, k, f"non-integer vertex index in {line!r}") from None
        if any(v < 0 for v in f):
            raise ParseError(path, k, "negative vertex index")
        if len(set(f)) != len(f):
            raise ParseError(path, k, "repeated vertex in facet")
        facets.append(tuple(sorted(f)))
    if not facets:
        raise ParseError(path, 0, "no facets")
    n = max(max(f) for f in facets) + 1 if n_vertices is None else n_vertices
    sets = [set(f) for f in facets]
    by_size = sorted(range(len(facets)), key=lambda i: len(facets[i]))
    if len({len(f) for f in facets}) > 1:
        for i in by_size:
            for j in range(len(facets)):
                if len(facets[j]) > len(facets[i]) and sets[i] < sets[j]:
                    raise ParseError(path, 0, f"facet {facets[i]} is contained in {facets[j]}")
    c = SimplicialComplex(n, facets)
    if len(c.facets) != len(facets):
        log.warning("%s: %d duplicate facets dropped", path, len(facets) - len(c.facets))
    if not c.is_pure():
        log.warning("%s: complex is not pure", path)
    return c


def save_facets(path, c: SimplicialComplex, comment: str = "") -> None:
    lines = [f"# {x}" for x in comment.splitlines()]
    lines += [" ".join(str(v) for v in f) for f in c.sorted_facets()]
    Path(path).write_text("\n".join(lines) + "\n")


def file_checksum(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
