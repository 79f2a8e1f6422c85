from fractions import Fraction

import numpy as np
import pytest

from cstriang.complex import SimplicialComplex
from cstriang.fileio import (
    ParseError,
    load_facets,
    load_float_points,
    load_points,
    save_facets,
    save_float_points,
    save_points,
)


def test_points_round_trip(tmp_path, p648):
    path = tmp_path / "p.txt"
    save_points(path, p648, "forty-eight points")
    back = load_points(path)
    assert back.points == p648.points
    assert back.pairing == p648.pairing
    save_points(tmp_path / "q.txt", back)
    assert (tmp_path / "q.txt").read_text().splitlines()[1:] == path.read_text().splitlines()[2:]


def test_float_round_trip(tmp_path):
    x = np.random.default_rng(0).standard_normal((5, 3))
    save_float_points(tmp_path / "f.txt", x)
    assert np.array_equal(load_float_points(tmp_path / "f.txt"), x)


@pytest.mark.parametrize(
    "text,line",
    [
        ("2 2\n1 2\n3/0 1\n", 3),
        ("# c\n2 2\n1 2\n1\n", 4),
        ("two 2\n", 1),
        ("2 3\n1 1\n2 2\n", 3),
        ("2 1\n1 x\n", 2),
    ],
)
def test_points_parse_errors(tmp_path, text, line):
    path = tmp_path / "bad.txt"
    path.write_text(text)
    with pytest.raises(ParseError) as err:
        load_points(path)
    assert err.value.line_no == line


def test_facets_round_trip(tmp_path, rp2):
    path = tmp_path / "f.txt"
    save_facets(path, rp2, "rp2")
    assert load_facets(path) == rp2


def test_facets_errors(tmp_path):
    path = tmp_path / "f.txt"
    path.write_text("0 1 2\n0 1\n")
    with pytest.raises(ParseError, match="contained"):
        load_facets(path)
    path.write_text("0 1 2\n0 x 2\n")
    with pytest.raises(ParseError) as err:
        load_facets(path)
    assert err.value.line_no == 2


def test_non_pure_is_flagged(tmp_path, caplog):
    path = tmp_path / "f.txt"
    path.write_text("0 1 2\n3 4\n")
    c = load_facets(path)
    assert not c.is_pure()
    assert "not pure" in caplog.text


def test_bracketed_one_based(tmp_path):
    path = tmp_path / "lutz.txt"
    path.write_text("manifold = [[1,2,3],[1,2,4],[1,3,4],[2,3,4]]\n")
    c = load_facets(path)
    assert c == SimplicialComplex(4, [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)])
