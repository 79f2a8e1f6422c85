from fractions import Fraction

import pytest

from cstriang.complex import Involution, antipodal_quotient
from cstriang.constructions import build_p648
from cstriang.hull import PointConfiguration, boundary_complex, facet_enumeration


def icosahedron_points(r=Fraction(8, 5)):
    """Rational icosahedron: cyclic shifts of (0, ±1, ±r); combinatorially regular."""
    pts = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            pts += [(0, s1, s2 * r), (s1, s2 * r, 0), (s2 * r, 0, s1)]
    return PointConfiguration.detect_pairing(pts)


def cross_polytope(d):
    half = [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    return PointConfiguration.centrally_symmetric(half)


@pytest.fixture(scope="session")
def p648():
    return build_p648()


@pytest.fixture(scope="session")
def p648_hull(p648):
    return facet_enumeration(p648)


@pytest.fixture(scope="session")
def p648_complex(p648_hull):
    return boundary_complex(p648_hull)


@pytest.fixture(scope="session")
def rp5(p648, p648_complex):
    return antipodal_quotient(p648_complex, Involution(p648.pairing))


@pytest.fixture(scope="session")
def icosahedron():
    return icosahedron_points()


@pytest.fixture(scope="session")
def rp2(icosahedron):
    cx = boundary_complex(facet_enumeration(icosahedron))
    return antipodal_quotient(cx, Involution(icosahedron.pairing))


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
