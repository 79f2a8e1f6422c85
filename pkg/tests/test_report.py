from fractions import Fraction

import pytest

from cstriang.constructions import ConstructionError, build_p648
from cstriang.hull import PointConfiguration
from cstriang.report import Check, VerificationReport, analyze, verify_rp5


@pytest.fixture(scope="module")
def default_report():
    return verify_rp5()


def test_default_report_passes(default_report):
    rep = default_report
    assert rep.verdict == "pass"
    assert rep.check("f_vector").actual == [48, 552, 2432, 4776, 4272, 1424]
    assert rep.check("homology_integer").status == "skipped"
    assert rep.check("chromatic_numbers").status == "skipped"
    names = [c.name for c in rep.checks]
    assert names.index("hull") < names.index("quotient") < names.index("homology_mod2")


def test_json_round_trip(default_report):
    text = default_report.to_json()
    back = VerificationReport.from_json(text)
    assert back.to_dict() == default_report.to_dict()
    assert back.to_json() == text


def test_verdict_rules():
    rep = VerificationReport("x", [Check("a", "pass", 1, 1), Check("b", "skipped", None, None)])
    assert rep.verdict == "pass"
    rep.checks.append(Check("c", "fail", 1, 2))
    assert rep.verdict == "fail"


def test_equal_parameters_rejected_up_front():
    with pytest.raises(ConstructionError):
        verify_rp5(Fraction(3, 7), Fraction(3, 7), Fraction(5, 7))


def test_failed_precondition_skips_dependents(p648):
    # drop one point: the antipodal pairing disappears and the count is wrong
    cfg = PointConfiguration(p648.points[:47])
    rep = verify_rp5(points=cfg)
    assert rep.check("construction").status == "fail"
    assert rep.check("hull").status == "skipped"
    assert rep.check("quotient").status == "skipped"
    assert rep.verdict == "fail"


def test_other_parameters_are_reported_not_crashed():
    rep = verify_rp5(Fraction(1, 7), Fraction(2, 7), Fraction(6, 7))
    assert rep.check("construction").status == "pass"
    assert {c.status for c in rep.checks} <= {"pass", "fail", "skipped"}


def test_analyze_rows(p648):
    rows = analyze(p648, [Fraction(17, 49), Fraction(3)])
    assert rows[0][1:4] == (11, 264, 6)
    assert rows[1][1:4] == (0, 0, 1)
