import pytest

import pgcl


def test_multipliers():
    assert pgcl.multiplier("D8") == [2]
    assert pgcl.multiplier("Q8") == []
    assert pgcl.multiplier("ES(3,1,+)") == [3, 3]
    assert pgcl.multiplier("Cyc(2) x Cyc(4)") == [2]


def test_report_examples():
    q8 = pgcl.report("Q8")
    assert q8["schema"] == pgcl.SCHEMA
    assert q8["capability"]["capable"] is False
    assert q8["capability"]["epicenter_order"] == 2
    assert q8["multiplier"]["order"] == 1
    assert pgcl.is_capable("D8")
    assert pgcl.report("Cyc(1)")["order"] == 1


def test_classification():
    r = pgcl.report("D8 . Cyc(4) x Cyc(2)")
    c = r["classification"]
    assert c["case"] == "case2"
    assert c["predicted_capable"] is False
    assert c["oracle_capable"] is False


def test_canonical_round_trip():
    for text in ["ES(2,1,+) . Cyc(4)", "(D8 x Q8) x Cyc(2)", "ES(3,1,-) x Cyc(3)"]:
        once = pgcl.canonical(text)
        assert pgcl.canonical(once) == once
    assert pgcl.order("ES(3,1,+) . Cyc(9)") == 81


def test_errors():
    with pytest.raises(pgcl.ParseError, match="position 7"):
        pgcl.canonical("ES(2,1,?)")
    with pytest.raises(pgcl.Error, match="SizeExceeded"):
        pgcl.multiplier("Cyc(65)")
    with pytest.raises(pgcl.Error, match="SemanticError"):
        pgcl.canonical("D8 . Q8")


def test_build_table():
    g = pgcl.build("Cyc(3)")
    assert g["order"] == 3
    assert len(g["table"]) == 9


def test_sweep_small():
    csv, summary, code = pgcl.sweep([2], max_order=16)
    assert code == 0
    lines = csv.strip().splitlines()
    assert lines[0].startswith("expr,p,n,case")
    assert len(lines) - 1 == len(summary["rows"])
