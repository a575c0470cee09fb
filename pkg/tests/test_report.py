import json

from crlink.report import Report, validate_report_json


def test_exit_status_tracks_failures():
    rep = Report("demo")
    rep.add("a", True)
    rep.info("note", "hello")
    assert rep.exit_status == 0
    rep.add("b", False, witness={"expected": 1, "got": 2})
    assert rep.exit_status == 1
    assert [c.name for c in rep.failed] == ["b"]


def test_jsonable_round_trip_and_schema():
    rep = Report("demo")
    rep.add("zeta check", True)
    rep.add("bad check", False, witness="boom")
    data = json.loads(json.dumps(rep.to_jsonable()))
    assert validate_report_json(data) == []
    assert data["counts"] == {"pass": 1, "fail": 1, "info": 0}
    assert data["exit_status"] == 1


def test_schema_catches_problems():
    assert validate_report_json({}) != []
    bad = {
        "suite": "x",
        "checks": [{"name": "a", "status": "pass"}],
        "counts": {"pass": 1, "fail": 0, "info": 0},
        "exit_status": 1,  # contradicts zero failures
    }
    problems = validate_report_json(bad)
    assert any("exit_status" in p for p in problems)
    bad2 = {
        "suite": "x",
        "checks": [{"name": "a", "status": "maybe"}],
        "counts": {"pass": 0, "fail": 0, "info": 0},
        "exit_status": 0,
    }
    assert any("bad status" in p for p in problems_of(bad2))


def problems_of(data):
    return validate_report_json(data)


def test_exact_witnesses_serialize_with_approx():
    from crlink.scalars import SQRT3

    rep = Report("demo")
    rep.add("value", False, witness=SQRT3)
    data = rep.to_jsonable()
    w = data["checks"][0]["witness"]
    assert w["exact"] == "sqrt3"
    assert abs(w["approx"]["re"] - 3 ** 0.5) < 1e-12
    assert len(w["coeffs"]) == 8
