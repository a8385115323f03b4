from reports import VerificationReport, merge_reports


def test_check_records_failures():
    r = VerificationReport("demo", {"n": 3})
    assert r.check(True, "a")
    assert not r.check(False, "b", expected=1, actual=2)
    assert r.checks_run == 2
    assert not r.passed
    assert r.failures == [{"location": "b", "expected": 1, "actual": 2}]


def test_to_dict_shape():
    r = VerificationReport("demo", {"n": 3})
    r.check(True, "a")
    r.note(kind="info", value=1)
    assert r.to_dict() == {
        "suite": "demo",
        "params": {"n": 3},
        "passed": True,
        "checks_run": 1,
        "failures": [],
        "notes": [{"kind": "info", "value": 1}],
    }


def test_merge_prefixes_sub_suites():
    a = VerificationReport("a")
    a.check(True, "x")
    b = VerificationReport("b")
    b.check(False, "y", 0, 1)
    b.note(kind="errata")
    merged = merge_reports("all", [a, b], n=4)
    assert merged.params == {"n": 4}
    assert merged.checks_run == 2
    assert merged.failures == [{"location": "b: y", "expected": 0, "actual": 1}]
    assert merged.notes == [{"suite": "b", "kind": "errata"}]
