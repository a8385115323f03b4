import threading

import pytest

import fermionic
from errors import DomainError, IndexOutOfTriangle
from fermionic import (
    alt_recurrence_check,
    build_fermionic_tables,
    connection_report,
    f_arithmetic_check,
    fermionic_connection_check,
    fermionic_falling,
    fermionic_inversion_check,
    power_collapse_check,
    q_specialization_check,
    special_values_check,
    vanishing_check,
    vanishing_step_check,
)


@pytest.fixture(scope="module")
def tables():
    return build_fermionic_tables(12)


def test_known_entries(tables):
    assert tables.second(5, 3) == -3
    assert tables.second(4, 4) == 1
    assert tables.second(3, 3) == -1
    assert tables.first(2, 1) == 1
    assert tables.first(2, 2) == -1
    assert [tables.first(3, k) for k in range(4)] == [0, 0, 1, -1]


def test_reads_outside_are_zero(tables):
    assert tables.first(4, 5) == 0
    assert tables.second(4, -1) == 0
    with pytest.raises(IndexOutOfTriangle):
        tables.second(13, 1)


def test_first_kind_vanishing(tables):
    assert tables.first(5, 2) == 0
    assert tables.first(9, 4) == 0
    assert vanishing_check(40).passed
    assert vanishing_step_check(40).passed


def test_inversion_small(tables):
    total = sum(tables.first(2, j) * tables.second(j, 2) for j in range(3))
    assert total == 1


def test_suites():
    assert special_values_check(40).passed
    assert fermionic_inversion_check(40).passed
    assert power_collapse_check(12, 12).passed
    assert f_arithmetic_check(40).passed
    assert connection_report(10, 10).passed


def test_alt_recurrences_hold_everywhere():
    report = alt_recurrence_check(20)
    assert report.passed
    assert [note["violations"] for note in report.notes] == [[], []]


def test_alt_recurrence_needs_three_rows():
    with pytest.raises(DomainError):
        alt_recurrence_check(2)


def test_falling():
    assert fermionic_falling(3, 0) == 1
    assert fermionic_falling(3, 1) == 1
    assert fermionic_falling(3, 2) == 0
    assert fermionic_falling(1, 2) == 0


@pytest.mark.parametrize("x,n", [(3, 2), (5, 3), (4, 4), (7, 1)])
def test_connection_residuals(x, n):
    assert fermionic_connection_check(x, n) == (0, 0)


def test_connection_below_n_skips_falling_side():
    assert fermionic_connection_check(2, 3) == (0, None)


def test_bad_sizes():
    with pytest.raises(DomainError):
        build_fermionic_tables(0)
    with pytest.raises(DomainError):
        f_arithmetic_check(-1)


@pytest.mark.slow
def test_q_specialization_through_thirty():
    report = q_specialization_check(30)
    assert report.passed, report.failures[:3]
    assert report.checks_run == 2 * 31 * 32 // 2


def test_concurrent_growth_matches_sequential(monkeypatch):
    N = 60
    monkeypatch.setattr(fermionic, "_S1_ROWS", [(1,)])
    monkeypatch.setattr(fermionic, "_S2_ROWS", [(1,)])
    barrier = threading.Barrier(8)

    def run():
        barrier.wait()
        build_fermionic_tables(N)

    threads = [threading.Thread(target=run) for _ in range(8)]
    for t in threads:
        t.start()
    for t in threads:
        t.join()
    raced = (list(fermionic._S1_ROWS), list(fermionic._S2_ROWS))
    for rows in raced:
        assert [len(row) for row in rows] == [n + 1 for n in range(N + 1)]

    monkeypatch.setattr(fermionic, "_S1_ROWS", [(1,)])
    monkeypatch.setattr(fermionic, "_S2_ROWS", [(1,)])
    fresh = build_fermionic_tables(N)
    assert fresh.s_f == tuple(raced[0])
    assert fresh.S_f == tuple(raced[1])
