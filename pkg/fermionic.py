"""Fermionic Stirling numbers: the q = -1 specialization, kept as integer triangles.

    s_f(n+1,k) = (-1)^n s_f(n,k-1) + (-1)^(n+1) ε_n s_f(n,k)
    S_f(n+1,k) = (-1)^(k-1) S_f(n,k-1) + ε_k S_f(n,k)

Reads outside 0 <= k <= n are zero.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass

from config import log_event
from errors import DomainError, IndexOutOfTriangle
from exact_arith import lp_eval_rat
from qcore import epsilon, epsilon_signed, q_integer
from reports import VerificationReport
from stirling_q import build_first_table, build_second_table


@dataclass(frozen=True)
class FermionicTable:
    max_n: int
    s_f: tuple[tuple[int, ...], ...]
    S_f: tuple[tuple[int, ...], ...]

    def _get(self, rows: tuple[tuple[int, ...], ...], n: int, k: int) -> int:
        if n < 0 or n > self.max_n:
            raise IndexOutOfTriangle(f"row {n} outside table 0..{self.max_n}")
        if k < 0 or k > n:
            return 0
        return rows[n][k]

    def first(self, n: int, k: int) -> int:
        return self._get(self.s_f, n, k)

    def second(self, n: int, k: int) -> int:
        return self._get(self.S_f, n, k)


_S1_ROWS: list[tuple[int, ...]] = [(1,)]
_S2_ROWS: list[tuple[int, ...]] = [(1,)]
_ROWS_LOCK = threading.Lock()


def _at(row: tuple[int, ...], k: int) -> int:
    return row[k] if 0 <= k < len(row) else 0


def _sgn(e: int) -> int:
    return -1 if e & 1 else 1


def build_fermionic_tables(N: int) -> FermionicTable:
    if N < 1:
        raise DomainError(f"table size N must be >= 1, got {N}")
    if len(_S1_ROWS) <= N:
        with _ROWS_LOCK:
            if len(_S1_ROWS) <= N:
                log_event("BUILD", f"fermionic rows {len(_S1_ROWS)}..{N}")
            while len(_S1_ROWS) <= N:
                n = len(_S1_ROWS) - 1
                p1, p2 = _S1_ROWS[n], _S2_ROWS[n]
                eps_n = epsilon(n)
                _S1_ROWS.append(
                    tuple(
                        _sgn(n) * _at(p1, k - 1) + _sgn(n + 1) * eps_n * _at(p1, k)
                        for k in range(n + 2)
                    )
                )
                _S2_ROWS.append(
                    tuple(_sgn(k - 1) * _at(p2, k - 1) + (k & 1) * _at(p2, k) for k in range(n + 2))
                )
    return FermionicTable(N, tuple(_S1_ROWS[: N + 1]), tuple(_S2_ROWS[: N + 1]))


def fermionic_falling(x: int, j: int) -> int:
    """[x]_f falling j: prod_{i<j} ε_(x-i), negative arguments by parity."""
    out = 1
    for i in range(j):
        out *= epsilon_signed(x - i)
        if not out:
            break
    return out


def vanishing_check(N: int) -> VerificationReport:
    """s_f(n,k) = 0 whenever n > 2k, k >= 1, plus the k = 0 column."""
    t = build_fermionic_tables(N)
    report = VerificationReport("vanishing", {"n": N})
    for n in range(1, N + 1):
        report.check(t.first(n, 0) == 0, f"s_f({n},0)", 0, t.first(n, 0))
    for k in range(1, N + 1):
        for n in range(2 * k + 1, N + 1):
            report.check(t.first(n, k) == 0, f"s_f({n},{k})", 0, t.first(n, k))
    return report


def vanishing_step_check(N: int) -> VerificationReport:
    """s_f(2k+3,k+1) = s_f(2k+2,k) - ε_(2k+2) s_f(2k+2,k+1), both sides zero."""
    t = build_fermionic_tables(N)
    report = VerificationReport("vanishing-step", {"n": N})
    k = 1
    while 2 * k + 3 <= N:
        lhs = t.first(2 * k + 3, k + 1)
        rhs = t.first(2 * k + 2, k) - epsilon(2 * k + 2) * t.first(2 * k + 2, k + 1)
        report.check(lhs == rhs, f"step k={k}", rhs, lhs)
        report.check(lhs == 0, f"s_f({2 * k + 3},{k + 1})", 0, lhs)
        k += 1
    return report


def special_values_check(N: int) -> VerificationReport:
    """Small-k columns of S_f and the diagonals of both triangles."""
    t = build_fermionic_tables(N)
    report = VerificationReport("fermionic-special-values", {"n": N})
    columns = (
        (1, 1, lambda n: 1),
        (2, 2, lambda n: -1),
        (3, 3, lambda n: 2 - n),
        (4, 4, lambda n: n - 3),
    )
    for k, start, formula in columns:
        for n in range(start, N + 1):
            report.check(t.second(n, k) == formula(n), f"S_f({n},{k})", formula(n), t.second(n, k))
    for n in range(1, N + 1):
        diag = _sgn(n * (n - 1) // 2)
        report.check(t.second(n, n) == diag, f"S_f({n},{n})", diag, t.second(n, n))
        report.check(t.first(n, n) == diag, f"s_f({n},{n})", diag, t.first(n, n))
    return report


def fermionic_inversion_check(N: int) -> VerificationReport:
    """sum_j s_f(n,j) S_f(j,m) and sum_j S_f(n,j) s_f(j,m) against δ_{n,m}."""
    t = build_fermionic_tables(N)
    report = VerificationReport("inversion", {"n": N})
    for n in range(1, N + 1):
        for m in range(1, n + 1):
            want = int(n == m)
            a = sum(t.first(n, j) * t.second(j, m) for j in range(m, n + 1))
            b = sum(t.second(n, j) * t.first(j, m) for j in range(m, n + 1))
            report.check(a == want, f"s_f*S_f n={n} m={m}", want, a)
            report.check(b == want, f"S_f*s_f n={n} m={m}", want, b)
    return report


def q_specialization_check(N: int) -> VerificationReport:
    """q-tables evaluated at q = -1 against the fermionic triangles."""
    t = build_fermionic_tables(N)
    second = build_second_table(N)
    first = build_first_table(N)
    report = VerificationReport("specialization", {"n": N})
    for n in range(N + 1):
        for k in range(n + 1):
            got2 = lp_eval_rat(second.entry(n, k), -1)
            got1 = lp_eval_rat(first.entry(n, k), -1)
            report.check(got2 == t.second(n, k), f"S({n},{k}) at q=-1", t.second(n, k), str(got2))
            report.check(got1 == t.first(n, k), f"s({n},{k}) at q=-1", t.first(n, k), str(got1))
    return report


def alt_recurrence_check(N: int) -> VerificationReport:
    """Two secondary recurrences for S_f, swept over the whole triangle.

    Odd j > 3:        S_f(n+1,j) = S_f(n,j) + S_f(n,j-1)
    1 <= j <= n:      S_f(n+1,j) = S_f(n,j) - S_f(n-1,j-2)
    Violations are reported with their (n, j); a summary note lists them.
    """
    if N < 3:
        raise DomainError(f"alt_recurrence_check needs N >= 3, got {N}")
    t = build_fermionic_tables(N + 1)
    report = VerificationReport("alt-recurrence", {"n": N})
    odd_bad: list[list[int]] = []
    shift_bad: list[list[int]] = []
    for n in range(1, N + 1):
        for j in range(1, n + 1):
            lhs = t.second(n + 1, j)
            if j > 3 and j & 1:
                rhs = t.second(n, j) + t.second(n, j - 1)
                if not report.check(lhs == rhs, f"odd-j n={n} j={j}", rhs, lhs):
                    odd_bad.append([n, j])
            rhs = t.second(n, j) - t.second(n - 1, j - 2)
            if not report.check(lhs == rhs, f"shift-2 n={n} j={j}", rhs, lhs):
                shift_bad.append([n, j])
    report.note(relation="S_f(n+1,j) = S_f(n,j) + S_f(n,j-1), odd j > 3", violations=odd_bad)
    report.note(relation="S_f(n+1,j) = S_f(n,j) - S_f(n-1,j-2)", violations=shift_bad)
    return report


def fermionic_connection_check(x: int, n: int) -> tuple[int, int | None]:
    """Residuals of [x]_f^n = sum S_f(n,j)[x]_f^(j) and [x]_f^(n) = sum s_f(n,j)[x]_f^j.

    The second residual is None when x < n.
    """
    if x < 0 or n < 1:
        raise DomainError(f"fermionic connection needs x >= 0 and n >= 1, got x={x}, n={n}")
    t = build_fermionic_tables(n)
    ex = epsilon(x)
    power = ex**n - sum(t.second(n, j) * fermionic_falling(x, j) for j in range(n + 1))
    if x < n:
        return power, None
    falling = fermionic_falling(x, n) - sum(t.first(n, j) * ex**j for j in range(n + 1))
    return power, falling


def connection_report(X: int, N: int) -> VerificationReport:
    report = VerificationReport("fermionic-connection", {"x": X, "n": N})
    for x in range(X + 1):
        for n in range(1, N + 1):
            power, falling = fermionic_connection_check(x, n)
            report.check(power == 0, f"power x={x} n={n}", 0, power)
            if falling is not None:
                report.check(falling == 0, f"falling x={x} n={n}", 0, falling)
    return report


def power_collapse_check(X: int, N: int) -> VerificationReport:
    """[x]_f^n = [x]_f = S_f(n,1)[x]_f since falling products of length >= 2 vanish."""
    t = build_fermionic_tables(max(N, 1))
    report = VerificationReport("power-collapse", {"x": X, "n": N})
    for x in range(X + 1):
        ex = epsilon(x)
        for j in range(2, N + 1):
            report.check(fermionic_falling(x, j) == 0, f"falling x={x} j={j}", 0, fermionic_falling(x, j))
        for n in range(1, N + 1):
            report.check(ex**n == ex, f"[{x}]_f^{n}", ex, ex**n)
            report.check(t.second(n, 1) * ex == ex**n, f"S_f({n},1)[{x}]_f", ex**n, t.second(n, 1) * ex)
    return report


def f_arithmetic_check(X: int) -> VerificationReport:
    """Additive relations satisfied by [m]_f = ε_m, and ε_n = [n] at q = -1."""
    if X < 0:
        raise DomainError(f"f_arithmetic_check needs X >= 0, got {X}")
    report = VerificationReport("f-arithmetic", {"x": X})
    for x in range(X + 1):
        report.check(
            lp_eval_rat(q_integer(x), -1) == epsilon(x), f"[{x}] at q=-1", epsilon(x),
            str(lp_eval_rat(q_integer(x), -1)),
        )
        report.check(epsilon(x + 1) == 1 - epsilon(x), f"[{x}+1]_f", 1 - epsilon(x), epsilon(x + 1))
        for j in range(x + 1):
            want = epsilon(j) + _sgn(j) * epsilon(x - j)
            report.check(epsilon(x) == want, f"split x={x} j={j}", want, epsilon(x))
            shifted = _sgn(j) * epsilon(x) + _sgn(j + 1) * epsilon(j)
            report.check(epsilon(x - j) == shifted, f"[{x}-{j}]_f", shifted, epsilon(x - j))
        for m in range(X + 1):
            want = epsilon(m) + _sgn(m) * epsilon(x)
            report.check(epsilon(x + m) == want, f"[{x}+{m}]_f", want, epsilon(x + m))
    return report
