"""q-deformed Stirling triangles of both kinds, q-Bell numbers and their identities.

Second kind:  S(n+1,k) = q^(k-1) S(n,k-1) + [k] S(n,k)
First kind:   s(n+1,k) = q^(-n) (s(n,k-1) - [n] s(n,k))
with S(0,0) = s(0,0) = 1. Second-kind entries are ordinary polynomials; first-kind
entries need negative exponents.

The closed forms are assembled over a common denominator and divided exactly.
Their default normalization reproduces the recurrence table. Passing
``normalization="printed"`` multiplies by q^{k(1-k)/2} as well, which is the
normalization in which the q-binomial expansion of [x]^n is usually stated;
the two differ by exactly that monomial.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from math import comb

from config import log_event
from errors import DomainError, IdentityViolation, IndexOutOfTriangle, NonExactDivision
from exact_arith import (
    ONE,
    ZERO,
    LaurentPoly,
    lp_exact_div,
    lp_eval_rat,
    lp_monomial,
    lp_mul,
    lp_pow,
    lp_serialize,
    lp_sum,
)
from qcore import (
    q_binomial,
    q_binomial_at_integer,
    q_factorial,
    q_falling_at,
    q_integer,
    q_monomial_half,
    q_power,
)
from reports import VerificationReport

FIRST = "first"
SECOND = "second"
NORMALIZATIONS = ("recurrence", "printed")


@dataclass(frozen=True)
class QStirlingTable:
    kind: str
    max_n: int
    rows: tuple[tuple[LaurentPoly, ...], ...]

    def entry(self, n: int, k: int) -> LaurentPoly:
        """(n, k) entry; zero outside 0 <= k <= n."""
        if n < 0 or n > self.max_n:
            raise IndexOutOfTriangle(f"row {n} outside table 0..{self.max_n}")
        if k < 0 or k > n:
            return ZERO
        return self.rows[n][k]

    def row(self, n: int) -> tuple[LaurentPoly, ...]:
        if n < 0 or n > self.max_n:
            raise IndexOutOfTriangle(f"row {n} outside table 0..{self.max_n}")
        return self.rows[n]


@dataclass(frozen=True)
class QBellSequence:
    max_n: int
    values: tuple[LaurentPoly, ...]


# Rows are grown on demand and shared between tables of different N;
# growth happens under _ROWS_LOCK so row n always holds n + 1 entries.
_SECOND_ROWS: list[tuple[LaurentPoly, ...]] = [(ONE,)]
_FIRST_ROWS: list[tuple[LaurentPoly, ...]] = [(ONE,)]
_ROWS_LOCK = threading.Lock()


def _require_n(N: int) -> None:
    if N < 1:
        raise DomainError(f"table size N must be >= 1, got {N}")


def _at(row: tuple[LaurentPoly, ...], k: int) -> LaurentPoly:
    return row[k] if 0 <= k < len(row) else ZERO


def build_second_table(N: int) -> QStirlingTable:
    _require_n(N)
    if len(_SECOND_ROWS) <= N:
        with _ROWS_LOCK:
            if len(_SECOND_ROWS) <= N:
                log_event("BUILD", f"second kind rows {len(_SECOND_ROWS)}..{N}")
            while len(_SECOND_ROWS) <= N:
                n = len(_SECOND_ROWS) - 1
                prev = _SECOND_ROWS[n]
                row = tuple(
                    _at(prev, k - 1).shift(k - 1) + lp_mul(q_integer(k), _at(prev, k))
                    for k in range(n + 2)
                )
                _SECOND_ROWS.append(row)
    return QStirlingTable(SECOND, N, tuple(_SECOND_ROWS[: N + 1]))


def build_first_table(N: int) -> QStirlingTable:
    _require_n(N)
    if len(_FIRST_ROWS) <= N:
        with _ROWS_LOCK:
            if len(_FIRST_ROWS) <= N:
                log_event("BUILD", f"first kind rows {len(_FIRST_ROWS)}..{N}")
            while len(_FIRST_ROWS) <= N:
                n = len(_FIRST_ROWS) - 1
                prev = _FIRST_ROWS[n]
                qn = q_integer(n)
                row = tuple(
                    (_at(prev, k - 1) - lp_mul(qn, _at(prev, k))).shift(-n) for k in range(n + 2)
                )
                _FIRST_ROWS.append(row)
    return QStirlingTable(FIRST, N, tuple(_FIRST_ROWS[: N + 1]))


def build_table(kind: str, N: int) -> QStirlingTable:
    if kind == FIRST:
        return build_first_table(N)
    if kind == SECOND:
        return build_second_table(N)
    raise DomainError(f"unknown table kind {kind!r}")


def bell_q(table: QStirlingTable, n: int) -> LaurentPoly:
    """B(n,q): sum of second-kind row n."""
    if table.kind != SECOND:
        raise DomainError("q-Bell numbers need the second-kind table")
    return lp_sum(table.row(n))


def bell_sequence(N: int) -> QBellSequence:
    table = build_second_table(N)
    return QBellSequence(N, tuple(bell_q(table, n) for n in range(N + 1)))


# ---------------- Closed forms -----------------


def _check_cell(n: int, k: int) -> None:
    if not 1 <= k <= n:
        raise IndexOutOfTriangle(f"closed forms need 1 <= k <= n, got n={n}, k={k}")


def _finish(numerator: LaurentPoly, denominator: LaurentPoly, k: int, normalization: str) -> LaurentPoly:
    if normalization not in NORMALIZATIONS:
        raise DomainError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")
    value = lp_exact_div(numerator, denominator)
    if normalization == "printed":
        value = lp_mul(value, q_monomial_half(k))
    if not value.is_polynomial:
        raise IdentityViolation(f"closed form for k={k} assembled with negative exponent {value.min_exp}")
    return value


def _sign(e: int) -> int:
    return -1 if e & 1 else 1


def _alternating_numerator(n: int, k: int) -> LaurentPoly:
    """sum_j (-1)^(k-j) C(k,j)_q q^((k-j)(k-j-1)/2) [j]^n."""
    return lp_sum(
        lp_mul(q_binomial(k, j), q_power(j, n)).shift((k - j) * (k - j - 1) // 2) * _sign(k - j)
        for j in range(k + 1)
    )


def stirling2_closed_form(n: int, k: int, *, normalization: str = "recurrence") -> LaurentPoly:
    _check_cell(n, k)
    return _finish(_alternating_numerator(n, k), q_factorial(k), k, normalization)


def stirling2_alt_closed_form(n: int, k: int, *, normalization: str = "recurrence") -> LaurentPoly:
    """Companion form: sum_j (-1)^j q^(j(j-1)/2) C(k,j)_q [k-j]^n over [k]!."""
    _check_cell(n, k)
    numerator = lp_sum(
        lp_mul(q_binomial(k, j), q_power(k - j, n)).shift(j * (j - 1) // 2) * _sign(j)
        for j in range(k + 1)
    )
    return _finish(numerator, q_factorial(k), k, normalization)


def stirling2_double_sum(n: int, k: int, *, normalization: str = "recurrence") -> LaurentPoly:
    """[j]^n expanded as (1-q^j)^n/(1-q)^n; divided by (1-q)^n [k]!."""
    _check_cell(n, k)
    terms = []
    for j in range(k + 1):
        cj = q_binomial(k, j)
        base = (k - j) * (k - j - 1) // 2
        for d in range(n + 1):
            terms.append(cj.shift(base + j * d) * (comb(n, d) * _sign(k - j - d)))
    one_minus_q = ONE - lp_monomial(1)
    denominator = lp_mul(lp_pow(one_minus_q, n), q_factorial(k))
    return _finish(lp_sum(terms), denominator, k, normalization)


def stirling2_term_form(n: int, k: int, *, normalization: str = "recurrence") -> LaurentPoly:
    """Sum over j >= 1 of (-1)^(k-j) q^((k-j)(k-j-1)/2) [j]^(n-1) / ([j-1]! [k-j]!).

    The j = 0 summand is dropped: it carries [-1]! and its counterpart in the
    alternating form is zero. Terms are put over [k]! before summing.
    """
    _check_cell(n, k)
    fk = q_factorial(k)
    terms = []
    for j in range(1, k + 1):
        scale = lp_exact_div(fk, lp_mul(q_factorial(j - 1), q_factorial(k - j)))
        term = lp_mul(scale, q_power(j, n - 1)).shift((k - j) * (k - j - 1) // 2)
        terms.append(term * _sign(k - j))
    return _finish(lp_sum(terms), fk, k, normalization)


def newton_gregory(n: int, k: int, *, normalization: str = "recurrence") -> LaurentPoly:
    """Δ_q^k applied to f(x) = [x]^n at x = 0, with Δ_q^k = prod_{m<k} (E - q^m)."""
    _check_cell(n, k)
    g = [q_power(x, n) for x in range(k + 1)]
    for m in range(k):
        g = [g[x + 1] - g[x].shift(m) for x in range(len(g) - 1)]
    return _finish(g[0], q_factorial(k), k, normalization)


def bell_q_double_sum(n: int, *, normalization: str = "recurrence") -> LaurentPoly:
    """B(n,q) assembled from the alternating sums, one [k]! denominator per k."""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if normalization not in NORMALIZATIONS:
        raise DomainError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")
    parts = []
    for k in range(n + 1):
        value = lp_exact_div(_alternating_numerator(n, k), q_factorial(k))
        if normalization == "printed":
            value = lp_mul(value, q_monomial_half(k))
        parts.append(value)
    return lp_sum(parts)


CLOSED_FORMS = {
    "closed_form": stirling2_closed_form,
    "alt_closed_form": stirling2_alt_closed_form,
    "double_sum": stirling2_double_sum,
    "term_form": stirling2_term_form,
    "newton_gregory": newton_gregory,
}


def cross_check_second(N: int, *, forms: tuple[str, ...] | None = None) -> VerificationReport:
    """Every closed form against the recurrence table, 1 <= k <= n <= N."""
    _require_n(N)
    names = forms or tuple(CLOSED_FORMS)
    table = build_second_table(N)
    report = VerificationReport("closed-form", {"n": N, "forms": list(names)})
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            want = table.entry(n, k)
            for name in names:
                loc = f"{name} n={n} k={k}"
                try:
                    got = CLOSED_FORMS[name](n, k)
                except (NonExactDivision, IdentityViolation) as e:
                    report.check(False, loc, lp_serialize(want), f"{type(e).__name__}: {e}")
                    continue
                report.check(got == want, loc, lp_serialize(want), lp_serialize(got))
    return report


def special_values_check(N: int) -> VerificationReport:
    """S(n,1)=1, S(n,2)=[2]^(n-1)-1, S(n,n)=q^(n(n-1)/2), s(n,n)=q^(-n(n-1)/2)."""
    _require_n(N)
    second = build_second_table(N)
    first = build_first_table(N)
    report = VerificationReport("special-values", {"n": N})
    two = q_integer(2)
    for n in range(1, N + 1):
        half = n * (n - 1) // 2
        report.check(second.entry(n, 1) == ONE, f"S({n},1)", "1", lp_serialize(second.entry(n, 1)))
        if n >= 2:
            want = lp_pow(two, n - 1) - ONE
            got = second.entry(n, 2)
            report.check(got == want, f"S({n},2)", lp_serialize(want), lp_serialize(got))
        for label, got, want in (
            (f"S({n},{n})", second.entry(n, n), lp_monomial(half)),
            (f"s({n},{n})", first.entry(n, n), lp_monomial(-half)),
        ):
            report.check(got == want, label, lp_serialize(want), lp_serialize(got))
    return report


def orthogonality_check(N: int) -> VerificationReport:
    """sum_k s(n,k)S(k,m) and sum_k S(n,k)s(k,m) against δ_{n,m}."""
    _require_n(N)
    first = build_first_table(N)
    second = build_second_table(N)
    report = VerificationReport("orthogonality", {"n": N})
    for n in range(1, N + 1):
        for m in range(1, n + 1):
            want = ONE if n == m else ZERO
            fs = lp_sum(lp_mul(first.entry(n, k), second.entry(k, m)) for k in range(m, n + 1))
            sf = lp_sum(lp_mul(second.entry(n, k), first.entry(k, m)) for k in range(m, n + 1))
            report.check(fs == want, f"s*S n={n} m={m}", lp_serialize(want), lp_serialize(fs))
            report.check(sf == want, f"S*s n={n} m={m}", lp_serialize(want), lp_serialize(sf))
    log_event("VERIFY", f"orthogonality N={N}: {len(report.failures)} failures")
    return report


# ---------------- Connection coefficients -----------------


def _require_xn(x: int, n: int) -> None:
    if x < 0 or n < 0:
        raise DomainError(f"connection checks need x >= 0 and n >= 0, got x={x}, n={n}")


def _table_rows(n: int, kind: str) -> QStirlingTable:
    return build_table(kind, max(n, 1))


def connection_check_second(x: int, n: int) -> LaurentPoly:
    """[x]^n - sum_j S(n,j) [x]_(j); zero when the identity holds."""
    _require_xn(x, n)
    table = _table_rows(n, SECOND)
    rhs = lp_sum(lp_mul(table.entry(n, j), q_falling_at(x, j)) for j in range(n + 1))
    return q_power(x, n) - rhs


def connection_check_first(x: int, n: int) -> LaurentPoly:
    """[x]_(n) - sum_j s(n,j) [x]^j."""
    _require_xn(x, n)
    table = _table_rows(n, FIRST)
    rhs = lp_sum(lp_mul(table.entry(n, j), q_power(x, j)) for j in range(n + 1))
    return q_falling_at(x, n) - rhs


def connection_check_qbinom(x: int, n: int) -> LaurentPoly:
    """[x]^n - sum_k C(x,k)_q [k]! q^(k(1-k)/2) S'(n,k), S' in printed normalization."""
    _require_xn(x, n)
    table = _table_rows(n, SECOND)
    terms = []
    for k in range(n + 1):
        printed = table.entry(n, k).shift(k * (k - 1) // 2)
        coeff = lp_mul(q_binomial_at_integer(x, k), q_factorial(k))
        terms.append(lp_mul(lp_mul(coeff, q_monomial_half(k)), printed))
    return q_power(x, n) - lp_sum(terms)


def connection_check(X: int, N: int) -> VerificationReport:
    """All three connection residuals for 0 <= x <= X, 0 <= n <= N."""
    _require_xn(X, N)
    report = VerificationReport("connection", {"x": X, "n": N})
    checks = (
        ("second", connection_check_second),
        ("first", connection_check_first),
        ("qbinom", connection_check_qbinom),
    )
    for x in range(X + 1):
        for n in range(N + 1):
            for name, fn in checks:
                residual = fn(x, n)
                report.check(residual.is_zero, f"{name} x={x} n={n}", [], lp_serialize(residual))
    return report


def bosonic_limit_check(N: int) -> VerificationReport:
    """Both triangles at q = 1 against the classical recurrences."""
    from analytic import classical_stirling1, classical_stirling2

    _require_n(N)
    first = build_first_table(N)
    second = build_second_table(N)
    report = VerificationReport("bosonic", {"n": N})
    for n in range(N + 1):
        for k in range(n + 1):
            for label, table, oracle in (("S", second, classical_stirling2), ("s", first, classical_stirling1)):
                got = lp_eval_rat(table.entry(n, k), 1)
                want = oracle(n, k)
                report.check(got == want, f"{label}({n},{k}) at q=1", want, str(got))
    return report
