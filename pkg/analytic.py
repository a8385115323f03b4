"""Numerical and classical side: Y_S interpolation, oracles, Bernoulli numbers, zeta series.

Y_S(z,k,q) is summed over j = 1..k. The j = 0 term carries [0]^(-z), which is
zero at the interpolation points z = -n and undefined elsewhere.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

import mpmath
import numpy as np

from config import get_truncation_order, log_event
from errors import DomainError, IndexOutOfTriangle, TruncationExceeded
from exact_arith import (
    LaurentPoly,
    Rational,
    expm1_over_t,
    lp_eval_rat,
    ps_inverse,
    ps_pow,
    rat_to_str,
    to_rat,
)
from qcore import q_binomial
from reports import VerificationReport
from stirling_q import NORMALIZATIONS, bell_q, build_second_table

APERY = 1.2020569031595942
YS_DPS = 50
EXACT_ZETA_LIMIT = 500


@dataclass(frozen=True)
class InterpResult:
    z: complex
    k: int
    q: float
    value: complex

    def to_dict(self) -> dict:
        return {
            "z": {"re": self.z.real, "im": self.z.imag},
            "k": self.k,
            "q": self.q,
            "value": {"re": self.value.real, "im": self.value.imag},
        }


@dataclass(frozen=True)
class ZetaReport:
    k: int
    terms_used: int
    partial_sum: float
    reference: float
    abs_error: float
    exact_sum: str | None = field(default=None)

    def to_dict(self) -> dict:
        out = {
            "k": self.k,
            "terms_used": self.terms_used,
            "partial_sum": self.partial_sum,
            "reference": self.reference,
            "abs_error": self.abs_error,
        }
        if self.exact_sum is not None:
            out["exact_sum"] = self.exact_sum
        return out


@dataclass(frozen=True)
class HigherBernoulli:
    order: int
    index: int
    value: Rational

    def to_dict(self) -> dict:
        return {"order": self.order, "index": self.index, "value": rat_to_str(self.value)}


# ---------------- Classical oracles -----------------

_CLASSICAL2: list[tuple[int, ...]] = [(1,)]
_CLASSICAL1: list[tuple[int, ...]] = [(1,)]
_CLASSICAL_LOCK = threading.Lock()


def _cell(row: tuple[int, ...], k: int) -> int:
    return row[k] if 0 <= k < len(row) else 0


def _grow(rows: list[tuple[int, ...]], n: int, first_kind: bool) -> None:
    if len(rows) > n:
        return
    with _CLASSICAL_LOCK:
        while len(rows) <= n:
            m = len(rows) - 1
            prev = rows[m]
            if first_kind:
                rows.append(tuple(_cell(prev, k - 1) - m * _cell(prev, k) for k in range(m + 2)))
            else:
                rows.append(tuple(_cell(prev, k - 1) + k * _cell(prev, k) for k in range(m + 2)))


def _classical(rows: list[tuple[int, ...]], n: int, k: int, first_kind: bool) -> int:
    if n < 0:
        raise IndexOutOfTriangle(f"n must be >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    _grow(rows, n, first_kind)
    return rows[n][k]


def classical_stirling2(n: int, k: int) -> int:
    """S(n+1,k) = S(n,k-1) + k S(n,k)."""
    return _classical(_CLASSICAL2, n, k, first_kind=False)


def classical_stirling1(n: int, k: int) -> int:
    """Signed: s(n+1,k) = s(n,k-1) - n s(n,k)."""
    return _classical(_CLASSICAL1, n, k, first_kind=True)


def classical_bell(n: int) -> int:
    return sum(classical_stirling2(n, k) for k in range(n + 1))


def eulerian(n: int, k: int) -> int:
    """E(n,k) = sum_{j<=k} (-1)^j C(n+1,j) (k+1-j)^n."""
    if n < 1 or not 0 <= k <= n - 1:
        raise IndexOutOfTriangle(f"eulerian({n}, {k}) needs n >= 1 and 0 <= k <= n-1")
    return sum((-1) ** j * comb(n + 1, j) * (k + 1 - j) ** n for j in range(k + 1))


def stirling2_via_eulerian(n: int, m: int) -> Fraction:
    """(1/m!) sum_{j<n} E(n,j) C(j, n-m)."""
    total = sum(eulerian(n, j) * comb(j, n - m) for j in range(n))
    return Fraction(total, factorial(m))


def eulerian_stirling_check(n: int, m: int) -> Rational:
    """S(n,m) minus its Eulerian-number expansion; zero when the relation holds."""
    if n < 1 or m > n or m < 0:
        raise DomainError(f"eulerian_stirling_check needs n >= 1 and 0 <= m <= n, got n={n}, m={m}")
    return to_rat(classical_stirling2(n, m) - stirling2_via_eulerian(n, m))


# ---------------- Y_S interpolation -----------------


def _check_q(q: float) -> None:
    if not math.isfinite(q) or not (-1.0 < q <= 1.0) or q == 0.0:
        raise DomainError(f"q must lie in (-1, 1] and be nonzero, got {q}")


def _mp_eval(p: LaurentPoly, qm: mpmath.mpf) -> mpmath.mpf:
    return mpmath.fsum(mpmath.mpf(int(c)) * qm**e for e, c in p.terms)


def ys_eval(z: complex, k: int, q: float, *, normalization: str = "recurrence") -> complex:
    """Y_S(z,k,q) with the principal branch [j]^(-z) = exp(-z log [j]).

    Intermediate sums run at YS_DPS decimal digits; near q = 1 the alternating
    sum cancels heavily.
    """
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    _check_q(q)
    if normalization not in NORMALIZATIONS:
        raise DomainError(f"normalization must be one of {NORMALIZATIONS}, got {normalization!r}")
    with mpmath.workdps(YS_DPS):
        qm = mpmath.mpf(q)
        zm = mpmath.mpc(complex(z).real, complex(z).imag)
        brackets = [mpmath.fsum(qm**i for i in range(j)) for j in range(k + 1)]
        fact = mpmath.fprod(brackets[1:])
        total = mpmath.mpc(0)
        for j in range(1, k + 1):
            sign = -1 if (k - j) & 1 else 1
            coeff = _mp_eval(q_binomial(k, j), qm) * qm ** ((k - j) * (k - j - 1) // 2)
            total += sign * coeff * mpmath.exp(-zm * mpmath.log(brackets[j]))
        value = total / fact
        if normalization == "printed":
            value *= qm ** (k * (1 - k) // 2)
        out = complex(value)
    if not (math.isfinite(out.real) and math.isfinite(out.imag)):
        raise DomainError(f"Y_S({z}, {k}, {q}) is not finite")
    return out


def ys_eval_q1(z: complex, k: int) -> complex:
    """q = 1 specialization: (1/k!) sum_j (-1)^(k-j) C(k,j) j^(-z)."""
    if k < 1:
        raise DomainError(f"k must be >= 1, got {k}")
    with mpmath.workdps(YS_DPS):
        zm = mpmath.mpc(complex(z).real, complex(z).imag)
        total = mpmath.fsum(
            (-1) ** (k - j) * comb(k, j) * mpmath.exp(-zm * mpmath.log(j)) for j in range(1, k + 1)
        )
        return complex(total / factorial(k))


def interpolate(z: complex, k: int, q: float) -> InterpResult:
    return InterpResult(complex(z), k, float(q), ys_eval(z, k, q))


def bell_q_via_ys(n: int, q: float) -> float:
    """B(n,q) as sum_{k=1..n} Y_S(-n,k,q)."""
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}")
    return math.fsum(ys_eval(-n, k, q).real for k in range(1, n + 1))


def _close(got: float, want: float, rel: float = 1e-9) -> bool:
    return abs(got - want) < rel * max(1.0, abs(want))


def interpolation_check(N: int, qs: tuple[float, ...] = (0.3, 0.7, -0.5, 1.0)) -> VerificationReport:
    """Y_S(-n,k,q) against S(n,k,q) evaluated exactly, 1 <= k <= n <= N."""
    table = build_second_table(N)
    report = VerificationReport("interpolation", {"n": N, "q": list(qs)})
    for q in qs:
        for n in range(1, N + 1):
            for k in range(1, n + 1):
                want = float(lp_eval_rat(table.entry(n, k), Fraction(q)))
                got = ys_eval(-n, k, q)
                ok = _close(got.real, want) and abs(got.imag) < 1e-9
                report.check(ok, f"q={q} n={n} k={k}", want, [got.real, got.imag])
    for n in range(1, N + 1):
        for k in range(1, n + 1):
            got1 = ys_eval_q1(-n, k).real
            want1 = classical_stirling2(n, k)
            report.check(_close(got1, want1), f"q->1 n={n} k={k}", want1, got1)
    return report


def bell_ys_check(N: int, qs: tuple[float, ...] = (0.5, -0.5)) -> VerificationReport:
    """Bell polynomials: classical values at q = 1 and the sum over Y_S."""
    table = build_second_table(N)
    report = VerificationReport("bell", {"n": N, "q": list(qs)})
    for n in range(N + 1):
        got = lp_eval_rat(bell_q(table, n), 1)
        report.check(got == classical_bell(n), f"B({n}) at q=1", classical_bell(n), str(got))
    for q in qs:
        for n in range(1, N + 1):
            want = float(lp_eval_rat(bell_q(table, n), Fraction(q)))
            got_f = bell_q_via_ys(n, q)
            report.check(_close(got_f, want), f"q={q} n={n}", want, got_f)
    return report


# ---------------- Bernoulli numbers of higher order -----------------


@lru_cache(maxsize=64)
def _bernoulli_series(order: int, truncation: int):
    base = expm1_over_t(truncation)
    if order >= 0:
        return ps_pow(ps_inverse(base), order)
    return ps_pow(base, -order)


def bernoulli_higher(order: int, index: int, *, truncation: int | None = None) -> Rational:
    """B_index^(order): index! times the t^index coefficient of (t/(e^t-1))^order."""
    t = truncation if truncation is not None else get_truncation_order()
    if index < 0 or index >= t:
        raise TruncationExceeded(f"index {index} outside truncation order {t}")
    return to_rat(_bernoulli_series(order, t).coeff(index) * factorial(index))


def bernoulli_classical(index: int, *, truncation: int | None = None) -> Rational:
    """B_index with B_1 = -1/2."""
    return bernoulli_higher(1, index, truncation=truncation)


def gessel_check(n: int, k: int) -> Rational:
    """S(n+k,n) - C(n+k,k) B_k^(-n)."""
    if n < 1 or k < 0:
        raise DomainError(f"gessel_check needs n >= 1 and k >= 0, got n={n}, k={k}")
    return to_rat(classical_stirling2(n + k, n) - comb(n + k, k) * bernoulli_higher(-n, k))


def gessel_report(N: int, K: int) -> VerificationReport:
    report = VerificationReport("gessel", {"n": N, "k": K})
    for n in range(1, N + 1):
        for k in range(K + 1):
            r = gessel_check(n, k)
            report.check(r == 0, f"n={n} k={k}", 0, rat_to_str(r))
    return report


def eulerian_stirling_report(N: int) -> VerificationReport:
    report = VerificationReport("eulerian", {"n": N})
    for n in range(1, N + 1):
        total = sum(eulerian(n, k) for k in range(n))
        report.check(total == factorial(n), f"row sum n={n}", factorial(n), total)
        for m in range(1, n + 1):
            r = eulerian_stirling_check(n, m)
            report.check(r == 0, f"n={n} m={m}", 0, rat_to_str(r))
    return report


def eulerian_bernoulli_check(n: int, k: int) -> dict:
    """B_k^(-n) from Eulerian numbers, in the consistent and the printed arrangement.

    consistent: sum_j E(n+k,j) C(j,k) / (C(n+k,k) n!)
    printed:    C(n+k,k)/n! * sum_j E(n+k,j) C(j,k)
    """
    if n < 1 or k < 0:
        raise DomainError(f"eulerian_bernoulli_check needs n >= 1 and k >= 0, got n={n}, k={k}")
    s = sum(eulerian(n + k, j) * comb(j, k) for j in range(n + k))
    c = comb(n + k, k)
    consistent = to_rat(Fraction(s, c * factorial(n)))
    printed = to_rat(Fraction(c * s, factorial(n)))
    oracle = bernoulli_higher(-n, k)
    return {
        "n": n,
        "k": k,
        "oracle": rat_to_str(oracle),
        "consistent": rat_to_str(consistent),
        "printed": rat_to_str(printed),
        "consistent_match": consistent == oracle,
        "printed_match": printed == oracle,
    }


def eulerian_bernoulli_report(N: int, K: int) -> VerificationReport:
    """Consistent form must match the series oracle; the printed form is only recorded."""
    report = VerificationReport("eulerian-bernoulli", {"n": N, "k": K})
    printed_ok: list[list[int]] = []
    printed_bad: list[dict] = []
    for n in range(1, N + 1):
        for k in range(K + 1):
            entry = eulerian_bernoulli_check(n, k)
            report.check(entry["consistent_match"], f"n={n} k={k}", entry["oracle"], entry["consistent"])
            if entry["printed_match"]:
                printed_ok.append([n, k])
            else:
                printed_bad.append({"n": n, "k": k, "printed": entry["printed"], "oracle": entry["oracle"]})
    report.note(
        kind="errata",
        relation="B_k^(-n) = C(n+k,k)/n! * sum_j E(n+k,j) C(j,k)",
        corrected="B_k^(-n) = sum_j E(n+k,j) C(j,k) / (C(n+k,k) n!)",
        printed_matches=printed_ok,
        printed_mismatches=printed_bad,
    )
    return report


# ---------------- Zeta series -----------------


def zeta_reference(k: int) -> float:
    """ζ(k+1)."""
    if k == 1:
        return math.pi**2 / 6
    if k == 2:
        return APERY
    return float(mpmath.zeta(k + 1))


def zeta_terms(k: int, terms: int) -> np.ndarray:
    """Terms (-1)^(n-k) s(n,k)/(n n!) for n = k..terms, via a_n(j) = s(n,j)/n!."""
    if k < 1 or terms < k:
        raise DomainError(f"zeta series needs k >= 1 and terms >= k, got k={k}, terms={terms}")
    a = np.zeros(k + 1)
    a[1] = 1.0  # a_1 = s(1,.)/1!
    out = np.empty(terms - k + 1)
    for n in range(1, terms + 1):
        if n >= k:
            sign = -1.0 if (n - k) & 1 else 1.0
            out[n - k] = sign * a[k] / n
        shifted = np.empty_like(a)
        shifted[0] = 0.0
        shifted[1:] = a[:-1]
        a = (shifted - n * a) / (n + 1)
    return out


def _zeta_exact(k: int, terms: int) -> Fraction:
    a = [Fraction(0)] * (k + 1)
    a[1] = Fraction(1)
    total = Fraction(0)
    for n in range(1, terms + 1):
        if n >= k:
            total += (-1) ** (n - k) * a[k] / n
        a = [Fraction(0)] + [(a[j - 1] - n * a[j]) / (n + 1) for j in range(1, k + 1)]
    return total


def zeta_via_stirling1(k: int, terms: int, *, exact: bool = False) -> ZetaReport:
    """Partial sum of ζ(k+1) = sum_{n>=k} (-1)^(n-k) s(n,k)/(n n!) up to n = terms."""
    reference = zeta_reference(k) if k >= 1 else math.nan
    if exact:
        if terms >= EXACT_ZETA_LIMIT:
            raise DomainError(f"exact zeta mode needs terms < {EXACT_ZETA_LIMIT}, got {terms}")
        if k < 1 or terms < k:
            raise DomainError(f"zeta series needs k >= 1 and terms >= k, got k={k}, terms={terms}")
        value = _zeta_exact(k, terms)
        partial = float(value)
        log_event("ZETA", f"k={k} terms={terms} exact")
        return ZetaReport(k, terms, partial, reference, abs(partial - reference), rat_to_str(value))
    partial = math.fsum(zeta_terms(k, terms))
    log_event("ZETA", f"k={k} terms={terms} partial={partial!r}")
    return ZetaReport(k, terms, partial, reference, abs(partial - reference))


# ---------------- q-Bernoulli closed form -----------------


def beta_q(m: int, h: int, k: int, q: Rational) -> Rational:
    """(1-q)^(-m) sum_j C(m,j) (-1)^j ((h+j)/[h+j])^k, exact for rational q != 1."""
    if m < 0 or h < 1:
        raise DomainError(f"beta_q needs m >= 0 and h >= 1, got m={m}, h={h}")
    qf = Fraction(to_rat(q))
    if qf == 1:
        raise DomainError("beta_q is undefined at q = 1")
    total = Fraction(0)
    for j in range(m + 1):
        bracket = (1 - qf ** (h + j)) / (1 - qf)
        if bracket == 0:
            raise DomainError(f"[{h + j}] vanishes at q = {rat_to_str(to_rat(qf))}")
        total += comb(m, j) * (-1) ** j * (Fraction(h + j) / bracket) ** k
    return to_rat(total / (1 - qf) ** m)
