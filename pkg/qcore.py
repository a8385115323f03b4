"""q-calculus primitives: [n], [n]!, Gaussian binomials, q-falling factorials, ε_n.

Conventions: [0] = 0 and every empty product is 1.
"""

from __future__ import annotations

import threading
from functools import lru_cache

from errors import DomainError, IndexOutOfTriangle
from exact_arith import ONE, ZERO, LaurentPoly, lp_exact_div, lp_monomial, lp_mul, lp_pow


def _require_nat(name: str, n: int) -> None:
    if n < 0:
        raise DomainError(f"{name} must be >= 0, got {n}")


@lru_cache(maxsize=None)
def q_integer(n: int) -> LaurentPoly:
    """[n] = 1 + q + ... + q^(n-1); [0] = 0."""
    _require_nat("n", n)
    return LaurentPoly({e: 1 for e in range(n)})


@lru_cache(maxsize=None)
def q_factorial(n: int) -> LaurentPoly:
    _require_nat("n", n)
    if n == 0:
        return ONE
    return lp_mul(q_factorial(n - 1), q_integer(n))


@lru_cache(maxsize=None)
def q_power(x: int, n: int) -> LaurentPoly:
    """[x]^n."""
    _require_nat("n", n)
    return lp_pow(q_integer(x), n)


# q-Pascal rows, grown on demand; row n holds C(n, 0..n)_q
_PASCAL: list[tuple[LaurentPoly, ...]] = [(ONE,)]
_PASCAL_LOCK = threading.Lock()


def _pascal_row(n: int) -> tuple[LaurentPoly, ...]:
    if len(_PASCAL) <= n:
        with _PASCAL_LOCK:
            while len(_PASCAL) <= n:
                m = len(_PASCAL)
                prev = _PASCAL[m - 1]
                row = [ONE]
                for k in range(1, m):
                    row.append(prev[k - 1] + prev[k].shift(k))
                row.append(ONE)
                _PASCAL.append(tuple(row))
    return _PASCAL[n]


def q_binomial(n: int, k: int) -> LaurentPoly:
    """Gaussian binomial by C(n,k) = C(n-1,k-1) + q^k C(n-1,k)."""
    _require_nat("n", n)
    if k < 0 or k > n:
        raise IndexOutOfTriangle(f"q_binomial({n}, {k}) needs 0 <= k <= n")
    return _pascal_row(n)[k]


def q_binomial_by_division(n: int, k: int) -> LaurentPoly:
    """[n]!/([k]![n-k]!) by exact division; cross-check for q_binomial."""
    _require_nat("n", n)
    if k < 0 or k > n:
        raise IndexOutOfTriangle(f"q_binomial_by_division({n}, {k}) needs 0 <= k <= n")
    return lp_exact_div(q_factorial(n), lp_mul(q_factorial(k), q_factorial(n - k)))


def q_falling_at(x: int, k: int) -> LaurentPoly:
    """[x][x-1]...[x-k+1]; zero as soon as the product reaches [0]."""
    _require_nat("x", x)
    _require_nat("k", k)
    if k > x:
        return ZERO
    out = ONE
    for i in range(k):
        out = lp_mul(out, q_integer(x - i))
    return out


def q_binomial_at_integer(x: int, k: int) -> LaurentPoly:
    """C(x,k)_q as prod_{i<k} [x-i] / [k]!, exact."""
    _require_nat("x", x)
    _require_nat("k", k)
    falling = q_falling_at(x, k)
    if falling.is_zero:
        return ZERO
    return lp_exact_div(falling, q_factorial(k))


def q_monomial_half(k: int) -> LaurentPoly:
    """q^{k(1-k)/2}; k(1-k) is always even."""
    return lp_monomial(k * (1 - k) // 2)


def epsilon(n: int) -> int:
    """ε_n: 1 for odd n, 0 for even n (value of [n] at q = -1)."""
    _require_nat("n", n)
    return n & 1


def epsilon_signed(m: int) -> int:
    """ε extended to negative arguments by the parity of |m|."""
    return abs(m) & 1
