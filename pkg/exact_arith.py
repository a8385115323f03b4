"""Exact scalars, Laurent polynomials in q and truncated power series.

Every q-dependent quantity in the package is a :class:`LaurentPoly` with
rational coefficients. Values are kept normalized after each operation
(zero coefficients dropped, exponents sorted, integral fractions stored as
``int``), so structural equality is mathematical equality and identity checks
are plain ``==`` comparisons.
"""

from __future__ import annotations

import random
from collections.abc import Iterable, Mapping
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Union

from errors import (
    DomainError,
    NonExactDivision,
    NonInvertibleSeries,
    ParseError,
    TruncationExceeded,
    ZeroAtNegativeExponent,
)
from reports import VerificationReport

# BigRat: ints are the denominator-1 case of Fraction and compare/hash equal to it.
Rational = Union[int, Fraction]


def to_rat(x: Any) -> Rational:
    """Coerce int/Fraction/str to a normalized exact rational."""
    if isinstance(x, bool):
        return int(x)
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else x
    if isinstance(x, str):
        return rat_parse(x)
    if isinstance(x, float):
        raise DomainError(f"refusing float {x!r} where an exact rational is required")
    f = Fraction(x)
    return f.numerator if f.denominator == 1 else f


def _norm(c: Rational) -> Rational:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


def _rdiv(x: Rational, y: Rational) -> Rational:
    if isinstance(x, int) and isinstance(y, int) and x % y == 0:
        return x // y
    return _norm(Fraction(x) / y)


def rat_to_str(x: Rational) -> str:
    """BigRat text form: "num/den", or "num" when the denominator is 1."""
    x = to_rat(x)
    if isinstance(x, int):
        return str(x)
    return f"{x.numerator}/{x.denominator}"


def rat_parse(text: str) -> Rational:
    try:
        return _norm(Fraction(text.strip()))
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError(f"not a rational number: {text!r}") from e


def rat_to_json(x: Rational) -> int | str:
    """JSON cell for an evaluated entry: bare int when integral, else "num/den"."""
    x = to_rat(x)
    return x if isinstance(x, int) else rat_to_str(x)


class LaurentPoly:
    """Finite sum of c_e q^e with integer (possibly negative) exponents."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, Any] | Iterable[tuple[int, Any]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, Rational] = {}
        for e, c in items:
            if isinstance(e, bool) or not isinstance(e, int):
                raise ParseError(f"exponent must be an integer, got {e!r}")
            acc[e] = acc.get(e, 0) + to_rat(c)
        self._terms: tuple[tuple[int, Rational], ...] = _sorted_terms(acc)

    @classmethod
    def _from_acc(cls, acc: dict[int, Rational]) -> LaurentPoly:
        obj = cls.__new__(cls)
        obj._terms = _sorted_terms(acc)
        return obj

    @property
    def terms(self) -> tuple[tuple[int, Rational], ...]:
        return self._terms

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def min_exp(self) -> int:
        if not self._terms:
            raise DomainError("zero polynomial has no minimal exponent")
        return self._terms[0][0]

    @property
    def max_exp(self) -> int:
        if not self._terms:
            raise DomainError("zero polynomial has no maximal exponent")
        return self._terms[-1][0]

    @property
    def is_polynomial(self) -> bool:
        """True when no exponent is negative (the zero polynomial included)."""
        return not self._terms or self._terms[0][0] >= 0

    def coeff(self, e: int) -> Rational:
        for ee, c in self._terms:
            if ee == e:
                return c
        return 0

    def as_dict(self) -> dict[int, Rational]:
        return dict(self._terms)

    def shift(self, k: int) -> LaurentPoly:
        """Multiply by the monomial q^k."""
        obj = LaurentPoly.__new__(LaurentPoly)
        obj._terms = tuple((e + k, c) for e, c in self._terms)
        return obj

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self._terms == lp_const(other)._terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._terms)

    def __neg__(self) -> LaurentPoly:
        obj = LaurentPoly.__new__(LaurentPoly)
        obj._terms = tuple((e, -c) for e, c in self._terms)
        return obj

    def __add__(self, other: LaurentPoly | int | Fraction) -> LaurentPoly:
        return lp_add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other: LaurentPoly | int | Fraction) -> LaurentPoly:
        return lp_sub(self, _coerce(other))

    def __rsub__(self, other: LaurentPoly | int | Fraction) -> LaurentPoly:
        return lp_sub(_coerce(other), self)

    def __mul__(self, other: LaurentPoly | int | Fraction) -> LaurentPoly:
        if isinstance(other, (int, Fraction)):
            return lp_scale(self, other)
        return lp_mul(self, other)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        return lp_pow(self, n)

    def __repr__(self) -> str:
        return f"LaurentPoly({lp_to_str(self)})"

    def __str__(self) -> str:
        return lp_to_str(self)


def _sorted_terms(acc: dict[int, Rational]) -> tuple[tuple[int, Rational], ...]:
    return tuple(sorted((e, _norm(c)) for e, c in acc.items() if c != 0))


def _coerce(x: LaurentPoly | int | Fraction) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    return lp_const(x)


def lp_const(c: Any) -> LaurentPoly:
    return LaurentPoly({0: c})


def lp_monomial(e: int, c: Any = 1) -> LaurentPoly:
    """c * q^e."""
    return LaurentPoly({e: c})


ZERO = LaurentPoly()
ONE = lp_const(1)
Q = lp_monomial(1)


def lp_add(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    if not b._terms:
        return a
    if not a._terms:
        return b
    acc = dict(a._terms)
    for e, c in b._terms:
        acc[e] = acc.get(e, 0) + c
    return LaurentPoly._from_acc(acc)


def lp_sub(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    return lp_add(a, -b)


def lp_sum(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    acc: dict[int, Rational] = {}
    for p in polys:
        for e, c in p._terms:
            acc[e] = acc.get(e, 0) + c
    return LaurentPoly._from_acc(acc)


def lp_scale(a: LaurentPoly, c: Any) -> LaurentPoly:
    c = to_rat(c)
    if c == 0:
        return ZERO
    return LaurentPoly._from_acc({e: ca * c for e, ca in a._terms})


_KRONECKER_MIN_WORK = 256


def _all_int(terms: tuple[tuple[int, Rational], ...]) -> bool:
    return all(type(c) is int for _, c in terms)


def _kronecker_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Integer-coefficient product via packing into one big integer per factor.

    Digits are balanced (|d| < 2^(bits-1)), so signed coefficients unpack
    exactly as long as bits exceeds every product coefficient's magnitude.
    """
    a0, b0 = a._terms[0][0], b._terms[0][0]
    bound = max(abs(c) for _, c in a._terms) * max(abs(c) for _, c in b._terms)
    bound *= min(len(a._terms), len(b._terms))
    bits = bound.bit_length() + 1
    big_a = sum(c << (bits * (e - a0)) for e, c in a._terms)
    big_b = sum(c << (bits * (e - b0)) for e, c in b._terms)
    prod = big_a * big_b
    count = (a._terms[-1][0] - a0) + (b._terms[-1][0] - b0) + 1
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    acc: dict[int, Rational] = {}
    base = a0 + b0
    for i in range(count):
        d = prod & mask
        prod >>= bits
        if d >= half:
            d -= 1 << bits
            prod += 1
        if d:
            acc[base + i] = d
    return LaurentPoly._from_acc(acc)


def lp_mul(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Exact convolution product."""
    if not a._terms or not b._terms:
        return ZERO
    if (
        len(a._terms) * len(b._terms) >= _KRONECKER_MIN_WORK
        and _all_int(a._terms)
        and _all_int(b._terms)
    ):
        return _kronecker_mul(a, b)
    if len(b._terms) > len(a._terms):
        a, b = b, a
    acc: dict[int, Rational] = {}
    get = acc.get
    outer = a._terms
    for eb, cb in b._terms:
        for ea, ca in outer:
            e = ea + eb
            acc[e] = get(e, 0) + ca * cb
    return LaurentPoly._from_acc(acc)


def lp_pow(a: LaurentPoly, n: int) -> LaurentPoly:
    if n < 0:
        raise DomainError(f"negative power {n} of a Laurent polynomial is not a polynomial")
    result = ONE
    base = a
    while n:
        if n & 1:
            result = lp_mul(result, base)
        n >>= 1
        if n:
            base = lp_mul(base, base)
    return result


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return c with a == b * c, or raise NonExactDivision.

    Long division from the lowest exponent upward. The quotient cannot reach
    past max_exp(a) - max_exp(b); a remainder that would need it proves b does
    not divide a.
    """
    if not b._terms:
        raise DomainError("division by the zero polynomial")
    if not a._terms:
        return ZERO
    b_low_e, b_low_c = b._terms[0]
    limit = a.max_exp - b.max_exp
    rem: dict[int, Rational] = dict(a._terms)
    quot: dict[int, Rational] = {}
    while rem:
        e_r = min(rem)
        qe = e_r - b_low_e
        if qe > limit:
            raise NonExactDivision(f"({lp_to_str(a)}) / ({lp_to_str(b)}) leaves a remainder")
        qc = _rdiv(rem[e_r], b_low_c)
        quot[qe] = qc
        for eb, cb in b._terms:
            e = eb + qe
            v = rem.get(e, 0) - qc * cb
            if v:
                rem[e] = v
            else:
                rem.pop(e, None)
    return LaurentPoly._from_acc(quot)


def lp_eval_rat(p: LaurentPoly, q0: Any) -> Rational:
    """Exact value of p at the rational point q0."""
    q0 = Fraction(to_rat(q0))
    if q0 == 0:
        if p._terms and p._terms[0][0] < 0:
            raise ZeroAtNegativeExponent(f"{lp_to_str(p)} has negative exponents; cannot evaluate at 0")
        return p.coeff(0)
    total: Rational = 0
    for e, c in p._terms:
        total += c * q0**e
    return _norm(Fraction(total))


def lp_eval_complex(p: LaurentPoly, q0: complex | float) -> complex:
    """Double-precision value of p at q0."""
    z = complex(q0)
    if z == 0:
        if p._terms and p._terms[0][0] < 0:
            raise ZeroAtNegativeExponent(f"{lp_to_str(p)} has negative exponents; cannot evaluate at 0")
        return complex(float(p.coeff(0)))
    total = 0j
    for e, c in p._terms:
        total += float(c) * z**e
    return total


# ---------------- Serialization -----------------


def lp_serialize(p: LaurentPoly) -> list[list[Any]]:
    """[[exponent, "num/den"], ...] ascending by exponent."""
    return [[e, rat_to_str(c)] for e, c in p._terms]


def lp_deserialize(data: Any) -> LaurentPoly:
    if not isinstance(data, list):
        raise ParseError(f"polynomial must be a list of [exponent, coefficient] pairs, got {data!r}")
    acc: dict[int, Rational] = {}
    for pair in data:
        if not (isinstance(pair, (list, tuple)) and len(pair) == 2):
            raise ParseError(f"bad polynomial term {pair!r}")
        e, c = pair
        if isinstance(e, bool) or not isinstance(e, int):
            raise ParseError(f"exponent must be an integer, got {e!r}")
        if e in acc:
            raise ParseError(f"duplicate exponent {e}")
        if isinstance(c, str):
            acc[e] = rat_parse(c)
        elif isinstance(c, int) and not isinstance(c, bool):
            acc[e] = c
        else:
            raise ParseError(f"coefficient must be a rational string or an integer, got {c!r}")
    return LaurentPoly._from_acc(acc)


def lp_to_str(p: LaurentPoly, var: str = "q") -> str:
    """Readable form, e.g. "2*q + q^2" or "-2*q^-3 - q^-2"."""
    if not p._terms:
        return "0"
    parts: list[str] = []
    for i, (e, c) in enumerate(p._terms):
        neg = c < 0
        mag = -c if neg else c
        if e == 0:
            body = rat_to_str(mag)
        else:
            mono = var if e == 1 else f"{var}^{e}"
            if mag == 1:
                body = mono
            elif isinstance(mag, int):
                body = f"{mag}*{mono}"
            else:
                body = f"({rat_to_str(mag)})*{mono}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


# ---------------- Truncated power series -----------------


@dataclass(frozen=True)
class PowerSeries:
    """Coefficients of t^0 .. t^(order-1); everything beyond is discarded."""

    coeffs: tuple[Rational, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def coeff(self, i: int) -> Rational:
        if i < 0 or i >= len(self.coeffs):
            raise TruncationExceeded(f"coefficient t^{i} requested from a series of order {self.order}")
        return self.coeffs[i]


def ps_from_coeffs(coeffs: Iterable[Any], order: int) -> PowerSeries:
    vals = [to_rat(c) for c in coeffs][:order]
    vals += [0] * (order - len(vals))
    return PowerSeries(tuple(_norm(v) for v in vals))


def ps_one(order: int) -> PowerSeries:
    return ps_from_coeffs([1], order)


def expm1_over_t(order: int) -> PowerSeries:
    """(e^t - 1)/t = sum t^j/(j+1)!"""
    coeffs: list[Rational] = []
    fact = 1
    for j in range(order):
        fact *= j + 1
        coeffs.append(Fraction(1, fact))
    return ps_from_coeffs(coeffs, order)


def _same_order(a: PowerSeries, b: PowerSeries) -> int:
    if a.order != b.order:
        raise TruncationExceeded(f"series orders differ ({a.order} vs {b.order})")
    return a.order


def ps_mul(a: PowerSeries, b: PowerSeries) -> PowerSeries:
    order = _same_order(a, b)
    out: list[Rational] = [0] * order
    for i, ca in enumerate(a.coeffs):
        if ca == 0:
            continue
        for j in range(order - i):
            cb = b.coeffs[j]
            if cb:
                out[i + j] += ca * cb
    return PowerSeries(tuple(_norm(c) for c in out))


def ps_pow(a: PowerSeries, n: int) -> PowerSeries:
    if n < 0:
        raise DomainError(f"ps_pow needs n >= 0, got {n}; use ps_inverse first")
    result = ps_one(a.order)
    base = a
    while n:
        if n & 1:
            result = ps_mul(result, base)
        n >>= 1
        if n:
            base = ps_mul(base, base)
    return result


def ps_inverse(a: PowerSeries) -> PowerSeries:
    """Reciprocal series: b_0 = 1/a_0, b_m = -(1/a_0) sum_{i=1..m} a_i b_{m-i}."""
    if a.order == 0:
        return a
    a0 = a.coeffs[0]
    if a0 == 0:
        raise NonInvertibleSeries("constant term is zero")
    inv0 = Fraction(1) / a0
    b: list[Rational] = [_norm(inv0)]
    for m in range(1, a.order):
        s: Rational = 0
        for i in range(1, m + 1):
            s += a.coeffs[i] * b[m - i]
        b.append(_norm(-s * inv0))
    return PowerSeries(tuple(b))


# ---------------- Randomized ring-law suite -----------------


def random_laurent(rng: random.Random, *, max_terms: int = 4, span: int = 6) -> LaurentPoly:
    """Small random Laurent polynomial: exponents in [-span, span], small rationals."""
    n_terms = rng.randint(0, max_terms)
    return LaurentPoly(
        (rng.randint(-span, span), Fraction(rng.randint(-5, 5), rng.randint(1, 4)))
        for _ in range(n_terms)
    )


def arith_law_check(samples: int, seed: int) -> VerificationReport:
    """Ring laws, exact-division inverse and evaluation morphism on random inputs."""
    rng = random.Random(seed)
    report = VerificationReport("arith", {"samples": samples, "seed": seed})
    points = [Fraction(-1), Fraction(1), Fraction(2, 3), Fraction(-1, 2)]
    for i in range(samples):
        a, b, c = (random_laurent(rng) for _ in range(3))
        loc = f"sample={i}"
        report.check(
            (a + b) + c == a + (b + c), f"{loc} associativity", lp_serialize((a + b) + c),
            lp_serialize(a + (b + c)),
        )
        report.check(
            a * (b + c) == a * b + a * c, f"{loc} distributivity", lp_serialize(a * (b + c)),
            lp_serialize(a * b + a * c),
        )
        report.check(a * b == b * a, f"{loc} commutativity", lp_serialize(a * b), lp_serialize(b * a))
        if b:
            back = lp_exact_div(a * b, b)
            report.check(back == a, f"{loc} exact division", lp_serialize(a), lp_serialize(back))
        q0 = rng.choice(points)
        lhs = lp_eval_rat(a * b, q0)
        rhs = lp_eval_rat(a, q0) * lp_eval_rat(b, q0)
        report.check(lhs == rhs, f"{loc} eval morphism q={q0}", rat_to_str(rhs), rat_to_str(lhs))
    return report
