"""Exact base-p digit arithmetic for rationals in (0, 1].

Every rational in (0, 1] has a unique base-p expansion with infinitely many
nonzero digits; for a rational it is eventually periodic, so a
:class:`DigitStream` stores it as a preperiod and a repeating block.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import isprime

from .errors import DomainError, InputError

INFINITY = math.inf

__all__ = [
    "INFINITY",
    "DigitStream",
    "CarryProfile",
    "as_rational",
    "format_rational",
    "check_prime",
    "expand",
    "digit",
    "truncate",
    "adds_without_carrying",
    "carry_profile",
    "lucas_binomial_mod_p",
    "ceil_rational",
    "floor_rational",
]


def as_rational(value) -> Fraction:
    """Coerce ints, Fractions and ``"num/den"`` strings to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(f"not a rational: {value!r}") from exc
    raise InputError(f"not a rational: {value!r}")


def format_rational(value) -> str:
    """Serialize as ``"num/den"``; integers keep an explicit ``/1``."""
    value = as_rational(value)
    return f"{value.numerator}/{value.denominator}"


def format_index(n):
    """Serialize a natural-or-infinite index for JSON."""
    return "inf" if n == INFINITY else int(n)


@lru_cache(maxsize=4096)
def _isprime(p: int) -> bool:
    return bool(isprime(p))


def check_prime(p) -> int:
    if not isinstance(p, int) or isinstance(p, bool) or p < 2 or not _isprime(p):
        raise DomainError(f"{p!r} is not a prime")
    return p


def ceil_rational(x: Fraction) -> int:
    return -((-x.numerator) // x.denominator)


def floor_rational(x: Fraction) -> int:
    return x.numerator // x.denominator


def _check_unit_interval(alpha: Fraction) -> Fraction:
    alpha = as_rational(alpha)
    if not 0 < alpha <= 1:
        raise DomainError(f"{alpha} is not in (0, 1]")
    return alpha


@dataclass(frozen=True)
class DigitStream:
    """Non-terminating base-p expansion of a rational in (0, 1].

    ``digit(e)`` for ``e >= 1`` reads the preperiod first and then cycles
    through ``period``.
    """

    prime: int
    preperiod: tuple
    period: tuple
    value: Fraction

    def digit(self, e: int) -> int:
        if e < 1:
            raise DomainError(f"digit index must be >= 1, got {e}")
        k = len(self.preperiod)
        if e <= k:
            return self.preperiod[e - 1]
        return self.period[(e - k - 1) % len(self.period)]

    def digits(self, n: int) -> list:
        return [self.digit(e) for e in range(1, n + 1)]

    def truncate(self, e) -> Fraction:
        if e == INFINITY:
            return self.value
        if e < 0:
            raise DomainError(f"truncation index must be >= 0, got {e}")
        p = self.prime
        acc = 0
        for i in range(1, e + 1):
            acc = acc * p + self.digit(i)
        return Fraction(acc, p**e)

    def evaluate(self) -> Fraction:
        """Sum the preperiod and the geometric tail of the period."""
        p = self.prime
        k, n = len(self.preperiod), len(self.period)
        head = 0
        for a in self.preperiod:
            head = head * p + a
        block = 0
        for a in self.period:
            block = block * p + a
        return Fraction(head, p**k) + Fraction(block, p**k * (p**n - 1))

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "preperiod": list(self.preperiod),
            "period": list(self.period),
        }

    @classmethod
    def from_json(cls, data) -> DigitStream:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            p = check_prime(int(data["prime"]))
            pre = tuple(int(a) for a in data["preperiod"])
            per = tuple(int(a) for a in data["period"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed digit stream: {data!r}") from exc
        if not per or not any(per):
            raise InputError("period must contain a nonzero digit")
        if any(not 0 <= a < p for a in pre + per):
            raise InputError(f"digits out of range for p={p}")
        stream = cls(p, pre, per, Fraction(0))
        return cls(p, pre, per, stream.evaluate())


@dataclass(frozen=True)
class CarryProfile:
    """Carry data of a pair of rationals in base p.

    ``L`` is the last index through which all digit sums stay <= p - 1 and
    ``d`` the last index <= L whose digit sum is <= p - 2 (0 when there is
    none). Either may be ``INFINITY``.
    """

    L: float
    d: float

    def to_json(self) -> dict:
        return {"L": format_index(self.L), "d": format_index(self.d)}


@lru_cache(maxsize=8192)
def _expand(alpha: Fraction, p: int) -> DigitStream:
    seen = {}
    digits = []
    s = alpha
    # digit = ceil(p*s) - 1 keeps the state in (0, 1], which yields the
    # non-terminating expansion without a separate fix-up pass.
    while s not in seen:
        seen[s] = len(digits)
        t = p * s
        a = ceil_rational(t) - 1
        digits.append(a)
        s = t - a
    start = seen[s]
    return DigitStream(p, tuple(digits[:start]), tuple(digits[start:]), alpha)


def expand(alpha, p: int) -> DigitStream:
    """Return the non-terminating base-``p`` expansion of ``alpha``."""
    alpha = _check_unit_interval(alpha)
    return _expand(alpha, check_prime(p))


def digit(s: DigitStream, e: int) -> int:
    return s.digit(e)


def truncate(s: DigitStream, e) -> Fraction:
    """The e-th truncation; ``truncate(s, INFINITY)`` is the value itself."""
    return s.truncate(e)


def _joint_window(s1: DigitStream, s2: DigitStream):
    """Indices (pre, window) after which digit pairs repeat with period window."""
    if s1.prime != s2.prime:
        raise DomainError(f"mismatched primes {s1.prime} and {s2.prime}")
    pre = max(len(s1.preperiod), len(s2.preperiod))
    return pre, math.lcm(len(s1.period), len(s2.period))


def adds_without_carrying(s1: DigitStream, s2: DigitStream) -> bool:
    pre, window = _joint_window(s1, s2)
    bound = s1.prime - 1
    return all(
        s1.digit(e) + s2.digit(e) <= bound for e in range(1, pre + window + 1)
    )


def carry_profile(a1, a2, p: int) -> CarryProfile:
    """Compute ``L`` and ``d`` for the pair ``(a1, a2)`` in base ``p``.

    Digit indices start at 1, so an empty condition set gives 0.
    """
    s1, s2 = expand(a1, p), expand(a2, p)
    pre, window = _joint_window(s1, s2)
    horizon = pre + window
    sums = [s1.digit(e) + s2.digit(e) for e in range(1, horizon + 1)]

    L = INFINITY
    for e, total in enumerate(sums, start=1):
        if total > p - 1:
            L = e - 1
            break

    if L == INFINITY:
        if any(total <= p - 2 for total in sums[pre:]):
            return CarryProfile(L, INFINITY)
        below = [e for e in range(1, horizon + 1) if sums[e - 1] <= p - 2]
    else:
        below = [e for e in range(1, L + 1) if sums[e - 1] <= p - 2]
    return CarryProfile(L, max(below, default=0))


def lucas_binomial_mod_p(N: int, k: int, p: int) -> int:
    """C(N, k) mod p as the product of digit-wise binomials."""
    if k < 0 or N < 0:
        raise DomainError("binomial arguments must be natural numbers")
    if k > N:
        raise DomainError(f"k={k} exceeds N={N}")
    result = 1
    while N or k:
        n_i, k_i = N % p, k % p
        if k_i > n_i:
            return 0
        result = result * math.comb(n_i, k_i) % p
        N //= p
        k //= p
    return result
