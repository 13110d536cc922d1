"""The nu-invariant nu_f^J(p^e) and F-threshold brackets derived from it."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .basep import format_rational, lucas_binomial_mod_p
from .errors import DomainError
from .ideals import Ideal, power_in_bracket
from .polyfp import Polynomial, support_names

__all__ = [
    "NuRecord",
    "radical_exponent",
    "nu",
    "fpt_bracket",
    "first_bracket_power",
    "ts_membership",
    "nu_ts",
    "DEFAULT_RADICAL_CAP",
]

DEFAULT_RADICAL_CAP = 64


@dataclass(frozen=True)
class NuRecord:
    f: Polynomial
    J: Ideal
    e: int
    nu: int
    truncation: Fraction

    def to_json(self) -> dict:
        return {
            "prime": self.f.prime,
            "e": self.e,
            "poly": self.f.format(),
            "ideal": self.J.format(),
            "vars": list(self.f.ctx.names),
            "nu": self.nu,
            "truncation": format_rational(self.truncation),
        }


def radical_exponent(f: Polynomial, J: Ideal, cap: int = DEFAULT_RADICAL_CAP) -> int:
    """Least ``M <= cap`` with ``f^M`` in ``J``."""
    if cap < 1:
        raise DomainError("cap must be >= 1")
    power = f
    for M in range(1, cap + 1):
        if J.contains(power):
            return M
        power = power * f
    raise DomainError(f"f^M not detected in J for M <= {cap}; raise the cap")


def first_bracket_power(f: Polynomial, J: Ideal, e: int, upper: int) -> int:
    """Smallest ``l <= upper`` with ``f^l`` in ``J^[p^e]``, or ``upper + 1``.

    Membership is monotone in ``l``, so this is a binary search.
    """
    lo, hi = 0, upper + 1  # invariant: answer in [lo, hi]
    while lo < hi:
        mid = (lo + hi) // 2
        if power_in_bracket(f, mid, J, e):
            hi = mid
        else:
            lo = mid + 1
    return lo


def nu(f: Polynomial, J: Ideal, e: int, cap: int = DEFAULT_RADICAL_CAP) -> NuRecord:
    """Largest ``l`` with ``f^l`` outside ``J^[p^e]``."""
    if f.is_zero():
        raise DomainError("nu is undefined for the zero polynomial")
    if e < 0:
        raise DomainError("e must be >= 0")
    if J.is_zero() or J.is_unit():
        raise DomainError("J must be a nonzero proper ideal")
    M = radical_exponent(f, J, cap)
    q = f.prime**e
    # f^M in J gives f^(M q) in J^[q]
    value = first_bracket_power(f, J, e, M * q) - 1
    return NuRecord(f, J, e, value, Fraction(value, q))


def fpt_bracket(f: Polynomial, J: Ideal, e: int, cap: int = DEFAULT_RADICAL_CAP):
    """Interval ``(lower, upper]`` containing c^J(f), of width p^-e.

    The lower end is the e-th truncation of the threshold, so the threshold
    itself is strictly above it and at most one step higher.
    """
    rec = nu(f, J, e, cap)
    step = Fraction(1, f.prime**e)
    return rec.truncation, rec.truncation + step


def _check_disjoint(g1: Polynomial, g2: Polynomial):
    if g1.prime != g2.prime:
        raise DomainError("g1 and g2 must share the prime")
    shared = set(support_names(g1)) & set(support_names(g2))
    if shared:
        raise DomainError(f"supports overlap in {sorted(shared)}")


def _component_threshold(g, I, e, theta, cache):
    """Smallest j <= theta with g^j in I^[p^e] (theta + 1 if none), memoized."""
    key = (id(g), id(I), e)
    exact, searched = cache.get(key, (None, -1))
    if exact is None and searched < theta:
        found = first_bracket_power(g, I, e, theta)
        if found <= theta:
            exact = found
        searched = max(searched, theta)
        cache[key] = (exact, searched)
    if exact is not None and exact <= theta:
        return exact
    return theta + 1


def ts_membership(g1, g2, I1, I2, theta: int, e: int, _cache=None) -> bool:
    """Whether ``(g1 + g2)^theta`` lies in ``I1^[q] R + I2^[q] R``, q = p^e.

    Expands by the binomial theorem: each summand needs a vanishing binomial
    coefficient or one factor inside its own bracket power. Component
    memberships are decided in their own rings.
    """
    _check_disjoint(g1, g2)
    if theta < 0:
        raise DomainError("theta must be >= 0")
    p = g1.prime
    cache = {} if _cache is None else _cache
    t1 = _component_threshold(g1, I1, e, theta, cache)  # g1^j in iff j >= t1
    t2 = _component_threshold(g2, I2, e, theta, cache)
    for j in range(theta + 1):
        if j >= t1 or theta - j >= t2:
            continue
        if lucas_binomial_mod_p(theta, j, p) == 0:
            continue
        return False
    return True


def nu_ts(g1, g2, I1, I2, e: int, cap: int = DEFAULT_RADICAL_CAP) -> int:
    """nu of ``g1 + g2`` relative to ``I1 R + I2 R`` via component memberships."""
    _check_disjoint(g1, g2)
    M1 = radical_exponent(g1, I1, cap)
    M2 = radical_exponent(g2, I2, cap)
    q = g1.prime**e
    cache = {}
    lo, hi = 0, (M1 + M2) * q
    while lo < hi:
        mid = (lo + hi) // 2
        if ts_membership(g1, g2, I1, I2, mid, e, cache):
            hi = mid
        else:
            lo = mid + 1
    return lo - 1
