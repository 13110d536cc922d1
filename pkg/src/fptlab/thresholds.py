"""Closed-form F-thresholds.

The core rule combines the thresholds ``a1``, ``a2`` of two polynomials in
disjoint variables: if their base-p digits never carry the threshold of the
sum is ``a1 + a2``; otherwise it is the truncation of both at the last
carry-free index ``L`` plus ``p**-L``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .basep import (
    INFINITY,
    CarryProfile,
    as_rational,
    carry_profile,
    check_prime,
    expand,
    format_rational,
)
from .errors import DomainError, TheoremInapplicable

__all__ = [
    "Classification",
    "FptValue",
    "INAPPLICABLE",
    "classify",
    "ts_fthreshold",
    "fpt_monomial",
    "fpt_diagonal_fold",
    "fpt_power",
    "fpt_disjoint_product",
    "jumping_candidates",
]


class Classification(enum.Enum):
    EQUALS_ONE = "EQUALS_ONE"
    P_POWER_DENOMINATOR = "P_POWER_DENOMINATOR"
    GENERIC = "GENERIC"


class _Inapplicable:
    """Marker for a fold whose hypothesis a1 + a2 <= 1 failed."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INAPPLICABLE"

    def __bool__(self):
        return False


INAPPLICABLE = _Inapplicable()


def _is_power_of(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def classify(value: Fraction, p: int) -> Classification:
    if value == 1:
        return Classification.EQUALS_ONE
    if _is_power_of(value.denominator, p):
        return Classification.P_POWER_DENOMINATOR
    return Classification.GENERIC


@dataclass(frozen=True)
class FptValue:
    value: Fraction
    classification: Classification
    prime: int
    profile: Optional[CarryProfile] = None

    def to_json(self) -> dict:
        out = {
            "value": format_rational(self.value),
            "classification": self.classification.value,
            "prime": self.prime,
        }
        if self.profile is not None:
            out.update(self.profile.to_json())
        return out


def ts_fthreshold(a1, a2, p: int) -> FptValue:
    """Threshold of ``g1 + g2`` from the component thresholds ``a1``, ``a2``.

    >>> ts_fthreshold("3/16", "1/8", 97).value
    Fraction(5, 16)
    """
    a1, a2 = as_rational(a1), as_rational(a2)
    check_prime(p)
    for a in (a1, a2):
        if not 0 < a <= 1:
            raise DomainError(f"component threshold {a} is not in (0, 1]")
    if a1 + a2 > 1:
        raise TheoremInapplicable(f"theorem inapplicable: a1+a2 > 1 ({a1} + {a2})")
    profile = carry_profile(a1, a2, p)
    if profile.L == INFINITY:
        value = a1 + a2
    else:
        L = int(profile.L)
        value = expand(a1, p).truncate(L) + expand(a2, p).truncate(L) + Fraction(1, p**L)
    return FptValue(value, classify(value, p), p, profile)


def fpt_monomial(exponents: Sequence[int]) -> Fraction:
    """Threshold of a monomial at the origin: one over its largest exponent."""
    exponents = list(exponents)
    if not exponents:
        raise DomainError("a monomial needs at least one exponent")
    if any(int(b) < 1 for b in exponents):
        raise DomainError("monomial exponents must be >= 1")
    return Fraction(1, max(int(b) for b in exponents))


def fpt_diagonal_fold(degrees: Sequence[int], p: int):
    """Threshold of ``x_1^d_1 + ... + x_k^d_k`` by folding left to right.

    Returns ``INAPPLICABLE`` when some partial sum violates a1 + a2 <= 1.
    """
    degrees = [int(d) for d in degrees]
    if not degrees:
        raise DomainError("a diagonal polynomial needs at least one degree")
    if any(d < 1 for d in degrees):
        raise DomainError("degrees must be >= 1")
    check_prime(p)
    acc = Fraction(1, degrees[0])
    result = FptValue(acc, classify(acc, p), p)
    for d in degrees[1:]:
        a = Fraction(1, d)
        if acc + a > 1:
            return INAPPLICABLE
        result = ts_fthreshold(acc, a, p)
        acc = result.value
    return result


def fpt_power(c, n: int) -> Fraction:
    """Threshold of ``g**n`` from the threshold of ``g``."""
    if n < 1:
        raise DomainError("power exponent must be >= 1")
    value = c.value if isinstance(c, FptValue) else as_rational(c)
    return value / n


def fpt_disjoint_product(c1, c2) -> Fraction:
    """Threshold of ``g1 * g2`` in disjoint variables: the smaller one."""
    c1, c2 = as_rational(c1), as_rational(c2)
    for c in (c1, c2):
        if not 0 < c <= 1:
            raise DomainError(f"threshold {c} is not in (0, 1]")
    return min(c1, c2)


def jumping_candidates(pairs1, pairs2, p: int) -> list:
    """Thresholds of ``g1 + g2`` relative to sums of component test ideals.

    ``pairs1`` and ``pairs2`` hold ``(lambda, a)`` where ``a`` is the
    threshold of ``g_i`` relative to ``tau(g_i^lambda)``. Every value returned
    is an F-jumping number of the sum; the list need not be complete.
    """
    found = set()
    for _, a1 in pairs1:
        for _, a2 in pairs2:
            a1r, a2r = as_rational(a1), as_rational(a2)
            if a1r + a2r <= 1:
                found.add(ts_fthreshold(a1r, a2r, p).value)
    return sorted(found)
