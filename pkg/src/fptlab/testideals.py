"""Test ideals of principal ideals, by definition and by the splitting formula."""

from __future__ import annotations

import enum
import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .basep import (
    INFINITY,
    as_rational,
    ceil_rational,
    expand,
    format_index,
    format_rational,
)
from .errors import DomainError, NotStabilized
from .ideals import Ideal, root_of_power
from .polyfp import Polynomial, merge_contexts, support_names
from .thresholds import Classification, ts_fthreshold

__all__ = [
    "CaseTag",
    "TestIdealResult",
    "default_emax",
    "test_ideal_p_power",
    "test_ideal",
    "ts_test_ideal",
    "lemma53_split_check",
]


def default_emax() -> int:
    """Stabilization window; ``FPTLAB_EMAX`` overrides the default of 6."""
    raw = os.environ.get("FPTLAB_EMAX")
    if raw is None:
        return 6
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"FPTLAB_EMAX must be an integer, got {raw!r}") from None
    if value < 2:
        raise DomainError("FPTLAB_EMAX must be >= 2")
    return value


class CaseTag(enum.Enum):
    UNIT = "UNIT"
    NOT_P_ADIC = "NOT_P_ADIC"
    P_ADIC = "P_ADIC"


@dataclass(frozen=True)
class TestIdealResult:
    __test__ = False  # not a pytest class

    ideal: Ideal
    exponent: Fraction
    stabilized_at_e: int
    case_tag: Optional[CaseTag] = None
    L: Optional[float] = None
    d: Optional[float] = None

    def to_json(self) -> dict:
        out = {
            "generators": [g.format() for g in self.ideal.sorted_generators()],
            "vars": list(self.ideal.ctx.names),
            "fpt" if self.case_tag else "exponent": format_rational(self.exponent),
            "stabilized_at_e": self.stabilized_at_e,
        }
        if self.case_tag is not None:
            out["case"] = self.case_tag.value
            out["L"] = format_index(self.L)
            out["d"] = format_index(self.d)
        return out


def test_ideal_p_power(f: Polynomial, r: int, e: int) -> Ideal:
    """``tau(f^(r/p^e))``, which equals the Frobenius root ``(f^r)^[1/p^e]``."""
    if r < 0 or e < 0:
        raise DomainError("r and e must be natural numbers")
    return root_of_power(f, r, e).minimalized()


test_ideal_p_power.__test__ = False


def _chain_step(f: Polynomial, c: Fraction, e: int) -> Ideal:
    q = f.prime**e
    return root_of_power(f, ceil_rational(c * q), e)


def test_ideal(f: Polynomial, c, e_max: Optional[int] = None) -> TestIdealResult:
    """``tau(f^c)`` as the stabilized union of ``(f^ceil(c p^e))^[1/p^e]``.

    The chain is ascending; two equal consecutive members end the search.
    """
    c = as_rational(c)
    if c <= 0:
        raise DomainError("exponent must be positive")
    if f.is_zero():
        raise DomainError("test ideal of the zero polynomial")
    e_max = default_emax() if e_max is None else e_max
    if e_max < 2:
        raise DomainError("e_max must be >= 2")
    previous = _chain_step(f, c, 1)
    for e in range(1, e_max):
        current = _chain_step(f, c, e + 1)
        if not current.contains_ideal(previous):
            raise AssertionError(f"test-ideal chain not ascending at e={e}")
        if previous.contains_ideal(current):
            return TestIdealResult(previous.minimalized(), c, e)
        previous = current
    raise NotStabilized(f"no stabilization within e_max={e_max}")


test_ideal.__test__ = False


def _ts_context(g1: Polynomial, g2: Polynomial):
    if g1.prime != g2.prime:
        raise DomainError("g1 and g2 must share the prime")
    if set(support_names(g1)) & set(support_names(g2)):
        raise DomainError("g1 and g2 must use disjoint variables")
    return merge_contexts(g1.ctx, g2.ctx)


def _p_power_ceiling(a: Fraction, p: int, d: int) -> int:
    value = ceil_rational(a * p**d)
    via_truncation = p**d * expand(a, p).truncate(d) + 1
    if value != via_truncation:
        raise AssertionError(f"ceil(p^d a) = {value} but p^d<a>_d + 1 = {via_truncation}")
    return value


def ts_test_ideal(g1: Polynomial, g2: Polynomial, a1, a2, e_max=None) -> TestIdealResult:
    """Test ideal of ``g1 + g2`` at its F-pure threshold.

    ``a1`` and ``a2`` must be the F-pure thresholds of ``g1`` and ``g2``.
    """
    a1, a2 = as_rational(a1), as_rational(a2)
    ctx = _ts_context(g1, g2)
    p = g1.prime
    fv = ts_fthreshold(a1, a2, p)
    c, L, d = fv.value, fv.profile.L, fv.profile.d
    f = g1.extend(ctx) + g2.extend(ctx)

    if fv.classification is Classification.EQUALS_ONE:
        return TestIdealResult(Ideal([f]), c, 0, CaseTag.UNIT, L, d)

    if fv.classification is Classification.GENERIC:
        t1 = test_ideal(g1, a1, e_max)
        t2 = test_ideal(g2, a2, e_max)
        _check_digit_index_agreement(g1, g2, a1, a2, t1, t2, e_max)
        ideal = (t1.ideal.extend(ctx) + t2.ideal.extend(ctx)).minimalized()
        stab = max(t1.stabilized_at_e, t2.stabilized_at_e)
        return TestIdealResult(ideal, c, stab, CaseTag.NOT_P_ADIC, L, d)

    if d == INFINITY:
        raise AssertionError("p-adic threshold with infinite d")
    d = int(d)
    r1 = _p_power_ceiling(a1, p, d)
    r2 = _p_power_ceiling(a2, p, d)
    part1 = test_ideal_p_power(g1, r1, d).extend(ctx)
    part2 = test_ideal_p_power(g2, r2, d).extend(ctx)
    return TestIdealResult((part1 + part2).minimalized(), c, d, CaseTag.P_ADIC, L, d)


ts_test_ideal.__test__ = False


def _check_digit_index_agreement(g1, g2, a1, a2, t1, t2, e_max):
    """Single-index roots at a digit-sum <= p-2 index past stabilization agree."""
    p = g1.prime
    e_max = default_emax() if e_max is None else e_max
    s1, s2 = expand(a1, p), expand(a2, p)
    start = max(t1.stabilized_at_e, t2.stabilized_at_e)
    for e in range(start, e_max + 1):
        if s1.digit(e) + s2.digit(e) <= p - 2:
            for g, a, t in ((g1, a1, t1), (g2, a2, t2)):
                single = root_of_power(g, ceil_rational(a * p**e), e)
                if not single.equals(t.ideal):
                    raise AssertionError(f"component root at e={e} differs from its test ideal")
            return


def lemma53_split_check(g1: Polynomial, g2: Polynomial, a1, a2, e: int) -> bool:
    """Compare the joint Frobenius root with the sum of component roots.

    Left side: ``(f^(p^e(<a1>_e + <a2>_e) + 1))^[1/p^e]`` in the joint ring.
    Right side: ``(g1^ceil(p^e a1))^[1/p^e] + (g2^ceil(p^e a2))^[1/p^e]``.
    Requires the digit sum at ``e`` to be <= p - 2 and ``e <= L``.
    """
    a1, a2 = as_rational(a1), as_rational(a2)
    ctx = _ts_context(g1, g2)
    p = g1.prime
    if e < 1:
        raise DomainError("e must be >= 1")
    fv = ts_fthreshold(a1, a2, p)
    s1, s2 = expand(a1, p), expand(a2, p)
    if e > fv.profile.L or s1.digit(e) + s2.digit(e) > p - 2:
        raise DomainError(f"digit-sum precondition fails at e={e}")
    q = p**e
    theta = q * (s1.truncate(e) + s2.truncate(e))
    f = g1.extend(ctx) + g2.extend(ctx)
    left = root_of_power(f, int(theta) + 1, e)
    right = (
        root_of_power(g1, ceil_rational(a1 * q), e).extend(ctx)
        + root_of_power(g2, ceil_rational(a2 * q), e).extend(ctx)
    )
    return left.equals(right)
