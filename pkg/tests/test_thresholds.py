from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fptlab.basep import INFINITY, expand
from fptlab.errors import DomainError, TheoremInapplicable
from fptlab.ideals import maximal_ideal
from fptlab.nu import nu
from fptlab.polyfp import parse
from fptlab.thresholds import (
    INAPPLICABLE,
    Classification,
    classify,
    fpt_diagonal_fold,
    fpt_disjoint_product,
    fpt_monomial,
    fpt_power,
    jumping_candidates,
    ts_fthreshold,
)

F = Fraction
unit = st.builds(lambda n, d: F(min(n, d), d), st.integers(1, 60), st.integers(1, 60))
primes = st.sampled_from([2, 3, 5, 7, 11, 13, 97])


def nu_oracle_threshold_check(text, p, c, emax=3):
    f = parse(text, p)
    m = maximal_ideal(p, f.ctx)
    s = expand(c, p)
    for e in range(1, emax + 1):
        assert nu(f, m, e).nu == s.truncate(e) * p**e


def test_examples():
    r = ts_fthreshold(F(3, 16), F(1, 8), 97)
    assert r.value == F(5, 16) and r.classification is Classification.GENERIC
    assert r.profile.L == INFINITY
    for p in (3, 5, 7, 11):
        r = ts_fthreshold(F(1, 2), F(1, 2), p)
        assert r.value == 1 and r.classification is Classification.EQUALS_ONE
    assert ts_fthreshold(F(1, 2), F(1, 3), 5).value == F(4, 5)
    r = ts_fthreshold(F(1, 4), F(1, 12), 3)
    assert r.value == F(1, 3) and r.classification is Classification.P_POWER_DENOMINATOR


def test_cusp_against_nu():
    nu_oracle_threshold_check("x^2 + y^3", 5, ts_fthreshold(F(1, 2), F(1, 3), 5).value)
    nu_oracle_threshold_check("x^2 + y^3", 7, ts_fthreshold(F(1, 2), F(1, 3), 7).value, 2)


def test_inapplicable_is_an_error():
    with pytest.raises(TheoremInapplicable, match="theorem inapplicable: a1\\+a2 > 1"):
        ts_fthreshold(F(2, 3), F(2, 3), 5)
    with pytest.raises(DomainError):
        ts_fthreshold(F(0), F(1, 2), 5)
    with pytest.raises(DomainError):
        ts_fthreshold(F(1, 2), F(1, 3), 9)


def test_monomial_examples():
    assert fpt_monomial([2, 3, 8]) == F(1, 8)
    assert fpt_monomial([3, 5]) == F(1, 5)
    assert fpt_monomial([1]) == 1
    with pytest.raises(DomainError):
        fpt_monomial([])


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("exps", [(2,), (3,), (2, 3), (1, 4), (5, 2)])
def test_monomial_against_nu(p, exps):
    text = "*".join(f"x{i}^{b}" for i, b in enumerate(exps))
    nu_oracle_threshold_check(text, p, fpt_monomial(exps))


def test_diagonal_examples():
    assert fpt_diagonal_fold([4, 4], 97).value == F(1, 2)
    assert fpt_diagonal_fold([2, 3], 7).value == F(5, 6)
    assert fpt_diagonal_fold([2, 2, 2], 3) is INAPPLICABLE
    assert fpt_diagonal_fold([2, 2, 2], 5) is INAPPLICABLE
    # at p=2 every fold of 1/2 with 1/2 carries, so the partial sums stay at 1/2
    assert fpt_diagonal_fold([2, 2], 2).value == F(1, 2)
    assert fpt_diagonal_fold([2, 2, 2], 2).value == F(1, 2)
    assert not INAPPLICABLE


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("degs", [(2, 3), (2, 2), (3, 3), (2, 5), (3, 4), (2, 3, 7)])
def test_diagonal_against_nu(p, degs):
    folded = fpt_diagonal_fold(degs, p)
    if folded is INAPPLICABLE:
        return
    text = " + ".join(f"x{i}^{d}" for i, d in enumerate(degs))
    nu_oracle_threshold_check(text, p, folded.value, 2 if len(degs) == 3 else 3)


def test_power_and_product():
    assert fpt_power(F(1, 7) + F(1, 11), 4) == F(9, 154)
    assert fpt_power(F(2, 3), 1) == F(2, 3)
    assert fpt_disjoint_product(F(2, 3), F(5, 6)) == F(2, 3)
    assert fpt_disjoint_product(F(1, 6) + F(1, 2), F(5, 6)) == F(2, 3)
    assert fpt_disjoint_product(F(1, 3), F(1, 3)) == F(1, 3)


@pytest.mark.parametrize("p", [7, 13])
def test_power_against_nu(p):
    c = fpt_power(ts_fthreshold(F(1, 2), F(1, 3), p), 2)
    assert c == F(5, 12)
    nu_oracle_threshold_check("x^4 + 2*x^2*y^3 + y^6", p, c, 2)


def test_jumping_candidates():
    assert jumping_candidates([(F(0), F(1, 2))], [(F(0), F(1, 3))], 7) == [F(5, 6)]
    found = jumping_candidates([(F(3, 16), F(3, 16)), (F(1, 2), F(1, 2))], [(F(1, 8), F(1, 8))], 97)
    assert F(5, 16) in found
    assert all(0 < v <= 1 for v in found)


@given(unit, unit, primes)
def test_symmetry(a1, a2, p):
    if a1 + a2 > 1:
        return
    assert ts_fthreshold(a1, a2, p).value == ts_fthreshold(a2, a1, p).value


@given(unit, unit, primes)
def test_value_range_and_bounds(a1, a2, p):
    if a1 + a2 > 1:
        return
    r = ts_fthreshold(a1, a2, p)
    assert 0 < r.value <= a1 + a2
    assert r.value >= max(a1, a2)
    assert r.classification is classify(r.value, p)
    if r.profile.L != INFINITY:
        assert r.classification is not Classification.GENERIC
