from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from fptlab.errors import DomainError
from fptlab.ideals import Ideal, frobenius_power, maximal_ideal
from fptlab.nu import fpt_bracket, nu, nu_ts, radical_exponent, ts_membership
from fptlab.polyfp import VarContext, parse, ts_sum

XY = VarContext(("x", "y"))
ZW = VarContext(("z", "w"))


def direct_nu(f, J, e):
    """Linear scan with explicit powers against an explicit Groebner basis of J^[q]."""
    big = frobenius_power(J, e)
    l = 0
    power = f ** 0
    while not big.contains(power):
        power = power * f
        l += 1
    return l - 1


def test_radical_exponent_examples():
    X = VarContext(("x",))
    assert radical_exponent(parse("x", 5, X), Ideal.parse("x^2", 5, X), 4) == 2
    assert radical_exponent(parse("x + y", 5, XY), maximal_ideal(5, XY), 1) == 1
    g1 = parse("z^7*w^2 + z^5*w^6", 97, ZW)
    assert radical_exponent(g1, maximal_ideal(97, ZW), 4) == 1
    with pytest.raises(DomainError):
        radical_exponent(parse("x", 5, X), Ideal.parse("x^9", 5, X), 4)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
@pytest.mark.parametrize("e", [1, 2, 3])
def test_nu_of_variable(p, e):
    X = VarContext(("x",))
    assert nu(parse("x", p, X), Ideal.parse("x", p, X), e).nu == p**e - 1


def test_nu_examples():
    cusp = parse("x^2 + y^3", 5, XY)
    rec = nu(cusp, maximal_ideal(5, XY), 1)
    # 4/5 = 0.3444... in base 5, so the first truncation is 3/5
    assert rec.nu == 3 and rec.truncation * 5 == 3
    assert rec.nu == direct_nu(cusp, maximal_ideal(5, XY), 1)
    g1 = parse("z^7*w^2 + z^5*w^6", 97, ZW)
    assert nu(g1, maximal_ideal(97, ZW), 1).nu == 18


def test_nu_matches_linear_scan():
    for p, text in [(2, "x^2 + y^3"), (3, "x^2 + y^3"), (5, "x^2 + y^3"), (3, "x*y + y^4"), (5, "x^3 + x*y^2")]:
        f = parse(text, p, XY)
        m = maximal_ideal(p, XY)
        for e in (1, 2):
            assert nu(f, m, e).nu == direct_nu(f, m, e)


def test_nu_rejects_bad_input():
    m = maximal_ideal(5, XY)
    with pytest.raises(DomainError):
        nu(parse("0", 5, XY), m, 1)
    with pytest.raises(DomainError):
        nu(parse("x", 5, XY), Ideal.unit(5, XY), 1)


def test_fpt_bracket_examples():
    cusp = parse("x^2 + y^3", 5, XY)
    m = maximal_ideal(5, XY)
    assert fpt_bracket(cusp, m, 1) == (Fraction(3, 5), Fraction(4, 5))
    lo, hi = fpt_bracket(cusp, m, 2)
    assert hi - lo == Fraction(1, 25) and lo < Fraction(4, 5) <= hi
    X = VarContext(("x",))
    for p in (2, 3):
        lo, hi = fpt_bracket(parse("x", p, X), Ideal.parse("x", p, X), 3)
        assert lo == Fraction(p**3 - 1, p**3) and hi == 1


PAIRS = [
    ("x^2", "y^3"),
    ("x^2 + x*y", "z^3"),
    ("x^3", "z^2 + w^2"),
    ("x*y", "z^4"),
    ("x^2 + y^2", "z^2*w"),
]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("texts", PAIRS)
def test_split_membership_matches_direct(p, texts):
    g1, g2 = parse(texts[0], p), parse(texts[1], p)
    f = ts_sum(g1, g2)
    ctx = f.ctx
    I1 = maximal_ideal(p, g1.ctx)
    I2 = Ideal.parse("; ".join(f"{v}^2" for v in g2.ctx.names), p, g2.ctx)
    joint = I1.extend(ctx) + I2.extend(ctx)
    cache = {}
    for e in (1, 2):
        big = frobenius_power(joint, e)
        for theta in range(0, 13):
            assert ts_membership(g1, g2, I1, I2, theta, e, cache) is big.contains(f**theta)
        cache.clear()


def test_split_membership_edges():
    p = 5
    g1, g2 = parse("x^2", p), parse("y^3", p)
    m1, m2 = maximal_ideal(p, g1.ctx), maximal_ideal(p, g2.ctx)
    n1 = nu(g1, m1, 1).nu
    n2 = nu(g2, m2, 1).nu
    assert not ts_membership(g1, g2, m1, m2, n1 + n2, 1)
    assert not ts_membership(g1, g2, m1, m2, 0, 1)
    assert ts_membership(g1, g2, m1, m2, (2 + 3) * p, 1)


@pytest.mark.parametrize("p", [2, 3, 5, 7])
def test_split_nu_matches_joint_nu(p):
    for t1, t2 in PAIRS:
        g1, g2 = parse(t1, p), parse(t2, p)
        f = ts_sum(g1, g2)
        m = maximal_ideal(p, f.ctx)
        for e in (1, 2):
            assert nu_ts(g1, g2, maximal_ideal(p, g1.ctx), maximal_ideal(p, g2.ctx), e) == nu(f, m, e).nu


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("text", ["x^2 + y^3", "x*y^2 + x^3", "x^4 + y^4", "x^2*y + y^5"])
def test_truncations_are_coherent(p, text):
    f = parse(text, p, XY)
    m = maximal_ideal(p, XY)
    values = [nu(f, m, e).nu for e in (1, 2, 3)]
    for a, b in zip(values, values[1:]):
        assert p * a <= b <= p * a + p - 1


@pytest.mark.parametrize("p", [2, 3, 5])
def test_nu_antitone_in_ideal(p):
    f = parse("x^3 + x*y^2 + y^5", p, XY)
    chain = [Ideal.parse(t, p, XY) for t in ("x^2; y^2", "x^2; x*y; y^2", "x; y^2", "x; y")]
    for e in (1, 2):
        values = [nu(f, J, e).nu for J in chain]
        assert values == sorted(values, reverse=True)


@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 9), st.integers(1, 3))
def test_monomial_nu_closed_form(p, b, e):
    X = VarContext(("x",))
    q = p**e
    assert nu(parse(f"x^{b}", p, X), Ideal.parse("x", p, X), e).nu == -(-q // b) - 1


@given(st.sampled_from([2, 3]), st.integers(0, 2), st.integers(0, 2), st.integers(1, 2))
def test_nu_antitone_randomized(p, i, j, e):
    f = parse("x^2 + y^3", p, XY)
    ideals = [Ideal.parse(t, p, XY) for t in ("x^3; y^3", "x^2; y^2", "x; y")]
    lo, hi = sorted((i, j))
    assert nu(f, ideals[lo], e).nu >= nu(f, ideals[hi], e).nu


def test_record_json():
    rec = nu(parse("x^2 + y^3", 5, XY), maximal_ideal(5, XY), 2)
    data = rec.to_json()
    assert data["nu"] == rec.nu and data["truncation"] == f"{rec.nu}/25"
