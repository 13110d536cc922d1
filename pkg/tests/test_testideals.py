from fractions import Fraction

import pytest

from _corpora import case_id, pair_corpus
from fptlab.basep import expand
from fptlab.errors import DomainError, NotStabilized
from fptlab.ideals import Ideal, root_of_power
from fptlab.polyfp import VarContext, parse, ts_sum
from fptlab.testideals import (
    CaseTag,
    default_emax,
    lemma53_split_check,
    test_ideal as definitional_tau,
    test_ideal_p_power as tau_p_power,
    ts_test_ideal as split_tau,
)

F = Fraction


def ideal(text, p, ctx):
    return Ideal.parse(text, p, ctx)


def is_pth_power(g):
    return all(a % g.prime == 0 for exps in g.terms for a in exps)


def split_formula_in_scope(case):
    """Cases the three-case formula handles; see the counterexample tests below."""
    p, g1, g2, a1, a2 = case
    return a1 + a2 < 1 and not is_pth_power(g1) and not is_pth_power(g2)


CORPUS = pair_corpus([2, 3, 5])
IN_SCOPE = [c for c in CORPUS if split_formula_in_scope(c)]


def test_p_power_examples():
    X = VarContext(("x",))
    assert tau_p_power(parse("x^4", 3, X), 1, 1).equals(ideal("x", 3, X))
    Y = VarContext(("y",))
    assert tau_p_power(parse("y^12", 3, Y), 1, 1).equals(ideal("y^4", 3, Y))
    f = parse("x^2 + x*y^3", 5)
    for e in (1, 2):
        assert tau_p_power(f, 5**e, e).equals(Ideal([f]))
    with pytest.raises(DomainError):
        tau_p_power(f, -1, 1)


def test_definitional_examples():
    f = parse("x^2 + y^3", 5)
    assert definitional_tau(f, 1, 3).ideal.equals(Ideal([f]))
    g1 = parse("z^7*w^2 + z^5*w^6", 97)
    assert definitional_tau(g1, F(3, 16), 4).ideal.equals(ideal("w; z", 97, g1.ctx))
    g2 = parse("v^2*u^3*t^8", 97)
    assert definitional_tau(g2, F(1, 8), 4).ideal.equals(ideal("t", 97, g2.ctx))


def test_definitional_errors(monkeypatch):
    f = parse("x^2 + y^3", 5)
    with pytest.raises(DomainError):
        definitional_tau(f, 0, 3)
    with pytest.raises(DomainError):
        definitional_tau(f, F(1, 2), 1)
    monkeypatch.setenv("FPTLAB_EMAX", "1")
    with pytest.raises(DomainError):
        default_emax()
    monkeypatch.setenv("FPTLAB_EMAX", "9")
    assert default_emax() == 9


def test_no_stabilization_is_reported():
    # at p=2 the chain for x^2 + y^3 at 2/3 still grows between e=1 and e=2
    f = parse("x^2 + y^3", 2)
    with pytest.raises(NotStabilized, match="e_max=2"):
        definitional_tau(f, F(2, 3), 2)
    assert definitional_tau(f, F(2, 3), 6).stabilized_at_e >= 2


def test_split_examples():
    g1 = parse("z^7*w^2 + z^5*w^6", 97)
    g2 = parse("v^2*u^3*t^8", 97)
    r = split_tau(g1, g2, F(3, 16), F(1, 8), 4)
    assert r.case_tag is CaseTag.NOT_P_ADIC and r.exponent == F(5, 16)
    assert r.ideal.equals(Ideal.parse("t; w; z", 97, r.ideal.ctx))

    r = split_tau(parse("x^4", 3), parse("y^12", 3), F(1, 4), F(1, 12), 4)
    assert r.case_tag is CaseTag.P_ADIC and r.d == 1 and r.exponent == F(1, 3)
    assert r.ideal.equals(Ideal.parse("x; y^4", 3, r.ideal.ctx))

    for p in (3, 5, 7):
        g1, g2 = parse("x^2", p), parse("y^2", p)
        r = split_tau(g1, g2, F(1, 2), F(1, 2))
        assert r.case_tag is CaseTag.UNIT
        assert r.ideal.equals(Ideal([ts_sum(g1, g2)]))


def test_split_rejects_bad_input():
    with pytest.raises(DomainError):
        split_tau(parse("x^2", 5), parse("x*y", 5), F(1, 2), F(1, 2))
    with pytest.raises(DomainError):
        split_tau(parse("x^2", 5), parse("y^3", 5), F(2, 3), F(2, 3))


def test_result_json():
    r = split_tau(parse("x^4", 3), parse("y^12", 3), F(1, 4), F(1, 12), 4)
    data = r.to_json()
    assert data["case"] == "P_ADIC" and data["fpt"] == "1/3" and data["d"] == 1 and data["L"] == "inf"
    assert sorted(data["generators"]) == ["x", "y^4"]


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("text", ["x^2 + y^3", "x^3 + x*y^2", "x^2*y + y^4"])
@pytest.mark.parametrize("c", [F(1, 3), F(1, 2), F(5, 6), F(3, 4)])
def test_chain_is_ascending(p, text, c):
    f = parse(text, p)
    chain = [root_of_power(f, -(-c.numerator * p**e // c.denominator), e) for e in range(1, 5)]
    for a, b in zip(chain, chain[1:]):
        assert b.contains_ideal(a)


@pytest.mark.parametrize("p", [2, 3, 5])
@pytest.mark.parametrize("text", ["x^2 + y^3", "x^3 + y^4", "x*y + z^3"])
def test_p_power_exponent_consistency(p, text):
    f = parse(text, p)
    for e in (1, 2):
        for r in range(1, p**e + 1, max(1, p**e // 4)):
            assert definitional_tau(f, F(r, p**e), 5).ideal.equals(tau_p_power(f, r, e))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_tau_decreases_with_exponent(p):
    f = parse("x^2 + y^3", p)
    grid = [F(1, 6), F(1, 3), F(1, 2), F(2, 3), F(5, 6), F(1)]
    taus = [definitional_tau(f, c, 5).ideal for c in grid]
    for small, big in zip(taus, taus[1:]):
        assert small.contains_ideal(big)


def test_split_root_examples():
    assert lemma53_split_check(parse("x^4", 3), parse("y^12", 3), F(1, 4), F(1, 12), 1)
    assert lemma53_split_check(parse("x^2", 7), parse("y^3", 7), F(1, 2), F(1, 3), 1)
    with pytest.raises(DomainError):
        # at p=5 the second digits of 1/2 and 1/3 carry
        lemma53_split_check(parse("x^2", 5), parse("y^3", 5), F(1, 2), F(1, 3), 2)


@pytest.mark.parametrize("case", IN_SCOPE, ids=case_id)
def test_split_formula_matches_definition(case):
    p, g1, g2, a1, a2 = case
    r = split_tau(g1, g2, a1, a2, 4)
    direct = definitional_tau(ts_sum(g1, g2), r.exponent, 4)
    assert r.ideal.equals(direct.ideal)


@pytest.mark.parametrize("case", IN_SCOPE, ids=case_id)
def test_split_roots_agree(case):
    p, g1, g2, a1, a2 = case
    s1, s2 = expand(a1, p), expand(a2, p)
    for e in (1, 2, 3):
        if s1.digits(e) and all(s1.digit(k) + s2.digit(k) <= p - 1 for k in range(1, e + 1)) \
                and s1.digit(e) + s2.digit(e) <= p - 2:
            assert lemma53_split_check(g1, g2, a1, a2, e)


def test_in_scope_corpus_spans_all_branches():
    tags = {split_tau(*c[1:3], *c[3:5], 4).case_tag for c in IN_SCOPE}
    assert tags >= {CaseTag.P_ADIC, CaseTag.NOT_P_ADIC}
    assert len(IN_SCOPE) >= 30


# The three-case formula is not valid for every admissible pair. When a
# component is a p-th power h^p, the roots of g1 and g2 land on the same
# basis element and the joint root sees h1 + h2 rather than h1 and h2.


@pytest.mark.parametrize("p", [2, 3, 5])
def test_formula_fails_for_sum_of_pth_powers(p):
    g1, g2 = parse(f"x^{p}", p), parse(f"z^{p}", p)
    a = F(1, p)
    if 2 * a > 1:
        return
    r = split_tau(g1, g2, a, a, 4)
    direct = definitional_tau(ts_sum(g1, g2), r.exponent, 4).ideal
    assert direct.equals(Ideal.parse("x + z", p, direct.ctx))
    assert r.ideal.equals(Ideal.parse("x; z", p, r.ideal.ctx))
    assert not lemma53_split_check(g1, g2, a, a, 1)


def test_formula_fails_at_boundary_with_carry():
    # a1 + a2 = 1 with a carry at p=2: the joint root merges x^2 + z^2
    p = 2
    g1, g2 = parse("x^2 + y^3", p), parse("z^2 + w^3", p)
    r = split_tau(g1, g2, F(1, 2), F(1, 2), 4)
    direct = definitional_tau(ts_sum(g1, g2), r.exponent, 4).ideal
    assert not r.ideal.equals(direct)
    assert direct.equals(Ideal.parse("x + z; y; w", p, direct.ctx))
