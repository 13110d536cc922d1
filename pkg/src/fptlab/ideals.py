"""Ideals of F_p[x_1..x_n]: Groebner bases, membership, Frobenius powers and roots.

Frobenius roots follow the monomial-basis decomposition: writing each term
``c*x^a`` as ``c*(x^q)^(a // q) * x^(a % q)`` groups a polynomial by residue
monomial, and the root ideal is generated by the grouped quotients.
"""

from __future__ import annotations

import heapq
import json
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError, InputError
from .polyfp import Polynomial, VarContext, grevlex_key

__all__ = [
    "Ideal",
    "groebner_basis",
    "normal_form",
    "root_parts",
    "frobenius_power",
    "frobenius_root",
    "root_of_power",
    "bracket_membership",
    "power_in_bracket",
    "ideal_sum",
    "ideal_equal",
    "maximal_ideal",
]


# -- raw dict helpers --------------------------------------------------------
# Internally polynomials are plain dicts {exps: coeff}; the public surface
# wraps them in Polynomial.


def _lead(f: dict):
    return max(f, key=grevlex_key)


def _divides(a: tuple, b: tuple) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _make_monic(f: dict, p: int) -> dict:
    c = f[_lead(f)]
    if c == 1:
        return f
    inv = pow(c, -1, p)
    return {e: v * inv % p for e, v in f.items()}


def _reduce(f: dict, basis: Sequence[tuple], p: int) -> dict:
    """Fully reduce ``f`` by ``basis`` = [(lead_exps, monic dict)]."""
    f = dict(f)
    heap = [(_neg_key(e), e) for e in f]
    heapq.heapify(heap)
    remainder = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        for lm, g in basis:
            if _divides(lm, m):
                shift = tuple(x - y for x, y in zip(m, lm))
                for eg, cg in g.items():
                    key = tuple(x + y for x, y in zip(eg, shift))
                    if key == m:
                        continue
                    old = f.get(key)
                    v = ((old or 0) - c * cg) % p
                    if v:
                        f[key] = v
                        if old is None:
                            heapq.heappush(heap, (_neg_key(key), key))
                    elif old is not None:
                        del f[key]
                break
        else:
            remainder[m] = c
    return remainder


def _neg_key(e: tuple):
    deg, rest = grevlex_key(e)
    return (-deg, tuple(-x for x in rest))


def _spoly(f: dict, lf: tuple, g: dict, lg: tuple, p: int) -> dict:
    lcm = tuple(max(a, b) for a, b in zip(lf, lg))
    sf = tuple(a - b for a, b in zip(lcm, lf))
    sg = tuple(a - b for a, b in zip(lcm, lg))
    out = {}
    for e, c in f.items():
        out[tuple(x + y for x, y in zip(e, sf))] = c
    for e, c in g.items():
        key = tuple(x + y for x, y in zip(e, sg))
        v = (out.get(key, 0) - c) % p
        if v:
            out[key] = v
        else:
            out.pop(key, None)
    return out


def _buchberger(polys: Iterable[dict], p: int) -> list:
    """Reduced Groebner basis (grevlex) of the ideal spanned by ``polys``."""
    basis = []  # list of (lead, monic dict)
    pairs = []
    for f in polys:
        if not f:
            continue
        f = _reduce(f, basis, p) if basis else f
        if not f:
            continue
        f = _make_monic(f, p)
        lf = _lead(f)
        if not any(lf):
            return [{lf: 1}]
        basis.append((lf, f))
    if not basis:
        return []
    processed = set()
    for i, j in combinations(range(len(basis)), 2):
        pairs.append((i, j))

    def pair_key(pair):
        i, j = pair
        lcm = tuple(max(a, b) for a, b in zip(basis[i][0], basis[j][0]))
        return (sum(lcm), grevlex_key(lcm), i, j)

    while pairs:
        pairs.sort(key=pair_key, reverse=True)
        i, j = pairs.pop()
        processed.add((i, j))
        li, lj = basis[i][0], basis[j][0]
        # product criterion
        if all(not (a and b) for a, b in zip(li, lj)):
            continue
        lcm = tuple(max(a, b) for a, b in zip(li, lj))
        # chain criterion
        skip = False
        for k, (lk, _) in enumerate(basis):
            if k in (i, j) or not _divides(lk, lcm):
                continue
            if (min(i, k), max(i, k)) in processed and (min(j, k), max(j, k)) in processed:
                skip = True
                break
        if skip:
            continue
        s = _reduce(_spoly(basis[i][1], li, basis[j][1], lj, p), basis, p)
        if not s:
            continue
        s = _make_monic(s, p)
        ls = _lead(s)
        if not any(ls):
            return [{ls: 1}]
        basis.append((ls, s))
        k = len(basis) - 1
        pairs.extend((m, k) for m in range(k))

    # minimal, then reduced
    leads = [lt for lt, _ in basis]
    keep = []
    for idx, lt in enumerate(leads):
        dominated = False
        for jdx, other in enumerate(leads):
            if jdx == idx:
                continue
            if _divides(other, lt) and (other != lt or jdx < idx):
                dominated = True
                break
        if not dominated:
            keep.append(basis[idx])
    reduced = []
    for idx, (lt, g) in enumerate(keep):
        others = [b for jdx, b in enumerate(keep) if jdx != idx]
        tail = {e: c for e, c in g.items() if e != lt}
        tail = _reduce(tail, others, p)
        tail[lt] = 1
        reduced.append(tail)
    reduced.sort(key=lambda g: grevlex_key(_lead(g)), reverse=True)
    return reduced


def _linear_basis(polys: Iterable[dict], p: int) -> list:
    """Row-echelon basis of the F_p-span of ``polys`` (pivots on lead terms)."""
    pivots = {}
    for f in polys:
        f = dict(f)
        while f:
            lt = _lead(f)
            piv = pivots.get(lt)
            if piv is None:
                pivots[lt] = _make_monic(f, p)
                break
            c = f[lt]
            for e, v in piv.items():
                w = (f.get(e, 0) - c * v) % p
                if w:
                    f[e] = w
                else:
                    f.pop(e, None)
    return list(pivots.values())


def root_parts(f: Polynomial, q: int) -> list:
    """Quotient polynomials of ``f`` over the basis of residue monomials mod q.

    Coefficients are their own p-th roots in F_p.
    """
    groups = {}
    for exps, c in f.terms.items():
        quot, res = [], []
        for a in exps:
            qa, ra = divmod(a, q)
            quot.append(qa)
            res.append(ra)
        groups.setdefault(tuple(res), {})[tuple(quot)] = c
    return [Polynomial(f.prime, f.ctx, g, _trusted=True) for _, g in sorted(groups.items())]


class Ideal:
    """Finitely generated ideal with a lazily cached reduced Groebner basis.

    The cache is assigned once, as a complete tuple, so concurrent readers
    never observe a partial basis.
    """

    __slots__ = ("prime", "ctx", "generators", "_groebner", "_monomial")

    def __init__(self, generators: Iterable[Polynomial], prime=None, ctx=None):
        gens = [g for g in generators]
        if gens:
            prime = gens[0].prime if prime is None else prime
            ctx = gens[0].ctx if ctx is None else ctx
        if prime is None or ctx is None:
            raise DomainError("an ideal without generators needs a prime and a context")
        for g in gens:
            if g.prime != prime or g.ctx != ctx:
                raise DomainError("ideal generators must share prime and context")
        self.prime = prime
        self.ctx = ctx
        self.generators = tuple(g for g in gens if not g.is_zero())
        self._groebner = None
        self._monomial = all(g.is_monomial() for g in self.generators)

    # -- construction helpers ----------------------------------------------

    @classmethod
    def zero(cls, prime, ctx):
        return cls([], prime, ctx)

    @classmethod
    def unit(cls, prime, ctx):
        return cls([Polynomial.constant(prime, ctx, 1)])

    @classmethod
    def parse(cls, text: str, p: int, ctx: VarContext):
        from .polyfp import parse

        parts = [s for s in text.replace(",", ";").split(";") if s.strip()]
        if not parts:
            raise InputError("an ideal needs at least one generator")
        return cls([parse(s, p, ctx) for s in parts], p, ctx)

    # -- queries ------------------------------------------------------------

    @property
    def monomial_flag(self) -> bool:
        return self._monomial

    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self) -> tuple:
        if self._groebner is None:
            gb = _buchberger((g.terms for g in self.generators), self.prime)
            self._groebner = tuple(Polynomial(self.prime, self.ctx, g, _trusted=True) for g in gb)
        return self._groebner

    def is_unit(self) -> bool:
        if any(g.is_constant() for g in self.generators):
            return True
        if self._monomial:
            return False
        gb = self.groebner()
        return len(gb) == 1 and gb[0].is_constant()

    def is_proper(self) -> bool:
        return not self.is_unit()

    def _check(self, other):
        if other.prime != self.prime:
            raise DomainError(f"prime mismatch: {self.prime} vs {other.prime}")
        if other.ctx != self.ctx:
            raise DomainError(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")

    def normal_form(self, f: Polynomial) -> Polynomial:
        self._check(f)
        basis = [(g.leading_term()[0], g.terms) for g in self.groebner()]
        return Polynomial(self.prime, self.ctx, _reduce(f.terms, basis, self.prime), _trusted=True)

    def contains(self, f: Polynomial) -> bool:
        self._check(f)
        if f.is_zero():
            return True
        if self.is_zero():
            return False
        if self._monomial:
            mons = [g.leading_term()[0] for g in self.generators]
            return all(any(_divides(m, e) for m in mons) for e in f.terms)
        return self.normal_form(f).is_zero()

    __contains__ = contains

    def contains_ideal(self, other: Ideal) -> bool:
        self._check(other)
        return all(self.contains(g) for g in other.generators)

    def __le__(self, other: Ideal) -> bool:
        return other.contains_ideal(self)

    def equals(self, other: Ideal) -> bool:
        self._check(other)
        if self._monomial and other._monomial:
            return self.contains_ideal(other) and other.contains_ideal(self)
        return self.canonical_basis() == other.canonical_basis()

    def canonical_basis(self) -> tuple:
        """Reduced Groebner basis, which is unique for a fixed term order."""
        if self._monomial:
            return tuple(self.minimalized().generators)
        return self.groebner()

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.prime == other.prime and self.ctx == other.ctx and self.equals(other)

    def __hash__(self):
        return hash((self.prime, self.ctx, self.canonical_basis()))

    def __add__(self, other: Ideal) -> Ideal:
        self._check(other)
        return Ideal(self.generators + other.generators, self.prime, self.ctx)

    def extend(self, ctx: VarContext) -> Ideal:
        return Ideal([g.extend(ctx) for g in self.generators], self.prime, ctx)

    def times(self, h: Polynomial) -> Ideal:
        return Ideal([g * h for g in self.generators], self.prime, self.ctx)

    # -- Frobenius ----------------------------------------------------------

    def frobenius_power(self, e: int) -> Ideal:
        return frobenius_power(self, e)

    def frobenius_root(self, e: int) -> Ideal:
        return frobenius_root(self, e)

    # -- generator hygiene --------------------------------------------------

    def minimalized(self) -> Ideal:
        """Drop generators lying in the ideal of the remaining ones."""
        p, ctx = self.prime, self.ctx
        if not self.generators:
            return self
        if any(g.is_constant() for g in self.generators):
            return Ideal.unit(p, ctx)
        if self._monomial:
            mons = sorted({g.leading_term()[0] for g in self.generators}, key=grevlex_key)
            keep = []
            for m in mons:
                if not any(_divides(k, m) for k in keep):
                    keep.append(m)
            keep.sort(key=grevlex_key, reverse=True)
            return Ideal([Polynomial(p, ctx, {m: 1}, _trusted=True) for m in keep], p, ctx)
        if self.is_unit():
            return Ideal.unit(p, ctx)
        gens = [Polynomial(p, ctx, g, _trusted=True)
                for g in _linear_basis((g.terms for g in self.generators), p)]
        gens.sort(key=lambda g: (g.degree(), len(g.terms), g.format()))
        kept = []
        for g in gens:
            if not kept or not Ideal(kept, p, ctx).contains(g):
                kept.append(g)
        changed = True
        while changed and len(kept) > 1:
            changed = False
            for i in range(len(kept) - 1, -1, -1):
                rest = kept[:i] + kept[i + 1:]
                if Ideal(rest, p, ctx).contains(kept[i]):
                    del kept[i]
                    changed = True
                    break
        kept.sort(key=lambda g: (grevlex_key(g.leading_term()[0]), g.format()), reverse=True)
        return Ideal(kept, p, ctx)

    # -- display ------------------------------------------------------------

    def sorted_generators(self) -> list:
        gens = [g.monic() for g in self.generators]
        return sorted(gens, key=lambda g: (grevlex_key(g.leading_term()[0]), g.format()), reverse=True)

    def format(self) -> str:
        if not self.generators:
            return "(0)"
        return "(" + ", ".join(g.format() for g in self.sorted_generators()) + ")"

    __str__ = format

    def __repr__(self):
        return f"Ideal{self.format()} over F_{self.prime}[{', '.join(self.ctx.names)}]"

    def to_json(self) -> dict:
        return {"generators": [g.to_json() for g in self.sorted_generators()]}

    @classmethod
    def from_json(cls, data) -> Ideal:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            gens = [Polynomial.from_json(g) for g in data["generators"]]
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed ideal JSON: {exc}") from exc
        if not gens:
            raise InputError("ideal JSON needs at least one generator")
        return cls(gens)


def maximal_ideal(prime: int, ctx: VarContext) -> Ideal:
    """The homogeneous maximal ideal generated by all variables."""
    return Ideal([Polynomial.variable(prime, ctx, name) for name in ctx.names], prime, ctx)


def groebner_basis(I: Ideal) -> tuple:
    return I.groebner()


def normal_form(I: Ideal, f: Polynomial) -> Polynomial:
    return I.normal_form(f)


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    return I + J


def ideal_equal(I: Ideal, J: Ideal) -> bool:
    return I.equals(J)


def frobenius_power(I: Ideal, e: int) -> Ideal:
    """Ideal generated by the p^e-th powers of the generators."""
    if e < 0:
        raise DomainError("Frobenius exponent must be >= 0")
    if e == 0:
        return I
    return Ideal([g.frobenius(e) for g in I.generators], I.prime, I.ctx)


def _root_raw(gens: Iterable[Polynomial], q: int, p: int) -> list:
    parts = []
    for g in gens:
        parts.extend(part.terms for part in root_parts(g, q))
    return _linear_basis(parts, p)


def frobenius_root(I: Ideal, e: int) -> Ideal:
    """Smallest ideal J with I contained in J^[p^e], minimally generated."""
    if e < 0:
        raise DomainError("Frobenius exponent must be >= 0")
    if e == 0 or I.is_zero():
        return I
    p = I.prime
    raw = _root_raw(I.generators, p**e, p)
    return Ideal([Polynomial(p, I.ctx, g, _trusted=True) for g in raw], p, I.ctx).minimalized()


def root_of_power(f: Polynomial, n: int, e: int) -> Ideal:
    """``(f^n)^[1/p^e]`` without expanding ``f^n``.

    Uses ``(A * h^p)^[1/p] = A^[1/p] * h`` one base-p digit of ``n`` at a
    time, so every intermediate stays at the degree of a single digit power.
    The result is not minimalized.
    """
    if n < 0 or e < 0:
        raise DomainError("exponents must be natural numbers")
    p, ctx = f.prime, f.ctx
    if f.is_zero():
        return Ideal.unit(p, ctx) if n == 0 else Ideal.zero(p, ctx)
    one = Polynomial.constant(p, ctx, 1)
    gens = [one.terms]
    rest = n
    powers = {}
    for _ in range(e):
        rest, d = divmod(rest, p)
        if d not in powers:
            powers[d] = f**d
        h = powers[d]
        if len(gens) == 1 and gens[0] == one.terms:
            products = [h]
        else:
            products = [Polynomial(p, ctx, g, _trusted=True) * h for g in gens]
        gens = _root_raw(products, p, p)
        if any(not any(_lead(g)) for g in gens):
            gens = [one.terms]
    ideal = Ideal([Polynomial(p, ctx, g, _trusted=True) for g in gens], p, ctx)
    if rest:
        ideal = ideal.times(f**rest)
    return ideal


def bracket_membership(f: Polynomial, J: Ideal, e: int) -> bool:
    """Whether ``f`` lies in ``J^[p^e]``, decided as ``(f)^[1/p^e] <= J``."""
    J._check(f)
    if f.is_zero():
        return True
    if e == 0:
        return J.contains(f)
    if J._monomial:
        q = J.prime**e
        mons = [tuple(q * a for a in g.leading_term()[0]) for g in J.generators]
        return all(any(_divides(m, exps) for m in mons) for exps in f.terms)
    root = _root_raw([f], J.prime**e, J.prime)
    return all(J.contains(Polynomial(f.prime, f.ctx, g, _trusted=True)) for g in root)


def power_in_bracket(f: Polynomial, n: int, J: Ideal, e: int) -> bool:
    """Whether ``f^n`` lies in ``J^[p^e]``."""
    J._check(f)
    return J.contains_ideal(root_of_power(f, n, e))
