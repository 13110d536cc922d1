"""Sparse multivariate polynomials over F_p.

A polynomial is a dict from exponent tuples to residues in [1, p-1], bound to
a :class:`VarContext` naming the variables. Monomials are compared in graded
reverse lexicographic order.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Optional

from .basep import check_prime
from .errors import DomainError, InputError, ParseError

__all__ = [
    "VarContext",
    "Polynomial",
    "grevlex_key",
    "parse",
    "merge_contexts",
    "ts_sum",
    "ts_split",
    "variable_support",
]

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")

MAX_PRIME = 2**31


def grevlex_key(exps: tuple) -> tuple:
    return (sum(exps), tuple(-a for a in reversed(exps)))


@dataclass(frozen=True)
class VarContext:
    names: tuple

    def __post_init__(self):
        names = tuple(self.names)
        object.__setattr__(self, "names", names)
        if len(set(names)) != len(names):
            raise InputError(f"duplicate variable names in {names}")
        for name in names:
            if not _IDENT.fullmatch(name):
                raise InputError(f"invalid variable name {name!r}")

    def __len__(self):
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InputError(f"unknown variable {name!r}") from None


def merge_contexts(*contexts: VarContext) -> VarContext:
    """Concatenate contexts in order, keeping the first occurrence of a name."""
    names = []
    for ctx in contexts:
        for name in ctx.names:
            if name not in names:
                names.append(name)
    return VarContext(tuple(names))


class Polynomial:
    """Immutable sparse polynomial over F_p."""

    __slots__ = ("prime", "ctx", "terms", "_hash")

    def __init__(self, prime: int, ctx: VarContext, terms=None, *, _trusted=False):
        self.prime = prime
        self.ctx = ctx
        if _trusted:
            self.terms = terms
        else:
            clean = {}
            n = len(ctx)
            for exps, c in (terms or {}).items():
                exps = tuple(exps)
                if len(exps) != n or any(a < 0 for a in exps):
                    raise DomainError(f"bad exponent vector {exps} for {ctx.names}")
                c %= prime
                if c:
                    clean[exps] = (clean.get(exps, 0) + c) % prime
                    if not clean[exps]:
                        del clean[exps]
            self.terms = clean
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, prime, ctx):
        return cls(prime, ctx, {}, _trusted=True)

    @classmethod
    def constant(cls, prime, ctx, c=1):
        c %= prime
        return cls(prime, ctx, {(0,) * len(ctx): c} if c else {}, _trusted=True)

    @classmethod
    def monomial(cls, prime, ctx, exps, c=1):
        return cls(prime, ctx, {tuple(exps): c})

    @classmethod
    def variable(cls, prime, ctx, name):
        exps = [0] * len(ctx)
        exps[ctx.index(name)] = 1
        return cls(prime, ctx, {tuple(exps): 1}, _trusted=True)

    # -- basic queries ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.ctx), 0)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def sorted_terms(self):
        """Terms in descending grevlex order."""
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    def leading_term(self):
        exps = max(self.terms, key=grevlex_key)
        return exps, self.terms[exps]

    def monic(self) -> Polynomial:
        if not self.terms:
            return self
        _, lc = self.leading_term()
        return self.scale(pow(lc, -1, self.prime))

    def _check(self, other: Polynomial):
        if self.prime != other.prime:
            raise DomainError(f"prime mismatch: {self.prime} vs {other.prime}")
        if self.ctx != other.ctx:
            raise DomainError(f"context mismatch: {self.ctx.names} vs {other.ctx.names}")

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.prime, self.ctx, other)
        self._check(other)
        p = self.prime
        out = dict(self.terms)
        for exps, c in other.terms.items():
            v = (out.get(exps, 0) + c) % p
            if v:
                out[exps] = v
            else:
                out.pop(exps, None)
        return Polynomial(p, self.ctx, out, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.prime
        return Polynomial(p, self.ctx, {e: p - c for e, c in self.terms.items()}, _trusted=True)

    def __sub__(self, other):
        if isinstance(other, int):
            other = Polynomial.constant(self.prime, self.ctx, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> Polynomial:
        p = self.prime
        c %= p
        if not c:
            return Polynomial.zero(p, self.ctx)
        return Polynomial(p, self.ctx, {e: v * c % p for e, v in self.terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        p = self.prime
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        out = {}
        get = out.get
        for eb, cb in b.items():
            for ea, ca in a.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = get(key, 0) + ca * cb
        out = {e: c % p for e, c in out.items() if c % p}
        return Polynomial(p, self.ctx, out, _trusted=True)

    __rmul__ = __mul__

    def mul_monomial(self, exps: tuple, c: int = 1) -> Polynomial:
        p = self.prime
        c %= p
        if not c:
            return Polynomial.zero(p, self.ctx)
        out = {tuple(x + y for x, y in zip(e, exps)): v * c % p for e, v in self.terms.items()}
        return Polynomial(p, self.ctx, out, _trusted=True)

    def frobenius(self, e: int = 1) -> Polynomial:
        """``self ** p**e``: F_p coefficients are fixed by Frobenius."""
        q = self.prime**e
        out = {tuple(q * a for a in exps): c for exps, c in self.terms.items()}
        return Polynomial(self.prime, self.ctx, out, _trusted=True)

    def _small_pow(self, k: int) -> Polynomial:
        result = Polynomial.constant(self.prime, self.ctx, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __pow__(self, n: int) -> Polynomial:
        """Power via base-p digits: f**n = prod_i (f**n_i)**(p**i)."""
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"exponent must be a natural number, got {n!r}")
        p = self.prime
        result = Polynomial.constant(p, self.ctx, 1)
        i = 0
        cache = {}
        while n:
            n, r = divmod(n, p)
            if r:
                if r not in cache:
                    cache[r] = self._small_pow(r)
                result = result * cache[r].frobenius(i)
            i += 1
        return result

    def pow(self, n: int) -> Polynomial:
        return self**n

    # -- context handling ---------------------------------------------------

    def extend(self, ctx: VarContext) -> Polynomial:
        """Re-express in a larger context containing every current variable."""
        if ctx == self.ctx:
            return self
        idx = [ctx.index(name) for name in self.ctx.names]
        n = len(ctx)
        out = {}
        for exps, c in self.terms.items():
            new = [0] * n
            for i, a in zip(idx, exps):
                new[i] = a
            out[tuple(new)] = c
        return Polynomial(self.prime, ctx, out, _trusted=True)

    def restrict(self, names: Iterable[str]) -> Polynomial:
        """Project onto a sub-context; every dropped variable must be absent."""
        sub = VarContext(tuple(names))
        idx = [self.ctx.index(name) for name in sub.names]
        keep = set(idx)
        out = {}
        for exps, c in self.terms.items():
            if any(a for i, a in enumerate(exps) if i not in keep):
                raise DomainError(f"polynomial uses variables outside {sub.names}")
            out[tuple(exps[i] for i in idx)] = c
        return Polynomial(self.prime, sub, out, _trusted=True)

    # -- comparison / display -----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, int):
            return self == Polynomial.constant(self.prime, self.ctx, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.prime == other.prime and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.prime, self.ctx, frozenset(self.terms.items())))
        return self._hash

    def format(self) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for exps, c in self.sorted_terms():
            factors = []
            for name, a in zip(self.ctx.names, exps):
                if a == 1:
                    factors.append(name)
                elif a:
                    factors.append(f"{name}^{a}")
            if c != 1 or not factors:
                factors.insert(0, str(c))
            pieces.append("*".join(factors))
        return " + ".join(pieces)

    __str__ = format

    def __repr__(self):
        return f"Polynomial({self.format()!r}, p={self.prime}, vars={list(self.ctx.names)})"

    def to_json(self) -> dict:
        return {
            "prime": self.prime,
            "vars": list(self.ctx.names),
            "terms": [{"exps": list(e), "coeff": c} for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data) -> Polynomial:
        if isinstance(data, str):
            data = json.loads(data)
        try:
            p = check_prime(int(data["prime"]))
            ctx = VarContext(tuple(data["vars"]))
            terms = {}
            for term in data["terms"]:
                exps = tuple(int(a) for a in term["exps"])
                terms[exps] = terms.get(exps, 0) + int(term["coeff"])
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError(f"malformed polynomial JSON: {exc}") from exc
        return cls(p, ctx, terms)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # trailing whitespace
            break
        num, ident, sym = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            tokens.append(("num", int(num), start))
        elif ident is not None:
            tokens.append(("ident", ident, start))
        else:
            if sym not in "+-*^":
                raise ParseError(f"unexpected character {sym!r}", text, start)
            tokens.append((sym, sym, start))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, names, fixed):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0
        self.names = names
        self.fixed = fixed

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind=None):
        tok = self.tokens[self.i]
        if kind is not None and tok[0] != kind:
            expected = "a number" if kind == "num" else repr(kind)
            raise ParseError(f"expected {expected}", self.text, tok[2])
        self.i += 1
        return tok

    def var_index(self, name, pos):
        if name in self.names:
            return self.names.index(name)
        if self.fixed:
            raise ParseError(f"unknown variable {name!r}", self.text, pos)
        self.names.append(name)
        return len(self.names) - 1

    def expr(self):
        terms = []
        sign = 1
        if self.peek()[0] in "+-":
            sign = -1 if self.take()[0] == "-" else 1
        terms.append((sign, *self.term()))
        while self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
            terms.append((sign, *self.term()))
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected token {tok[1]!r}", self.text, tok[2])
        return terms

    def term(self):
        coeff = 1
        factors = {}
        tok = self.peek()
        if tok[0] == "num":
            coeff = self.take()[1]
            if self.peek()[0] == "*":
                self.take()
                self.factor(factors)
            elif self.peek()[0] == "ident":
                self.factor(factors)
        elif tok[0] == "ident":
            self.factor(factors)
        else:
            raise ParseError("expected a term", self.text, tok[2])
        while self.peek()[0] in ("*", "ident"):
            if self.peek()[0] == "*":
                self.take()
            tok = self.peek()
            if tok[0] == "num":
                coeff *= self.take()[1]
            else:
                self.factor(factors)
        return coeff, factors

    def factor(self, factors):
        _, name, pos = self.take("ident")
        idx = self.var_index(name, pos)
        power = 1
        if self.peek()[0] == "^":
            self.take()
            power = self.take("num")[1]
        factors[idx] = factors.get(idx, 0) + power


def parse(text: str, p: int, ctx: Optional[VarContext] = None) -> Polynomial:
    """Parse ``text`` into a polynomial over F_p.

    Without ``ctx`` the variables are ordered by first appearance.

    >>> parse("5*x + 2*x", 7).is_zero()
    True
    """
    check_prime(p)
    if p >= MAX_PRIME:
        raise DomainError(f"prime {p} exceeds the supported bound 2^31")
    if not isinstance(text, str):
        raise InputError("polynomial text must be a string")
    names = list(ctx.names) if ctx is not None else []
    parser = _Parser(text, names, fixed=ctx is not None)
    raw = parser.expr()
    ctx = ctx if ctx is not None else VarContext(tuple(names))
    n = len(ctx)
    terms = {}
    for sign, coeff, factors in raw:
        exps = [0] * n
        for i, a in factors.items():
            exps[i] = a
        exps = tuple(exps)
        terms[exps] = terms.get(exps, 0) + sign * coeff
    return Polynomial(p, ctx, terms)


# -- Thom-Sebastiani helpers -------------------------------------------------


def variable_support(f: Polynomial) -> frozenset:
    """Indices of the variables that occur in some term of ``f``."""
    return frozenset(i for exps in f.terms for i, a in enumerate(exps) if a)


def support_names(f: Polynomial) -> tuple:
    return tuple(f.ctx.names[i] for i in sorted(variable_support(f)))


def ts_sum(g1: Polynomial, g2: Polynomial):
    """``g1 + g2`` in the merged context; the supports must be disjoint."""
    if g1.prime != g2.prime:
        raise DomainError(f"prime mismatch: {g1.prime} vs {g2.prime}")
    if set(support_names(g1)) & set(support_names(g2)):
        raise DomainError("summands share variables")
    ctx = merge_contexts(g1.ctx, g2.ctx)
    return g1.extend(ctx) + g2.extend(ctx)


def ts_split(f: Polynomial):
    """Split ``f`` into two summands in disjoint variables, or return None.

    Terms are grouped by connected components of the term/variable incidence
    graph; the first component becomes ``g1`` and the rest ``g2``. Constant
    terms cannot be placed in a disjoint split.
    """
    if f.is_zero():
        raise DomainError("cannot split the zero polynomial")
    items = list(f.terms.items())
    if any(not any(e) for e, _ in items):
        return None
    n = len(f.ctx)
    parent = list(range(n))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for exps, _ in items:
        used = [i for i, a in enumerate(exps) if a]
        for i in used[1:]:
            parent[find(i)] = find(used[0])
    components = []
    for exps, _ in items:
        root = find(next(i for i, a in enumerate(exps) if a))
        if root not in components:
            components.append(root)
    if len(components) < 2:
        return None
    first = components[0]
    t1 = {e: c for e, c in items if find(next(i for i, a in enumerate(e) if a)) == first}
    t2 = {e: c for e, c in items if e not in t1}
    g1 = Polynomial(f.prime, f.ctx, t1, _trusted=True)
    g2 = Polynomial(f.prime, f.ctx, t2, _trusted=True)
    return g1.restrict(support_names(g1)), g2.restrict(support_names(g2))
