"""Log canonical thresholds of composed polynomials and prime scans.

A :class:`CompositionExpr` describes a polynomial built from monomials and
diagonal sums by disjoint sums, powers and disjoint products. ``lct`` and
``fpt_of_expr`` evaluate the same tree with the characteristic-zero and the
characteristic-p composition rules; :func:`mtw_scan` compares them prime by
prime.
"""

from __future__ import annotations

import json
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from .basep import as_rational, check_prime, format_rational
from .errors import DomainError, InputError, TheoremInapplicable
from .polyfp import Polynomial, VarContext, parse, ts_sum
from .thresholds import (
    INAPPLICABLE,
    fpt_diagonal_fold,
    fpt_disjoint_product,
    fpt_monomial,
    fpt_power,
    ts_fthreshold,
)

__all__ = [
    "Monomial",
    "Diagonal",
    "Imported",
    "DisjointSum",
    "Power",
    "DisjointProduct",
    "CompositionExpr",
    "Import",
    "MissingImport",
    "ScanReport",
    "lct",
    "fpt_of_expr",
    "expr_from_json",
    "imports_from_json",
    "primes_up_to",
    "mtw_scan",
    "trend_report",
    "materialize",
]


@dataclass(frozen=True)
class Monomial:
    exponents: Tuple[int, ...]

    def __post_init__(self):
        if not self.exponents or any(b < 1 for b in self.exponents):
            raise DomainError("monomial exponents must be a nonempty list of naturals >= 1")


@dataclass(frozen=True)
class Diagonal:
    degrees: Tuple[int, ...]

    def __post_init__(self):
        if not self.degrees or any(d < 1 for d in self.degrees):
            raise DomainError("diagonal degrees must be a nonempty list of naturals >= 1")


@dataclass(frozen=True)
class Imported:
    """Leaf without a closed form; both thresholds come from outside."""

    leaf_id: str
    lct_value: Fraction
    poly: Optional[str] = None


@dataclass(frozen=True)
class DisjointSum:
    left: "CompositionExpr"
    right: "CompositionExpr"


@dataclass(frozen=True)
class Power:
    inner: "CompositionExpr"
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("power exponent must be >= 1")


@dataclass(frozen=True)
class DisjointProduct:
    left: "CompositionExpr"
    right: "CompositionExpr"


CompositionExpr = Union[Monomial, Diagonal, Imported, DisjointSum, Power, DisjointProduct]


@dataclass(frozen=True)
class Import:
    """Imported F-pure threshold valid for primes ``p = residue mod modulus``."""

    value: Fraction
    residue: int = 0
    modulus: int = 1

    def applies(self, p: int) -> bool:
        return p % self.modulus == self.residue % self.modulus


class MissingImport(DomainError):
    pass


# -- evaluation --------------------------------------------------------------


def lct(expr: CompositionExpr) -> Fraction:
    """Log canonical threshold at the origin from the composition rules."""
    if isinstance(expr, Monomial):
        return fpt_monomial(expr.exponents)
    if isinstance(expr, Diagonal):
        return min(Fraction(1), sum(Fraction(1, d) for d in expr.degrees))
    if isinstance(expr, Imported):
        return expr.lct_value
    if isinstance(expr, DisjointSum):
        return min(Fraction(1), lct(expr.left) + lct(expr.right))
    if isinstance(expr, Power):
        return lct(expr.inner) / expr.n
    if isinstance(expr, DisjointProduct):
        return min(lct(expr.left), lct(expr.right))
    raise InputError(f"unknown expression node {expr!r}")


def fpt_of_expr(expr: CompositionExpr, p: int, imports: Optional[Dict[str, Import]] = None):
    """F-pure threshold at ``p``, or ``INAPPLICABLE`` if some sum has a1+a2 > 1."""
    check_prime(p)
    imports = imports or {}

    def walk(node):
        if isinstance(node, Monomial):
            return fpt_monomial(node.exponents)
        if isinstance(node, Diagonal):
            folded = fpt_diagonal_fold(node.degrees, p)
            return INAPPLICABLE if folded is INAPPLICABLE else folded.value
        if isinstance(node, Imported):
            imp = imports.get(node.leaf_id)
            if imp is None or not imp.applies(p):
                raise MissingImport(f"no imported threshold for leaf {node.leaf_id!r} at p={p}")
            return imp.value
        if isinstance(node, DisjointSum):
            a1, a2 = walk(node.left), walk(node.right)
            if a1 is INAPPLICABLE or a2 is INAPPLICABLE:
                return INAPPLICABLE
            try:
                return ts_fthreshold(a1, a2, p).value
            except TheoremInapplicable:
                return INAPPLICABLE
        if isinstance(node, Power):
            c = walk(node.inner)
            return INAPPLICABLE if c is INAPPLICABLE else fpt_power(c, node.n)
        if isinstance(node, DisjointProduct):
            c1, c2 = walk(node.left), walk(node.right)
            if c1 is INAPPLICABLE or c2 is INAPPLICABLE:
                return INAPPLICABLE
            return fpt_disjoint_product(c1, c2)
        raise InputError(f"unknown expression node {node!r}")

    return walk(expr)


# -- JSON --------------------------------------------------------------------


def _int_list(data, key):
    try:
        values = tuple(int(v) for v in data[key])
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"expected integer list {key!r} in {data!r}") from exc
    return values


def _children(data):
    if "children" in data:
        kids = data["children"]
        if not isinstance(kids, list) or len(kids) < 2:
            raise InputError(f"{data.get('op')!r} needs at least two children")
        return [expr_from_json(k) for k in kids]
    try:
        return [expr_from_json(data["left"]), expr_from_json(data["right"])]
    except KeyError as exc:
        raise InputError(f"{data.get('op')!r} needs children or left/right") from exc


def _fold(cls, nodes):
    # n-ary sums and products nest to the right
    node = nodes[-1]
    for left in reversed(nodes[:-1]):
        node = cls(left, node)
    return node


def expr_from_json(data) -> CompositionExpr:
    """Build an expression tree from its JSON form.

    Nodes: ``{"op": "monomial", "exps": [...]}``, ``{"op": "diagonal",
    "degs": [...]}``, ``{"op": "leaf", "id": ..., "lct": "r/s"}``,
    ``{"op": "sum" | "prod", "children": [...]}`` and
    ``{"op": "pow", "n": k, "child": {...}}``.
    """
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "op" not in data:
        raise InputError(f"expression node must be an object with 'op': {data!r}")
    op = data["op"]
    if op == "monomial":
        return Monomial(_int_list(data, "exps"))
    if op == "diagonal":
        return Diagonal(_int_list(data, "degs"))
    if op in ("leaf", "import", "imported"):
        try:
            return Imported(str(data["id"]), as_rational(data["lct"]), data.get("poly"))
        except KeyError as exc:
            raise InputError("imported leaf needs 'id' and 'lct'") from exc
    if op == "sum":
        return _fold(DisjointSum, _children(data))
    if op == "prod":
        return _fold(DisjointProduct, _children(data))
    if op == "pow":
        child = data.get("child", data.get("inner"))
        if child is None and isinstance(data.get("children"), list) and len(data["children"]) == 1:
            child = data["children"][0]
        if child is None:
            raise InputError("'pow' needs a child")
        try:
            n = int(data["n"])
        except (KeyError, ValueError) as exc:
            raise InputError("'pow' needs an integer 'n'") from exc
        return Power(expr_from_json(child), n)
    raise InputError(f"unknown op {op!r}")


def expr_to_json(expr: CompositionExpr) -> dict:
    if isinstance(expr, Monomial):
        return {"op": "monomial", "exps": list(expr.exponents)}
    if isinstance(expr, Diagonal):
        return {"op": "diagonal", "degs": list(expr.degrees)}
    if isinstance(expr, Imported):
        out = {"op": "leaf", "id": expr.leaf_id, "lct": format_rational(expr.lct_value)}
        if expr.poly is not None:
            out["poly"] = expr.poly
        return out
    if isinstance(expr, DisjointSum):
        return {"op": "sum", "children": [expr_to_json(expr.left), expr_to_json(expr.right)]}
    if isinstance(expr, DisjointProduct):
        return {"op": "prod", "children": [expr_to_json(expr.left), expr_to_json(expr.right)]}
    if isinstance(expr, Power):
        return {"op": "pow", "n": expr.n, "child": expr_to_json(expr.inner)}
    raise InputError(f"unknown expression node {expr!r}")


def _parse_congruence(text: str) -> Tuple[int, int]:
    """Accept ``"1 mod 32"`` or ``"1:32"``."""
    raw = text.replace("mod", ":").split(":")
    try:
        residue, modulus = (int(part) for part in raw)
    except ValueError as exc:
        raise InputError(f"bad congruence {text!r}; use 'r mod m' or 'r:m'") from exc
    if modulus < 1:
        raise InputError("modulus must be >= 1")
    return residue % modulus, modulus


def imports_from_json(data) -> Dict[str, Import]:
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise InputError("imports must be an object keyed by leaf id")
    out = {}
    for leaf_id, spec in data.items():
        try:
            value = as_rational(spec["a"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"import {leaf_id!r} needs 'a'") from exc
        residue, modulus = _parse_congruence(spec.get("primes", "0 mod 1"))
        out[str(leaf_id)] = Import(value, residue, modulus)
    return out


# -- materialization ---------------------------------------------------------


def materialize(expr: CompositionExpr, p: int, prefix: str = "v") -> Polynomial:
    """Build the polynomial an expression stands for, using fresh variables.

    Imported leaves need a ``poly`` string; its variables are renamed apart.
    """
    counter = [0]

    def fresh(k):
        names = tuple(f"{prefix}{counter[0] + i}" for i in range(k))
        counter[0] += k
        return VarContext(names)

    def walk(node) -> Polynomial:
        if isinstance(node, Monomial):
            ctx = fresh(len(node.exponents))
            return Polynomial.monomial(p, ctx, node.exponents)
        if isinstance(node, Diagonal):
            ctx = fresh(len(node.degrees))
            n = len(node.degrees)
            terms = {}
            for i, d in enumerate(node.degrees):
                exps = [0] * n
                exps[i] = d
                terms[tuple(exps)] = 1
            return Polynomial(p, ctx, terms)
        if isinstance(node, Imported):
            if node.poly is None:
                raise MissingImport(f"leaf {node.leaf_id!r} has no polynomial to materialize")
            g = parse(node.poly, p)
            return Polynomial(p, fresh(len(g.ctx)), g.terms)
        if isinstance(node, DisjointSum):
            return ts_sum(walk(node.left), walk(node.right))
        if isinstance(node, Power):
            return walk(node.inner) ** node.n
        if isinstance(node, DisjointProduct):
            left, right = walk(node.left), walk(node.right)
            s = ts_sum(left, right)  # checks disjointness and merges contexts
            return left.extend(s.ctx) * right.extend(s.ctx)
        raise InputError(f"unknown expression node {node!r}")

    return walk(expr)


# -- scanning ----------------------------------------------------------------


def primes_up_to(bound: int) -> List[int]:
    """Sieve of Eratosthenes."""
    if bound < 2:
        return []
    sieve = np.ones(bound + 1, dtype=bool)
    sieve[:2] = False
    for i in range(2, int(bound**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = False
    return [int(i) for i in np.flatnonzero(sieve)]


@dataclass(frozen=True)
class ScanReport:
    prime: int
    lct: Fraction
    fpt: object  # Fraction, INAPPLICABLE, or None when an import is missing
    match: bool
    congruence_notes: Tuple[str, ...] = field(default_factory=tuple)

    @property
    def applicable(self) -> bool:
        return isinstance(self.fpt, Fraction)

    def to_json(self) -> dict:
        if isinstance(self.fpt, Fraction):
            fpt = format_rational(self.fpt)
        elif self.fpt is INAPPLICABLE:
            fpt = "INAPPLICABLE"
        else:
            fpt = None
        return {
            "prime": self.prime,
            "lct": format_rational(self.lct),
            "fpt": fpt,
            "match": self.match,
            "notes": list(self.congruence_notes),
        }


def _scan_one(expr, p, lct_value, imports, filters):
    notes = [f"p = {r} mod {m}" for r, m in filters]
    try:
        fpt = fpt_of_expr(expr, p, imports)
    except MissingImport as exc:
        return ScanReport(p, lct_value, None, False, tuple(notes + [str(exc)]))
    if fpt is INAPPLICABLE:
        return ScanReport(p, lct_value, INAPPLICABLE, False, tuple(notes + ["inapplicable"]))
    if fpt > lct_value:
        raise AssertionError(f"fpt {fpt} exceeds lct {lct_value} at p={p}")
    for leaf_id, imp in sorted(imports.items()):
        if imp.modulus > 1:
            notes.append(f"import {leaf_id}: p = {imp.residue} mod {imp.modulus}")
    return ScanReport(p, lct_value, fpt, fpt == lct_value, tuple(notes))


def mtw_scan(
    expr: CompositionExpr,
    imports: Optional[Dict[str, Import]] = None,
    prime_bound: int = 100,
    filters: Optional[List[Tuple[int, int]]] = None,
    threads: int = 1,
) -> List[ScanReport]:
    """Compare fpt and lct for every prime up to ``prime_bound`` in the filters.

    Matches found are evidence for individual primes only.
    """
    if prime_bound < 2:
        raise DomainError("prime_bound must be >= 2")
    filters = [(r % m, m) for r, m in (filters or [])]
    imports = imports or {}
    lct_value = lct(expr)
    primes = [p for p in primes_up_to(prime_bound) if all(p % m == r for r, m in filters)]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            reports = list(pool.map(lambda p: _scan_one(expr, p, lct_value, imports, filters), primes))
    else:
        reports = [_scan_one(expr, p, lct_value, imports, filters) for p in primes]
    return sorted(reports, key=lambda r: r.prime)


def trend_report(reports: List[ScanReport]) -> dict:
    """Largest ``lct - fpt`` per dyadic band of primes, and whether it never grows."""
    bands = {}
    for r in reports:
        if not r.applicable:
            continue
        k = r.prime.bit_length() - 1
        gap = r.lct - r.fpt
        bands[k] = max(bands.get(k, gap), gap)
    ordered = sorted(bands.items())
    gaps = [g for _, g in ordered]
    return {
        "bands": [{"from": 2**k, "to": 2 ** (k + 1) - 1, "max_gap": format_rational(g)} for k, g in ordered],
        "non_increasing": all(a >= b for a, b in zip(gaps, gaps[1:])),
    }
