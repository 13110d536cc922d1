"""Corpus-driven cross-checks of the closed forms against definitions.

A corpus is JSON ``{"cases": [...]}``; each case names a prime, two
polynomials in disjoint variables, their claimed F-pure thresholds, and the
checks to run:

* ``"A"``: for every ``e' <= e`` the truncation of the closed-form threshold
  times ``p^e'`` equals nu of ``g1 + g2`` relative to the maximal ideal.
* ``"B"``: the split test ideal equals the definitional one with window
  ``e_max``.
"""

from __future__ import annotations

import json
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from importlib import resources
from typing import List, Optional

from .basep import as_rational, expand, format_rational
from .errors import FptlabError, InputError
from .ideals import maximal_ideal
from .nu import nu
from .polyfp import merge_contexts, parse
from .testideals import test_ideal, ts_test_ideal
from .thresholds import ts_fthreshold

__all__ = ["CaseResult", "CorpusReport", "load_corpus", "default_corpus", "verify_corpus"]

log = logging.getLogger(__name__)


@dataclass
class CaseResult:
    name: str
    check: str
    passed: bool
    detail: str

    def to_json(self) -> dict:
        return {"name": self.name, "check": self.check, "passed": self.passed, "detail": self.detail}


@dataclass
class CorpusReport:
    results: List[CaseResult] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_json(self) -> dict:
        return {
            "passed": self.passed,
            "total": len(self.results),
            "failures": sum(not r.passed for r in self.results),
            "warnings": self.warnings,
            "results": [r.to_json() for r in self.results],
        }


def load_corpus(path) -> list:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read corpus {path}: {exc}") from exc
    return _cases(data)


def default_corpus() -> list:
    text = resources.files("fptlab").joinpath("data/default_corpus.json").read_text()
    return _cases(json.loads(text))


def _cases(data) -> list:
    if isinstance(data, dict):
        data = data.get("cases")
    if not isinstance(data, list):
        raise InputError("corpus must be a list of cases or {'cases': [...]}")
    for i, case in enumerate(data):
        missing = {"prime", "g1", "g2", "a1", "a2"} - set(case)
        if missing:
            raise InputError(f"corpus case {i} lacks {sorted(missing)}")
    return data


def _check_a(name, p, g1, g2, a1, a2, e):
    ctx = merge_contexts(g1.ctx, g2.ctx)
    f = g1.extend(ctx) + g2.extend(ctx)
    m = maximal_ideal(p, ctx)
    fv = ts_fthreshold(a1, a2, p)
    stream = expand(fv.value, p)
    for k in range(1, e + 1):
        expected = stream.truncate(k) * p**k
        got = nu(f, m, k).nu
        if expected != got:
            return CaseResult(name, "A", False, f"e={k}: closed form gives nu={expected}, search gives {got}")
    return CaseResult(name, "A", True, f"c={format_rational(fv.value)} agrees for e<={e}")


def _check_b(name, p, g1, g2, a1, a2, e_max):
    ctx = merge_contexts(g1.ctx, g2.ctx)
    f = g1.extend(ctx) + g2.extend(ctx)
    split = ts_test_ideal(g1, g2, a1, a2, e_max)
    direct = test_ideal(f, split.exponent, e_max)
    ok = split.ideal.equals(direct.ideal)
    detail = f"{split.case_tag.value}: split {split.ideal} vs definition {direct.ideal}"
    return CaseResult(name, "B", ok, detail)


def _run_case(case) -> List[CaseResult]:
    name = case.get("name") or f"{case['g1']} + {case['g2']} @ p={case['prime']}"
    checks = case.get("check", ["A", "B"])
    out = []
    try:
        p = int(case["prime"])
        g1, g2 = parse(case["g1"], p), parse(case["g2"], p)
        a1, a2 = as_rational(case["a1"]), as_rational(case["a2"])
    except FptlabError as exc:
        return [CaseResult(name, "input", False, str(exc))]
    for check in checks:
        try:
            if check == "A":
                out.append(_check_a(name, p, g1, g2, a1, a2, int(case.get("e", 2))))
            elif check == "B":
                out.append(_check_b(name, p, g1, g2, a1, a2, int(case.get("e_max", 4))))
            else:
                out.append(CaseResult(name, str(check), False, "unknown check"))
        except FptlabError as exc:
            out.append(CaseResult(name, check, False, f"{type(exc).__name__}: {exc}"))
    return out


def verify_corpus(cases: Optional[list] = None, threads: int = 1) -> CorpusReport:
    """Run every check of every case; results keep the corpus order."""
    cases = default_corpus() if cases is None else cases
    report = CorpusReport()
    if not cases:
        report.warnings.append("empty corpus: nothing checked")
        log.warning("empty corpus: nothing checked")
        return report
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            batches = list(pool.map(_run_case, cases))
    else:
        batches = [_run_case(c) for c in cases]
    for batch in batches:
        report.results.extend(batch)
    return report
