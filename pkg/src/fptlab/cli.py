"""Command-line interface.

Exit codes: 0 success, 1 corpus mismatch, 2 domain error (hypothesis or
precondition failed), 3 input or parse error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from .basep import as_rational, check_prime, expand, format_index, format_rational
from .corpus import default_corpus, load_corpus, verify_corpus
from .errors import DomainError, FptlabError, InputError
from .ideals import Ideal, frobenius_root, maximal_ideal
from .lctscan import (
    _parse_congruence,
    expr_from_json,
    imports_from_json,
    lct,
    mtw_scan,
    trend_report,
)
from .nu import DEFAULT_RADICAL_CAP, nu
from .polyfp import Polynomial, VarContext, parse, ts_sum
from .testideals import test_ideal, ts_test_ideal
from .thresholds import (
    INAPPLICABLE,
    fpt_diagonal_fold,
    fpt_monomial,
    ts_fthreshold,
)

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_DOMAIN = 2
EXIT_INPUT = 3

log = logging.getLogger("fptlab")


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


def _int_list(text):
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _congruence(text):
    try:
        return _parse_congruence(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def _global_flags():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="machine-readable output")
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads for scans and corpus runs")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized suites; never changes results")
    return common


def build_parser():
    common = _global_flags()
    parser = _ArgumentParser(prog="fptlab", parents=[common],
                             description="F-thresholds and test ideals over prime fields")
    sub = parser.add_subparsers(dest="command", parser_class=_ArgumentParser)
    sub.required = True

    p_nu = sub.add_parser("nu", parents=[common], help="nu-invariant of f relative to J")
    p_nu.add_argument("--prime", type=int, required=True)
    p_nu.add_argument("--e", type=int, required=True)
    p_nu.add_argument("--poly", required=True)
    p_nu.add_argument("--ideal", help="generators separated by ';' (default: all variables)")
    p_nu.add_argument("--cap", type=int, default=DEFAULT_RADICAL_CAP)

    p_fpt = sub.add_parser("fpt", parents=[common], help="closed-form F-thresholds")
    fpt_sub = p_fpt.add_subparsers(dest="mode", parser_class=_ArgumentParser)
    fpt_sub.required = True
    p_ts = fpt_sub.add_parser("ts", parents=[common])
    p_ts.add_argument("--prime", type=int, required=True)
    p_ts.add_argument("--a1", required=True)
    p_ts.add_argument("--a2", required=True)
    p_ts.add_argument("--verify", nargs=2, metavar=("G1_JSON", "G2_JSON"))
    p_ts.add_argument("--verify-e", type=int, default=2)
    p_mono = fpt_sub.add_parser("monomial", parents=[common])
    p_mono.add_argument("--exps", type=_int_list, required=True)
    p_diag = fpt_sub.add_parser("diagonal", parents=[common])
    p_diag.add_argument("--degs", type=_int_list, required=True)
    p_diag.add_argument("--prime", type=int, required=True)

    p_root = sub.add_parser("frobenius-root", parents=[common], help="Frobenius root of an ideal")
    p_root.add_argument("--prime", type=int, required=True)
    p_root.add_argument("--e", type=int, required=True)
    p_root.add_argument("--ideal", required=True, help="generators separated by ';'")

    p_ti = sub.add_parser("test-ideal", parents=[common], help="test ideals")
    ti_sub = p_ti.add_subparsers(dest="mode", parser_class=_ArgumentParser)
    ti_sub.required = True
    p_tts = ti_sub.add_parser("ts", parents=[common])
    p_tts.add_argument("--prime", type=int, required=True)
    p_tts.add_argument("--g1", required=True)
    p_tts.add_argument("--g2", required=True)
    p_tts.add_argument("--a1", required=True)
    p_tts.add_argument("--a2", required=True)
    p_tts.add_argument("--emax", type=int)
    p_tts.add_argument("--brute-force-check", type=int, metavar="E")
    p_def = ti_sub.add_parser("def", parents=[common])
    p_def.add_argument("--prime", type=int, required=True)
    p_def.add_argument("--poly", required=True)
    p_def.add_argument("--c", required=True)
    p_def.add_argument("--emax", type=int)

    p_scan = sub.add_parser("mtw-scan", parents=[common], help="compare fpt and lct over primes")
    p_scan.add_argument("--expr", required=True, help="expression JSON file")
    p_scan.add_argument("--bound", type=int, required=True)
    p_scan.add_argument("--filter", type=_congruence, action="append", default=[],
                        metavar="R:M", help="keep primes p = R mod M (repeatable)")

    p_corpus = sub.add_parser("verify-corpus", parents=[common],
                              help="cross-check closed forms against definitions")
    p_corpus.add_argument("--corpus", help="corpus JSON file (default: the shipped corpus)")
    return parser


# -- command handlers: each returns (exit code, json payload, text) -----------


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _cmd_nu(args):
    f = parse(args.poly, args.prime)
    if args.ideal:
        J = Ideal.parse(args.ideal, args.prime, f.ctx)
    else:
        J = maximal_ideal(args.prime, f.ctx)
    rec = nu(f, J, args.e, args.cap)
    text = f"nu = {rec.nu}  (truncation {format_rational(rec.truncation)})"
    return EXIT_OK, rec.to_json(), text


def _verify_component(path, a, p, e):
    g = Polynomial.from_json(_read_json(path))
    if g.prime != p:
        raise InputError(f"{path}: prime {g.prime} differs from --prime {p}")
    m = maximal_ideal(p, g.ctx)
    stream = expand(a, p)
    for k in range(1, e + 1):
        got = nu(g, m, k).nu
        want = stream.truncate(k) * p**k
        if got != want:
            raise DomainError(
                f"claimed threshold {a} of {g} fails at e={k}: nu={got}, truncation gives {want}"
            )


def _cmd_fpt(args):
    if args.mode == "monomial":
        value = fpt_monomial(args.exps)
        return EXIT_OK, {"value": format_rational(value)}, format_rational(value)
    if args.mode == "diagonal":
        result = fpt_diagonal_fold(args.degs, args.prime)
        if result is INAPPLICABLE:
            return EXIT_DOMAIN, {"value": "INAPPLICABLE"}, "INAPPLICABLE"
        return EXIT_OK, result.to_json(), format_rational(result.value)
    p = check_prime(args.prime)
    a1, a2 = as_rational(args.a1), as_rational(args.a2)
    verified = False
    if args.verify:
        _verify_component(args.verify[0], a1, p, args.verify_e)
        _verify_component(args.verify[1], a2, p, args.verify_e)
        verified = True
    result = ts_fthreshold(a1, a2, p)
    payload = result.to_json()
    if args.verify:
        payload["verified_e"] = args.verify_e
    text = (f"c = {format_rational(result.value)}  [{result.classification.value}, "
            f"L={format_index(result.profile.L)}, d={format_index(result.profile.d)}]")
    if verified:
        text += f"  (component thresholds checked through e={args.verify_e})"
    return EXIT_OK, payload, text


def _parse_ideal_text(text, p):
    parts = [s for s in text.replace(",", ";").split(";") if s.strip()]
    if not parts:
        raise InputError("an ideal needs at least one generator")
    names = []
    for part in parts:
        for name in parse(part, p).ctx.names:
            if name not in names:
                names.append(name)
    ctx = VarContext(tuple(names))
    return Ideal([parse(part, p, ctx) for part in parts], p, ctx)


def _cmd_root(args):
    check_prime(args.prime)
    I = _parse_ideal_text(args.ideal, args.prime)
    root = frobenius_root(I, args.e)
    payload = {"vars": list(root.ctx.names), **root.to_json(),
               "text": [g.format() for g in root.sorted_generators()]}
    return EXIT_OK, payload, root.format()


def _cmd_test_ideal(args):
    p = check_prime(args.prime)
    if args.mode == "def":
        f = parse(args.poly, p)
        res = test_ideal(f, as_rational(args.c), args.emax)
        text = f"tau = {res.ideal}  (stabilized at e={res.stabilized_at_e})"
        return EXIT_OK, res.to_json(), text
    g1, g2 = parse(args.g1, p), parse(args.g2, p)
    res = ts_test_ideal(g1, g2, args.a1, args.a2, args.emax)
    payload = res.to_json()
    text = (f"tau = {res.ideal}  [{res.case_tag.value}, c={format_rational(res.exponent)}, "
            f"L={format_index(res.L)}, d={format_index(res.d)}]")
    code = EXIT_OK
    if args.brute_force_check is not None:
        f = ts_sum(g1, g2)
        direct = test_ideal(f, res.exponent, args.brute_force_check).ideal
        ok = direct.extend(res.ideal.ctx).equals(res.ideal) if direct.ctx != res.ideal.ctx \
            else direct.equals(res.ideal)
        payload["brute_force_check"] = {"e_max": args.brute_force_check, "passed": ok,
                                        "generators": [g.format() for g in direct.sorted_generators()]}
        text += "\nbrute-force check " + ("passed" if ok else f"FAILED: definition gives {direct}")
        if not ok:
            code = EXIT_MISMATCH
    return code, payload, text


def _cmd_scan(args):
    data = _read_json(args.expr)
    if not isinstance(data, dict):
        raise InputError("expression file must hold a JSON object")
    expr = expr_from_json(data.get("expr", data))
    imports = imports_from_json(data.get("imports"))
    reports = mtw_scan(expr, imports, args.bound, args.filter, getattr(args, "threads", 1) or 1)
    matches = [r.prime for r in reports if r.match]
    trend = trend_report(reports)
    payload = {
        "lct": format_rational(lct(expr)),
        "reports": [r.to_json() for r in reports],
        "matches_found": matches,
        "trend": trend,
    }
    lines = [f"lct = {format_rational(lct(expr))}"]
    for r in reports:
        fpt = r.to_json()["fpt"]
        lines.append(f"p={r.prime:>6}  fpt={fpt}  {'match' if r.match else '-'}")
    lines.append(f"matches found at {len(matches)} of {len(reports)} scanned primes")
    return EXIT_OK, payload, "\n".join(lines)


def _cmd_corpus(args):
    cases = load_corpus(args.corpus) if args.corpus else default_corpus()
    report = verify_corpus(cases, getattr(args, "threads", 1) or 1)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  [{r.check}] {r.name}: {r.detail}" for r in report.results]
    lines.extend(f"warning: {w}" for w in report.warnings)
    lines.append(f"{sum(r.passed for r in report.results)}/{len(report.results)} checks passed")
    return (EXIT_OK if report.passed else EXIT_MISMATCH), report.to_json(), "\n".join(lines)


HANDLERS = {
    "nu": _cmd_nu,
    "fpt": _cmd_fpt,
    "frobenius-root": _cmd_root,
    "test-ideal": _cmd_test_ideal,
    "mtw-scan": _cmd_scan,
    "verify-corpus": _cmd_corpus,
}


def _emit(payload, as_json, out):
    if as_json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(payload + "\n")


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    argv = list(sys.argv[1:] if argv is None else argv)
    as_json = "--json" in argv
    try:
        args = build_parser().parse_args(argv)
        as_json = getattr(args, "json", False)
        code, payload, text = HANDLERS[args.command](args)
    except InputError as exc:
        return _fail(EXIT_INPUT, exc, as_json, stdout, stderr)
    except DomainError as exc:
        return _fail(EXIT_DOMAIN, exc, as_json, stdout, stderr)
    except FptlabError as exc:
        return _fail(EXIT_DOMAIN, exc, as_json, stdout, stderr)
    _emit(payload if as_json else text, as_json, stdout)
    return code


def _fail(code, exc, as_json, stdout, stderr):
    if as_json:
        _emit({"error": {"type": type(exc).__name__, "message": str(exc), "exit_code": code}}, True, stdout)
    else:
        stderr.write(f"error: {exc}\n")
    return code


def main():
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    sys.exit(run())


if __name__ == "__main__":
    main()
