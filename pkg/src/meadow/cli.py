"""Command-line front end.

Exit codes: 0 success or EQUAL, 1 DISTINCT, 2 input error, 3 self-test
failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence, TextIO

from . import element, finite, normal
from .evaluate import phi, phi_n, profile
from .exactnum import prime, rat_to_str
from .rewrite import mixed_pair
from .term import ParseError, parse, to_text

EXIT_OK, EXIT_DISTINCT, EXIT_INPUT, EXIT_SELFTEST = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        # report through main() so the caller's error stream is used
        raise _UsageError(message)


class _UsageError(Exception):
    pass


def _nonneg(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"expected a nonnegative integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    p = _Parser(prog="meadow", description="Closed meadow terms: evaluation, normal forms, equality.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("parse", parents=[common], help="print the canonical form of an expression")
    s.add_argument("expr")

    s = sub.add_parser("eval", parents=[common], help="evaluate in the rationals or a prime field")
    s.add_argument("expr")
    where = s.add_mutually_exclusive_group()
    where.add_argument("--rational", action="store_true", help="rational value (default)")
    where.add_argument("--field", type=_nonneg, metavar="I", help="value in GF(prime(I))")

    s = sub.add_parser("psi", parents=[common], help="index bound of an expression")
    s.add_argument("expr")

    s = sub.add_parser("normalize", parents=[common], help="normal form of an expression")
    s.add_argument("expr")
    s.add_argument("--pad", type=_nonneg, metavar="N", help="expand to level N >= psi")

    s = sub.add_parser("decide", parents=[common], help="decide provable equality")
    s.add_argument("exprs", nargs="*", metavar="EXPR")
    s.add_argument("--stdin", action="store_true",
                   help="read tab-separated pairs from standard input, one per line")

    s = sub.add_parser("element", parents=[common], help="canonical element of the initial meadow")
    s.add_argument("expr")

    s = sub.add_parser("axioms", parents=[common], help="check the axioms in a finite initial meadow")
    s.add_argument("--char", type=int, required=True, metavar="K")
    s.add_argument("--max-evaluations", type=int, default=finite.MAX_EVALUATIONS)

    s = sub.add_parser("selftest", parents=[common],
                       help="compare the decision procedure against the element oracle")
    s.add_argument("--terms", type=_nonneg, default=300, metavar="N")
    s.add_argument("--seed", type=int, default=0, metavar="S")
    s.add_argument("--depth", type=int, default=5, metavar="D")
    s.add_argument("--max-lit", type=int, default=9)
    return p


def _emit(out: TextIO, args, text: str, payload) -> None:
    if args.json:
        out.write(json.dumps(payload, sort_keys=True) + "\n")
    else:
        out.write(text + "\n")


def _cmd_parse(args, out):
    t = parse(args.expr)
    _emit(out, args, to_text(t), {"term": to_text(t)})
    return EXIT_OK


def _cmd_eval(args, out):
    t = parse(args.expr)
    if args.field is not None:
        r = phi_n(args.field, t)
        _emit(out, args, str(r), {"field": args.field, "prime": prime(args.field), "value": r})
    else:
        q = phi(t)
        _emit(out, args, rat_to_str(q), {"rational": rat_to_str(q)})
    return EXIT_OK


def _cmd_psi(args, out):
    n = profile(parse(args.expr)).psi
    _emit(out, args, str(n), {"psi": n})
    return EXIT_OK


def _cmd_normalize(args, out):
    t = parse(args.expr)
    nf = normal.normal_form_of(t, args.pad)
    text = to_text(normal.normal_term(nf))
    payload = nf.to_json() | {"term": text}
    _emit(out, args, f"{text}\nk={nf.k} residues={list(nf.residues)} tail={rat_to_str(nf.tail)}",
          payload)
    return EXIT_OK


def _decide_line(left: str, right: str) -> normal.Verdict:
    return normal.decide_equal(parse(left), parse(right))


def _cmd_decide(args, out, err, stdin):
    if args.stdin:
        if args.exprs:
            raise _UsageError("decide --stdin takes no expression arguments")
        return _decide_batch(args, out, err, stdin)
    if len(args.exprs) != 2:
        raise _UsageError("decide needs exactly two expressions")
    v = _decide_line(*args.exprs)
    _emit(out, args, str(v), v.to_json())
    return EXIT_OK if v.equal else EXIT_DISTINCT


def _decide_batch(args, out, err, stdin):
    code = EXIT_OK
    for lineno, line in enumerate(stdin, 1):
        line = line.rstrip("\n").rstrip("\r")
        if not line.strip():
            continue
        fields = line.split("\t")
        try:
            if len(fields) != 2:
                raise ValueError(f"expected 2 tab-separated fields, got {len(fields)}")
            v = _decide_line(*fields)
        except ValueError as exc:
            err.write(f"line {lineno}: {exc}\n")
            _emit(out, args, "ERROR", {"error": str(exc), "line": lineno})
            code = EXIT_INPUT
            continue
        _emit(out, args, str(v), v.to_json())
        if not v.equal and code == EXIT_OK:
            code = EXIT_DISTINCT
    return code


def _cmd_element(args, out):
    a = element.from_term(parse(args.expr))
    _emit(out, args, str(a), a.to_json())
    return EXIT_OK


def _cmd_axioms(args, out, err):
    try:
        m = finite.initial_meadow_of_char(args.char)
    except finite.SquarefreeError as exc:
        _emit(out, args, f"no initial meadow: {exc}",
              {"characteristic": args.char, "squarefree": False, "repeated_prime": exc.prime})
        return EXIT_INPUT
    report = finite.check_axioms(m, args.max_evaluations)
    payload = {
        "characteristic": args.char,
        "squarefree": True,
        "primes": list(m.primes),
        "elements": report.size,
        "checked": report.checked,
        "axioms": {r.name: r.holds for r in report.results},
        "passed": report.passed,
    }
    lines = [str(report)]
    for r in report.failures():
        lines.append(f"  {r.name} fails: {r.equation} at {r.counterexample}")
    _emit(out, args, "\n".join(lines), payload)
    return EXIT_OK if report.all_hold else EXIT_SELFTEST


def _cmd_selftest(args, out):
    agree = disagree = equal = 0
    failures = []
    for j in range(args.terms):
        kind, s, t = mixed_pair(args.seed + j, args.depth, args.max_lit)
        verdict = normal.decide_equal(s, t).equal
        oracle = element.from_term(s) == element.from_term(t)
        equal += verdict
        if verdict == oracle and (kind != "rewritten" or verdict):
            agree += 1
        else:
            disagree += 1
            failures.append(f"{kind}: {to_text(s)}  vs  {to_text(t)}")
    text = f"selftest: {args.terms} pairs, {equal} equal; {agree} agree, {disagree} disagree"
    if failures:
        text += "\n" + "\n".join(failures[:10])
    _emit(out, args, text, {"pairs": args.terms, "equal": equal, "agree": agree,
                            "disagree": disagree, "failures": failures})
    return EXIT_OK if not disagree else EXIT_SELFTEST


def main(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
         stderr: TextIO | None = None, stdin: TextIO | None = None) -> int:
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    inp = stdin or sys.stdin
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        err.write(f"meadow: error: {exc}\n")
        return EXIT_INPUT
    except SystemExit as exc:  # --help
        return int(exc.code or 0)
    try:
        if args.command == "decide":
            return _cmd_decide(args, out, err, inp)
        if args.command == "axioms":
            return _cmd_axioms(args, out, err)
        handler = {
            "parse": _cmd_parse,
            "eval": _cmd_eval,
            "psi": _cmd_psi,
            "normalize": _cmd_normalize,
            "element": _cmd_element,
            "selftest": _cmd_selftest,
        }[args.command]
        return handler(args, out)
    except ParseError as exc:
        err.write(f"parse error at {exc}\n")
        return EXIT_INPUT
    except (_UsageError, ValueError, OverflowError) as exc:
        err.write(f"meadow: error: {exc}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
