"""Command-line front end: `lambda-taylor <command> [options] [TERM]`.

The term comes from the positional argument or, when absent, from stdin.
`check` and `commute` print JSON reports unless `--no-json` is given.
Exit codes: 0 success, 1 parse error, 2 lemma failure, 3 bad arguments.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import oracles
from .groupoid import aut_card
from .lambda_oplus import bohm_approx, iterate_L
from .resource import multiplicity, normal_form, step_L_sum
from .rigid import ZERO, rigid_nf, rigid_step_L
from .sums import FormalSum
from .syntax import (
    ParseError, parse_lambda, parse_resource, parse_rigid, parse_sum, show_lambda,
    show_resource, show_rigid, show_sum, sum_to_json,
)
from .taylor import nf_taylor, taylor_coeff, taylor_support_sorted, taysup_bt

EXIT_OK, EXIT_PARSE, EXIT_LEMMA, EXIT_USAGE = 0, 1, 2, 3
JSON_ENV = "LAMBDA_TAYLOR_JSON"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _json_default() -> bool:
    return os.environ.get(JSON_ENV, "").strip().lower() in ("1", "true", "yes", "on")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="lambda-taylor", description="Taylor expansion of the nondeterministic lambda calculus.")
    p.add_argument("--json", action="store_true", default=None, help=f"JSON output (default from ${JSON_ENV})")
    p.add_argument("--no-json", dest="json", action="store_false", help="human-readable output")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def cmd(name, help_, term=True):
        c = sub.add_parser(name, help=help_)
        if term:
            c.add_argument("term", nargs="?", help="input term (stdin if omitted)")
        return c

    c = cmd("parse", "parse and print in canonical form")
    c.add_argument("--calculus", choices=("lambda", "resource", "rigid"), default="lambda")
    c = cmd("reduce", "apply the reduction strategy")
    c.add_argument("--calculus", choices=("lambda", "resource", "rigid"), default="lambda")
    c.add_argument("--steps", type=int, help="number of steps (default: to normal form, not for lambda)")
    c = cmd("bohm", "finite Bohm approximant")
    c.add_argument("--depth", type=int, required=True)
    c = cmd("taylor", "Taylor support up to a size")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--coeffs", action="store_true", help="print coefficients 1/m(s)")
    c = cmd("nf-taylor", "normal form of the truncated Taylor expansion")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--depth", type=int, required=True, help="Bohm depth for the comparison support")
    cmd("m", "multiplicity of a resource expression")
    cmd("aut", "number of automorphisms of a rigid expression")
    c = cmd("check", "randomized lemma check", term=False)
    c.add_argument("--lemma", required=True, help="lemma id, or 'all'")
    c.add_argument("--seed", type=int, default=1)
    c.add_argument("--count", type=int, default=100)
    c.add_argument("--max-size", type=int, default=12)
    c = cmd("commute", "end-to-end commutation check on a lambda term")
    c.add_argument("--size", type=int, required=True)
    c.add_argument("--depth", type=int, required=True)
    return p


def _read_term(args, stdin) -> str:
    text = args.term if args.term is not None else stdin.read()
    if not text.strip():
        raise UsageError("no input term")
    return text.strip()


def _natural(value, flag):
    if value is not None and value < 0:
        raise UsageError(f"{flag} must be a natural number")


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, ensure_ascii=False)


def _reduce(args, text, as_json):
    steps = args.steps
    if args.calculus == "lambda":
        if steps is None:
            raise UsageError("--steps is required for the lambda calculus (it need not terminate)")
        out = show_lambda(iterate_L(parse_lambda(text), steps))
        return _dump({"result": out}) if as_json else out
    if args.calculus == "resource":
        s = parse_sum(text)
        if steps is None:
            s = normal_form(s)
        else:
            for _ in range(steps):
                s = step_L_sum(s)
        return _dump({"result": sum_to_json(s)}) if as_json else show_sum(s)
    r = parse_rigid(text)
    if steps is None:
        r = rigid_nf(r)
    else:
        for _ in range(steps):
            if r is ZERO:
                break
            r = rigid_step_L(r)
    out = show_rigid(r)
    return _dump({"result": out}) if as_json else out


def _report(rep, as_json) -> tuple[str, int]:
    code = EXIT_OK if rep.ok else EXIT_LEMMA
    if as_json:
        return rep.to_json(), code
    status = "ok" if rep.ok else f"{len(rep.failures)} failures"
    lines = [f"{rep.lemma_id}: {rep.instances_checked} checked, {status}"]
    lines += [_dump(f) for f in rep.failures[:10]]
    return "\n".join(lines), code


def run(argv: list[str], stdin=None) -> tuple[str, int]:
    """Execute one command; returns (output text, exit code)."""
    stdin = sys.stdin if stdin is None else stdin
    args = _build_parser().parse_args(argv)
    if args.json is not None:
        as_json = args.json
    else:
        # verification reports are machine-oriented; they default to JSON
        as_json = args.command in ("check", "commute") or _json_default()
    for flag in ("steps", "depth", "size", "count", "max_size"):
        _natural(getattr(args, flag, None), "--" + flag.replace("_", "-"))
    c = args.command

    if c == "check":
        ids = sorted(oracles.LEMMAS) if args.lemma == "all" else [args.lemma]
        if any(i not in oracles.LEMMAS for i in ids):
            raise UsageError(f"unknown lemma id {args.lemma!r}; known: {', '.join(sorted(oracles.LEMMAS))}")
        reps = [oracles.check_lemma(i, args.seed, args.count, args.max_size) for i in ids]
        outs = [_report(r, as_json) for r in reps]
        return "\n".join(o for o, _ in outs), max(code for _, code in outs)

    text = _read_term(args, stdin)
    if c == "parse":
        parse, show = {"lambda": (parse_lambda, show_lambda), "resource": (parse_resource, show_resource),
                       "rigid": (parse_rigid, show_rigid)}[args.calculus]
        out = show(parse(text))
        return (_dump({"term": out}) if as_json else out), EXIT_OK
    if c == "reduce":
        return _reduce(args, text, as_json), EXIT_OK
    if c == "m":
        n = multiplicity(parse_resource(text))
        return (_dump({"m": n}) if as_json else str(n)), EXIT_OK
    if c == "aut":
        n = aut_card(parse_rigid(text))
        return (_dump({"aut": n}) if as_json else str(n)), EXIT_OK

    m = parse_lambda(text)
    if c == "bohm":
        out = show_lambda(bohm_approx(m, args.depth))
        return (_dump({"approximant": out}) if as_json else out), EXIT_OK
    if c == "taylor":
        supp = taylor_support_sorted(m, args.size)
        if as_json:
            items = [{"expr": show_resource(s)} for s in supp]
            if args.coeffs:
                for it, s in zip(items, supp):
                    q = taylor_coeff(m, s)
                    it.update(num=str(q.numerator), den=str(q.denominator))
            return _dump({"size": args.size, "support": items}), EXIT_OK
        if args.coeffs:
            return show_sum(FormalSum({s: taylor_coeff(m, s) for s in supp})), EXIT_OK
        return "\n".join(show_resource(s) for s in supp), EXIT_OK
    if c == "nf-taylor":
        nf = nf_taylor(m, args.size)
        bt = sorted(taysup_bt(m, args.depth, args.size))
        if as_json:
            return _dump({"nf": sum_to_json(nf), "bt_support": [show_resource(t) for t in bt]}), EXIT_OK
        return f"NF: {show_sum(nf)}\nT(BT) support: {{{', '.join(map(show_resource, bt))}}}", EXIT_OK
    if c == "commute":
        return _report(oracles.commutation_check(m, args.size, args.depth), as_json)
    raise UsageError(f"unknown command {c!r}")


def main(argv: list[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        out, code = run(argv)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UsageError as exc:
        print(f"lambda-taylor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, KeyError) as exc:
        print(f"lambda-taylor: {exc}", file=sys.stderr)
        return EXIT_USAGE
    if out:
        print(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
