"""Command-line interface.

Every subcommand takes the global flags --depth, --max-prime, --format, and
--seed; rationals on the command line are ASCII "n" or "n/d", never decimals.
Exit codes: 0 success (a "no" or "unknown" answer is still success), 1 domain
error (not a member, unsupported query, invalid monoid), 2 syntax error in an
expression, rational, or the invocation itself.  PUISEUX_FORMAT=json switches
the default output format; an explicit --format always wins.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from typing import Optional

from . import closure, factor, numsg
from .classify import classify, classify_json, witness_chain
from .errors import NotAMember, ParseError, PuiseuxError, UnsupportedQuery
from .exact import rat_from_text
from .model import FiniteGen, MonoidExpr, parse, to_text


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


def _prime_bound(text: str) -> int:
    value = int(text)
    if value < 2:
        raise argparse.ArgumentTypeError("must be at least 2")
    return value


def _build_parser() -> argparse.ArgumentParser:
    default_format = os.environ.get("PUISEUX_FORMAT", "text")
    if default_format not in ("text", "json"):
        default_format = "text"
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--depth", type=_positive_int, default=8,
                        help="power window / search depth (default 8)")
    common.add_argument("--max-prime", type=_prime_bound, default=100,
                        help="prime bound for windowed enumerations (default 100)")
    common.add_argument("--format", choices=("text", "json"), default=default_format,
                        help="output format (default text, or PUISEUX_FORMAT)")
    common.add_argument("--seed", type=int, default=0,
                        help="seed for sampled checks (default 0)")

    parser = argparse.ArgumentParser(prog="puiseux",
                                     description="exact Puiseux monoid toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name: str, fn, help_: str, *positional: str):
        p = sub.add_parser(name, parents=[common], help=help_)
        for arg in positional:
            p.add_argument(arg)
        p.set_defaults(fn=fn)
        return p

    cmd("parse", _cmd_parse, "parse an expression and print its canonical form", "expr")
    cmd("atoms", _cmd_atoms, "describe the atom set", "expr")
    cmd("member", _cmd_member, "tri-state membership with witness", "expr", "value")
    cmd("factorize", _cmd_factorize, "enumerate factorizations into atoms", "expr", "value")
    cmd("lengths", _cmd_lengths, "the set of factorization lengths", "expr", "value")
    cmd("closure", _cmd_closure, "root closure as numerator gcd and denominator set", "expr")
    cmd("conductor", _cmd_conductor, "conductor of the monoid in its closure", "expr")
    cmd("classify", _cmd_classify, "verdict vector over all properties", "expr")
    cmd("witness-chain", _cmd_witness_chain,
        "four monoids separating the implication chain")
    cmd("frobenius", _cmd_frobenius, "Frobenius number of the normalized monoid", "expr")
    cmd("apery", _cmd_apery, "Apery set relative to a nonzero element", "expr", "value")
    cmd("iso", _cmd_iso, "isomorphism test between two expressions", "left", "right")
    cmd("decompose", _cmd_decompose,
        "canonical prime-reciprocal decomposition of a rational", "value")
    return parser


def _emit(args, text: str, payload) -> int:
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print(text)
    return 0


def _cmd_parse(args) -> int:
    m = parse(args.expr)
    canonical = to_text(m)
    return _emit(args, canonical, {"canonical": canonical})


def _cmd_atoms(args) -> int:
    desc = factor.atoms(parse(args.expr))
    if desc is None:
        return _emit(args, "unknown",
                     {"kind": "unknown", "text": None, "count": None, "sample": []})
    count = desc.count()
    sample = [str(v) for v in desc.sample(args.depth)]
    payload = {"kind": type(desc).__name__, "text": desc.to_text(),
               "count": count, "sample": sample}
    return _emit(args, desc.to_text(), payload)


def _cmd_member(args) -> int:
    m = parse(args.expr)
    x = rat_from_text(args.value)
    verdict, witness = factor.member_bounded(m, x, args.depth)
    text = verdict if witness is None else f"{verdict} ({witness})"
    return _emit(args, text, {"verdict": verdict, "witness": witness})


def _cmd_factorize(args) -> int:
    m = parse(args.expr)
    x = rat_from_text(args.value)
    fz = factor.factorizations(m, x, args.depth, args.max_prime)
    lines = ["atoms: " + ", ".join(str(a) for a in fz.basis)]
    lines.extend("(" + ", ".join(map(str, vec)) + ")" for vec in fz.vectors)
    lines.append("complete" if fz.complete else f"incomplete: {fz.note}")
    payload = {
        "atoms": [str(a) for a in fz.basis],
        "vectors": [list(vec) for vec in fz.vectors],
        "complete": fz.complete,
        "note": fz.note,
    }
    return _emit(args, "\n".join(lines), payload)


def _cmd_lengths(args) -> int:
    m = parse(args.expr)
    x = rat_from_text(args.value)
    ls = factor.lengths(m, x, args.depth, args.max_prime)
    text = " ".join(map(str, ls.values))
    if not ls.complete:
        text += f"\nincomplete: {ls.note}"
    payload = {"values": ls.values, "complete": ls.complete, "note": ls.note}
    return _emit(args, text, payload)


def _cmd_closure(args) -> int:
    cd = closure.root_closure(parse(args.expr))
    return _emit(args, cd.to_text(), cd.to_json())


def _cmd_conductor(args) -> int:
    cd = closure.conductor(parse(args.expr))
    return _emit(args, cd.to_text(), cd.to_json())


def _cmd_classify(args) -> int:
    m = parse(args.expr)
    lines = []
    for pv in classify(m):
        line = f"{pv.property.value}: {pv.holds}"
        if pv.certificate:
            line += f"  [{pv.certificate}]"
        lines.append(line)
    return _emit(args, "\n".join(lines), classify_json(m))


def _cmd_witness_chain(args) -> int:
    rows = witness_chain()
    lines = []
    payload = []
    for w in rows:
        name = to_text(w.monoid)
        lines.append(f"{name}: {w.satisfied.value} yes, {w.violated.value} no")
        lines.append(f"  {w.satisfied.value}: {w.satisfied_certificate}")
        lines.append(f"  {w.violated.value}: {w.violated_certificate}")
        payload.append({
            "monoid": name,
            "satisfied": w.satisfied.value,
            "violated": w.violated.value,
            "satisfied_certificate": w.satisfied_certificate,
            "violated_certificate": w.violated_certificate,
        })
    return _emit(args, "\n".join(lines), payload)


def _require_finite_gen(m: MonoidExpr, what: str) -> FiniteGen:
    if not isinstance(m, FiniteGen):
        raise UnsupportedQuery(f"{what} needs a finitely generated expression <g1, ...>")
    return m


def _cmd_frobenius(args) -> int:
    m = _require_finite_gen(parse(args.expr), "frobenius")
    n = numsg.normalize(list(m.gens))
    f = numsg.frobenius(n)
    text = "none" if f is None else str(f)
    return _emit(args, text, {"monoid": str(n), "frobenius": f})


def _cmd_apery(args) -> int:
    m = _require_finite_gen(parse(args.expr), "apery")
    q = rat_from_text(args.value)
    n = numsg.normalize(list(m.gens))
    y = q * n.scale
    if y.denominator != 1 or y <= 0 or not numsg.member(n, int(y)):
        raise NotAMember(f"{q} is not a nonzero element of the monoid")
    values = [Fraction(a) / n.scale for a in numsg.apery(n, int(y))]
    text = " ".join(str(v) for v in values)
    payload = {"modulus": str(q), "apery": [str(v) for v in values]}
    return _emit(args, text, payload)


def _cmd_iso(args) -> int:
    verdict, q = closure.iso_check(parse(args.left), parse(args.right))
    text = verdict if q is None else f"{verdict} (multiply by {q})"
    payload = {"verdict": verdict, "factor": None if q is None else str(q)}
    return _emit(args, text, payload)


def _cmd_decompose(args) -> int:
    dec = factor.pr_decompose(rat_from_text(args.value))
    return _emit(args, dec.to_text(), dec.to_json())


def run(argv: list[str]) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        return args.fn(args)
    except ParseError as e:
        print(f"error[syntax] {e}", file=sys.stderr)
        return 2
    except PuiseuxError as e:
        print(f"error[{e.code}]: {e}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
