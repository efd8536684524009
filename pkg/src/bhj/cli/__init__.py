"""Command-line front end.

Exit codes:
  0  success / Terminal / golden run matches
  1  usage, parse or validation error
  2  NotTerminal (classify), non-terminal input (blowup), stuck or
     non-terminal chain (factorize)
  3  Unsupported verdict (classify)
  4  golden run differs from its expectations (example)
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from ..brauer import LocalConfig
from ..errors import BHJError, NotTerminalInput, StuckState, TerminalityViolation
from ..hjstring import FractionPair, determinant, parse_weights, weights_from_fraction
from ..lattice import (
    Cone,
    LatticeVector,
    RationalFunctional,
    TorsionHomomorphism,
    char_exclusion_set,
    enumerate_primitive,
    eval_rational,
    eval_torsion,
    exclusion_from_env,
)
from ..mmp import ChainSurface, NotTerminal, Terminal, beta_blowup, classify, zariski_factorize
from . import documents
from .golden import EXAMPLES, run_example
from .render import dot_graph, machine_block, step_lines, step_pairs, verdict_report

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_NOT_TERMINAL = 2
EXIT_UNSUPPORTED = 3
EXIT_MISMATCH = 4


class UsageError(BHJError):
    pass


def _load(path: str, kind: type):
    try:
        obj = documents.load(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    if not isinstance(obj, kind):
        want = "local_config" if kind is LocalConfig else "chain_surface"
        raise UsageError(f"{path}: expected a {want} document")
    return obj


def cmd_det(args) -> int:
    s = parse_weights(args.weights or "")
    print(determinant(s))
    return EXIT_OK


def cmd_cf(args) -> int:
    try:
        m, k = (int(x) for x in args.fraction.split("/"))
    except ValueError:
        raise UsageError(f"expected M/K with integers, got {args.fraction!r}") from None
    print(weights_from_fraction(FractionPair(m, k)))
    return EXIT_OK


def cmd_classify(args) -> int:
    cfg = _load(args.file, LocalConfig)
    v = classify(cfg)
    sys.stdout.write(verdict_report(v))
    if isinstance(v, Terminal):
        return EXIT_OK
    if isinstance(v, NotTerminal):
        return EXIT_NOT_TERMINAL
    return EXIT_UNSUPPORTED


def cmd_blowup(args) -> int:
    cfg = _load(args.file, LocalConfig)
    try:
        chain, steps = beta_blowup(cfg)
    except NotTerminalInput as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_TERMINAL
    doc = documents.emit(chain)
    dot = dot_graph(chain)
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8") as fh:
            fh.write(doc)
    if args.dot_out:
        with open(args.dot_out, "w", encoding="utf-8") as fh:
            fh.write(dot)
    sys.stdout.write(doc)
    print()
    sys.stdout.write(dot)
    print()
    print("\n".join(step_lines(steps)))
    print()
    print(machine_block(step_pairs(steps)))
    return EXIT_OK


def cmd_factorize(args) -> int:
    chain = _load(args.file, ChainSurface)
    try:
        steps = zariski_factorize(chain)
    except StuckState as exc:
        print(f"StuckState: {exc}")
        print(machine_block([("status", "stuck")]))
        return EXIT_NOT_TERMINAL
    except TerminalityViolation as exc:
        print(f"TerminalityViolation: {exc}")
        print(machine_block([("status", "not_terminal")]))
        return EXIT_NOT_TERMINAL
    print("\n".join(step_lines(steps)))
    print()
    print(machine_block([("status", "ok")] + step_pairs(steps)))
    return EXIT_OK


def _pairs(text: str, what: str, conv) -> tuple:
    parts = [p for p in text.split(";")]
    if len(parts) != 2:
        raise UsageError(f"{what} needs two entries separated by ';', got {text!r}")
    try:
        return tuple(conv(p.strip()) for p in parts)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed {what} {text!r}") from None


def _vector(text: str) -> LatticeVector:
    a, b = (int(x) for x in text.split(","))
    return LatticeVector(a, b)


def cmd_enumerate(args) -> int:
    u, w = _pairs(args.cone, "cone", _vector)
    vu, vw = _pairs(args.values, "values", Fraction)
    try:
        bound = Fraction(args.bound)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"malformed bound {args.bound!r}") from None
    z = TorsionHomomorphism.zero()
    if args.zbar:
        z = TorsionHomomorphism(*_pairs(args.zbar, "zbar", documents.parse_torsion))
    cone = Cone(u, w)
    f = RationalFunctional(vu, vw, cone)
    rows = enumerate_primitive(cone, f, bound)
    print(f"{'vector':>10}  {'delta':>8}  {'zbar':>12}  {'order':>5}  {'b':>8}")
    pairs: list[tuple[str, object]] = [("count", len(rows))]
    for i, v in enumerate(rows, start=1):
        d = eval_rational(f, v)
        t = eval_torsion(z, v)
        b = d - Fraction(1, t.order)
        print(f"{str(v):>10}  {str(d):>8}  {str(t):>12}  {t.order:>5}  {str(b):>8}")
        pairs += [(f"row{i}.vector", f"{v.a},{v.b}"), (f"row{i}.delta", d), (f"row{i}.order", t.order), (f"row{i}.b", b)]
    print()
    print(machine_block(pairs))
    return EXIT_OK


def cmd_example(args) -> int:
    if args.name not in EXAMPLES:
        raise UsageError(f"unknown example {args.name!r}; available: {', '.join(sorted(EXAMPLES))}")
    expected = None
    if args.expectations:
        try:
            with open(args.expectations, encoding="utf-8") as fh:
                expected = fh.read()
        except OSError as exc:
            raise UsageError(f"cannot read {args.expectations}: {exc.strerror}") from None
    ok, transcript = run_example(args.name, expected)
    sys.stdout.write(transcript)
    return EXIT_OK if ok else EXIT_MISMATCH


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bhj", description="Terminality and contractions for prime-index Brauer pairs.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("det", help="determinant of a weight string, e.g. 3,2,2")
    p.add_argument("weights", nargs="?", default="")
    p.set_defaults(func=cmd_det)

    p = sub.add_parser("cf", help="weights of the minus continued fraction of M/K")
    p.add_argument("fraction", metavar="M/K")
    p.set_defaults(func=cmd_cf)

    p = sub.add_parser("classify", help="classify a local_config document")
    p.add_argument("file")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("blowup", help="Castelnuovo extraction over a terminal point")
    p.add_argument("file")
    p.add_argument("--json-out", help="also write the chain_surface document here")
    p.add_argument("--dot-out", help="also write the DOT dual graph here")
    p.set_defaults(func=cmd_blowup)

    p = sub.add_parser("factorize", help="Zariski factorization of a chain_surface document")
    p.add_argument("file")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("enumerate", help="primitive vectors of a cone below a bound")
    p.add_argument("--cone", required=True, help='"a,b;c,d"')
    p.add_argument("--values", required=True, help='"p/q;r/s" at the two rays')
    p.add_argument("--bound", required=True, help="p/q")
    p.add_argument("--zbar", help='"x/y;z/w" on (1,0) and (0,1)')
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("example", help="golden run with stored expectations")
    p.add_argument("name")
    p.add_argument("--expectations", help="override the stored expectation file")
    p.set_defaults(func=cmd_example)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        with char_exclusion_set(exclusion_from_env()):
            return args.func(args)
    except (BHJError, ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR
