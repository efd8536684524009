"""Golden end-to-end runs checked against stored expectations."""

from __future__ import annotations

import difflib
from importlib import resources

from ..lattice import TorsionValue
from ..mmp import (
    ChainCurve,
    ChainSurface,
    Germ,
    partial_intersections,
    terminality_report,
    zariski_factorize,
)
from .render import machine_block, step_lines, step_pairs


def intro_chain() -> ChainSurface:
    """Four blowups of a regular point on a curve C ramified of order 3.

    The dual graph is (-3) (-1) (-3) (-1) with C attached to the last
    curve; beta ramifies on E1 and E3 only.
    """
    third = TorsionValue(1, 3)
    curves = (
        ChainCurve("E1", -3, 3, third),
        ChainCurve("E2", -1, 1, TorsionValue(0)),
        ChainCurve("E3", -3, 3, third * 2),
        ChainCurve("E4", -1, 1, TorsionValue(0)),
    )
    return ChainSurface(3, curves, None, Germ("C", 3, third))


EXAMPLES = {"intro": intro_chain}


def golden_pairs(chain: ChainSurface) -> list[tuple[str, object]]:
    pairs: list[tuple[str, object]] = []
    for c in chain.curves:
        pairs.append((f"ram.{c.label}", c.ram))
    for c in chain.curves:
        pi = partial_intersections(chain, c.label)
        pairs.append((f"k_dot.{c.label}", pi.k_dot))
        pairs.append((f"contractible.{c.label}", pi.k_dot < 0 and pi.self_sq < 0))
    pairs += step_pairs(zariski_factorize(chain))
    for c in chain.curves:
        ok = not terminality_report(chain.contract(c.label))
        pairs.append((f"first_contraction.{c.label}", "terminal" if ok else "not_terminal"))
    return pairs


def expectations_text(name: str) -> str:
    return resources.files("bhj.cli").joinpath("data", f"{name}.expected").read_text(encoding="utf-8")


def _lines(text: str) -> list[str]:
    return [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]


def run_example(name: str, expected: str | None = None) -> tuple[bool, str]:
    """Build the named example, render its transcript and compare.

    Returns (matches, transcript); on mismatch the transcript ends with
    a unified diff against the expectations.
    """
    chain = EXAMPLES[name]()
    pairs = golden_pairs(chain)
    actual = machine_block(pairs)
    expected = expectations_text(name) if expected is None else expected

    out = [f"example {name}: chain {' '.join(f'({c.selfint})' for c in chain.curves)}"]
    out.append("ramification: " + ", ".join(f"{c.label}:{c.ram.as_fraction()}" for c in chain.curves))
    out.append("contractibility on the fresh chain:")
    for c in chain.curves:
        pi = partial_intersections(chain, c.label)
        mark = "yes" if pi.k_dot < 0 and pi.self_sq < 0 else "no"
        out.append(f"  {c.label}: K.E = {pi.k_dot}, E^2 = {pi.self_sq}, contractible {mark}")
    out.append("factorization:")
    out += ["  " + ln for ln in step_lines(zariski_factorize(chain))]
    out.append("")
    out.append(actual)

    want, got = _lines(expected), _lines(actual)
    ok = want == got
    out.append("")
    if ok:
        out.append("PASS")
    else:
        out += difflib.unified_diff(want, got, "expected", "actual", lineterm="")
        out.append("FAIL")
    return ok, "\n".join(out) + "\n"
