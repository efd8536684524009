"""Terminality of a local configuration via the fan calculus.

Every exceptional curve over the closed point corresponds to a primitive
vector v of the ambient cone; its b-discrepancy is δ̄(v) - 1/order(z̄(v)).
Both failure modes force δ̄(v) <= 1, so a bounded scan decides the
question.  The verdict is cross-checked against the structural
description of the four terminal families.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, NamedTuple

from ..brauer import (
    E1_RAY,
    LocalConfig,
    delta_functional,
    fork_end_zeta,
    fork_reduce,
    ram_hom,
)
from ..errors import UnsupportedPrime
from ..lattice import (
    Cone,
    LatticeVector,
    RationalFunctional,
    TorsionHomomorphism,
    enumerate_primitive,
    eval_torsion,
)
from .screen import screen_regular_center
from .verdict import NotTerminal, Terminal, Unsupported, Verdict


class Violation(NamedTuple):
    vector: LatticeVector
    delta: Fraction
    order: int
    b: Fraction


def witness_key(v: Violation):
    """Smallest δ̄, then shortest vector, then lowest second coordinate."""
    return (v.delta, abs(v.vector.a) + abs(v.vector.b), v.vector.b, v.vector.a)


def curve_orders(cfg: LocalConfig) -> Callable[[LatticeVector], int]:
    """Ramification order of the curve attached to a vector."""
    if cfg.secondary:
        # cancelling secondary ramification: every exceptional curve is ramified
        return lambda v: cfg.p
    z = ram_hom(cfg)
    return lambda v: eval_torsion(z, v).order


def b_value(delta: Fraction, order: int) -> Fraction:
    return delta - Fraction(1, order)


def violations(
    vectors: Iterable[LatticeVector],
    delta: RationalFunctional,
    order_of: Callable[[LatticeVector], int],
) -> list[Violation]:
    out = []
    for v in vectors:
        d = delta.linear(v)
        o = order_of(v)
        b = b_value(d, o)
        if b <= 0:
            out.append(Violation(v, d, o, b))
    return out


def scan(cfg: LocalConfig) -> list[Violation]:
    """All curves over the point with b <= 0 (type A configurations)."""
    delta = delta_functional(cfg)
    order_of = curve_orders(cfg)
    return violations(enumerate_primitive(delta.cone, delta, Fraction(1)), delta, order_of)


def first_violations(
    cone: Cone,
    delta: RationalFunctional,
    order_of: Callable[[LatticeVector], int],
    start: Fraction = Fraction(1, 16),
) -> list[Violation]:
    """Violations with δ̄ below the first bound (growing by 4x up to 1)
    at which any exist.

    Every violation with δ̄ at most the final bound is returned, so the
    minimal witness is among them.  Large cones contain about det/2
    vectors with δ̄ <= 1, and this avoids listing them all.
    """
    bound = min(Fraction(start), Fraction(1))
    while True:
        bad = violations(enumerate_primitive(cone, delta, bound), delta, order_of)
        if bad or bound == 1:
            return bad
        bound = min(bound * 4, Fraction(1))


def match_case(cfg: LocalConfig) -> int | None:
    """Which of the four terminal families the configuration belongs to."""
    if cfg.fork is not None or cfg.tangency_d is not None:
        return None
    branches = [b for b in cfg.branches if b.n > 1]
    if cfg.secondary:
        if cfg.ambient.is_regular and len(branches) == 2 and all(b.g == 1 for b in branches):
            return 3
        return None
    ramified = [b for b in branches if b.e > 1]
    pure_g = [b for b in branches if b.g > 1]
    if cfg.ambient.is_regular:
        if not ramified and len(pure_g) <= 1:
            return 1
        if len(ramified) == 1 and len(branches) - 1 == len(pure_g):
            return 2
        return None
    if cfg.ambient.m == cfg.p and not ramified and not cfg.zbar.is_zero and len(pure_g) <= 1:
        return 4
    return None


def classify(cfg: LocalConfig) -> Verdict:
    if cfg.tangency_d is not None:
        return _classify_tangential(cfg)
    if cfg.fork is not None:
        return _classify_fork(cfg)
    delta = delta_functional(cfg)
    bad = first_violations(delta.cone, delta, curve_orders(cfg))  # validates z̄ too
    case = match_case(cfg)
    if cfg.p == 2:
        return Unsupported("the classification is proven for odd p only")
    if cfg.p <= 5:
        if case is not None:
            if bad:
                raise RuntimeError(f"case {case} configuration has a violating curve {bad[0]}")
            return Terminal(case, sufficiency_only=True)
        detail = ""
        if bad:
            w = min(bad, key=witness_key)
            detail = f"; curve {w.vector} has b={w.b}"
        return Unsupported(f"p={cfg.p} outside cases (1)-(4) is not classified{detail}")
    if bad:
        if case is not None:
            raise RuntimeError(f"case {case} configuration has a violating curve {bad[0]}")
        w = min(bad, key=witness_key)
        return NotTerminal(w.vector, w.b, w.delta, w.order)
    if case is None:
        raise RuntimeError(f"no violating curve, yet {cfg} matches none of the four cases")
    return Terminal(case)


def fork_violations(cfg: LocalConfig) -> tuple[str, list[Violation]]:
    red = fork_reduce(cfg)
    red.check(cfg.zbar, fork_end_zeta(cfg))
    order_of = lambda v: eval_torsion(cfg.zbar, v).order  # noqa: E731
    bad = violations([E1_RAY] if red.first_ray_is_curve else [], red.delta, order_of)
    bad += first_violations(red.spectrum, red.delta, order_of)
    return red.kind, bad


def _classify_fork(cfg: LocalConfig) -> Verdict:
    try:
        kind, bad = fork_violations(cfg)
    except UnsupportedPrime as exc:
        return Unsupported(str(exc))
    if not bad:
        raise RuntimeError(f"type {cfg.fork.kind} configuration without a violating curve")
    w = min(bad, key=witness_key)
    return NotTerminal(w.vector, w.b, w.delta, w.order, reason=f"type {kind} reduction")


def _classify_tangential(cfg: LocalConfig) -> Verdict:
    if cfg.p == 2:
        return Unsupported("tangential branches for p=2 are screened, not classified")
    n1, n2 = sorted(b.n for b in cfg.branches)
    res = screen_regular_center(2, cfg.tangency_d, n1, n2, cfg.secondary, True)
    if res.passed:
        return Unsupported(res.reason)
    return NotTerminal(None, res.bound, reason=f"tangential screen: {res.reason}")


def ramification_of(cfg: LocalConfig) -> TorsionHomomorphism | None:
    return None if cfg.secondary else ram_hom(cfg)


def ambient_cone(cfg: LocalConfig) -> Cone:
    return delta_functional(cfg).cone
