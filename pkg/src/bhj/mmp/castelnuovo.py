"""Extractions over a terminal point: the β-blowup and the terminal model.

An extraction is described by the rays of the curves it keeps; the
minimal resolution of the extracted surface is the chain of all rays of
the Hirzebruch-Jung resolutions of the subcones in between.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from ..brauer import LocalConfig
from ..errors import NotTerminalInput, TerminalityViolation, UnsupportedConfig, ValidationError
from ..fan import chain_images
from ..hjstring import HJString, cone_weights, minimal_string, normal_form, weights_from_fraction
from ..lattice import (
    Cone,
    LatticeVector,
    RationalFunctional,
    apply,
    cross,
    enumerate_primitive,
    eval_torsion,
    unimodular_inverse,
)
from .chain import (
    RAMIFIED,
    ChainCurve,
    ChainSurface,
    ContractionStep,
    CurveData,
    Germ,
    local_config_for_cone,
    terminality_report,
    zariski_factorize,
)
from .classify import classify, ramification_of, scan
from .verdict import Terminal


def resolution_rays(u: LatticeVector, w: LatticeVector) -> list[LatticeVector]:
    """Rays of the minimal resolution strictly between u and w."""
    A, pair = normal_form(u, w)
    if pair.k == 0:
        return []
    Ainv = unimodular_inverse(A)
    imgs = chain_images(weights_from_fraction(pair))[1:-1]
    return [apply(Ainv, v) for v in imgs]


def sort_rays(cfg: LocalConfig, rays: Sequence[LatticeVector]) -> list[LatticeVector]:
    cone = Cone(*cfg.rays)
    for v in rays:
        if not (v.primitive and cone.contains(v, open=True)):
            raise ValidationError(f"{v} is not a primitive vector inside the cone")
    return sorted(set(rays), key=cone.angle_key)


def ray_data(cfg: LocalConfig, v: LatticeVector) -> CurveData:
    """Index and ramification of the curve with ray v (boundary or exceptional)."""
    b = cfg.branch_at(v)
    if v in cfg.rays:
        if b is None:
            return CurveData(1, eval_torsion(cfg.zbar, v))
        return CurveData(b.n, RAMIFIED if b.secondary else b.zeta)
    if cfg.secondary:
        return CurveData(cfg.p, RAMIFIED)
    z = eval_torsion(cfg.zbar, v)
    return CurveData(z.order, z)


def chain_from_rays(cfg: LocalConfig, rays: Sequence[LatticeVector]) -> ChainSurface:
    """Minimal resolution of the extraction keeping the curves of ``rays``."""
    if cfg.fork is not None or cfg.tangency_d is not None:
        raise UnsupportedConfig("extractions are modelled for chain configurations only")
    ramification_of(cfg)  # validates z̄
    u, w = cfg.rays
    kept = sort_rays(cfg, rays)
    walls = [u] + kept + [w]
    seq: list[LatticeVector] = []
    for x, y in zip(walls, walls[1:]):
        seq.extend(resolution_rays(x, y))
        seq.append(y)
    seq.pop()
    full = [u] + seq + [w]
    curves = []
    for i, v in enumerate(seq, start=1):
        total = full[i - 1] + full[i + 1]
        m = total.a // v.a if v.a else total.b // v.b
        if m * v != total:
            raise AssertionError(f"rays {full[i - 1]}, {v}, {full[i + 1]} break the chain relation")
        d = ray_data(cfg, v)
        curves.append(ChainCurve(f"E{i}", -m, d.n, d.ram, ray=v))
    germs = []
    for tag, ray in (("C0", u), ("C1", w)):
        b = cfg.branch_at(ray)
        if b is None:
            germs.append(None)
        else:
            d = ray_data(cfg, ray)
            germs.append(Germ(tag, d.n, d.ram))
    contracted = {c.label for c in curves if c.ray not in kept}
    return ChainSurface(cfg.p, tuple(curves), germs[0], germs[1], frozenset(contracted))


def castelnuovo_ray(cfg: LocalConfig, case: int) -> LatticeVector:
    u, w = cfg.rays
    if case in (1, 3):
        return u + w
    if case == 2:
        c = next(b.ray for b in cfg.branches if b.e > 1)
        other = w if c == u else u
        return cfg.p * c + other
    if case == 4:
        k = cfg.ambient.k
        return LatticeVector(1, 0) if k == 1 else LatticeVector(cfg.p, 1 - k)
    raise ValueError(f"unknown case {case}")


def beta_blowup(cfg: LocalConfig) -> tuple[ChainSurface, list[ContractionStep]]:
    """The unique Castelnuovo extraction over a terminal point.

    Returns the minimal resolution of the extracted surface Y (with the
    curves over its singular points marked contracted) and the
    factorization of Y -> X.
    """
    verdict = classify(cfg)
    if not isinstance(verdict, Terminal):
        raise NotTerminalInput(f"configuration is not terminal: {verdict}")
    chain = chain_from_rays(cfg, [castelnuovo_ray(cfg, verdict.case)])
    return chain, zariski_factorize(chain)


def singular_points(chain: ChainSurface) -> list[HJString]:
    return [minimal_string([chain.curves[j].weight for j in comp]) for comp in chain.components()]


def extraction_candidates(cfg: LocalConfig) -> list[LatticeVector]:
    """Rays whose single-curve extraction leaves a terminal surface.

    Terminal cyclic quotient points have determinant 1 or p, so both
    subcones of a candidate have determinant at most p; that box is
    scanned exhaustively.
    """
    u, w = cfg.rays
    cone = Cone(u, w)
    d = cone.det
    box = RationalFunctional(Fraction(1), Fraction(1), cone)
    found = []
    for v in enumerate_primitive(cone, box, Fraction(2 * cfg.p, d)):
        if abs(cross(u, v)) > cfg.p or abs(cross(v, w)) > cfg.p:
            continue
        if not terminality_report(chain_from_rays(cfg, [v])):
            found.append(v)
    return found


def terminal_model(cfg: LocalConfig) -> tuple[list[LatticeVector], list[HJString]]:
    """Extract every curve with b <= 0; the remaining points are terminal."""
    if cfg.fork is not None or cfg.tangency_d is not None:
        raise UnsupportedConfig("terminal models are built for chain configurations only")
    verdict = classify(cfg)
    if isinstance(verdict, Terminal):
        return [], [cfg.ambient.string]
    if cfg.p <= 5:
        raise UnsupportedConfig(f"p={cfg.p}: {verdict}")
    u, w = cfg.rays
    extracted = sort_rays(cfg, [v.vector for v in scan(cfg)])
    walls = [u] + extracted + [w]
    zbar = ramification_of(cfg)
    sings = []
    for x, y in zip(walls, walls[1:]):
        sing_cfg = local_config_for_cone(cfg.p, x, y, ray_data(cfg, x), ray_data(cfg, y), zbar)
        v = classify(sing_cfg)
        if not isinstance(v, Terminal):
            raise TerminalityViolation(f"subcone ({x},{y}) is not terminal: {v}")
        sings.append(cone_weights((x, y)))
    return extracted, sings

