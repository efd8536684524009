from fractions import Fraction

from oracles import OracleConfig, grid

from bhj.brauer import Ambient, BranchGerm, LocalConfig, UnramifiedCover, ram_hom
from bhj.errors import ValidationError
from bhj.lattice import TorsionHomomorphism, TorsionValue, eval_torsion


def hom(z1, z2) -> TorsionHomomorphism:
    return TorsionHomomorphism(TorsionValue.of(Fraction(z1)), TorsionValue.of(Fraction(z2)))


def build_config(p, m, k, bu, bw, z) -> LocalConfig:
    """A LocalConfig from a grid entry; raises ValidationError if inconsistent."""
    amb = Ambient.regular() if m == 1 else Ambient.hj(m, k)
    zh = hom(*z)
    branches = []
    for ray, kind in ((amb.cone.u, bu), (amb.end_ray, bw)):
        if kind is None:
            continue
        e, g = kind
        branches.append(BranchGerm(ray, e, g, UnramifiedCover(eval_torsion(zh, ray))))
    cfg = LocalConfig(p, amb, tuple(branches), zh)
    ram_hom(cfg)
    return cfg


def oracle_config(p, m, k, bu, bw, z) -> OracleConfig:
    n = lambda b: 1 if b is None else b[0] * b[1]  # noqa: E731
    return OracleConfig(p, m, k, n(bu), n(bw), z)


def consistent_grid(p, max_m=12):
    for entry in grid(p, max_m):
        try:
            cfg = build_config(p, *entry)
        except ValidationError:
            continue
        yield entry, cfg
