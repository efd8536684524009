"""Local data of a prime-index Brauer class on a surface germ.

A configuration records the ambient germ (regular, or a cyclic quotient
singularity HJ(m, k) with cone ((0,1), (m,-k))), the ramification
branches through the closed point, and the ramification homomorphism
z̄ on the standard basis.  From it we build the two functionals that
govern terminality: the delta-discrepancy δ̄ and the ramification z̄.

Conventions
-----------
* Secondary ramification is recorded by its value at the closed point of
  the local model.  At a node the two local values cancel when they sum
  to zero in Q/Z.
* Restriction to an index-r subgroup multiplies values by r and
  corestriction is the identity on values.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .errors import (
    InconsistentRamification,
    SecondaryRamPresent,
    UnsupportedPrime,
    ValidationError,
)
from .fan import chain_images
from .hjstring import FractionPair, HJString, determinant, weights_from_fraction
from .lattice import (
    ZERO,
    Cone,
    LatticeVector,
    RationalFunctional,
    TorsionHomomorphism,
    TorsionValue,
    char_exclusion,
    check_excluded,
    eval_torsion,
)

U_RAY = LatticeVector(0, 1)
E1_RAY = LatticeVector(1, 0)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class UnramifiedCover:
    """The residue of the class along the branch is a character of order e."""

    zeta: TorsionValue


@dataclass(frozen=True)
class RamifiedCover:
    """The residue cover of the branch is itself ramified at marked points.

    Only the value at the closed point of the local model (index 0) takes
    part in any computation here.
    """

    local_values: tuple[TorsionValue, ...]

    def __post_init__(self):
        vals = tuple(self.local_values)
        if not vals:
            raise ValidationError("a ramified cover needs at least one local value")
        object.__setattr__(self, "local_values", vals)

    @property
    def at_closed_point(self) -> TorsionValue:
        return self.local_values[0]


Cover = Union[UnramifiedCover, RamifiedCover]


@dataclass(frozen=True)
class BranchGerm:
    ray: LatticeVector
    e: int = 1
    g: int = 1
    cover: Cover | None = None

    def __post_init__(self):
        if self.e < 1 or self.g < 1:
            raise ValidationError(f"indices must be positive: e={self.e}, g={self.g}")
        check_excluded(self.e)
        check_excluded(self.g)
        if self.cover is None:
            if self.e != 1:
                raise ValidationError("a branch with e > 1 needs its cover data")
            object.__setattr__(self, "cover", UnramifiedCover(ZERO))
        cov = self.cover
        if isinstance(cov, UnramifiedCover):
            if cov.zeta.order != self.e:
                raise ValidationError(
                    f"cover value {cov.zeta} has order {cov.zeta.order}, expected e={self.e}"
                )
        else:
            if self.e == 1:
                raise ValidationError("a ramified cover needs e > 1")
            if cov.at_closed_point.is_zero:
                raise ValidationError("secondary ramification at the closed point must be non-zero")
            for t in cov.local_values:
                if self.e % t.order:
                    raise ValidationError(f"local value {t} has order not dividing e={self.e}")

    @property
    def n(self) -> int:
        return self.e * self.g

    @property
    def secondary(self) -> bool:
        return isinstance(self.cover, RamifiedCover)

    @property
    def zeta(self) -> TorsionValue:
        if isinstance(self.cover, RamifiedCover):
            raise SecondaryRamPresent("branch has a ramified cover")
        return self.cover.zeta


@dataclass(frozen=True)
class Ambient:
    """Regular germ (m, k) = (1, 0) or the quotient singularity HJ(m, k)."""

    m: int = 1
    k: int = 0

    def __post_init__(self):
        FractionPair(self.m, self.k)

    @classmethod
    def regular(cls) -> Ambient:
        return cls(1, 0)

    @classmethod
    def hj(cls, m: int, k: int) -> Ambient:
        if m < 2:
            raise ValidationError("HJ(m, k) needs m >= 2")
        return cls(m, k)

    @property
    def is_regular(self) -> bool:
        return self.m == 1

    @property
    def end_ray(self) -> LatticeVector:
        return LatticeVector(self.m, -self.k)

    @property
    def cone(self) -> Cone:
        return Cone(U_RAY, self.end_ray)

    @property
    def string(self) -> HJString:
        if self.is_regular:
            return HJString(())
        return weights_from_fraction(FractionPair(self.m, self.k))

    def __str__(self) -> str:
        return "Regular" if self.is_regular else f"HJ({self.m},{self.k})"


@dataclass(frozen=True)
class ForkData:
    """A resolution graph of type B, C or D.

    chain_weights are m_1..m_r of the chain E_1..E_r leading from the fork
    to the boundary curve E_{r+1}.  Type B also needs the weight m_0 of the
    curve E_0 sitting over the residue field.
    """

    kind: str
    chain_weights: tuple[int, ...]
    end_weight: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "chain_weights", tuple(int(x) for x in self.chain_weights))
        if self.kind not in ("B", "C", "D"):
            raise ValidationError(f"fork kind must be B, C or D, got {self.kind!r}")
        if not self.chain_weights or any(x < 2 for x in self.chain_weights):
            raise ValidationError("fork chains need at least one curve, all weights >= 2")
        if self.kind == "B":
            if self.end_weight is None or self.end_weight < 1:
                raise ValidationError("type B needs a positive end_weight")
        elif self.end_weight is not None:
            raise ValidationError(f"type {self.kind} takes no end_weight")
        reduced = reduced_fork_string(self)
        prefix = []
        for m in reduced:
            prefix.append(m)
            if determinant(prefix) < 1:
                raise ValidationError(f"fork graph is not negative definite (reduced {reduced})")


def reduced_fork_string(fork: ForkData) -> HJString:
    w = fork.chain_weights
    if fork.kind == "B":
        return HJString(tuple(reversed(w)) + (fork.end_weight,) + w)
    return HJString((w[0] - 1,) + w[1:])


@dataclass(frozen=True)
class LocalConfig:
    p: int
    ambient: Ambient = field(default_factory=Ambient)
    branches: tuple[BranchGerm, ...] = ()
    zbar: TorsionHomomorphism = field(default_factory=TorsionHomomorphism.zero)
    tangency_d: int | None = None
    fork: ForkData | None = None

    def __post_init__(self):
        object.__setattr__(self, "branches", tuple(self.branches))
        validate(self)

    @property
    def secondary(self) -> bool:
        return any(b.secondary for b in self.branches)

    def branch_at(self, ray: LatticeVector) -> BranchGerm | None:
        for b in self.branches:
            if b.ray == ray:
                return b
        return None

    @property
    def rays(self) -> tuple[LatticeVector, LatticeVector]:
        """The two boundary rays on which branches may sit."""
        if self.fork is not None:
            return U_RAY, chain_images(reduced_fork_string(self.fork))[-1]
        return U_RAY, self.ambient.end_ray


def validate(cfg: LocalConfig) -> None:
    p = cfg.p
    if not is_prime(p):
        raise ValidationError(f"index p={p} is not prime")
    if p in char_exclusion():
        raise ValidationError(f"p={p} lies in the residue-characteristic exclusion set")
    if len(cfg.branches) > 2:
        raise ValidationError("at most two branches pass through the closed point")
    for b in cfg.branches:
        if b.n not in (1, p):
            raise ValidationError(f"branch on {b.ray} has n = e*g = {b.n}, not 1 or p={p}")
    for t in (cfg.zbar.value_e1, cfg.zbar.value_e2):
        if p % t.order:
            raise ValidationError(f"z̄ value {t} is not p-torsion")
    if cfg.tangency_d is not None:
        if cfg.tangency_d < 2:
            raise ValidationError("tangency order must be at least 2")
        if len(cfg.branches) != 2 or cfg.fork is not None:
            raise ValidationError("tangential configurations have exactly two branches and no fork")
        return
    rays = cfg.rays
    seen = set()
    for b in cfg.branches:
        if b.ray not in rays:
            raise ValidationError(f"branch ray {b.ray} is not a boundary ray {rays}")
        if b.ray in seen:
            raise ValidationError(f"two branches on the ray {b.ray}")
        seen.add(b.ray)
    if cfg.fork is not None:
        if cfg.branch_at(U_RAY) is not None:
            raise ValidationError("fork configurations carry a branch only on the far boundary")
        if cfg.secondary:
            raise ValidationError("fork configurations with secondary ramification are not modelled")
        return
    ramified = [b for b in cfg.branches if b.secondary]
    if ramified:
        if len(ramified) != 2:
            raise InconsistentRamification(
                "secondary ramification at the closed point cannot cancel with a single branch"
            )
        total = ramified[0].cover.at_closed_point + ramified[1].cover.at_closed_point
        if not total.is_zero:
            raise InconsistentRamification(
                f"secondary ramification does not cancel at the node (sum {total})"
            )


def b_from_a(a: Fraction | int, n: int) -> Fraction:
    if n < 1:
        raise ValidationError("n must be positive")
    return Fraction(a) + 1 - Fraction(1, n)


def blowup_ram(rams: Iterable[tuple[TorsionValue | Cover | BranchGerm, int]]) -> TorsionValue:
    """Ramification along the exceptional curve of a point blowup."""
    total = ZERO
    for item, mult in rams:
        if isinstance(item, BranchGerm):
            item = item.cover
        if isinstance(item, RamifiedCover):
            raise SecondaryRamPresent("blowup formula needs unramified residue covers")
        if isinstance(item, UnramifiedCover):
            item = item.zeta
        total = total + mult * item
    return total


def boundary_n(cfg: LocalConfig, ray: LatticeVector) -> int:
    b = cfg.branch_at(ray)
    return 1 if b is None else b.n


def delta_functional(cfg: LocalConfig) -> RationalFunctional:
    u, w = cfg.rays
    return RationalFunctional(
        Fraction(1, boundary_n(cfg, u)), Fraction(1, boundary_n(cfg, w)), Cone(u, w)
    )


def ram_hom(cfg: LocalConfig) -> TorsionHomomorphism:
    if cfg.secondary:
        raise SecondaryRamPresent("z̄ is only defined without secondary ramification")
    for ray in cfg.rays:
        b = cfg.branch_at(ray)
        expected = ZERO if b is None else b.zeta
        got = eval_torsion(cfg.zbar, ray)
        if got != expected:
            raise InconsistentRamification(
                f"z̄{ray} = {got} but the boundary data on {ray} says {expected}"
            )
    return cfg.zbar


def restrict(t: TorsionValue, index: int) -> TorsionValue:
    return index * t


def corestrict(t: TorsionValue) -> TorsionValue:
    return t


@dataclass(frozen=True)
class ForkReduction:
    """A fork graph folded or trimmed to a chain.

    images are the seed images of the reduced chain.  The curves over the
    singularity correspond to primitive vectors of ``spectrum`` (plus its
    first ray when ``first_ray_is_curve``).
    """

    kind: str
    string: HJString
    images: tuple[LatticeVector, ...]
    delta: RationalFunctional
    spectrum: Cone
    first_ray_is_curve: bool
    constraints: tuple[str, ...]
    mirror: tuple[tuple[int, int], ...] = ()

    def check(self, zbar: TorsionHomomorphism, end_zeta: TorsionValue) -> dict[str, TorsionValue]:
        """Validate z̄ against the fold constraints; return derived values."""
        imgs = self.images
        z = [eval_torsion(zbar, v) for v in imgs]
        if self.kind == "B":
            if z[0] != end_zeta or z[-1] != end_zeta:
                raise InconsistentRamification("boundary values of the folded string disagree")
            for i, j in self.mirror:
                if z[i] != z[j]:
                    raise InconsistentRamification(
                        f"mirror constraint fails: z̄{imgs[i]} = {z[i]} but z̄{imgs[j]} = {z[j]}"
                    )
            return {}
        if not z[0].is_zero:
            raise InconsistentRamification("the dummy curve E_0 must be unramified")
        if z[-1] != end_zeta:
            raise InconsistentRamification(
                f"z̄ at the boundary is {z[-1]} but the branch says {end_zeta}"
            )
        half = z[1].divide(2)
        if self.kind == "D":
            return {"E_b": half, "E_c": half}
        # type C: -2 ζ(E_b) + res ζ(E_1) = 0 over the quadratic extension
        return {"E_b": restrict(z[1], 2).divide(2)}


def fork_reduce(cfg: LocalConfig) -> ForkReduction:
    fork = cfg.fork
    if fork is None:
        raise ValidationError("configuration has no fork")
    if cfg.p == 2:
        raise UnsupportedPrime("fork reductions need p != 2")
    s = reduced_fork_string(fork)
    imgs = tuple(chain_images(s))
    end = imgs[-1]
    cone = Cone(U_RAY, end)
    n_end = boundary_n(cfg, end)
    if fork.kind == "B":
        r = len(fork.chain_weights)
        mirror = tuple((i, len(imgs) - 1 - i) for i in range(r + 1))
        delta = RationalFunctional(Fraction(1, n_end), Fraction(1, n_end), cone)
        constraints = (
            "ζ(E_-i) = ζ(E_i) for 1 <= i <= r+1",
            "δ(E_-i) = δ(E_i) for 1 <= i <= r+1",
            "values over the quadratic extension are restrictions (x2)",
        )
        return ForkReduction("B", s, imgs, delta, cone, False, constraints, mirror)
    delta = RationalFunctional(Fraction(0), Fraction(1, n_end), cone)
    if fork.kind == "D":
        constraints = (
            "ζ(E_0) = 0 and δ(E_0) = 0 for the dummy curve",
            "2ζ(E_b) = ζ(E_1) = 2ζ(E_c)",
            "ζ(E_b) + ζ(E_c) = ζ(E_1)",
        )
    else:
        constraints = (
            "ζ(E_0) = 0 and δ(E_0) = 0 for the dummy curve",
            "-2ζ(E_b) + res ζ(E_1) = 0",
            "ζ(Ẽ_1) = cores ζ(E_b)",
        )
    return ForkReduction(fork.kind, s, imgs, delta, Cone(E1_RAY, end), True, constraints)


def fork_end_zeta(cfg: LocalConfig) -> TorsionValue:
    """Ramification the fork's boundary curve carries in the reduced picture."""
    b = cfg.branch_at(cfg.rays[1])
    z = ZERO if b is None else b.zeta
    if cfg.fork is not None and cfg.fork.kind == "B":
        return restrict(z, 2)
    return z


def torsion(x: str | Fraction | int | Sequence[int]) -> TorsionValue:
    """Loose constructor: "1/3", Fraction(1, 3), 0 or (1, 3)."""
    if isinstance(x, str):
        return TorsionValue.parse(x)
    if isinstance(x, (tuple, list)):
        return TorsionValue(*x)
    return TorsionValue.of(x)


def zbar(e1, e2) -> TorsionHomomorphism:
    return TorsionHomomorphism(torsion(e1), torsion(e2))
