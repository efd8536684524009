"""Chains of exceptional curves and their contractions.

A ChainSurface is the minimal model bookkeeping for a chain E_1..E_r on a
resolution Y: self-intersections on Y, the ramification of each curve,
the branch germs met by the two ends, and the set of curves already
contracted.  Contracted curves form runs; each run is a cyclic quotient
singularity of the contracted surface.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Sequence, Union

from ..brauer import (
    Ambient,
    BranchGerm,
    LocalConfig,
    RamifiedCover,
    UnramifiedCover,
)
from ..errors import (
    InconsistentRamification,
    SingularIntersectionMatrix,
    StuckState,
    TerminalityViolation,
    ValidationError,
)
from ..fan import chain_images
from ..hjstring import HJString, minimal_string, normal_form
from ..lattice import (
    ZERO,
    LatticeVector,
    TorsionHomomorphism,
    TorsionValue,
    apply,
    eval_torsion,
    unimodular_inverse,
)
from .classify import classify
from .verdict import Terminal

RAMIFIED = "ramified"
Ram = Union[TorsionValue, str]


@dataclass(frozen=True)
class ChainCurve:
    label: str
    selfint: int
    n: int = 1
    ram: Ram = ZERO
    ray: LatticeVector | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.selfint > -1:
            raise ValidationError(f"{self.label}: self-intersection must be negative")
        if self.n < 1:
            raise ValidationError(f"{self.label}: n must be positive")
        if self.ram == RAMIFIED:
            if self.n == 1:
                raise ValidationError(f"{self.label}: a ramified residue cover needs n > 1")
        elif not isinstance(self.ram, TorsionValue):
            raise ValidationError(f"{self.label}: bad ramification {self.ram!r}")
        elif self.n % self.ram.order:
            raise ValidationError(f"{self.label}: order of {self.ram} does not divide n={self.n}")

    @property
    def weight(self) -> int:
        return -self.selfint


@dataclass(frozen=True)
class Germ:
    """A branch curve through the chain end; it is never contracted."""

    label: str
    n: int = 1
    ram: Ram = ZERO

    def __post_init__(self):
        if self.ram != RAMIFIED and self.n % self.ram.order:
            raise ValidationError(f"{self.label}: order of {self.ram} does not divide n={self.n}")


@dataclass(frozen=True)
class CurveData:
    n: int
    ram: Ram


DUMMY = CurveData(1, ZERO)


@dataclass(frozen=True)
class ChainSurface:
    p: int
    curves: tuple[ChainCurve, ...]
    left: Germ | None = None
    right: Germ | None = None
    contracted: frozenset[str] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "curves", tuple(self.curves))
        object.__setattr__(self, "contracted", frozenset(self.contracted))
        labels = [c.label for c in self.curves]
        if len(set(labels)) != len(labels):
            raise ValidationError("curve labels must be unique")
        germ_labels = {g.label for g in (self.left, self.right) if g is not None}
        if germ_labels & set(labels):
            raise ValidationError("germ labels clash with curve labels")
        unknown = self.contracted - set(labels)
        if unknown:
            raise ValidationError(f"unknown contracted labels {sorted(unknown)}")
        self._check_obstruction()

    def _check_obstruction(self) -> None:
        data = self.neighbourhood()
        for i, c in enumerate(self.curves):
            trio = (data[i], data[i + 1], data[i + 2])
            if any(d.ram == RAMIFIED for d in trio):
                continue
            total = trio[0].ram - c.weight * trio[1].ram + trio[2].ram
            if not total.is_zero:
                raise InconsistentRamification(
                    f"ramification along {c.label} fails the chain relation (residue {total})"
                )

    def neighbourhood(self) -> list[CurveData]:
        """Curve data for left germ, E_1..E_r, right germ (dummy if absent)."""
        ends = [DUMMY if g is None else CurveData(g.n, g.ram) for g in (self.left, self.right)]
        return [ends[0]] + [CurveData(c.n, c.ram) for c in self.curves] + [ends[1]]

    @property
    def labels(self) -> list[str]:
        return [c.label for c in self.curves]

    @property
    def weights(self) -> HJString:
        return HJString(tuple(c.weight for c in self.curves))

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"no curve labelled {label!r}") from None

    def components(self) -> list[list[int]]:
        """Maximal runs of contracted curves, as index lists."""
        runs, cur = [], []
        for i, c in enumerate(self.curves):
            if c.label in self.contracted:
                cur.append(i)
            elif cur:
                runs.append(cur)
                cur = []
        if cur:
            runs.append(cur)
        return runs

    def contract(self, label: str) -> ChainSurface:
        self.index(label)
        return replace(self, contracted=self.contracted | {label})

    @property
    def exhausted(self) -> bool:
        return len(self.contracted) == len(self.curves)


@dataclass(frozen=True)
class PartialIntersections:
    k_dot: Fraction
    self_sq: Fraction
    b_values: dict[str, Fraction]


@dataclass(frozen=True)
class ContractionStep:
    label: str
    singularity: HJString | None
    k_dot: Fraction | None = None
    self_sq: Fraction | None = None

    def __str__(self) -> str:
        sing = "smooth point" if self.singularity is None else f"sing {self.singularity}"
        return f"{self.label} -> {sing}"


def log_canonical_dot(chain: ChainSurface, i: int) -> Fraction:
    """K_{Y,β}·E_i on the resolution, by adjunction."""
    data = chain.neighbourhood()
    c = chain.curves[i]
    m = c.weight
    val = Fraction(m - 2) - (1 - Fraction(1, c.n)) * m
    for nb in (data[i], data[i + 2]):
        val += 1 - Fraction(1, nb.n)
    return val


def solve_tridiagonal(diag: Sequence[int], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve M x = rhs where M has the given diagonal and 1 off the diagonal."""
    n = len(diag)
    c = [Fraction(0)] * n
    d = [Fraction(0)] * n
    for i in range(n):
        pivot = Fraction(diag[i]) - (c[i - 1] if i else 0)
        if pivot == 0:
            raise SingularIntersectionMatrix(f"zero pivot at row {i} of {list(diag)}")
        c[i] = Fraction(1) / pivot
        d[i] = (Fraction(rhs[i]) - (d[i - 1] if i else 0)) / pivot
    x = [Fraction(0)] * n
    for i in reversed(range(n)):
        x[i] = d[i] - (c[i] * x[i + 1] if i + 1 < n else 0)
    return x


def b_values(chain: ChainSurface) -> dict[str, Fraction]:
    out = {}
    for comp in chain.components():
        diag = [chain.curves[j].selfint for j in comp]
        rhs = [log_canonical_dot(chain, j) for j in comp]
        for j, b in zip(comp, solve_tridiagonal(diag, rhs)):
            out[chain.curves[j].label] = b
    return out


def partial_intersections(chain: ChainSurface, label: str) -> PartialIntersections:
    i = chain.index(label)
    if label in chain.contracted:
        raise ValidationError(f"{label} is already contracted")
    bvals = b_values(chain)
    k_dot = log_canonical_dot(chain, i)
    self_sq = Fraction(chain.curves[i].selfint)
    for comp in chain.components():
        if i - 1 == comp[-1]:
            touching = len(comp) - 1
        elif i + 1 == comp[0]:
            touching = 0
        else:
            continue
        j = comp[touching]
        k_dot -= bvals[chain.curves[j].label]
        diag = [chain.curves[t].selfint for t in comp]
        rhs = [Fraction(0)] * len(comp)
        rhs[touching] = Fraction(-1)
        coeffs = solve_tridiagonal(diag, rhs)
        self_sq += coeffs[touching]
    return PartialIntersections(k_dot, self_sq, bvals)


def contractible(chain: ChainSurface, label: str) -> bool:
    if label in chain.contracted:
        return False
    pi = partial_intersections(chain, label)
    return pi.k_dot < 0 and pi.self_sq < 0


def _branch(data: CurveData, ray: LatticeVector, local: TorsionValue) -> BranchGerm | None:
    if data.n == 1:
        return None
    if data.ram == RAMIFIED:
        return BranchGerm(ray, data.n, 1, RamifiedCover((local,)))
    e = data.ram.order
    return BranchGerm(ray, e, data.n // e, UnramifiedCover(data.ram) if e > 1 else None)


def local_config_for_cone(
    p: int,
    u: LatticeVector,
    w: LatticeVector,
    left: CurveData,
    right: CurveData,
    zbar: TorsionHomomorphism | None,
) -> LocalConfig:
    """The configuration at the point where the curves of rays u and w meet.

    zbar is the ramification homomorphism in the coordinates of u and w
    (None for cancelling secondary ramification).
    """
    A, pair = normal_form(u, w)
    Ainv = unimodular_inverse(A)
    ambient = Ambient(pair.m, pair.k)
    if zbar is None:
        z = TorsionHomomorphism.zero()
    else:
        z = TorsionHomomorphism(
            eval_torsion(zbar, apply(Ainv, LatticeVector(1, 0))),
            eval_torsion(zbar, apply(Ainv, LatticeVector(0, 1))),
        )
    local = TorsionValue(1, p)
    branches = [
        b
        for b in (
            _branch(left, LatticeVector(0, 1), local),
            _branch(right, ambient.end_ray, -local),
        )
        if b is not None
    ]
    return LocalConfig(p, ambient, tuple(branches), z)


def component_config(chain: ChainSurface, comp: Sequence[int]) -> LocalConfig:
    """The singular point obtained by contracting a run of curves."""
    data = chain.neighbourhood()
    left, right = data[comp[0]], data[comp[-1] + 2]
    inner = [data[j + 1] for j in comp]
    imgs = chain_images([chain.curves[j].weight for j in comp])
    if any(d.ram == RAMIFIED for d in [left, right] + inner):
        zbar = None
    else:
        zbar = TorsionHomomorphism(inner[0].ram, left.ram)
        for v, d in zip(imgs[1:], inner + [right]):
            if eval_torsion(zbar, v) != d.ram:
                raise InconsistentRamification("chain ramification is not induced by a homomorphism")
    return local_config_for_cone(chain.p, imgs[0], imgs[-1], left, right, zbar)


def node_config(chain: ChainSurface, left: CurveData, right: CurveData) -> LocalConfig:
    u, w = LatticeVector(0, 1), LatticeVector(1, 0)
    if RAMIFIED in (left.ram, right.ram):
        zbar = None
    else:
        zbar = TorsionHomomorphism(right.ram, left.ram)
    return local_config_for_cone(chain.p, u, w, left, right, zbar)


def terminality_report(chain: ChainSurface) -> list[str]:
    """Reasons the contracted surface fails to be terminal (empty if terminal)."""
    problems = []
    for label, b in b_values(chain).items():
        if b <= 0:
            problems.append(f"{label} has b = {b} <= 0")
    if problems:
        return problems
    data = chain.neighbourhood()
    for comp in chain.components():
        names = ",".join(chain.curves[j].label for j in comp)
        try:
            verdict = classify(component_config(chain, comp))
        except ValidationError as exc:
            problems.append(f"singularity from {names}: {exc}")
            continue
        if not isinstance(verdict, Terminal):
            problems.append(f"singularity from {names}: {verdict}")
    def contracted_at(pos: int) -> bool:
        return 1 <= pos <= len(chain.curves) and chain.curves[pos - 1].label in chain.contracted

    names = ["left end"] + chain.labels + ["right end"]
    for t in range(len(data) - 1):
        if contracted_at(t) or contracted_at(t + 1):
            continue
        where = f"node {names[t]}-{names[t + 1]}"
        try:
            verdict = classify(node_config(chain, data[t], data[t + 1]))
        except ValidationError as exc:
            problems.append(f"{where}: {exc}")
            continue
        if not isinstance(verdict, Terminal):
            problems.append(f"{where}: {verdict}")
    return problems


def is_terminal(chain: ChainSurface) -> bool:
    return not terminality_report(chain)


def step_singularity(chain: ChainSurface, label: str) -> HJString | None:
    i = chain.index(label)
    comp = next(c for c in chain.components() if i in c)
    s = minimal_string([chain.curves[j].weight for j in comp])
    return s if len(s) else None


def zariski_factorize(chain: ChainSurface, check: bool = True) -> list[ContractionStep]:
    """Contract the chain one Castelnuovo contraction at a time.

    At each step the lowest-index contractible curve goes first.  With
    check=True every intermediate state is verified to be terminal.
    """
    if check:
        problems = terminality_report(chain)
        if problems:
            raise TerminalityViolation("input is not terminal: " + "; ".join(problems))
    steps = []
    while not chain.exhausted:
        chosen = None
        for c in chain.curves:
            if c.label in chain.contracted:
                continue
            pi = partial_intersections(chain, c.label)
            if pi.k_dot < 0 and pi.self_sq < 0:
                chosen = (c.label, pi)
                break
        if chosen is None:
            left = [c.label for c in chain.curves if c.label not in chain.contracted]
            raise StuckState(f"no contractible curve among {', '.join(left)}")
        label, pi = chosen
        chain = chain.contract(label)
        steps.append(ContractionStep(label, step_singularity(chain, label), pi.k_dot, pi.self_sq))
        if check:
            problems = terminality_report(chain)
            if problems:
                raise TerminalityViolation(f"after contracting {label}: " + "; ".join(problems))
    return steps


def final_config(chain: ChainSurface) -> LocalConfig:
    """The point reached after contracting every curve."""
    return component_config(chain, list(range(len(chain.curves))))
