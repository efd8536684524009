"""Integer lattice geometry in the plane.

Vectors, two-ray cones, rational linear functionals on a cone, torsion
homomorphisms to Q/Z, and a bounded scan for primitive vectors.  All
arithmetic is exact.
"""

from __future__ import annotations

import math
import os
import re
from contextlib import contextmanager
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import (
    DegenerateCone,
    ExclusionViolation,
    NotInCone,
    UnboundedRegion,
    ValidationError,
)

_EXCLUDED_PRIMES: frozenset[int] = frozenset()


def char_exclusion() -> frozenset[int]:
    return _EXCLUDED_PRIMES


def set_char_exclusion(primes: Iterable[int]) -> None:
    """Set the residue characteristics that torsion orders must avoid."""
    global _EXCLUDED_PRIMES
    primes = frozenset(int(q) for q in primes)
    if any(q < 2 or any(q % d == 0 for d in range(2, math.isqrt(q) + 1)) for q in primes):
        raise ValidationError(f"exclusion set must contain primes, got {sorted(primes)}")
    _EXCLUDED_PRIMES = primes


@contextmanager
def char_exclusion_set(primes: Iterable[int]) -> Iterator[None]:
    old = _EXCLUDED_PRIMES
    set_char_exclusion(primes)
    try:
        yield
    finally:
        set_char_exclusion(old)


def exclusion_from_env(var: str = "BHJ_CHAR_EXCLUDE") -> frozenset[int]:
    raw = os.environ.get(var, "").strip()
    if not raw:
        return frozenset()
    try:
        return frozenset(int(tok) for tok in raw.split(",") if tok.strip())
    except ValueError as exc:
        raise ValidationError(f"{var} must be a comma-separated list of primes: {raw!r}") from exc


def check_excluded(n: int) -> None:
    for q in _EXCLUDED_PRIMES:
        if n % q == 0:
            raise ExclusionViolation(f"{n} is divisible by the excluded characteristic {q}")


@dataclass(frozen=True, order=True)
class LatticeVector:
    a: int
    b: int

    def __add__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(self.a + other.a, self.b + other.b)

    def __sub__(self, other: LatticeVector) -> LatticeVector:
        return LatticeVector(self.a - other.a, self.b - other.b)

    def __neg__(self) -> LatticeVector:
        return LatticeVector(-self.a, -self.b)

    def __mul__(self, k: int) -> LatticeVector:
        return LatticeVector(k * self.a, k * self.b)

    __rmul__ = __mul__

    def __iter__(self):
        yield self.a
        yield self.b

    def __str__(self) -> str:
        return f"({self.a},{self.b})"

    @property
    def primitive(self) -> bool:
        return (self.a, self.b) != (0, 0) and math.gcd(self.a, self.b) == 1


def vec(a: int, b: int) -> LatticeVector:
    return LatticeVector(a, b)


def cross(u: LatticeVector, w: LatticeVector) -> int:
    return u.a * w.b - u.b * w.a


@dataclass(frozen=True)
class Cone:
    """The cone spanned by two primitive, non-parallel rays."""

    u: LatticeVector
    w: LatticeVector

    def __post_init__(self):
        if not (self.u.primitive and self.w.primitive):
            raise ValidationError(f"cone rays must be primitive: {self.u}, {self.w}")
        if cross(self.u, self.w) == 0:
            raise DegenerateCone(f"rays {self.u} and {self.w} are parallel")

    @property
    def det(self) -> int:
        return abs(cross(self.u, self.w))

    def coords(self, v: LatticeVector) -> tuple[Fraction, Fraction]:
        """Coordinates (alpha, beta) with v = alpha*u + beta*w."""
        c = cross(self.u, self.w)
        return Fraction(cross(v, self.w), c), Fraction(cross(self.u, v), c)

    def contains(self, v: LatticeVector, open: bool = False) -> bool:
        alpha, beta = self.coords(v)
        if open:
            return alpha > 0 and beta > 0
        return alpha >= 0 and beta >= 0

    def angle_key(self, v: LatticeVector) -> Fraction:
        """Monotone in the direction of v as it sweeps from u to w (v interior)."""
        return Fraction(cross(self.u, v), cross(v, self.w))


_EXACT = re.compile(r"[+-]?\d+(/\d+)?")


@dataclass(frozen=True, order=True)
class TorsionValue:
    """An element num/den of Q/Z, kept reduced with 0 <= num < den."""

    num: int
    den: int = 1

    def __post_init__(self):
        if self.den <= 0:
            raise ValidationError(f"denominator must be positive, got {self.den}")
        g = math.gcd(self.num, self.den)
        den = self.den // g
        num = (self.num // g) % den
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)
        check_excluded(den)

    @classmethod
    def of(cls, x: Fraction | int) -> TorsionValue:
        x = Fraction(x)
        return cls(x.numerator, x.denominator)

    @classmethod
    def parse(cls, text: str) -> TorsionValue:
        s = text.strip()
        if s.endswith("mod 1"):
            s = s[: -len("mod 1")].strip()
        if not _EXACT.fullmatch(s):
            raise ValidationError(f"torsion value must be 'num/den', got {text!r}")
        return cls.of(Fraction(s))

    @property
    def order(self) -> int:
        return self.den

    @property
    def is_zero(self) -> bool:
        return self.num == 0

    def as_fraction(self) -> Fraction:
        return Fraction(self.num, self.den)

    def __add__(self, other: TorsionValue) -> TorsionValue:
        return TorsionValue.of(self.as_fraction() + other.as_fraction())

    def __sub__(self, other: TorsionValue) -> TorsionValue:
        return TorsionValue.of(self.as_fraction() - other.as_fraction())

    def __neg__(self) -> TorsionValue:
        return TorsionValue(-self.num, self.den)

    def __mul__(self, k: int) -> TorsionValue:
        return TorsionValue(k * self.num, self.den)

    __rmul__ = __mul__

    def divide(self, k: int) -> TorsionValue:
        """The unique t with k*t = self, for k prime to the order."""
        if math.gcd(k, self.den) != 1:
            raise ValidationError(f"{k} is not invertible on {self}")
        return TorsionValue(self.num * pow(k, -1, self.den), self.den)

    def __str__(self) -> str:
        return f"{self.num}/{self.den} mod 1"


ZERO = TorsionValue(0)


@dataclass(frozen=True)
class RationalFunctional:
    """A Q-linear function on Z^2 given by its values on the rays of a cone."""

    value_u: Fraction
    value_w: Fraction
    cone: Cone

    def __post_init__(self):
        object.__setattr__(self, "value_u", Fraction(self.value_u))
        object.__setattr__(self, "value_w", Fraction(self.value_w))

    def linear(self, v: LatticeVector) -> Fraction:
        """Value of the linear extension; no cone membership check."""
        u, w = self.cone.u, self.cone.w
        d = u.a * w.b - u.b * w.a
        num = (v.a * w.b - v.b * w.a) * self.value_u + (u.a * v.b - u.b * v.a) * self.value_w
        return num / d


@dataclass(frozen=True)
class TorsionHomomorphism:
    """A homomorphism Z^2 -> Q/Z given on the standard basis (1,0), (0,1)."""

    value_e1: TorsionValue
    value_e2: TorsionValue

    @classmethod
    def zero(cls) -> TorsionHomomorphism:
        return cls(ZERO, ZERO)

    def __call__(self, v: LatticeVector) -> TorsionValue:
        return eval_torsion(self, v)

    @property
    def is_zero(self) -> bool:
        return self.value_e1.is_zero and self.value_e2.is_zero


def eval_rational(f: RationalFunctional, v: LatticeVector) -> Fraction:
    alpha, beta = f.cone.coords(v)
    if alpha < 0 or beta < 0:
        raise NotInCone(f"{v} is not in the cone spanned by {f.cone.u} and {f.cone.w}")
    return alpha * f.value_u + beta * f.value_w


def eval_torsion(h: TorsionHomomorphism, v: LatticeVector) -> TorsionValue:
    d1, d2 = h.value_e1.den, h.value_e2.den
    den = d1 * d2 // math.gcd(d1, d2)
    num = v.a * h.value_e1.num * (den // d1) + v.b * h.value_e2.num * (den // d2)
    return TorsionValue(num, den)


def _box(c: Cone, alpha_max: Fraction, beta_max: Fraction) -> tuple[range, range]:
    corners = [
        (Fraction(0), Fraction(0)),
        (alpha_max * c.u.a, alpha_max * c.u.b),
        (beta_max * c.w.a, beta_max * c.w.b),
        (alpha_max * c.u.a + beta_max * c.w.a, alpha_max * c.u.b + beta_max * c.w.b),
    ]
    xs = [x for x, _ in corners]
    ys = [y for _, y in corners]
    return (
        range(math.floor(min(xs)), math.ceil(max(xs)) + 1),
        range(math.floor(min(ys)), math.ceil(max(ys)) + 1),
    )


def _tighten(lo: int, hi: int, coef: int, const: int, strict: bool) -> tuple[int, int]:
    """Intersect [lo, hi] with {y : coef*y + const > 0} (or >= 0)."""
    if coef == 0:
        ok = const > 0 if strict else const >= 0
        return (lo, hi) if ok else (1, 0)
    if coef > 0:
        return max(lo, (-const) // coef + 1 if strict else -(const // coef)), hi
    c = -coef
    return lo, min(hi, -((-const) // c) - 1 if strict else const // c)


def _scan(u: LatticeVector, w: LatticeVector, fu: Fraction, fw: Fraction, bound: Fraction):
    """(scaled value, x, y) for primitive points of the open cone below the bound,
    scanning columns of constant x."""
    d = cross(u, w)
    s = 1 if d > 0 else -1
    xs, ys = _box(Cone(u, w), bound / fu, bound / fw)
    # f(x, y) = (cross(v,w)*fu + cross(u,v)*fw) / d, kept as integers over q
    q = math.lcm(fu.denominator, fw.denominator, bound.denominator) * abs(d)
    fu_q, fw_q = int(fu * q) // d, int(fw * q) // d
    y_coef = u.a * fw_q - w.a * fu_q
    x_coef = w.b * fu_q - u.b * fw_q
    top = int(bound * q)
    for x in xs:
        lo, hi = ys.start, ys.stop - 1
        lo, hi = _tighten(lo, hi, s * u.a, -s * u.b * x, True)
        lo, hi = _tighten(lo, hi, -s * w.a, s * w.b * x, True)
        lo, hi = _tighten(lo, hi, -y_coef, top - x_coef * x, False)
        for y in range(lo, hi + 1):
            if math.gcd(x, y) == 1:
                yield x_coef * x + y_coef * y, x, y


def enumerate_primitive(c: Cone, f: RationalFunctional, bound: Fraction) -> list[LatticeVector]:
    """Primitive vectors in the open cone c with f(v) <= bound.

    The region is the triangle cut from the cone by the line f = bound,
    so scanning its bounding box is exhaustive.  Lines of the box (along
    its shorter side) are cut down to the exact interval satisfying the
    three linear constraints.  Sorted by value, then lexicographically.
    """
    bound = Fraction(bound)
    fu, fw = f.linear(c.u), f.linear(c.w)
    if fu <= 0 or fw <= 0:
        raise UnboundedRegion(f"functional is not positive on both rays ({fu}, {fw})")
    if bound <= 0:
        return []
    xs, ys = _box(c, bound / fu, bound / fw)
    if len(xs) <= len(ys):
        found = list(_scan(c.u, c.w, fu, fw, bound))
    else:
        flip = lambda v: LatticeVector(v.b, v.a)  # noqa: E731
        found = [(val, x, y) for val, y, x in _scan(flip(c.u), flip(c.w), fu, fw, bound)]
    found.sort()
    return [LatticeVector(x, y) for _, x, y in found]


def unimodular_inverse(m: tuple[tuple[int, int], tuple[int, int]]):
    (p, q), (r, s) = m
    d = p * s - q * r
    if d not in (1, -1):
        raise ValidationError(f"matrix {m} is not unimodular")
    return ((s * d, -q * d), (-r * d, p * d))


def apply(m, v: LatticeVector) -> LatticeVector:
    (p, q), (r, s) = m
    return LatticeVector(p * v.a + q * v.b, r * v.a + s * v.b)
