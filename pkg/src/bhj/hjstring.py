"""Hirzebruch-Jung strings: weighted chains of curves.

A string is a sequence of positive integers m_1..m_r, the negatives of the
self-intersections of a chain E_1..E_r.  The chain is flanked by two
non-exceptional curves E_0 and E_{r+1}; node i is the point E_i meets
E_{i+1}, so an r-string has nodes 0..r.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import (
    DegenerateCone,
    IndexOutOfRange,
    NotContractible,
    NotStrict,
    ValidationError,
)
from .lattice import Cone, LatticeVector, apply, cross


@dataclass(frozen=True)
class HJString:
    weights: tuple[int, ...]
    strict: bool = field(default=False, compare=False)

    def __post_init__(self):
        w = tuple(map(int, self.weights))
        object.__setattr__(self, "weights", w)
        low = min(w, default=2)
        if low < 1:
            raise ValidationError(f"weights must be positive: {w}")
        if self.strict and low < 2:
            raise NotStrict(f"strict string has a weight below 2: {w}")

    def __len__(self) -> int:
        return len(self.weights)

    def __iter__(self):
        return iter(self.weights)

    def __getitem__(self, i):
        return self.weights[i]

    def __str__(self) -> str:
        return "[" + ",".join(map(str, self.weights)) + "]"

    @property
    def is_strict(self) -> bool:
        return min(self.weights, default=2) >= 2


def hj(*weights: int) -> HJString:
    return HJString(tuple(weights))


def _as_string(s: HJString | Sequence[int]) -> HJString:
    return s if isinstance(s, HJString) else HJString(tuple(s))


@dataclass(frozen=True)
class FractionPair:
    """Coprime m > k >= 0.  The pair (1, 0) stands for a regular point."""

    m: int
    k: int

    def __post_init__(self):
        if (self.m, self.k) == (1, 0):
            return
        if not (0 < self.k < self.m) or math.gcd(self.m, self.k) != 1:
            raise ValidationError(f"({self.m},{self.k}) needs 0 < k < m, coprime")

    def __str__(self) -> str:
        return f"{self.m}/{self.k}"


def determinant(s: HJString | Sequence[int]) -> int:
    prev, cur = 0, 1
    for m in s:
        prev, cur = cur, m * cur - prev
    return cur


def blowup_at(s: HJString | Sequence[int], i: int) -> HJString:
    w = list(_as_string(s).weights)
    r = len(w)
    if not 0 <= i <= r:
        raise IndexOutOfRange(f"node {i} outside 0..{r}")
    if i >= 1:
        w[i - 1] += 1
    if i < r:
        w[i] += 1
    w.insert(i, 1)
    return HJString(tuple(w))


def contract_minus_one(s: HJString | Sequence[int], i: int) -> HJString:
    """Blow down the (-1)-curve at 1-based position i."""
    w = list(_as_string(s).weights)
    if not 1 <= i <= len(w):
        raise IndexOutOfRange(f"position {i} outside 1..{len(w)}")
    if w[i - 1] != 1:
        raise NotContractible(f"weight at {i} is {w[i - 1]}, not 1")
    neighbours = [j for j in (i - 2, i) if 0 <= j < len(w)]
    if any(w[j] < 2 for j in neighbours):
        raise NotContractible(f"a neighbour of position {i} has weight 1")
    for j in neighbours:
        w[j] -= 1
    del w[i - 1]
    return HJString(tuple(w))


def minimal_string(s: HJString | Sequence[int]) -> HJString:
    """Blow down (-1)-curves until the string is strict."""
    s = _as_string(s)
    while not s.is_strict:
        for pos, m in enumerate(s.weights, start=1):
            if m == 1:
                try:
                    s = contract_minus_one(s, pos)
                    break
                except NotContractible:
                    continue
        else:
            raise NotContractible(f"{s} cannot be reduced to a strict string")
    return s


def weights_from_fraction(p: FractionPair) -> HJString:
    x, y = p.m, p.k
    out = []
    while y:
        a = -(-x // y)
        out.append(a)
        x, y = y, a * y - x
    return HJString(tuple(out), strict=True)


def fraction_from_weights(s: HJString | Sequence[int]) -> FractionPair:
    s = _as_string(s)
    if not s.is_strict:
        raise NotStrict(f"{s} has a weight below 2")
    if not s.weights:
        return FractionPair(1, 0)
    return FractionPair(determinant(s), determinant(s.weights[1:]))


def normal_form(u: LatticeVector, w: LatticeVector):
    """A unimodular A with A u = (0,1) and A w = (m,-k), 0 <= k < m.

    Returns (A, FractionPair(m, k)).
    """
    c = cross(u, w)
    if c == 0:
        raise DegenerateCone(f"rays {u} and {w} are parallel")
    if not (u.primitive and w.primitive):
        raise ValidationError("rays must be primitive")
    g, x, y = _ext_gcd(u.a, u.b)
    # rows (-u.b, u.a) and (x, y): u goes to (0, 1), w to (c, *)
    rows = [[-u.b, u.a], [x, y]]
    if c < 0:
        rows[0] = [u.b, -u.a]
    m = abs(c)
    img = apply((tuple(rows[0]), tuple(rows[1])), w)
    t = (-img.b) // m  # shear y -> y + t*x puts the image in (-m, 0]
    rows[1] = [rows[1][0] + t * rows[0][0], rows[1][1] + t * rows[0][1]]
    A = (tuple(rows[0]), tuple(rows[1]))
    img = apply(A, w)
    k = -img.b
    assert apply(A, u) == LatticeVector(0, 1) and img.a == m and 0 <= k < m
    return A, FractionPair(m, k)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, x, y) with a*x + b*y = g = gcd(a, b) >= 0."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a - (a // b) * b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def cone_weights(c: Cone | tuple[LatticeVector, LatticeVector]) -> HJString:
    u, w = (c.u, c.w) if isinstance(c, Cone) else c
    _, pair = normal_form(u, w)
    if pair.k == 0:
        return HJString((), strict=True)
    return weights_from_fraction(pair)


def parse_weights(text: str) -> HJString:
    """Parse "2,2,2"; errors name the offending position (1-based)."""
    text = text.strip()
    if not text:
        return HJString(())
    out = []
    for pos, tok in enumerate(text.split(","), start=1):
        try:
            val = int(tok.strip())
        except ValueError:
            raise ValidationError(f"invalid weight {tok.strip()!r} at position {pos}") from None
        if val < 1:
            raise ValidationError(f"weight {val} at position {pos} is not positive")
        out.append(val)
    return HJString(tuple(out))


def strings(max_len: int, max_weight: int, min_weight: int = 1) -> Iterable[HJString]:
    """All strings with length <= max_len and weights in [min_weight, max_weight]."""
    from itertools import product

    for r in range(max_len + 1):
        for w in product(range(min_weight, max_weight + 1), repeat=r):
            yield HJString(w)
