from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..lattice import LatticeVector


@dataclass(frozen=True)
class Terminal:
    case: int
    sufficiency_only: bool = False  # p in {3, 5}: the converse is not claimed

    def __str__(self) -> str:
        return f"Terminal (case {self.case})"


@dataclass(frozen=True)
class NotTerminal:
    """A curve over the point with non-positive b-discrepancy.

    witness is None when the failure comes from the tangential screen,
    where the curve is not described by a lattice vector.
    """

    witness: LatticeVector | None
    b_value: Fraction
    delta: Fraction | None = None
    ram_order: int | None = None
    reason: str = ""

    def __str__(self) -> str:
        if self.reason:
            return f"NotTerminal ({self.reason})"
        return f"NotTerminal witness={self.witness} b={self.b_value}"


@dataclass(frozen=True)
class Unsupported:
    reason: str

    def __str__(self) -> str:
        return f"Unsupported ({self.reason})"


Verdict = Union[Terminal, NotTerminal, Unsupported]
