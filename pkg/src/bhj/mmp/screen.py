"""Necessary conditions for terminality at a regular point of arbitrary index.

The ramification divisor Γ through the point has multiplicity at most
two, and when two branches are tangent the point survives only in one
family: contact order 2, indices 2 and 2l with l odd, and non-trivial
secondary ramification.  Each elimination exhibits a curve whose
b-discrepancy is bounded above by a non-positive rational, recorded in
the result.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..errors import ValidationError


@dataclass(frozen=True)
class ScreenResult:
    passed: bool
    reason: str
    bound: Fraction | None = None  # upper bound on some b-discrepancy when failing

    def __bool__(self) -> bool:
        return self.passed


def platonic(a: int, b: int, c: int) -> bool:
    return Fraction(1, a) + Fraction(1, b) + Fraction(1, c) > 1


def triple_point_b(n1: int, n2: int, n3: int, e: int) -> Fraction:
    """b-discrepancy of the first blowup at a point of three branches."""
    return Fraction(1, n1) + Fraction(1, n2) + Fraction(1, n3) - 1 - Fraction(1, e)


def triple_22d_bound(d: int) -> Fraction:
    """Largest b of the first blowup for branch indices (2, 2, d)."""
    return Fraction(3, 2 * d) - Fraction(1, 2)


def chain_log_discrepancy(i: int, d: int) -> Fraction:
    """Log discrepancy of E_i in the chain resolving indices (2, 2, d)."""
    return Fraction(i + 1, d) - 1


def tangent_log_discrepancy(d: int, n1: int, n2: int) -> Fraction:
    """Log discrepancy of the d-th blowup separating two tangent branches."""
    return d * (Fraction(1, n1) + Fraction(1, n2) - 1)


def contact3_bound(n2: int) -> Fraction:
    """Upper bound for b along E_3 when d >= 3 and n1 = 2."""
    return Fraction(5, 2 * n2) - Fraction(1, 2)


def screen_regular_center(
    mult: int, d: int | None, n1: int | None, n2: int | None, secondary: bool, tangential: bool
) -> ScreenResult:
    if mult not in (1, 2, 3):
        raise ValidationError(f"multiplicity must be 1, 2 or 3, got {mult}")
    if mult == 3:
        return ScreenResult(False, "the ramification divisor has multiplicity 3 at the point")
    if not tangential:
        return ScreenResult(True, "normal crossings; decide with classify")
    if mult != 2:
        raise ValidationError("tangential branches need multiplicity 2")
    if d is None or d < 2:
        raise ValidationError("tangential branches need contact order d >= 2")
    n1, n2 = sorted((n1, n2))
    if n1 < 2:
        return ScreenResult(True, "only one ramification curve; Γ is smooth")

    if not platonic(d, n1, n2):
        a = tangent_log_discrepancy(d, n1, n2)
        return ScreenResult(False, f"{{{d},{n1},{n2}}} is not a Platonic triple", a + 1)

    if d >= 3:
        # a Platonic triple with d >= 3 contains 2, so n1 = 2
        if n2 >= 5:
            return ScreenResult(False, f"E_3 bound 5/(2*{n2}) - 1/2 <= 0", contact3_bound(n2))
        if n2 == 4:
            b = tangent_log_discrepancy(3, 2, 4) + 1 - Fraction(1, 4)
            return ScreenResult(False, "contact >= 3 with indices (2,4)", b)
        if n2 == 3:
            b = tangent_log_discrepancy(3, 2, 3) + 1 - Fraction(1, 2)
            return ScreenResult(False, "contact >= 3 with indices (2,3)", b)
        return ScreenResult(False, "contact >= 3 with indices (2,2)", Fraction(0))

    # d == 2
    a = tangent_log_discrepancy(2, n1, n2)
    if n1 == 3:
        top = {3: 3, 4: 6, 5: 15}[n2]
        return ScreenResult(False, f"indices (3,{n2}): ramification order at most {top}", a + 1 - Fraction(1, top))
    # n1 == 2
    if not secondary:
        if n2 % 2 == 0:
            return ScreenResult(False, f"2z_2 is {n2 // 2}-torsion", a + 1 - Fraction(2, n2))
        b = Fraction(n2 - 2, n2) + Fraction(2, n2) - 1
        return ScreenResult(False, f"odd n_2={n2}: unramified curve after {n2 - 2} more blowups", b)
    if n2 % 2 == 0 and (n2 // 2) % 2 == 1:
        return ScreenResult(True, f"A_3 point with indices (2,{n2}) and secondary ramification")
    return ScreenResult(False, f"secondary ramification is {max(n2 // 2, 1)}-torsion", a + 1 - Fraction(2, n2))
