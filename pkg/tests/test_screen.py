from fractions import Fraction

import pytest

from bhj.errors import ValidationError
from bhj.mmp import screen_regular_center
from bhj.mmp.screen import (
    chain_log_discrepancy,
    contact3_bound,
    platonic,
    tangent_log_discrepancy,
    triple_22d_bound,
    triple_point_b,
)

F = Fraction


def test_examples():
    assert screen_regular_center(2, 2, 2, 6, True, True)
    assert not screen_regular_center(2, 2, 3, 4, False, True)
    assert not screen_regular_center(3, None, None, None, False, False)


def test_normal_crossings_defer_to_classify():
    assert screen_regular_center(2, None, 7, 7, False, False)
    assert screen_regular_center(1, None, 7, None, False, False)


def test_platonic():
    assert platonic(2, 2, 9) and platonic(2, 3, 5)
    assert not platonic(2, 3, 6) and not platonic(3, 3, 3)


def test_triple_point_eliminations():
    # e = lcm of the indices
    assert triple_point_b(2, 3, 3, 6) == 0
    assert triple_point_b(2, 3, 4, 12) == 0
    assert triple_point_b(2, 3, 5, 30) == 0
    assert triple_22d_bound(3) == 0
    assert all(triple_22d_bound(d) < 0 for d in range(4, 30))
    for d in (3, 5, 7, 9):
        assert chain_log_discrepancy(d - 1, d) == 0


def test_contact_three_bounds():
    assert tangent_log_discrepancy(3, 2, 5) == F(3, 5) - F(3, 2)
    assert contact3_bound(5) == 0
    assert all(contact3_bound(n) < 0 for n in range(6, 40))
    for n2, bound in ((4, 0), (3, 0), (2, 0)):
        r = screen_regular_center(2, 3, 2, n2, False, True)
        assert not r and r.bound == bound


def test_contact_two_index_three():
    assert tangent_log_discrepancy(2, 3, 3) == F(-2, 3)
    assert tangent_log_discrepancy(2, 3, 5) == F(-14, 15)
    assert tangent_log_discrepancy(2, 3, 4) == F(-5, 6)
    for n2 in (3, 4, 5):
        r = screen_regular_center(2, 2, 3, n2, False, True)
        assert not r and r.bound == 0


def test_contact_two_index_two():
    for n2 in range(2, 30):
        r = screen_regular_center(2, 2, 2, n2, False, True)
        assert not r and r.bound == 0
    assert screen_regular_center(2, 2, 2, 2, True, True)
    assert screen_regular_center(2, 2, 2, 10, True, True)
    r = screen_regular_center(2, 2, 2, 4, True, True)
    assert not r and r.bound == 0


def test_surviving_family_exhaustive():
    passed = []
    for d in range(2, 7):
        for n1 in range(2, 13):
            for n2 in range(n1, 13):
                for sec in (False, True):
                    if screen_regular_center(2, d, n1, n2, sec, True):
                        passed.append((d, n1, n2, sec))
    assert passed == [(2, 2, n, True) for n in (2, 6, 10)]


def test_non_platonic_and_bad_input():
    r = screen_regular_center(2, 2, 3, 7, False, True)
    assert not r and "Platonic" in r.reason and r.bound <= 0
    with pytest.raises(ValidationError):
        screen_regular_center(4, 2, 2, 2, False, True)
    with pytest.raises(ValidationError):
        screen_regular_center(2, 1, 2, 2, False, True)
