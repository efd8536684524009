from fractions import Fraction

import pytest

from bhj.errors import DegenerateCone, ExclusionViolation, NotInCone, UnboundedRegion, ValidationError
from bhj.lattice import (
    Cone,
    LatticeVector,
    RationalFunctional,
    TorsionHomomorphism,
    TorsionValue,
    char_exclusion,
    char_exclusion_set,
    cross,
    enumerate_primitive,
    eval_rational,
    eval_torsion,
    exclusion_from_env,
    vec,
)

F = Fraction


def test_cross_examples():
    assert cross(vec(0, 1), vec(1, 0)) == -1
    assert cross(vec(0, 1), vec(7, -3)) == -7
    assert cross(vec(7, -2), vec(7, -3)) == -7


def test_primitive():
    assert vec(3, -2).primitive
    assert not vec(4, -2).primitive
    assert not vec(0, 0).primitive
    assert vec(0, -1).primitive


def test_vector_arithmetic_and_str():
    assert vec(1, 2) + vec(3, -1) == vec(4, 1)
    assert vec(1, 2) - vec(3, -1) == vec(-2, 3)
    assert 3 * vec(1, -2) == vec(3, -6)
    assert -vec(1, -2) == vec(-1, 2)
    assert str(vec(6, 1)) == "(6,1)"


def test_cone_rejects_parallel_and_imprimitive_rays():
    with pytest.raises(DegenerateCone):
        Cone(vec(1, 2), vec(-1, -2))
    with pytest.raises(ValidationError):
        Cone(vec(0, 2), vec(1, 0))


def test_cone_coords_and_membership():
    c = Cone(vec(0, 1), vec(7, -3))
    assert c.coords(vec(1, 0)) == (F(3, 7), F(1, 7))
    assert c.contains(vec(1, 0), open=True)
    assert c.contains(vec(0, 1)) and not c.contains(vec(0, 1), open=True)
    assert not c.contains(vec(-1, 0))


def test_eval_rational_examples():
    f = RationalFunctional(1, F(1, 7), Cone(vec(0, 1), vec(7, -3)))
    assert eval_rational(f, vec(1, 0)) == F(22, 49)
    assert eval_rational(f, vec(0, 1)) == 1
    g = RationalFunctional(F(1, 3), F(1, 3), Cone(vec(0, 1), vec(1, 0)))
    assert eval_rational(g, vec(1, 1)) == F(2, 3)


def test_eval_rational_outside_cone():
    f = RationalFunctional(1, 1, Cone(vec(0, 1), vec(1, 0)))
    with pytest.raises(NotInCone):
        eval_rational(f, vec(-1, 1))


def test_eval_torsion_examples():
    h = TorsionHomomorphism(TorsionValue(1, 3), TorsionValue(0))
    assert eval_torsion(h, vec(3, 2)) == TorsionValue(0)
    assert eval_torsion(h, vec(2, 1)) == TorsionValue(2, 3)
    assert eval_torsion(h, vec(0, 0)).is_zero


def test_torsion_value_normalisation():
    t = TorsionValue(-1, 3)
    assert (t.num, t.den) == (2, 3)
    assert TorsionValue(4, 6) == TorsionValue(2, 3)
    assert TorsionValue(3, 3).order == 1
    assert TorsionValue(0).order == 1
    assert TorsionValue(2, 7).order == 7
    assert str(TorsionValue(1, 3)) == "1/3 mod 1"
    assert TorsionValue.parse("5/7 mod 1") == TorsionValue(5, 7)
    assert TorsionValue.parse("-1/7") == TorsionValue(6, 7)


def test_torsion_value_arithmetic():
    a, b = TorsionValue(1, 2), TorsionValue(1, 3)
    assert a + b == TorsionValue(5, 6)
    assert a - b == TorsionValue(1, 6)
    assert -b == TorsionValue(2, 3)
    assert b * 3 == TorsionValue(0)
    assert TorsionValue(1, 7).divide(2) * 2 == TorsionValue(1, 7)


def test_torsion_value_rejects_bad_denominator():
    with pytest.raises(ValidationError):
        TorsionValue(1, 0)


def test_exclusion_set():
    assert char_exclusion() == frozenset()
    with char_exclusion_set([7]):
        with pytest.raises(ExclusionViolation):
            TorsionValue(1, 7)
        with pytest.raises(ExclusionViolation):
            TorsionValue(1, 14)
        TorsionValue(1, 3)
    TorsionValue(1, 7)


def test_exclusion_from_env(monkeypatch):
    monkeypatch.setenv("BHJ_CHAR_EXCLUDE", "2, 5")
    assert exclusion_from_env() == {2, 5}
    monkeypatch.setenv("BHJ_CHAR_EXCLUDE", "")
    assert exclusion_from_env() == frozenset()
    with pytest.raises(ValidationError):
        with char_exclusion_set([4]):
            pass
    monkeypatch.setenv("BHJ_CHAR_EXCLUDE", "x")
    with pytest.raises(ValidationError):
        exclusion_from_env()


def test_enumerate_examples():
    basis = Cone(vec(0, 1), vec(1, 0))
    f = RationalFunctional(F(1, 3), F(1, 3), basis)
    assert enumerate_primitive(basis, f, 1) == [vec(1, 1), vec(1, 2), vec(2, 1)]
    assert enumerate_primitive(basis, f, F(1, 2)) == []
    assert enumerate_primitive(basis, f, 0) == []


def test_enumerate_hj73_with_unit_values():
    # δ̄(1,0) = 4/7, so the triangle below 1 is not empty; frozen from a
    # brute-force scan of the box [0,8] x [-4,1].
    c = Cone(vec(0, 1), vec(7, -3))
    f = RationalFunctional(1, 1, c)
    assert enumerate_primitive(c, f, 1) == [vec(1, 0), vec(3, -1), vec(5, -2)]
    assert [f.linear(v) for v in enumerate_primitive(c, f, 1)] == [F(4, 7), F(5, 7), F(6, 7)]
    # below the smallest interior value the region is empty
    assert enumerate_primitive(c, f, F(1, 7)) == []


def test_enumerate_sort_order():
    c = Cone(vec(0, 1), vec(1, 0))
    f = RationalFunctional(1, 1, c)
    out = enumerate_primitive(c, f, 5)
    keys = [(f.linear(v), v.a, v.b) for v in out]
    assert keys == sorted(keys)


def test_enumerate_unbounded_region():
    c = Cone(vec(0, 1), vec(1, 0))
    with pytest.raises(UnboundedRegion):
        enumerate_primitive(c, RationalFunctional(0, 1, c), 1)
    with pytest.raises(UnboundedRegion):
        enumerate_primitive(c, RationalFunctional(1, -1, c), 1)


def test_enumerate_negative_orientation_and_wide_cone():
    c = Cone(vec(1, 0), vec(0, 1))
    f = RationalFunctional(F(1, 3), F(1, 3), c)
    assert enumerate_primitive(c, f, 1) == [vec(1, 1), vec(1, 2), vec(2, 1)]
    wide = Cone(vec(0, 1), vec(101, -40))
    g = RationalFunctional(1, 1, wide)
    got = enumerate_primitive(wide, g, F(1, 2))
    assert got and all(wide.contains(v, open=True) and g.linear(v) <= F(1, 2) for v in got)


def test_lattice_vector_is_hashable_and_ordered():
    assert len({vec(1, 2), LatticeVector(1, 2)}) == 1
    assert sorted([vec(2, 0), vec(1, 5)]) == [vec(1, 5), vec(2, 0)]
