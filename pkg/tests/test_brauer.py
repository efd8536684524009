from fractions import Fraction

import pytest

from bhj.brauer import (
    Ambient,
    BranchGerm,
    ForkData,
    LocalConfig,
    RamifiedCover,
    UnramifiedCover,
    b_from_a,
    blowup_ram,
    corestrict,
    delta_functional,
    fork_reduce,
    is_prime,
    ram_hom,
    reduced_fork_string,
    restrict,
    torsion,
    zbar,
)
from bhj.errors import (
    ExclusionViolation,
    InconsistentRamification,
    SecondaryRamPresent,
    UnsupportedPrime,
    ValidationError,
)
from bhj.hjstring import hj
from bhj.lattice import TorsionValue, char_exclusion_set, eval_rational, eval_torsion, vec

F = Fraction


def unram(ray, e, z, g=1):
    return BranchGerm(ray, e, g, UnramifiedCover(torsion(z)))


def test_is_prime():
    assert [n for n in range(20) if is_prime(n)] == [2, 3, 5, 7, 11, 13, 17, 19]


def test_b_from_a():
    # a + 1 - 1/n: an unramified curve with a = 0 sits exactly at b = 0
    assert b_from_a(0, 1) == 0
    assert b_from_a(1, 1) == 1
    assert b_from_a(F(-2, 3), 3) == 0
    assert b_from_a(F(1, 3), 3) == 1


def test_blowup_ram():
    assert blowup_ram([(torsion("1/2"), 1), (torsion("1/3"), 1)]) == TorsionValue(5, 6)
    assert blowup_ram([(torsion("1/3"), 3)]) == TorsionValue(0)
    assert blowup_ram([]) == TorsionValue(0)
    assert blowup_ram([(UnramifiedCover(torsion("1/7")), 2)]) == TorsionValue(2, 7)


def test_blowup_ram_rejects_secondary():
    with pytest.raises(SecondaryRamPresent):
        blowup_ram([(RamifiedCover((torsion("1/3"),)), 1)])
    germ = BranchGerm(vec(1, 0), 3, 1, RamifiedCover((torsion("1/3"),)))
    with pytest.raises(SecondaryRamPresent):
        blowup_ram([(germ, 1)])


def test_branch_germ_validation():
    assert BranchGerm(vec(1, 0), 1, 7).n == 7
    assert BranchGerm(vec(1, 0)).zeta.is_zero
    with pytest.raises(ValidationError):
        BranchGerm(vec(1, 0), 7, 1, UnramifiedCover(torsion("1/3")))
    with pytest.raises(ValidationError):
        BranchGerm(vec(1, 0), 7)
    with pytest.raises(ValidationError):
        BranchGerm(vec(1, 0), 1, 1, RamifiedCover((torsion("1/7"),)))
    with pytest.raises(ValidationError):
        BranchGerm(vec(1, 0), 7, 1, RamifiedCover((torsion(0),)))


def test_branch_germ_exclusion():
    with char_exclusion_set([7]):
        with pytest.raises(ExclusionViolation):
            BranchGerm(vec(1, 0), 1, 7)


def test_ambient():
    assert Ambient.regular().is_regular
    assert Ambient.hj(7, 3).string == hj(3, 2, 2)
    assert Ambient.hj(7, 3).end_ray == vec(7, -3)
    assert str(Ambient.hj(7, 3)) == "HJ(7,3)"
    with pytest.raises(ValidationError):
        Ambient.hj(6, 3)


def test_delta_functional_examples():
    intro = LocalConfig(3, Ambient.regular(), (unram(vec(1, 0), 3, "1/3"),), zbar("1/3", 0))
    f = delta_functional(intro)
    assert (f.value_u, f.value_w) == (1, F(1, 3))
    assert eval_rational(f, vec(1, 1)) == F(4, 3)

    hj73 = LocalConfig(7, Ambient.hj(7, 3), (), zbar("1/7", 0))
    g = delta_functional(hj73)
    assert (g.value_u, g.value_w) == (1, 1)
    assert eval_rational(g, vec(1, 0)) == F(4, 7)

    plain = LocalConfig(7, Ambient.regular())
    assert eval_rational(delta_functional(plain), vec(1, 1)) == 2


def test_ram_hom_examples():
    intro = LocalConfig(3, Ambient.regular(), (unram(vec(1, 0), 3, "1/3"),), zbar("1/3", 0))
    z = ram_hom(intro)
    assert (z.value_e1, z.value_e2) == (TorsionValue(1, 3), TorsionValue(0))

    hj73 = LocalConfig(7, Ambient.hj(7, 3), (), zbar("1/7", 0))
    assert eval_torsion(ram_hom(hj73), vec(7, -3)).is_zero


def test_ram_hom_inconsistent():
    cfg = LocalConfig(7, Ambient.regular(), (BranchGerm(vec(1, 0), 1, 1),), zbar("1/7", 0))
    with pytest.raises(InconsistentRamification):
        ram_hom(cfg)
    wrong_zeta = LocalConfig(7, Ambient.regular(), (unram(vec(1, 0), 7, "2/7"),), zbar("1/7", 0))
    with pytest.raises(InconsistentRamification):
        ram_hom(wrong_zeta)


def test_ram_hom_secondary():
    cfg = LocalConfig(
        7,
        Ambient.regular(),
        (
            BranchGerm(vec(0, 1), 7, 1, RamifiedCover((torsion("1/7"),))),
            BranchGerm(vec(1, 0), 7, 1, RamifiedCover((torsion("6/7"),))),
        ),
    )
    assert cfg.secondary
    with pytest.raises(SecondaryRamPresent):
        ram_hom(cfg)


def test_secondary_must_cancel():
    with pytest.raises(InconsistentRamification):
        LocalConfig(
            7,
            Ambient.regular(),
            (
                BranchGerm(vec(0, 1), 7, 1, RamifiedCover((torsion("1/7"),))),
                BranchGerm(vec(1, 0), 7, 1, RamifiedCover((torsion("1/7"),))),
            ),
        )
    with pytest.raises(InconsistentRamification):
        LocalConfig(7, Ambient.regular(), (BranchGerm(vec(1, 0), 7, 1, RamifiedCover((torsion("1/7"),))),))


def test_config_validation():
    with pytest.raises(ValidationError):
        LocalConfig(9)
    with pytest.raises(ValidationError):
        LocalConfig(7, Ambient.regular(), (BranchGerm(vec(1, 1), 1, 7),))
    with pytest.raises(ValidationError):
        LocalConfig(7, Ambient.regular(), (BranchGerm(vec(1, 0), 1, 7), BranchGerm(vec(1, 0), 1, 7)))
    with pytest.raises(ValidationError):
        LocalConfig(7, Ambient.regular(), (BranchGerm(vec(1, 0), 1, 49),))
    with pytest.raises(ValidationError):
        LocalConfig(7, zbar=zbar("1/3", 0))
    with char_exclusion_set([7]):
        with pytest.raises(ValidationError):
            LocalConfig(7)


def test_tangential_config_validation():
    a = unram(vec(0, 1), 7, "1/7")
    b = unram(vec(1, 0), 7, "1/7")
    cfg = LocalConfig(7, Ambient.regular(), (a, b), zbar("1/7", "1/7"), tangency_d=2)
    assert cfg.tangency_d == 2
    with pytest.raises(ValidationError):
        LocalConfig(7, Ambient.regular(), (a, b), zbar("1/7", "1/7"), tangency_d=1)
    with pytest.raises(ValidationError):
        LocalConfig(7, Ambient.regular(), (a,), zbar(0, "1/7"), tangency_d=2)


def test_restrict_corestrict():
    assert restrict(torsion("1/7"), 2) == TorsionValue(2, 7)
    assert corestrict(torsion("3/7")) == TorsionValue(3, 7)


def test_fork_data_validation():
    with pytest.raises(ValidationError):
        ForkData("E", (2,))
    with pytest.raises(ValidationError):
        ForkData("D", (1, 2))
    with pytest.raises(ValidationError):
        ForkData("B", (2, 3))
    with pytest.raises(ValidationError):
        ForkData("C", (2,), 2)
    with pytest.raises(ValidationError):
        ForkData("B", (2, 2, 2, 2), 1)  # reduced [2,2,2,2,1,2,2,2,2] is not definite


def test_fork_reduce_type_d():
    red = fork_reduce(LocalConfig(7, fork=ForkData("D", (3, 2))))
    assert red.string == hj(2, 2)
    assert red.first_ray_is_curve
    assert red.delta.value_u == 0


def test_fork_reduce_type_b():
    fork = ForkData("B", (2, 3), 2)
    assert reduced_fork_string(fork) == hj(3, 2, 2, 2, 3)
    red = fork_reduce(LocalConfig(7, fork=fork))
    assert red.string == hj(3, 2, 2, 2, 3)
    assert red.mirror == ((0, 6), (1, 5), (2, 4))


def test_fork_reduce_type_c_p2():
    with pytest.raises(UnsupportedPrime):
        fork_reduce(LocalConfig(2, fork=ForkData("C", (2, 2))))


def test_fork_constraints_type_d():
    # reduced string [2,2] ends at (3,-2), where z̄ = 3 * 2/7 = 6/7
    branch = unram(vec(3, -2), 7, "6/7")
    cfg = LocalConfig(7, fork=ForkData("D", (3, 2)), branches=(branch,), zbar=zbar("2/7", 0))
    red = fork_reduce(cfg)
    derived = red.check(cfg.zbar, branch.zeta)
    assert derived["E_b"] * 2 == TorsionValue(2, 7)
    assert derived["E_b"] + derived["E_c"] == TorsionValue(2, 7)
    with pytest.raises(InconsistentRamification):
        red.check(zbar("2/7", "1/7"), branch.zeta)
