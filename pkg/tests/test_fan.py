import pytest

from bhj.errors import IndexOutOfRange, InconsistentData
from bhj.fan import FanRep, chain_images, extend_blowup, seed_rep, verify_kernel
from bhj.hjstring import FractionPair, hj
from bhj.lattice import LatticeVector, vec


def test_seed_rep_hj73():
    rep = seed_rep(hj(3, 2, 2), FractionPair(7, 3))
    assert rep.images == (vec(0, 1), vec(1, 0), vec(3, -1), vec(5, -2), vec(7, -3))
    assert rep.labels == ["E0", "E1", "E2", "E3", "E4"]
    assert rep.assignment["E4"] == vec(7, -3)


def test_seed_rep_regular_point():
    rep = seed_rep(hj(), FractionPair(1, 0))
    assert rep.images == (vec(0, 1), vec(1, 0))


def test_seed_rep_non_strict_string():
    # [3,1,3] has determinant 3 = |cross((0,1),(3,-2))|
    rep = seed_rep(hj(3, 1, 3))
    assert rep.images == (vec(0, 1), vec(1, 0), vec(3, -1), vec(2, -1), vec(3, -2))


def test_seed_rep_inconsistent_endpoint():
    with pytest.raises(InconsistentData):
        seed_rep(hj(3, 2, 2), FractionPair(7, 2))


def test_extend_blowup_mediant():
    rep = extend_blowup(seed_rep(hj()), [0])
    assert rep.images == (vec(0, 1), vec(1, 1), vec(1, 0))
    assert rep.string == hj(1)


def test_extend_blowup_intro_word():
    rep = extend_blowup(seed_rep(hj()), [0, 1, 2, 1])
    assert rep.string == hj(3, 1, 3, 1)
    assert rep.exceptional == (vec(1, 1), vec(3, 2), vec(2, 1), vec(3, 1))
    assert verify_kernel(rep)


def test_extend_blowup_empty_word():
    rep = seed_rep(hj(3, 2, 2))
    assert extend_blowup(rep, []) == rep


def test_extend_blowup_bad_node():
    with pytest.raises(IndexOutOfRange):
        extend_blowup(seed_rep(hj(2)), [2])


def test_verify_kernel():
    rep = seed_rep(hj(3, 2, 2))
    assert verify_kernel(rep)
    imgs = list(rep.images)
    imgs[2] = imgs[2] + vec(1, 0)
    assert not verify_kernel(FanRep(tuple(imgs), rep.string))
    doubled = FanRep(tuple(2 * v for v in rep.images), rep.string)
    assert not verify_kernel(doubled)


def test_chain_images_matches_seed():
    assert chain_images([4, 2]) == [vec(0, 1), vec(1, 0), vec(4, -1), vec(7, -2)]
    assert isinstance(chain_images([])[0], LatticeVector)
