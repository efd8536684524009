"""Fan representations of HJ-strings.

A fan representation sends each curve of the chain E_0..E_{r+1} to a
vector in Z^2 so that E_{i-1} - m_i E_i + E_{i+1} maps to zero and the
images generate the lattice.  Blowing up a node inserts the sum of the
two neighbouring images.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import IndexOutOfRange, InconsistentData, ValidationError
from .hjstring import FractionPair, HJString, blowup_at
from .lattice import LatticeVector, cross

BlowupWord = Sequence[int]


@dataclass(frozen=True)
class FanRep:
    images: tuple[LatticeVector, ...]
    string: HJString

    def __post_init__(self):
        if len(self.images) != len(self.string) + 2:
            raise ValidationError(
                f"{len(self.images)} images for a string of length {len(self.string)}"
            )

    @property
    def labels(self) -> list[str]:
        return [f"E{i}" for i in range(len(self.images))]

    @property
    def assignment(self) -> dict[str, LatticeVector]:
        return dict(zip(self.labels, self.images))

    @property
    def exceptional(self) -> tuple[LatticeVector, ...]:
        return self.images[1:-1]


def chain_images(s: HJString | Sequence[int]) -> list[LatticeVector]:
    """Images E_0..E_{r+1} from E_0 -> (0,1), E_1 -> (1,0) and the relations."""
    imgs = [LatticeVector(0, 1), LatticeVector(1, 0)]
    for m in s:
        imgs.append(m * imgs[-1] - imgs[-2])
    return imgs


def seed_rep(s: HJString | Sequence[int], last: FractionPair | None = None) -> FanRep:
    s = s if isinstance(s, HJString) else HJString(tuple(s))
    imgs = chain_images(s)
    if last is not None and imgs[-1] != LatticeVector(last.m, -last.k):
        raise InconsistentData(f"{s} ends at {imgs[-1]}, not ({last.m},{-last.k})")
    return FanRep(tuple(imgs), s)


def extend_blowup(rep: FanRep, word: BlowupWord) -> FanRep:
    imgs = list(rep.images)
    s = rep.string
    for i in word:
        if not 0 <= i <= len(s):
            raise IndexOutOfRange(f"node {i} outside 0..{len(s)}")
        s = blowup_at(s, i)
        imgs.insert(i + 1, imgs[i] + imgs[i + 1])
    return FanRep(tuple(imgs), s)


def verify_kernel(rep: FanRep) -> bool:
    imgs = rep.images
    for i, m in enumerate(rep.string, start=1):
        if imgs[i - 1] - m * imgs[i] + imgs[i + 1] != LatticeVector(0, 0):
            return False
    g = 0
    for i in range(len(imgs)):
        for j in range(i + 1, len(imgs)):
            g = math.gcd(g, cross(imgs[i], imgs[j]))
    return g == 1
