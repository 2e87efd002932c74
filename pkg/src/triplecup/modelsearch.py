"""Dimension bookkeeping for triple products of manifolds with two large systoles.

A factor ``(p, s)`` has dimension ``r = p + s`` and may carry short classes in
degrees ``0, 1, 2, r-2, r-1, r``.  A parameter set ``{(p_i, s_i)}`` of three
factors is linked by ``p_i + s_{i+1} = q`` (indices mod 3), giving a product
of dimension ``3q``.  Degrees where a short class can occur are "bad"; a set
is usable when neither q nor 2q is bad.

Two index conventions are provided for the single-large-term set.  In the
``published`` one the large term of factor i is combined with short degrees
of factors i-1 and i; it reproduces the published gap list
``{7, 8, 30, 31, 62, 63, 76}``.  The ``literal`` one combines it with factors
i+1 and i+2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

CONVENTIONS = {"published": 2, "literal": 1}
DEFAULT_MARGIN = 4


class InvalidParameterSet(ValueError):
    pass


@dataclass(frozen=True)
class FhModel:
    """Symbolic profile of one factor: large classes in degrees p and s."""

    p: int
    s: int

    def __post_init__(self):
        if self.p < 4 or self.s < self.p + 3:
            raise InvalidParameterSet(f"need p >= 4 and s >= p + 3, got ({self.p}, {self.s})")

    @property
    def r(self) -> int:
        return self.p + self.s

    @property
    def short_degrees(self) -> tuple[int, ...]:
        return short_degrees(self.r)

    @property
    def nonzero_degrees(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.short_degrees) | {self.p, self.s}))


def short_degrees(r: int) -> tuple[int, ...]:
    return tuple(sorted({0, 1, 2, r - 2, r - 1, r}))


@dataclass(frozen=True)
class ParameterSet:
    pairs: tuple[tuple[int, int], tuple[int, int], tuple[int, int]]

    def __post_init__(self):
        pairs = tuple(tuple(int(v) for v in pair) for pair in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        if len(pairs) != 3:
            raise InvalidParameterSet("need exactly three (p, s) pairs")
        for p, s in pairs:
            FhModel(p, s)
        qs = {pairs[i][0] + pairs[(i + 1) % 3][1] for i in range(3)}
        if len(qs) != 1:
            raise InvalidParameterSet(f"p_i + s_(i+1) differs across i: {sorted(qs)}")

    @classmethod
    def from_flat(cls, values) -> ParameterSet:
        v = [int(x) for x in values]
        if len(v) != 6:
            raise InvalidParameterSet("need six integers p0 s0 p1 s1 p2 s2")
        return cls(((v[0], v[1]), (v[2], v[3]), (v[4], v[5])))

    @property
    def q(self) -> int:
        return self.pairs[0][0] + self.pairs[1][1]

    @property
    def r(self) -> tuple[int, int, int]:
        return tuple(p + s for p, s in self.pairs)

    @property
    def margin(self) -> int:
        return min(s - p for p, s in self.pairs)

    def flat(self) -> tuple[int, ...]:
        return tuple(v for pair in self.pairs for v in pair)

    def rotate(self, k: int = 1) -> ParameterSet:
        return ParameterSet(self.pairs[k:] + self.pairs[:k])


def bad_dimensions(I: ParameterSet, convention: str = "published") -> list[int]:
    """Sorted union of the single-large-term and all-short degree sets."""
    shift = CONVENTIONS[convention]
    r = I.r
    bad = set()
    for i, (p, s) in enumerate(I.pairs):
        xs = short_degrees(r[(i + shift) % 3])
        ys = short_degrees(r[(i + shift + 1) % 3])
        for x in xs:
            for y in ys:
                bad.add(p + x + y)
                bad.add(s + x + y)
    for x in short_degrees(r[0]):
        for y in short_degrees(r[1]):
            for z in short_degrees(r[2]):
                bad.add(x + y + z)
    return sorted(bad)


def gaps(I: ParameterSet, convention: str = "published") -> list[int]:
    """Degrees in ``[0, 3q]`` that are not bad."""
    bad = set(bad_dimensions(I, convention))
    return [d for d in range(3 * I.q + 1) if d not in bad]


def is_bad(I: ParameterSet, d: int, convention: str = "published") -> bool:
    """Membership test written against the definition directly, without building the set."""
    shift = CONVENTIONS[convention]
    r = I.r

    def short(ri, v):
        return v in (0, 1, 2) or ri - 2 <= v <= ri

    for i, (p, s) in enumerate(I.pairs):
        ra, rb = r[(i + shift) % 3], r[(i + shift + 1) % 3]
        for big in (p, s):
            rest = d - big
            for x in itertools.chain(range(3), range(ra - 2, ra + 1)):
                if short(ra, x) and short(rb, rest - x) and rest - x >= 0:
                    return True
    for x in itertools.chain(range(3), range(r[0] - 2, r[0] + 1)):
        for y in itertools.chain(range(3), range(r[1] - 2, r[1] + 1)):
            z = d - x - y
            if z >= 0 and short(r[2], z):
                return True
    return False


def valid(I: ParameterSet, convention: str = "published", margin: int = DEFAULT_MARGIN) -> bool:
    """Usable set: every ``s_i - p_i >= margin`` and neither q nor 2q is bad."""
    if I.margin < margin:
        return False
    bad = set(bad_dimensions(I, convention))
    return I.q not in bad and 2 * I.q not in bad


def _short_table(r: np.ndarray) -> np.ndarray:
    return np.stack([np.zeros_like(r), np.ones_like(r), 2 * np.ones_like(r), r - 2, r - 1, r], axis=1)


def search_q(q: int, convention: str = "published", margin: int = DEFAULT_MARGIN) -> list[ParameterSet]:
    """All usable sets of dimension q, ordered by ``(p0, p1, p2)``."""
    shift = CONVENTIONS[convention]
    ps = np.array(list(itertools.product(range(4, q - 6), repeat=3)), dtype=np.int64).reshape(-1, 3)
    if ps.size == 0:
        return []
    s = np.stack([q - ps[:, 2], q - ps[:, 0], q - ps[:, 1]], axis=1)
    ok = ((s - ps) >= max(margin, 3)).all(axis=1)
    ps, s = ps[ok], s[ok]
    r = ps + s
    targets = (q, 2 * q)
    bad = np.zeros(len(ps), dtype=bool)
    for i in range(3):
        xs = _short_table(r[:, (i + shift) % 3])
        ys = _short_table(r[:, (i + shift + 1) % 3])
        for a in range(6):
            for b in range(6):
                for big in (ps[:, i], s[:, i]):
                    v = big + xs[:, a] + ys[:, b]
                    bad |= (v == targets[0]) | (v == targets[1])
    t0, t1, t2 = (_short_table(r[:, k]) for k in range(3))
    for a in range(6):
        for b in range(6):
            for c in range(6):
                v = t0[:, a] + t1[:, b] + t2[:, c]
                bad |= (v == targets[0]) | (v == targets[1])
    out = []
    for row_p, row_s in zip(ps[~bad], s[~bad]):
        out.append(ParameterSet(tuple((int(a), int(b)) for a, b in zip(row_p, row_s))))
    return out


def search_min_q(q_max: int, q_min: int = 11, convention: str = "published", margin: int = DEFAULT_MARGIN) -> list[tuple[int, list[ParameterSet]]]:
    """Usable sets for every q in ``q_min..q_max``."""
    return [(q, search_q(q, convention, margin)) for q in range(q_min, q_max + 1)]


@dataclass(frozen=True)
class RatioReport:
    systole_exponent: int
    volume_exponent: int
    ratio_exponent_n: int
    ratio_exponent_volume: Fraction
    ratio_at_n: float

    def lines(self) -> list[str]:
        return [
            f"sys_q=n^{self.systole_exponent}",
            f"sys_2q=n^{self.systole_exponent}",
            f"vol=n^{self.volume_exponent}",
            f"ratio=n^{self.ratio_exponent_n}",
            f"ratio=vol^{self.ratio_exponent_volume}",
            f"ratio_at_n={self.ratio_at_n:g}",
        ]


def systolic_ratio_model(I: ParameterSet, n: int, convention: str = "published", margin: int = DEFAULT_MARGIN) -> RatioReport:
    """Exponent bookkeeping: both systoles grow as n^2, volume as n^3."""
    if not valid(I, convention, margin):
        raise InvalidParameterSet(f"parameter set {I.flat()} is not usable")
    sys_exp, vol_exp = 2, 3
    ratio = 2 * sys_exp - vol_exp
    return RatioReport(sys_exp, vol_exp, ratio, Fraction(ratio, vol_exp), float(n) ** ratio)
