"""Covering families of [n] and the combinatorial weights they induce.

The F-weight of x is the least number of members of F whose union contains
supp(x).  Sets are kept as bitmasks over [n] (coordinate i -> bit i - 1).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .hypercube import MAX_TABLE_DIM, Subset, Vector, bits_of, check_dim, popcount
from .weights import WeightTable, ball_masks, is_support_closed_masks


def _mask_of(coords: Iterable[int], n: int) -> int:
    mask = 0
    for i in coords:
        if not 1 <= i <= n:
            raise ValueError(f"coordinate {i} outside [1, {n}]")
        mask |= 1 << (i - 1)
    return mask


@dataclass(frozen=True)
class CoveringFamily:
    """A covering of [n].

    Duplicates are dropped, but sets contained in other sets are kept: they
    never change the weight.  Use :meth:`minimize` to strip them for display.
    """

    n: int
    sets: tuple[int, ...]

    def __post_init__(self):
        check_dim(self.n)
        if self.n < 1:
            raise ValueError("dimension must be positive")
        sets = tuple(sorted(set(self.sets)))
        if any(s == 0 for s in sets):
            raise ValueError("covering members must be nonempty")
        union = 0
        for s in sets:
            if s >> self.n:
                raise ValueError(f"set {s:#x} not inside [1, {self.n}]")
            union |= s
        if union != (1 << self.n) - 1:
            missing = [i + 1 for i in range(self.n) if not (union >> i) & 1]
            raise ValueError(f"family does not cover [n]: missing {missing}")
        object.__setattr__(self, "sets", sets)

    @classmethod
    def of(cls, n: int, sets: Iterable[Iterable[int]]) -> "CoveringFamily":
        """Build from 1-indexed coordinate lists, e.g. ``[[1, 2], [3]]``."""
        return cls(n, tuple(_mask_of(s, n) for s in sets))

    @classmethod
    def singletons(cls, n: int) -> "CoveringFamily":
        return cls(n, tuple(1 << i for i in range(n)))

    def as_lists(self) -> list[list[int]]:
        return sorted(([i + 1 for i in range(self.n) if (s >> i) & 1] for s in self.sets),
                      key=lambda s: (len(s), s))

    def minimize(self) -> "CoveringFamily":
        """Drop every set strictly contained in another member."""
        keep = [s for s in self.sets if not any(s != t and s & ~t == 0 for t in self.sets)]
        return CoveringFamily(self.n, tuple(keep))

    def to_json(self) -> dict:
        return {"n": self.n, "sets": self.as_lists()}

    @classmethod
    def from_json(cls, data: dict) -> "CoveringFamily":
        return cls.of(int(data["n"]), data["sets"])


def min_cover_size(target: int, sets: tuple[int, ...]) -> int:
    """Exact minimum set cover of ``target`` by ``sets`` (branch and bound).

    Branches on the lowest uncovered coordinate; a greedy cover seeds the
    upper bound and pairwise set-disjoint uncovered coordinates give a lower
    bound.
    """
    if target == 0:
        return 0
    sets = tuple(s for s in sets if s & target)
    containing = {}
    for b in bits_of(target):
        containing[b] = [s for s in sets if s & b]
        if not containing[b]:
            raise ValueError("target is not coverable")

    def greedy(rest: int) -> int:
        count = 0
        while rest:
            best = max(sets, key=lambda s: popcount(s & rest))
            rest &= ~best
            count += 1
        return count

    def lower(rest: int) -> int:
        # coordinates no two of which share a covering set each need their own set
        bound = 0
        blocked = 0
        for b in bits_of(rest):
            if b & blocked:
                continue
            bound += 1
            for s in containing[b]:
                blocked |= s
        return bound

    best = greedy(target)

    def search(rest: int, used: int) -> None:
        nonlocal best
        if rest == 0:
            best = min(best, used)
            return
        if used + lower(rest) >= best:
            return
        low = rest & -rest
        for s in sorted(containing[low], key=lambda s: -popcount(s & rest)):
            search(rest & ~s, used + 1)

    search(target, 0)
    return best


def f_weight(F: CoveringFamily, x: Vector) -> int:
    if x.dim != F.n:
        raise ValueError(f"dimension mismatch: {x.dim} vs {F.n}")
    return min_cover_size(x.bits, F.sets)


def _cover_table(n: int, sets: tuple[int, ...]) -> list[int]:
    # w[x] = 1 + min over sets S holding the lowest bit of x of w[x & ~S]
    table = [0] * (1 << n)
    by_bit = [[s for s in sets if (s >> i) & 1] for i in range(n)]
    for x in range(1, 1 << n):
        low = (x & -x).bit_length() - 1
        table[x] = 1 + min(table[x & ~s] for s in by_bit[low])
    return table


def f_weight_table(F: CoveringFamily) -> WeightTable:
    check_dim(F.n, MAX_TABLE_DIM)
    return WeightTable(F.n, _cover_table(F.n, F.sets))


def covering_product(F1: CoveringFamily, F2: CoveringFamily) -> CoveringFamily:
    """``F1 * F2``: every union of an F1-set with a shifted F2-set."""
    shift = F1.n
    return CoveringFamily(F1.n + F2.n, tuple(a | (b << shift) for a in F1.sets for b in F2.sets))


def saturate_covering(F: CoveringFamily, D: Subset) -> CoveringFamily:
    """``F(D)``: add the support of every member of the F-ball ``D``.

    The result turns ``D`` into a ball of radius 1.
    """
    if D.n != F.n:
        raise ValueError(f"dimension mismatch: {D.n} vs {F.n}")
    table = f_weight_table(F)
    r = table.max_over(D) if len(D) else 0
    if r < 1 or ball_masks(table, r) != list(D.members):
        raise ValueError("D is not a ball of positive radius of this covering centred at 0")
    return CoveringFamily(F.n, F.sets + tuple(x for x in D.members if x))


def verify_covering_ball(F: CoveringFamily, D: Subset, r: int) -> bool:
    if D.n != F.n:
        raise ValueError(f"dimension mismatch: {D.n} vs {F.n}")
    return ball_masks(f_weight_table(F), r) == list(D.members)


def recognize_radius1_covering(D: Subset) -> Optional[CoveringFamily]:
    """The covering whose radius-1 ball at 0 is ``D``, if one exists.

    That requires D to be support-closed and to contain every e_i; the
    maximal supports of D then form the family.
    """
    members = D._lookup
    if 0 not in members or D.n < 1:
        return None
    if any(1 << i not in members for i in range(D.n)):
        return None
    if not is_support_closed_masks(members):
        return None
    nonzero = [x for x in D.members if x]
    maximal = [x for x in nonzero if not any(x != y and x & ~y == 0 for y in nonzero)]
    F = CoveringFamily(D.n, tuple(maximal))
    if not verify_covering_ball(F, D, 1):
        return None
    return F
