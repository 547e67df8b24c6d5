"""Posets on [n], order ideals and P-weights.

A poset is stored as its closed relation: ``down[i]`` is the bitmask of all
elements below or equal to element ``i + 1``.  Coordinates in the public API
are 1-indexed, matching the vector convention of :mod:`hammtile.hypercube`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Optional


from .hypercube import MAX_TABLE_DIM, Subset, Vector, bits_of, check_dim, popcount
from .weights import WeightTable

# exhaustive labelled-poset search bound (130,023 posets at n = 6)
MAX_SEARCH_DIM = 6


@dataclass(frozen=True)
class Poset:
    n: int
    down: tuple[int, ...]

    def __post_init__(self):
        check_dim(self.n)
        if self.n < 1:
            raise ValueError("a poset needs at least one element")
        down = tuple(self.down)
        if len(down) != self.n:
            raise ValueError(f"expected {self.n} down-sets")
        for i, d in enumerate(down):
            if not (d >> i) & 1:
                raise ValueError(f"relation is not reflexive at {i + 1}")
            for j in range(self.n):
                if j != i and (d >> j) & 1 and (down[j] >> i) & 1:
                    raise ValueError(f"antisymmetry violated by {i + 1} and {j + 1}")
                if (d >> j) & 1 and down[j] & ~d:
                    raise ValueError(f"relation is not transitive at {j + 1} <= {i + 1}")
        object.__setattr__(self, "down", down)

    def leq(self, a: int, b: int) -> bool:
        """``a ⪯ b`` with 1-indexed elements."""
        return bool((self.down[b - 1] >> (a - 1)) & 1)

    def relations(self) -> list[tuple[int, int]]:
        """All strict relations ``a ⪯ b`` with a != b."""
        return [(a + 1, b + 1) for b in range(self.n) for a in range(self.n)
                if a != b and (self.down[b] >> a) & 1]

    def covering_pairs(self) -> list[tuple[int, int]]:
        """Pairs (a, b) where b covers a: the Hasse diagram edges."""
        pairs = []
        for a, b in self.relations():
            between = self.down[b - 1] & ~(1 << (b - 1)) & ~(1 << (a - 1))
            if not any((self.down[c.bit_length() - 1] >> (a - 1)) & 1 for c in bits_of(between)):
                pairs.append((a, b))
        return pairs

    def maximal_elements(self) -> list[int]:
        return [b + 1 for b in range(self.n)
                if not any(j != b and (self.down[j] >> b) & 1 for j in range(self.n))]

    def to_json(self) -> dict:
        return {"n": self.n, "relations": [list(p) for p in self.covering_pairs()]}

    @classmethod
    def from_json(cls, data: dict) -> "Poset":
        return poset_from_relations(int(data["n"]), [tuple(p) for p in data.get("relations", [])])


def poset_from_relations(n: int, relations: Iterable[tuple[int, int]]) -> Poset:
    """Reflexive-transitive closure of the relations ``a ⪯ b``."""
    check_dim(n)
    down = [1 << i for i in range(n)]
    for a, b in relations:
        if not (1 <= a <= n and 1 <= b <= n):
            raise ValueError(f"relation ({a}, {b}) outside [1, {n}]")
        down[b - 1] |= 1 << (a - 1)
    # closure by fixpoint; n is small
    changed = True
    while changed:
        changed = False
        for i in range(n):
            closed = down[i]
            for b in bits_of(down[i]):
                closed |= down[b.bit_length() - 1]
            if closed != down[i]:
                down[i] = closed
                changed = True
    for i in range(n):
        for j in range(i + 1, n):
            if (down[i] >> j) & 1 and (down[j] >> i) & 1:
                raise ValueError(f"cycle through {i + 1} and {j + 1}: not antisymmetric")
    return Poset(n, tuple(down))


def chain(n: int) -> Poset:
    return poset_from_relations(n, [(i, i + 1) for i in range(1, n)])


def antichain(n: int) -> Poset:
    return poset_from_relations(n, [])


def ideal_mask(P: Poset, mask: int) -> int:
    out = 0
    for b in bits_of(mask):
        out |= P.down[b.bit_length() - 1]
    return out


def ideal(P: Poset, A: Iterable[int]) -> set[int]:
    """The ideal generated by the 1-indexed coordinates in ``A``."""
    mask = 0
    for a in A:
        if not 1 <= a <= P.n:
            raise ValueError(f"coordinate {a} outside [1, {P.n}]")
        mask |= 1 << (a - 1)
    out = ideal_mask(P, mask)
    return {i + 1 for i in range(P.n) if (out >> i) & 1}


def p_weight(P: Poset, x: Vector) -> int:
    if x.dim != P.n:
        raise ValueError(f"dimension mismatch: {x.dim} vs {P.n}")
    return popcount(ideal_mask(P, x.bits))


def _ideal_masks(down: tuple[int, ...] | list[int], n: int) -> list[int]:
    # ideal(x) = ideal(x without lowest bit) | down[lowest bit]
    masks = [0] * (1 << n)
    for x in range(1, 1 << n):
        low = x & -x
        masks[x] = masks[x ^ low] | down[low.bit_length() - 1]
    return masks


def p_weight_table(P: Poset) -> WeightTable:
    check_dim(P.n, MAX_TABLE_DIM)
    return WeightTable(P.n, [m.bit_count() for m in _ideal_masks(P.down, P.n)])


def ball_radius(weights, members: frozenset[int]) -> Optional[int]:
    """Radius r with ``{x : weights[x] <= r} == members``, or None.

    The smallest such radius (the largest weight inside) is returned.
    """
    inside = max(weights[x] for x in members)
    outside = min((w for x, w in enumerate(weights) if x not in members), default=None)
    if outside is not None and outside <= inside:
        return None
    return inside


def verify_poset_ball(P: Poset, D: Subset) -> Optional[int]:
    """Radius at which ``D`` is a P-ball centred at 0, or None."""
    if D.n != P.n:
        raise ValueError(f"dimension mismatch: {D.n} vs {P.n}")
    if 0 not in D:
        return None
    return ball_radius(p_weight_table(P).values.tolist(), D._lookup)


def iter_labelled_posets(n: int) -> Iterator[Poset]:
    """Every labelled poset on [n], each exactly once."""
    for down in _iter_downs(n):
        yield Poset(n, tuple(down))


def _iter_downs(n: int, prefix_hook=None) -> Iterator[list[int]]:
    # Insert elements 1..n in turn.  The new element k gets a down-set L (an
    # ideal of the current poset) and an up-set U (a filter) with L below all
    # of U; distinct (L, U) give distinct relations, so nothing repeats.
    def extend(down: list[int], k: int):
        if prefix_hook is not None and not prefix_hook(down, k):
            return
        if k == n:
            yield down
            return
        full = (1 << k) - 1
        ideals = _ideals_of(down, k)
        filters = [full & ~ideal for ideal in ideals]  # complements of ideals are filters
        new_bit = 1 << k
        for L in ideals:
            for U in filters:
                if L & U:
                    continue
                if any(down[u.bit_length() - 1] & L != L for u in bits_of(U)):
                    continue
                nd = list(down)
                for u in bits_of(U):
                    nd[u.bit_length() - 1] |= new_bit
                nd.append(L | new_bit)
                yield from extend(nd, k + 1)

    yield from extend([], 0)


def _ideals_of(down: list[int], k: int) -> list[int]:
    return sorted({m for m in _ideal_masks(down, k)}) if k else [0]


def find_poset_ball(D: Subset, max_n: int = MAX_SEARCH_DIM) -> Optional[tuple[Poset, int]]:
    """Search all labelled posets on [n] for one whose metric ball at 0 is ``D``.

    Returns ``(P, r)`` with ``ball(p_weight_table(P), 0, r) == D`` (the
    smallest such r), or None when no poset realises ``D``.  Partial posets on
    the first k coordinates are pruned when the weights already seen cannot be
    separated any more: adding elements only grows ideals, by at most n - k.
    """
    n = D.n
    if n > min(max_n, MAX_SEARCH_DIM):
        raise ValueError(f"poset search is exhaustive only for n <= {min(max_n, MAX_SEARCH_DIM)}")
    if n < 1:
        raise ValueError("dimension must be positive")
    members = D._lookup
    if 0 not in members:
        return None
    from .weights import is_support_closed_masks
    if not is_support_closed_masks(members):
        return None

    def feasible(down: list[int], k: int) -> bool:
        if k == 0:
            return True
        masks = _ideal_masks(down, k)
        inside = max(masks[x].bit_count() for x in range(1 << k) if x in members)
        outside = min((masks[x].bit_count() for x in range(1 << k) if x not in members),
                      default=None)
        return outside is None or inside < outside + (n - k)

    for down in _iter_downs(n, feasible):
        weights = [m.bit_count() for m in _ideal_masks(down, n)]
        r = ball_radius(weights, members)
        if r is not None:
            P = Poset(n, tuple(down))
            assert verify_poset_ball(P, D) == r
            return P, r
    return None
