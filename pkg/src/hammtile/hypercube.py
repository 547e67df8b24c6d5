"""Arithmetic and geometry of the binary Hamming cube F_2^n.

Vectors are stored as integer bitmasks: coordinate ``i`` (1-indexed) lives in
bit ``i - 1``, so the integer value of a vector is ``sum(x_i * 2**(i-1))`` and
doubles as its index in a weight table.  The text form is a '0'/'1' string
whose leftmost character is coordinate 1, e.g. ``"1100"`` is ``e_1 + e_2``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Iterator

MAX_DIM = 63
# 2^n tables and exhaustive scans are only allowed up to this dimension.
MAX_TABLE_DIM = 16


def popcount(mask: int) -> int:
    return mask.bit_count()


def bits_of(mask: int) -> Iterator[int]:
    """Yield the single-bit masks set in ``mask``, lowest first."""
    while mask:
        low = mask & -mask
        yield low
        mask ^= low


def submasks(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask`` (including 0 and ``mask`` itself)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def to_bitstring(mask: int, n: int) -> str:
    return "".join("1" if (mask >> i) & 1 else "0" for i in range(n))


def from_bitstring(text: str) -> int:
    if not text or any(ch not in "01" for ch in text):
        raise ValueError(f"not a bitstring: {text!r}")
    return sum(1 << i for i, ch in enumerate(text) if ch == "1")


def check_dim(n: int, limit: int = MAX_DIM) -> None:
    if not isinstance(n, int) or n < 0 or n > limit:
        raise ValueError(f"dimension {n!r} outside 0..{limit}")


@dataclass(frozen=True, order=True)
class Vector:
    bits: int
    dim: int

    def __post_init__(self):
        check_dim(self.dim)
        if self.bits < 0 or self.bits >> self.dim:
            raise ValueError(f"bits {self.bits:#x} do not fit in dimension {self.dim}")

    @classmethod
    def parse(cls, text: str) -> "Vector":
        return cls(from_bitstring(text), len(text))

    @classmethod
    def basis(cls, i: int, n: int) -> "Vector":
        """The standard basis vector e_i (1-indexed)."""
        if not 1 <= i <= n:
            raise ValueError(f"coordinate {i} outside [1, {n}]")
        return cls(1 << (i - 1), n)

    @classmethod
    def from_support(cls, coords: Iterable[int], n: int) -> "Vector":
        bits = 0
        for i in coords:
            if not 1 <= i <= n:
                raise ValueError(f"coordinate {i} outside [1, {n}]")
            bits |= 1 << (i - 1)
        return cls(bits, n)

    def __add__(self, other: "Vector") -> "Vector":
        _same_dim(self, other)
        return Vector(self.bits ^ other.bits, self.dim)

    __sub__ = __add__

    def __str__(self) -> str:
        return to_bitstring(self.bits, self.dim)

    def support(self) -> frozenset[int]:
        return frozenset(i + 1 for i in range(self.dim) if (self.bits >> i) & 1)

    def concat(self, other: "Vector") -> "Vector":
        """Juxtaposition ``self | other`` in F_2^{n+m}."""
        return Vector(self.bits | (other.bits << self.dim), self.dim + other.dim)


def _same_dim(x: Vector, y: Vector) -> None:
    if x.dim != y.dim:
        raise ValueError(f"dimension mismatch: {x.dim} vs {y.dim}")


@dataclass(frozen=True)
class Subset:
    """A duplicate-free set of vectors of F_2^n, kept sorted by integer value.

    Iterating a ``Subset`` yields the integer masks; use :meth:`vectors` for
    :class:`Vector` objects.
    """

    n: int
    members: tuple[int, ...]
    _lookup: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        check_dim(self.n)
        members = tuple(sorted(set(self.members)))
        for m in members:
            if m < 0 or m >> self.n:
                raise ValueError(f"member {m:#x} does not fit in dimension {self.n}")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "_lookup", frozenset(members))

    @classmethod
    def of(cls, n: int, members: Iterable) -> "Subset":
        """Build from masks, ``Vector`` objects or bitstrings."""
        masks = []
        for m in members:
            if isinstance(m, Vector):
                if m.dim != n:
                    raise ValueError(f"vector of dimension {m.dim} in a subset of F_2^{n}")
                masks.append(m.bits)
            elif isinstance(m, str):
                if len(m) != n:
                    raise ValueError(f"bitstring {m!r} has length {len(m)}, expected {n}")
                masks.append(from_bitstring(m))
            else:
                masks.append(int(m))
        return cls(n, tuple(masks))

    @classmethod
    def from_supports(cls, n: int, supports: Iterable[Iterable[int]]) -> "Subset":
        """Build from 1-indexed supports, e.g. ``[[], [1], [1, 2]]``."""
        return cls(n, tuple(Vector.from_support(s, n).bits for s in supports))

    @classmethod
    def full(cls, n: int) -> "Subset":
        check_dim(n, MAX_TABLE_DIM)
        return cls(n, tuple(range(1 << n)))

    def __contains__(self, item) -> bool:
        if isinstance(item, Vector):
            return item.dim == self.n and item.bits in self._lookup
        return item in self._lookup

    def __iter__(self) -> Iterator[int]:
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def vectors(self) -> list[Vector]:
        return [Vector(m, self.n) for m in self.members]

    def bitstrings(self) -> list[str]:
        return [to_bitstring(m, self.n) for m in self.members]

    def translate(self, shift: int) -> "Subset":
        return Subset(self.n, tuple(m ^ shift for m in self.members))

    def sumset(self, other: "Subset") -> "Subset":
        """``self + other`` = {a + b}."""
        if other.n != self.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")
        return Subset(self.n, tuple({a ^ b for a in self.members for b in other.members}))

    def concat(self, other: "Subset") -> "Subset":
        """``self | other`` in F_2^{n+m}."""
        shift = self.n
        return Subset(self.n + other.n,
                      tuple(a | (b << shift) for b in other.members for a in self.members))

    def to_json(self) -> dict:
        return {"n": self.n, "vectors": self.bitstrings()}

    @classmethod
    def from_json(cls, data: dict) -> "Subset":
        return cls.of(int(data["n"]), data["vectors"])


@dataclass(frozen=True)
class Path:
    """A walk in the cube whose consecutive points differ in exactly one coordinate."""

    points: tuple[Vector, ...]

    def __post_init__(self):
        pts = tuple(self.points)
        if not pts:
            raise ValueError("a path needs at least one point")
        for a, b in zip(pts, pts[1:]):
            _same_dim(a, b)
            if popcount(a.bits ^ b.bits) != 1:
                raise ValueError(f"invalid step {a} -> {b}: Hamming distance must be 1")
        object.__setattr__(self, "points", pts)

    def __len__(self) -> int:
        return len(self.points) - 1

    def is_geodesic(self) -> bool:
        return hamming_distance(self.points[0], self.points[-1]) == len(self)


def hamming_weight(x: Vector) -> int:
    return popcount(x.bits)


def hamming_distance(x: Vector, y: Vector) -> int:
    _same_dim(x, y)
    return popcount(x.bits ^ y.bits)


def support_subseteq(x: Vector, y: Vector) -> bool:
    _same_dim(x, y)
    return x.bits & ~y.bits == 0


def interval_masks(x: int, y: int) -> list[int]:
    diff = x ^ y
    return sorted(x ^ s for s in submasks(diff))


def interval(x: Vector, y: Vector) -> Subset:
    """All points lying on some geodesic between ``x`` and ``y``."""
    _same_dim(x, y)
    return Subset(x.dim, tuple(interval_masks(x.bits, y.bits)))


def _geodesic_reachable(x: int, y: int, members: frozenset[int]) -> bool:
    # monotone BFS: every step flips one still-differing coordinate
    frontier = {x}
    while frontier:
        if y in frontier:
            return True
        nxt = set()
        for z in frontier:
            for b in bits_of(z ^ y):
                w = z ^ b
                if w in members:
                    nxt.add(w)
        frontier = nxt
    return False


def _require_nonempty(D: Subset) -> None:
    if len(D) == 0:
        raise ValueError("empty subset")


def is_polyhedromino(D: Subset) -> bool:
    """True iff every pair of members is joined by a geodesic staying in ``D``."""
    _require_nonempty(D)
    members = D._lookup
    for x, y in combinations(D.members, 2):
        if not _geodesic_reachable(x, y, members):
            return False
    return True


def is_convex_polyhedromino(D: Subset) -> bool:
    """True iff every geodesic between members of ``D`` stays in ``D``."""
    _require_nonempty(D)
    members = D._lookup
    for x, y in combinations(D.members, 2):
        diff = x ^ y
        for s in submasks(diff):
            if x ^ s not in members:
                return False
    return True


def gf2_rank_masks(masks: Iterable[int]) -> int:
    # xor basis keyed by leading bit
    basis: dict[int, int] = {}
    for v in masks:
        while v:
            lead = v.bit_length() - 1
            if lead not in basis:
                basis[lead] = v
                break
            v ^= basis[lead]
    return len(basis)


def gf2_rank(D: Subset) -> int:
    """Dimension of the GF(2) span of the members of ``D``."""
    return gf2_rank_masks(D.members)
