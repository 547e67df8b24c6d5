"""Tilings (D, C) of F_2^n by translates of a tile D.

Covers both equivalent definitions (disjoint translates, and the sumset
form ``D + C = F_2^n, 2D ∩ 2C = {0}``), complement search by exact cover,
coordinate permutations and canonical forms, the D_n(x) family, and the
extension/concatenation constructions.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Optional

from .hypercube import MAX_TABLE_DIM, Subset, Vector, check_dim, gf2_rank, popcount

MAX_COMPLEMENT_DIM = 10
MAX_CANONICAL_DIM = 8


def _require_normalized(D: Subset, C: Subset) -> None:
    if D.n != C.n:
        raise ValueError(f"dimension mismatch: {D.n} vs {C.n}")
    if 0 not in D or 0 not in C:
        raise ValueError("tilings are normalised: 0 must belong to both D and C")


def is_tiling_partition(D: Subset, C: Subset) -> bool:
    """The translates c + D, c in C, are pairwise disjoint and cover F_2^n."""
    _require_normalized(D, C)
    check_dim(D.n, MAX_TABLE_DIM)
    if len(D) * len(C) != 1 << D.n:
        return False
    occupied = 0
    for c in C.members:
        for d in D.members:
            bit = 1 << (c ^ d)
            if occupied & bit:
                return False
            occupied |= bit
    return occupied == (1 << (1 << D.n)) - 1


def is_tiling_sumset(D: Subset, C: Subset) -> bool:
    """``D + C = F_2^n`` and ``2D ∩ 2C = {0}``."""
    _require_normalized(D, C)
    check_dim(D.n, MAX_TABLE_DIM)
    total = {a ^ b for a in D.members for b in C.members}
    if len(total) != 1 << D.n:
        return False
    doubled_d = {a ^ b for a in D.members for b in D.members}
    doubled_c = {a ^ b for a in C.members for b in C.members}
    return doubled_d & doubled_c == {0}


@dataclass(frozen=True)
class Tiling:
    D: Subset
    C: Subset

    def __post_init__(self):
        if not is_tiling_partition(self.D, self.C):
            raise ValueError("(D, C) is not a tiling")

    @property
    def n(self) -> int:
        return self.D.n

    @classmethod
    def normalized(cls, D: Subset, C: Subset) -> "Tiling":
        """Translate D and C so both contain 0, then validate."""
        if D.n != C.n:
            raise ValueError(f"dimension mismatch: {D.n} vs {C.n}")
        if 0 not in D:
            D = D.translate(D.members[0])
        if 0 not in C:
            C = C.translate(C.members[0])
        return cls(D, C)

    def rank(self) -> int:
        return gf2_rank(self.D)

    def to_json(self) -> dict:
        return {"n": self.n, "D": self.D.bitstrings(), "C": self.C.bitstrings()}

    @classmethod
    def from_json(cls, data: dict) -> "Tiling":
        n = int(data["n"])
        return cls.normalized(Subset.of(n, data["D"]), Subset.of(n, data["C"]))


def trivial_tiling(n: int, I: Iterable[int]) -> Tiling:
    """D = vectors vanishing on I, C = vectors vanishing off I."""
    check_dim(n, MAX_TABLE_DIM)
    mask = 0
    for i in I:
        if not 1 <= i <= n:
            raise ValueError(f"coordinate {i} outside [1, {n}]")
        mask |= 1 << (i - 1)
    full = (1 << n) - 1
    D = Subset(n, tuple(x for x in range(1 << n) if x & mask == 0))
    C = Subset(n, tuple(x for x in range(1 << n) if x & (full & ~mask) == 0))
    return Tiling(D, C)


def _complement_setup(D: Subset) -> Optional[tuple[int, list[int]]]:
    if 0 not in D:
        raise ValueError("0 must belong to D")
    n = D.n
    if n > MAX_COMPLEMENT_DIM:
        raise ValueError(f"complement search is limited to n <= {MAX_COMPLEMENT_DIM}")
    size = len(D)
    if (1 << n) % size:
        return None
    tile = 0
    for d in D.members:
        tile |= 1 << d
    return tile, list(D.members)


def _translate_mask(c: int, members: list[int]) -> int:
    out = 0
    for d in members:
        out |= 1 << (c ^ d)
    return out


def _search_complements(D: Subset) -> Iterator[list[int]]:
    # Exact cover over translates, always filling the lowest uncovered vector.
    # 0 is forced into C: any tiling can be shifted so that it is.
    setup = _complement_setup(D)
    if setup is None:
        return
    tile, members = setup
    full = (1 << (1 << D.n)) - 1
    translates: dict[int, int] = {}

    def translate(c: int) -> int:
        t = translates.get(c)
        if t is None:
            t = translates[c] = _translate_mask(c, members)
        return t

    code = [0]

    def extend(occupied: int) -> Iterator[list[int]]:
        if occupied == full:
            yield list(code)
            return
        free = ~occupied & full
        v = (free & -free).bit_length() - 1
        for d in members:
            c = v ^ d
            t = translate(c)
            if t & occupied:
                continue
            code.append(c)
            yield from extend(occupied | t)
            code.pop()

    yield from extend(tile)


def find_complement(D: Subset) -> Optional[Subset]:
    """First code C (in deterministic search order) with (D, C) a tiling.

    Returns None when no complement exists, including when |D| does not
    divide 2^n.
    """
    for code in _search_complements(D):
        return Subset(D.n, tuple(code))
    return None


def enumerate_complements(D: Subset, limit: Optional[int] = None) -> list[Subset]:
    """Distinct complements of ``D`` containing 0, up to ``limit`` of them."""
    seen = []
    found = set()
    for code in _search_complements(D):
        key = tuple(sorted(code))
        if key in found:
            continue
        found.add(key)
        seen.append(Subset(D.n, key))
        if limit is not None and len(seen) >= limit:
            break
    return seen


def d_n_tile(n: int, x: Vector) -> Subset:
    """``D_n(x) = {0, e_1, ..., e_n, x}``."""
    if x.dim != n:
        raise ValueError(f"dimension mismatch: {x.dim} vs {n}")
    if popcount(x.bits) < 2:
        raise ValueError("x must have Hamming weight at least 2")
    return Subset(n, (0, x.bits) + tuple(1 << i for i in range(n)))


@dataclass(frozen=True)
class Permutation:
    """A permutation σ of [n]; ``image[i - 1] = σ(i)``.

    Acting on vectors, ``σ(x) = (x_σ(1), ..., x_σ(n))``: coordinate i of the
    image is coordinate σ(i) of x.
    """

    image: tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if sorted(image) != list(range(1, len(image) + 1)):
            raise ValueError(f"{image} is not a permutation of [1, {len(image)}]")
        object.__setattr__(self, "image", image)

    @property
    def n(self) -> int:
        return len(self.image)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for i, s in enumerate(self.image, start=1):
            inv[s - 1] = i
        return Permutation(tuple(inv))

    def compose(self, other: "Permutation") -> "Permutation":
        """The permutation acting as ``self(other(x))`` on vectors."""
        # (self∘other)(x)_i = other(x)_{self(i)} = x_{other(self(i))}
        return Permutation(tuple(other.image[s - 1] for s in self.image))

    def apply_mask(self, x: int) -> int:
        out = 0
        for i, s in enumerate(self.image):
            if (x >> (s - 1)) & 1:
                out |= 1 << i
        return out

    def apply_coords(self, coords: Iterable[int]) -> list[int]:
        """Where the 1-indexed coordinates of x end up in σ(x)."""
        inv = self.inverse().image
        return sorted(inv[c - 1] for c in coords)


def permutation_apply(sigma: Permutation, D: Subset) -> Subset:
    if sigma.n != D.n:
        raise ValueError(f"dimension mismatch: {sigma.n} vs {D.n}")
    return Subset(D.n, tuple(sigma.apply_mask(x) for x in D.members))


def canonical_form_with_permutation(D: Subset) -> tuple[Subset, Permutation]:
    """Lexicographically least image of D over S_n, with a permutation reaching it.

    Images are compared as sorted tuples of integers.  Brute force over all
    of S_n, so n is capped at 8.
    """
    n = D.n
    if n > MAX_CANONICAL_DIM:
        raise ValueError(f"canonical forms are limited to n <= {MAX_CANONICAL_DIM}")
    # per member, the positions of its set bits
    supports = [[i for i in range(n) if (x >> i) & 1] for x in D.members]
    best: Optional[tuple[int, ...]] = None
    best_perm: tuple[int, ...] = tuple(range(n))
    for perm in permutations(range(n)):
        # perm[j] is where old coordinate j lands
        image = sorted(sum(1 << perm[j] for j in sup) for sup in supports)
        key = tuple(image)
        if best is None or key < best:
            best = key
            best_perm = perm
    # convert "old j -> new perm[j]" into σ with image[new] = old
    sigma = [0] * n
    for old, new in enumerate(best_perm):
        sigma[new] = old + 1
    return Subset(n, best or ()), Permutation(tuple(sigma))


def canonical_form(D: Subset) -> Subset:
    return canonical_form_with_permutation(D)[0]


def are_equivalent(D1: Subset, D2: Subset) -> bool:
    return D1.n == D2.n and canonical_form(D1) == canonical_form(D2)


def extend_tiling(T: Tiling, n: int) -> Tiling:
    """``(D | 0_{n-s}, C | F_2^{n-s})``."""
    s = T.n
    if n < s:
        raise ValueError(f"cannot extend from dimension {s} down to {n}")
    if n == s:
        return T
    check_dim(n, MAX_TABLE_DIM)
    extra = n - s
    return Tiling(T.D.concat(Subset(extra, (0,))), T.C.concat(Subset.full(extra)))


def concat_tiling(T1: Tiling, T2: Tiling) -> Tiling:
    """``(D1 | D2, C1 | C2)``, a tiling of F_2^{n+m}."""
    check_dim(T1.n + T2.n, MAX_TABLE_DIM)
    return Tiling(T1.D.concat(T2.D), T1.C.concat(T2.C))


def orbit(D: Subset) -> set[tuple[int, ...]]:
    """All coordinate-permuted images of D, as sorted member tuples."""
    n = D.n
    if n > MAX_CANONICAL_DIM:
        raise ValueError(f"orbits are limited to n <= {MAX_CANONICAL_DIM}")
    out = set()
    for perm in permutations(range(1, n + 1)):
        out.add(permutation_apply(Permutation(perm), D).members)
    return out

