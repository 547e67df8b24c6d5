"""Explicit weight tables: the universal representation of a TS-metric.

A translation-invariant metric on F_2^n is determined by its weight
``w(x) = d(x, 0)``; we keep the weight as an integer array of length 2^n
indexed by the integer form of each vector.  Everything in this module works
on whole tables with numpy.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .hypercube import (MAX_TABLE_DIM, Subset, Vector, bits_of, check_dim,
                        from_bitstring, to_bitstring)

# distance matrices are only materialised up to this dimension
MAX_MATRIX_DIM = 8


def _frozen(values) -> np.ndarray:
    arr = np.array(values, dtype=np.int64)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class WeightTable:
    n: int
    values: np.ndarray

    def __post_init__(self):
        check_dim(self.n, MAX_TABLE_DIM)
        arr = _frozen(self.values)
        if arr.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} values for n={self.n}, got shape {arr.shape}")
        if (arr < 0).any():
            raise ValueError("weights must be nonnegative")
        object.__setattr__(self, "values", arr)

    def __getitem__(self, x) -> int:
        if isinstance(x, Vector):
            if x.dim != self.n:
                raise ValueError(f"dimension mismatch: {x.dim} vs {self.n}")
            x = x.bits
        return int(self.values[x])

    def __eq__(self, other) -> bool:
        if not isinstance(other, WeightTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.n, self.values.tobytes()))

    def distance(self, x: Vector, y: Vector) -> int:
        return self[x + y]

    def max_over(self, D: Subset) -> int:
        return int(self.values[list(D.members)].max())

    def to_json(self) -> dict:
        return {"n": self.n, "values": [int(v) for v in self.values]}

    @classmethod
    def from_json(cls, data: dict) -> "WeightTable":
        return cls(int(data["n"]), data["values"])


def hamming_table(n: int) -> WeightTable:
    check_dim(n, MAX_TABLE_DIM)
    idx = np.arange(1 << n, dtype=np.int64)
    counts = np.zeros_like(idx)
    for i in range(n):
        counts += (idx >> i) & 1
    return WeightTable(n, counts)


@dataclass(frozen=True)
class Violation:
    axiom: str  # "positivity" | "triangle" | "support"
    witness: tuple[int, int]


@dataclass(frozen=True)
class ValidationReport:
    n: int
    violations: tuple[Violation, ...] = ()

    @property
    def valid(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.valid

    def to_json(self) -> dict:
        return {
            "valid": self.valid,
            "violations": [
                {"axiom": v.axiom,
                 "witness": [to_bitstring(v.witness[0], self.n), to_bitstring(v.witness[1], self.n)]}
                for v in self.violations
            ],
        }


def validate_ts_weight(w: WeightTable) -> ValidationReport:
    """Check the weight axioms plus support monotonicity, exhaustively.

    Reports at most one witness pair per violated axiom: the first one found
    scanning x (then y) in increasing integer order.
    """
    vals = w.values
    N = 1 << w.n
    idx = np.arange(N, dtype=np.int64)
    found: list[Violation] = []

    if vals[0] != 0:
        found.append(Violation("positivity", (0, 0)))
    else:
        bad = np.flatnonzero(vals[1:] <= 0)
        if bad.size:
            found.append(Violation("positivity", (int(bad[0]) + 1, 0)))

    # rows of the pair matrix in chunks; n=16 would otherwise need 2^32 cells
    chunk = max(1, (1 << 20) // N)
    for start in range(0, N, chunk):
        xs = idx[start:start + chunk, None]
        ok = vals[xs ^ idx[None, :]] <= vals[xs] + vals[None, :]
        if not ok.all():
            r, c = np.argwhere(~ok)[0]
            found.append(Violation("triangle", (int(start + r), int(c))))
            break

    # covering pairs x < x + e_i suffice for support monotonicity
    best = None
    for i in range(w.n):
        bit = 1 << i
        lower = idx[(idx & bit) == 0]
        bad = np.flatnonzero(vals[lower] > vals[lower | bit])
        if bad.size:
            x = int(lower[bad[0]])
            if best is None or (x, x | bit) < best:
                best = (x, x | bit)
    if best is not None:
        found.append(Violation("support", best))

    return ValidationReport(w.n, tuple(found))


def _require_valid(w: WeightTable, what: str = "weight") -> None:
    report = validate_ts_weight(w)
    if not report.valid:
        v = report.violations[0]
        raise ValueError(f"{what} is not a TS-weight: {v.axiom} violated at "
                         f"{to_bitstring(v.witness[0], w.n)}, {to_bitstring(v.witness[1], w.n)}")


@dataclass(frozen=True)
class Ball:
    center: Vector
    radius: int
    members: Subset


def ball_masks(w: WeightTable, r: int, center: int = 0) -> list[int]:
    if r < 0:
        raise ValueError(f"negative radius {r}")
    inside = np.flatnonzero(w.values <= r)
    return sorted(int(v) ^ center for v in inside)


def ball(w: WeightTable, center: Vector, r: int) -> Ball:
    """Closed ball ``{y : w(y - center) <= r}``."""
    if center.dim != w.n:
        raise ValueError(f"dimension mismatch: {center.dim} vs {w.n}")
    members = Subset(w.n, tuple(ball_masks(w, r, center.bits)))
    return Ball(center, r, members)


def ball_at_zero(w: WeightTable, r: int) -> Subset:
    return Subset(w.n, tuple(ball_masks(w, r)))


def decoding_equivalent(w1: WeightTable, w2: WeightTable) -> bool:
    """Same strict ordering of weights, i.e. identical nearest-codeword decoding."""
    if w1.n != w2.n:
        raise ValueError(f"dimension mismatch: {w1.n} vs {w2.n}")
    _, r1 = np.unique(w1.values, return_inverse=True)
    _, r2 = np.unique(w2.values, return_inverse=True)
    return bool(np.array_equal(r1.ravel(), r2.ravel()))


@dataclass(frozen=True, eq=False)
class DistanceMatrix:
    n: int
    entries: np.ndarray = field(repr=False)

    def __post_init__(self):
        N = 1 << self.n
        arr = _frozen(self.entries)
        if arr.shape != (N, N):
            raise ValueError(f"expected a {N}x{N} matrix")
        object.__setattr__(self, "entries", arr)

    def is_symmetric(self) -> bool:
        return bool(np.array_equal(self.entries, self.entries.T))

    def is_translation_generated(self) -> bool:
        """Every row is generated from column 0: m[x][y] = m[x ^ y][0]."""
        idx = np.arange(1 << self.n)
        return bool(np.array_equal(self.entries, self.entries[idx[:, None] ^ idx[None, :], 0]))

    def weight(self) -> WeightTable:
        return WeightTable(self.n, self.entries[:, 0])


def matrix_from_weight(w: WeightTable) -> DistanceMatrix:
    if w.n > MAX_MATRIX_DIM:
        raise ValueError(f"distance matrix only materialised for n <= {MAX_MATRIX_DIM}")
    idx = np.arange(1 << w.n)
    return DistanceMatrix(w.n, w.values[idx[:, None] ^ idx[None, :]])


def is_support_closed_masks(members: frozenset[int] | set[int]) -> bool:
    return all(x ^ b in members for x in members for b in bits_of(x))


def complete_ball_to_ts_weight(D: Subset, partial: Mapping, r: int) -> WeightTable:
    """Flat completion: keep ``partial`` on ``D`` and put ``r + 1`` everywhere else.

    ``partial`` maps members of ``D`` (as masks, Vectors or bitstrings) to
    weights.  Besides the axioms on ``D`` itself, any x, y in D with x + y
    outside D must satisfy partial[x] + partial[y] >= r + 1; this is exactly
    what the triangle inequality demands of the outside value, and it holds
    whenever ``partial`` is the restriction of a TS-weight whose r-ball is D.
    """
    check_dim(D.n, MAX_TABLE_DIM)
    if r < 0:
        raise ValueError(f"negative radius {r}")
    members = D._lookup
    if 0 not in members:
        raise ValueError("0 must belong to D")
    if not is_support_closed_masks(members):
        raise ValueError("D is not support-closed, so it is not a TS-ball")

    vals: dict[int, int] = {}
    for key, value in partial.items():
        if isinstance(key, Vector):
            key = key.bits
        elif isinstance(key, str):
            key = from_bitstring(key)
        vals[int(key)] = int(value)
    if set(vals) != set(members):
        raise ValueError("partial must assign a value to exactly the members of D")
    for x, v in vals.items():
        if v > r:
            raise ValueError(f"partial value {v} at {to_bitstring(x, D.n)} exceeds radius {r}")
        if (x == 0) != (v == 0) or v < 0:
            raise ValueError(f"positivity violated at {to_bitstring(x, D.n)}")
    for x in members:
        for b in bits_of(x):
            if vals[x ^ b] > vals[x]:
                raise ValueError(f"support monotonicity violated at {to_bitstring(x ^ b, D.n)}")
    for x in members:
        for y in members:
            s = x ^ y
            bound = vals[s] if s in members else r + 1
            if bound > vals[x] + vals[y]:
                raise ValueError(f"triangle violated at {to_bitstring(x, D.n)}, {to_bitstring(y, D.n)}")

    values = np.full(1 << D.n, r + 1, dtype=np.int64)
    for x, v in vals.items():
        values[x] = v
    return WeightTable(D.n, values)


def concat_index(n: int, m: int) -> tuple[np.ndarray, np.ndarray]:
    """Split every index of F_2^{n+m} into its (first n coords, last m coords) parts."""
    idx = np.arange(1 << (n + m), dtype=np.int64)
    return idx & ((1 << n) - 1), idx >> n


def d_max_weight(w1: WeightTable, w2: WeightTable) -> WeightTable:
    """Weight of ``x1|x2`` is ``max(w1(x1), w2(x2))``."""
    _require_valid(w1, "first weight")
    _require_valid(w2, "second weight")
    lo, hi = concat_index(w1.n, w2.n)
    return WeightTable(w1.n + w2.n, np.maximum(w1.values[lo], w2.values[hi]))


def conditional_sum_weight(w1: WeightTable, r: int, w2: WeightTable, s: int) -> WeightTable:
    """TS-weight on F_2^{n+m} whose (r+s)-ball is ``ball(w1, r) | ball(w2, s)``.

    Inside the concatenated ball the value is ``w1(x1) + w2(x2)``, raised to at
    least ``ceil((r+s+1)/2)`` for nonzero vectors; outside it is ``r + s + 1``.
    The floor is what keeps the triangle inequality when two small in-ball
    vectors add up to a vector outside the ball.
    """
    if r < 0 or s < 0:
        raise ValueError("radii must be nonnegative")
    _require_valid(w1, "first weight")
    _require_valid(w2, "second weight")
    lo, hi = concat_index(w1.n, w2.n)
    in_ball = (w1.values[lo] <= r) & (w2.values[hi] <= s)
    total = w1.values[lo] + w2.values[hi]
    floor = (r + s + 2) // 2
    total = np.where(total > 0, np.maximum(total, floor), 0)
    return WeightTable(w1.n + w2.n, np.where(in_ball, total, r + s + 1))


def extend_weight(w: WeightTable, n: int, r: int) -> WeightTable:
    """Extend a weight on F_2^s to F_2^n so that its r-ball becomes ``D | 0_{n-s}``.

    Vectors supported on the first s coordinates keep their weight; every
    other vector gets ``max(M + 1, max(w))`` where M is the largest weight
    inside ``D = ball(w, 0, r)``.  With the plain ``M + 1`` the result can
    break both triangle and support monotonicity when w exceeds M + 1
    somewhere.
    """
    if n < w.n:
        raise ValueError(f"cannot extend from dimension {w.n} down to {n}")
    check_dim(n, MAX_TABLE_DIM)
    if n == w.n:
        return w
    D = ball_masks(w, r)
    M = int(w.values[D].max())
    outside = max(M + 1, int(w.values.max()))
    values = np.full(1 << n, outside, dtype=np.int64)
    values[: 1 << w.n] = w.values
    return WeightTable(n, values)
