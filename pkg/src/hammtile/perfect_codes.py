"""TS-ball recognition, perfect-code checks and the catalogue of size-8 tiles.

A set D containing 0 is a ball of some TS-metric exactly when it is
support-closed: necessity comes from support monotonicity, sufficiency from
the flat weight (1 on D minus 0, 2 elsewhere) whose radius-1 ball is D.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from importlib import resources
from typing import Iterator, Optional, Union

import numpy as np

from .combinatorial_metric import CoveringFamily, f_weight_table
from .hypercube import (MAX_TABLE_DIM, Subset, Vector, bits_of, check_dim, gf2_rank,
                        gf2_rank_masks, popcount)
from .poset_metric import Poset, p_weight_table, poset_from_relations, verify_poset_ball
from .tilings import (Permutation, canonical_form, canonical_form_with_permutation,
                      find_complement, d_n_tile, permutation_apply)
from .weights import WeightTable, ball_masks

CATALOG_SCHEMA_VERSION = 1


def _require_zero(D: Subset) -> None:
    if 0 not in D:
        raise ValueError("0 must belong to D")


def support_closure_witness(D: Subset) -> Optional[Vector]:
    """A vector missing from D whose support sits inside a member's support.

    Members are scanned in increasing order and, for each, the vectors
    obtained by clearing one coordinate (lowest first).  If every such
    immediate sub-vector is present, D is closed by induction, so None is
    returned exactly when D is support-closed.
    """
    _require_zero(D)
    members = D._lookup
    for x in D.members:
        for b in bits_of(x):
            if x ^ b not in members:
                return Vector(x ^ b, D.n)
    return None


def is_support_closed(D: Subset) -> bool:
    return support_closure_witness(D) is None


def all_closure_witnesses(D: Subset) -> list[Vector]:
    """Every vector outside D whose support lies inside some member's support."""
    _require_zero(D)
    members = D._lookup
    missing = set()
    for x in D.members:
        sub = x
        while sub:
            sub = (sub - 1) & x
            if sub not in members:
                missing.add(sub)
    return [Vector(m, D.n) for m in sorted(missing)]


def flat_ts_witness(D: Subset) -> WeightTable:
    """Weight 0 at 0, 1 on the rest of D, 2 elsewhere."""
    check_dim(D.n, MAX_TABLE_DIM)
    values = np.full(1 << D.n, 2, dtype=np.int64)
    values[list(D.members)] = 1
    values[0] = 0
    return WeightTable(D.n, values)


def is_ts_ball(D: Subset) -> Optional[tuple[WeightTable, int]]:
    """A TS-weight and radius whose ball at 0 is D, or None if D is no TS-ball."""
    if support_closure_witness(D) is not None:
        return None
    return flat_ts_witness(D), (1 if len(D) > 1 else 0)


@dataclass(frozen=True)
class PerfectCodeCertificate:
    code: Subset
    weight: WeightTable
    radius: int


def verify_perfect(C: Subset, w: WeightTable, r: int) -> bool:
    """Balls of radius r around the codewords partition F_2^n."""
    if C.n != w.n:
        raise ValueError(f"dimension mismatch: {C.n} vs {w.n}")
    if r < 0 or len(C) == 0:
        return False
    N = 1 << w.n
    ball = np.array(ball_masks(w, r), dtype=np.int64)
    if len(ball) * len(C) != N:
        return False
    code = np.array(C.members, dtype=np.int64)
    hits = np.bincount((code[:, None] ^ ball[None, :]).ravel(), minlength=N)
    return bool((hits == 1).all())


def certify_perfect(C: Subset, w: WeightTable, r: int) -> Optional[PerfectCodeCertificate]:
    return PerfectCodeCertificate(C, w, r) if verify_perfect(C, w, r) else None


def _nearest(C: Subset, w: WeightTable) -> np.ndarray:
    idx = np.arange(1 << w.n, dtype=np.int64)
    code = np.array(C.members, dtype=np.int64)
    return w.values[idx[:, None] ^ code[None, :]]


def covering_radius(C: Subset, w: WeightTable) -> int:
    """Least r such that the r-balls around C cover the space."""
    return int(_nearest(C, w).min(axis=1).max())


def packing_radius(C: Subset, w: WeightTable) -> int:
    """Largest r such that the r-balls around C are pairwise disjoint."""
    dist = _nearest(C, w)
    r = 0
    for candidate in np.unique(w.values):
        if ((dist <= candidate).sum(axis=1) <= 1).all():
            r = int(candidate)
        else:
            break
    return r


class SmallBall(str, Enum):
    B1 = "B1"
    B2 = "B2"
    B3 = "B3"
    NOT_A_TS_BALL = "NOT_A_TS_BALL"


def classify_small_ball(D: Subset) -> SmallBall:
    """Match a 2- or 4-element set against {0,e_i}, {0,e_i,e_j,e_k}, {0,e_i,e_j,e_i+e_j}."""
    if len(D) not in (2, 4):
        raise ValueError(f"expected 2 or 4 elements, got {len(D)}")
    _require_zero(D)
    rest = [x for x in D.members if x]
    singles = [x for x in rest if popcount(x) == 1]
    if len(D) == 2:
        return SmallBall.B1 if singles else SmallBall.NOT_A_TS_BALL
    if len(singles) == 3:
        return SmallBall.B2
    if len(singles) == 2 and singles[0] | singles[1] in rest:
        return SmallBall.B3
    return SmallBall.NOT_A_TS_BALL


def small_ball_poset(D: Subset) -> Optional[tuple[Poset, int]]:
    """A poset realising a B1/B2/B3 shape as a ball at 0, with its radius.

    Coordinates used by D sit below every other coordinate.
    """
    shape = classify_small_ball(D)
    if shape is SmallBall.NOT_A_TS_BALL:
        return None
    used = 0
    for x in D.members:
        used |= x
    low = [i + 1 for i in range(D.n) if (used >> i) & 1]
    high = [j + 1 for j in range(D.n) if not (used >> j) & 1]
    P = poset_from_relations(D.n, [(t, h) for t in low for h in high])
    r = 2 if shape is SmallBall.B3 else 1
    assert verify_poset_ball(P, D) == r
    return P, r


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    table: str
    rank: int
    members: Subset
    verdict: str  # "BALL" | "NOT_BALL"
    radius: Optional[int] = None
    poset: Optional[Poset] = None
    covering: Optional[CoveringFamily] = None
    witness: Optional[Vector] = None

    @property
    def metric(self) -> Union[Poset, CoveringFamily, None]:
        return self.poset if self.poset is not None else self.covering

    def weight_table(self) -> WeightTable:
        if self.poset is not None:
            return p_weight_table(self.poset)
        if self.covering is not None:
            return f_weight_table(self.covering)
        raise ValueError(f"{self.name} has no realising metric")

    def check(self) -> None:
        """Raise unless the stored witness backs the stored verdict."""
        if self.verdict == "BALL":
            if ball_masks(self.weight_table(), self.radius) != list(self.members.members):
                raise ValueError(f"{self.name}: stored metric does not reproduce the tile")
        elif self.verdict == "NOT_BALL":
            w = self.witness
            if w is None or w.bits in self.members:
                raise ValueError(f"{self.name}: witness missing or inside the tile")
            if not any(w.bits & ~m == 0 for m in self.members):
                raise ValueError(f"{self.name}: witness support not below any member")
        else:
            raise ValueError(f"{self.name}: unknown verdict {self.verdict!r}")

    def to_json(self) -> dict:
        out = {"name": self.name, "table": self.table, "rank": self.rank, "n": self.members.n,
               "vectors": self.members.bitstrings(), "verdict": self.verdict}
        if self.radius is not None:
            out["radius"] = self.radius
        if self.poset is not None:
            out["poset"] = self.poset.to_json()
        if self.covering is not None:
            out["covering"] = self.covering.to_json()
        if self.witness is not None:
            out["witness"] = str(self.witness)
        return out

    @classmethod
    def from_json(cls, data: dict) -> "CatalogEntry":
        n = int(data["n"])
        return cls(
            name=data["name"],
            table=data["table"],
            rank=int(data["rank"]),
            members=Subset.of(n, data["vectors"]),
            verdict=data["verdict"],
            radius=data.get("radius"),
            poset=Poset.from_json(data["poset"]) if "poset" in data else None,
            covering=CoveringFamily.from_json(data["covering"]) if "covering" in data else None,
            witness=Vector.parse(data["witness"]) if "witness" in data else None,
        )


@lru_cache(maxsize=None)
def load_catalog() -> tuple[CatalogEntry, ...]:
    """The 15 representative size-8 tiles; every entry is checked on load."""
    raw = json.loads(resources.files("hammtile").joinpath("data/catalog.json").read_text())
    if raw.get("schema_version") != CATALOG_SCHEMA_VERSION:
        raise ValueError(f"unsupported catalog schema {raw.get('schema_version')!r}")
    entries = tuple(CatalogEntry.from_json(e) for e in raw["entries"])
    for e in entries:
        e.check()
    return entries


def catalog_entry(name: str) -> CatalogEntry:
    for e in load_catalog():
        if e.name == name:
            return e
    raise KeyError(name)


@lru_cache(maxsize=None)
def _catalog_index() -> dict[tuple[int, tuple[int, ...]], tuple[CatalogEntry, Permutation]]:
    index = {}
    for e in load_catalog():
        form, sigma = canonical_form_with_permutation(e.members)
        index[(e.members.n, form.members)] = (e, sigma)
    return index


@dataclass(frozen=True)
class Classification:
    """Result of looking a size-8 tile up in the catalogue.

    ``entry`` is None for UNCATALOGUED.  ``to_input`` maps the catalogue
    tile onto the queried one, so ``permutation_apply(to_input,
    entry.members) == query``; ``witness`` and ``input_metric`` are
    expressed in the query's coordinates.
    """

    verdict: str
    entry: Optional[CatalogEntry] = None
    to_input: Optional[Permutation] = None
    witness: Optional[Vector] = None
    input_metric: Union[Poset, CoveringFamily, None] = None


def transport_metric(metric, sigma: Permutation):
    """Relabel a poset or covering so it realises ``sigma(D)`` if it realised D."""
    if isinstance(metric, Poset):
        rel = [(sigma.apply_coords([a])[0], sigma.apply_coords([b])[0]) for a, b in metric.relations()]
        return poset_from_relations(metric.n, rel)
    if isinstance(metric, CoveringFamily):
        return CoveringFamily(metric.n, tuple(sigma.apply_mask(s) for s in metric.sets))
    raise TypeError(f"cannot transport {type(metric).__name__}")


def classify_tile8(D: Subset) -> Classification:
    """Look a full-rank 8-element tile containing 0 up in the catalogue."""
    if len(D) != 8:
        raise ValueError(f"expected 8 elements, got {len(D)}")
    _require_zero(D)
    if gf2_rank(D) != D.n:
        raise ValueError(f"tile has rank {gf2_rank(D)}, expected full rank {D.n}")
    form, sigma_q = canonical_form_with_permutation(D)
    hit = _catalog_index().get((D.n, form.members))
    if hit is None:
        return Classification("UNCATALOGUED")
    entry, sigma_e = hit
    # sigma_q(D) = form = sigma_e(E)  =>  D = sigma_q^-1 sigma_e (E)
    to_input = sigma_q.inverse().compose(sigma_e)
    assert permutation_apply(to_input, entry.members) == D
    if entry.verdict == "BALL":
        return Classification("BALL", entry, to_input,
                              input_metric=transport_metric(entry.metric, to_input))
    witness = Vector(to_input.apply_mask(entry.witness.bits), D.n)
    return Classification("NOT_BALL", entry, to_input, witness=witness)


def dn_perfect_metric(n: int, x: Vector) -> Optional[CoveringFamily]:
    """Covering whose radius-1 ball at 0 is ``D_n(x)``; exists iff |x| = 2.

    For |x| > 2 a proper sub-support of x with at least two coordinates is
    missing from D_n(x), so no support-respecting metric has it as a ball.
    The reconstruction does not depend on D_n(x) being a tile; the covering
    makes a complement a perfect code whenever one exists.
    """
    D = d_n_tile(n, x)
    if popcount(x.bits) != 2:
        return None
    F = CoveringFamily(n, tuple(1 << i for i in range(n)) + (x.bits,))
    assert ball_masks(f_weight_table(F), 1) == list(D.members)
    return F


def iter_support_closed(n: int, size: int, full_rank: bool = False) -> Iterator[Subset]:
    """Every support-closed subset of F_2^n with ``size`` elements (0 included).

    Listed in increasing order a support-closed set has every prefix
    support-closed (sub-vectors are numerically smaller), so extending only
    by larger vectors whose immediate sub-vectors are present generates each
    set exactly once.
    """
    check_dim(n, MAX_TABLE_DIM)
    if size < 1 or size > 1 << n:
        return
    full = (1 << n) - 1
    members = [0]
    present = {0}

    def extend(last: int, covered: int) -> Iterator[Subset]:
        if len(members) == size:
            if not full_rank or gf2_rank_masks(members) == n:
                yield Subset(n, tuple(members))
            return
        missing = full & ~covered
        if full_rank and popcount(missing) > size - len(members):
            return
        for y in range(last + 1, 1 << n):
            # a coordinate can only enter through its singleton, which must come in order
            if full_rank and missing and (missing & -missing) < y:
                break
            if all(y ^ b in present for b in bits_of(y)):
                members.append(y)
                present.add(y)
                yield from extend(y, covered | y)
                members.pop()
                present.discard(y)

    yield from extend(0, 0)


def enumerate_canonical(n: int, size: int, full_rank: bool = False,
                        tiles_only: bool = False) -> Iterator[Subset]:
    """Canonical forms of support-closed sets, deduplicated, streamed in discovery order."""
    seen = set()
    for D in iter_support_closed(n, size, full_rank):
        form = canonical_form(D)
        if form.members in seen:
            continue
        seen.add(form.members)
        if tiles_only and find_complement(form) is None:
            continue
        yield form
