"""Acceptance criteria 1-10, one test each.

Every test records a single PASS/FAIL line (with timing and details) that is
printed as it runs and again in the terminal summary.
"""

import random
import time
from functools import lru_cache
from itertools import combinations, permutations

import oracles
from hammtile.combinatorial_metric import (CoveringFamily, _cover_table, covering_product,
                                           f_weight, f_weight_table, saturate_covering)
from hammtile.hypercube import Subset, Vector, is_convex_polyhedromino, is_polyhedromino
from hammtile.perfect_codes import (SmallBall, all_closure_witnesses, classify_small_ball,
                                    dn_perfect_metric, enumerate_canonical, is_support_closed,
                                    is_ts_ball, small_ball_poset,
                                    support_closure_witness, verify_perfect)
from hammtile.poset_metric import iter_labelled_posets, p_weight_table, poset_from_relations
from hammtile.tilings import (canonical_form, d_n_tile, find_complement, is_tiling_partition,
                              is_tiling_sumset)
from hammtile.weights import (ball_at_zero, complete_ball_to_ts_weight, conditional_sum_weight,
                              d_max_weight, extend_weight, validate_ts_weight)

RESULTS = []


def record(capsys, number, ok, elapsed, detail=""):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'} ({elapsed:.2f} s){' ' + detail if detail else ''}"
    RESULTS.append(line)
    with capsys.disabled():
        print("\n" + line)
    return ok


def ball_entries(catalog):
    return [e for e in catalog if e.verdict == "BALL"]


def test_criterion_01_ball_tables(capsys, catalog):
    start = time.perf_counter()
    radii = {e.name: e.radius for e in ball_entries(catalog)}
    expected = {"D_1^3": 3, "D_1^7": 1, "D_1^4": 1, "D_2^4": 1, "D_1^5": 1, "D_1^6": 1}
    bad = [e.name for e in ball_entries(catalog)
           if ball_at_zero(e.weight_table(), e.radius) != e.members]
    elapsed = time.perf_counter() - start
    ok = radii == expected and not bad and elapsed < 1
    assert record(capsys, 1, ok, elapsed, f"6 tiles reconstructed, mismatches={bad}")


def test_criterion_02_table_one_rejections(capsys, catalog):
    start = time.perf_counter()
    rows = [e for e in catalog if e.name.startswith("T1-")]
    problems = []
    for e in rows:
        D = e.members
        w = support_closure_witness(D)
        if is_support_closed(D) or w is None:
            problems.append(f"{e.name} closed")
            continue
        if w.bits in D or not any(w.bits & ~x == 0 for x in D):
            problems.append(f"{e.name} bad scan witness {w}")
        if e.witness not in all_closure_witnesses(D):
            problems.append(f"{e.name} table vector {e.witness} not a witness")
    elapsed = time.perf_counter() - start
    ok = len(rows) == 9 and not problems and elapsed < 1
    assert record(capsys, 2, ok, elapsed, f"{len(rows)} rows, problems={problems}")


def test_criterion_03_complements(capsys, catalog):
    start = time.perf_counter()
    failed = []
    for e in catalog:
        C = find_complement(e.members)
        if C is None or not (is_tiling_partition(e.members, C) and is_tiling_sumset(e.members, C)):
            failed.append(e.name)
    elapsed = time.perf_counter() - start
    ok = not failed and elapsed < 30
    assert record(capsys, 3, ok, elapsed, f"{len(catalog) - len(failed)}/15 tiled, no complement: {failed}")


def test_criterion_04_independent_classification(capsys, catalog):
    start = time.perf_counter()
    found = set()
    for n in range(3, 8):
        for form in enumerate_canonical(n, 8, full_rank=True, tiles_only=True):
            found.add((n, form.members))
    expected = {(e.members.n, canonical_form(e.members).members) for e in ball_entries(catalog)}
    elapsed = time.perf_counter() - start
    ok = found == expected and elapsed < 600
    assert record(capsys, 4, ok, elapsed,
                  f"{len(found)} canonical tiles, extra={len(found - expected)}, "
                  f"missing={len(expected - found)}")


def _shape_forms(n):
    e = [1 << i for i in range(n)]
    shapes = {canonical_form(Subset(n, (0, e[0]))).members: SmallBall.B1}
    if n >= 2:
        shapes[canonical_form(Subset(n, (0, e[0], e[1], e[0] | e[1]))).members] = SmallBall.B3
    if n >= 3:
        shapes[canonical_form(Subset(n, (0, e[0], e[1], e[2]))).members] = SmallBall.B2
    return shapes


def test_criterion_05_small_balls(capsys):
    start = time.perf_counter()
    problems = []
    for n in range(1, 6):
        expected = _shape_forms(n)
        seen = {}
        for size in (2, 4):
            if size > 1 << n:
                continue
            for rest in combinations(range(1, 1 << n), size - 1):
                D = Subset(n, (0,) + rest)
                shape = classify_small_ball(D)
                ts = is_ts_ball(D) is not None
                if ts != (shape is not SmallBall.NOT_A_TS_BALL):
                    problems.append(f"n={n} {D.bitstrings()} shape {shape.value} ts={ts}")
                if ts:
                    P, r = small_ball_poset(D)
                    if ball_at_zero(p_weight_table(P), r) != D:
                        problems.append(f"n={n} {D.bitstrings()} poset ball mismatch")
                    seen[canonical_form(D).members] = shape
        if seen != expected:
            problems.append(f"n={n} shapes {sorted(s.value for s in seen.values())}")
    elapsed = time.perf_counter() - start
    ok = not problems and elapsed < 10
    assert record(capsys, 5, ok, elapsed, f"problems={problems[:5]}")


def test_criterion_06_dn_family(capsys):
    start = time.perf_counter()
    tile_mismatch = {}
    metric_problems = []
    for n in range(4, 9):
        for x in range(1 << n):
            k = bin(x).count("1")
            if k < 2:
                continue
            v = Vector(x, n)
            tiles = find_complement(d_n_tile(n, v)) is not None
            if tiles != (k not in (n - 1, n - 2)):
                tile_mismatch.setdefault(n, set()).add(k)
            F = dn_perfect_metric(n, v)
            if (F is not None) != (k == 2):
                metric_problems.append((n, x))
            elif F is not None and ball_at_zero(f_weight_table(F), 1) != d_n_tile(n, v):
                metric_problems.append((n, x))
    elapsed = time.perf_counter() - start
    ok = not tile_mismatch and not metric_problems and elapsed < 300
    detail = ("tile criterion disagrees for (n: weights) "
              + ", ".join(f"{n}: {sorted(ks)}" for n, ks in sorted(tile_mismatch.items()))
              + f"; metric problems={len(metric_problems)}")
    assert record(capsys, 6, ok, elapsed, detail)


def test_criterion_07_definition_equivalence(capsys):
    start = time.perf_counter()
    pairs = disagreements = 0
    for n in range(1, 5):
        N = 1 << n
        for dsize in range(1, N + 1):
            if N % dsize:
                continue
            codes = [Subset(n, (0,) + c) for c in combinations(range(1, N), N // dsize - 1)]
            for d in combinations(range(1, N), dsize - 1):
                D = Subset(n, (0,) + d)
                for C in codes:
                    pairs += 1
                    disagreements += is_tiling_partition(D, C) != is_tiling_sumset(D, C)
    rng = random.Random(2024)
    tilings = 0
    for i in range(10_000):
        if i % 4 == 0:
            # a genuine tiling, so both verdicts are exercised
            size = rng.choice((2, 4, 8))
            D = Subset(6, (0,) + tuple(rng.sample(range(1, 64), size - 1)))
            C = find_complement(D)
            if C is None:
                C = Subset(6, (0,) + tuple(rng.sample(range(1, 64), 64 // size - 1)))
        else:
            size = rng.choice((2, 4, 8, 16, 32))
            D = Subset(6, (0,) + tuple(rng.sample(range(1, 64), size - 1)))
            C = Subset(6, (0,) + tuple(rng.sample(range(1, 64), 64 // size - 1)))
        a, b = is_tiling_partition(D, C), is_tiling_sumset(D, C)
        tilings += a
        disagreements += a != b
    elapsed = time.perf_counter() - start
    ok = disagreements == 0
    assert record(capsys, 7, ok, elapsed,
                  f"{pairs} exhaustive pairs + 10000 random at n=6 ({tilings} tilings), "
                  f"disagreements={disagreements}")


# --- criterion 8 helpers --------------------------------------------------------

def _permuted(vals, n, perm):
    out = [0] * (1 << n)
    for x in range(1 << n):
        out[oracles.permute(x, perm)] = vals[x]
    return tuple(out)


def _table_key(vals, n):
    return min(_permuted(vals, n, p) for p in permutations(range(n)))


@lru_cache(maxsize=None)
def metric_classes(n):
    """One representative per permutation class of poset and covering weights on F_2^n.

    Relabelling the coordinates of one factor commutes with every construction
    checked below, so covering each class once is exhaustive.
    """
    posets, coverings = {}, {}
    for P in iter_labelled_posets(n):
        posets.setdefault(_table_key(p_weight_table(P).values.tolist(), n), P)
    subsets = list(range(1, 1 << n))
    full = (1 << n) - 1
    for fam in range(1, 1 << len(subsets)):
        sets = tuple(s for i, s in enumerate(subsets) if (fam >> i) & 1)
        union = 0
        for s in sets:
            union |= s
        if union != full or any(a != b and a & ~b == 0 for a in sets for b in sets):
            continue
        coverings.setdefault(_table_key(_cover_table(n, sets), n), CoveringFamily(n, sets))
    tables = {}
    for P in posets.values():
        w = p_weight_table(P)
        tables[w] = w
    for F in coverings.values():
        w = f_weight_table(F)
        tables[w] = w
    return list(tables.values()), list(coverings.values())


@lru_cache(maxsize=None)
def complement_of(n, members):
    return find_complement(Subset(n, members))


def test_criterion_08_concatenation(capsys):
    start = time.perf_counter()
    counts = dict.fromkeys("abcde", 0)
    problems = []
    dims = range(1, 5)
    for n in dims:
        tables_n, covers_n = metric_classes(n)
        for m in dims:
            tables_m, covers_m = metric_classes(m)
            for w1 in tables_n:
                for w2 in tables_m:
                    top1, top2 = int(w1.values.max()), int(w2.values.max())
                    dmax = d_max_weight(w1, w2)
                    for r in range(0, max(top1, top2) + 1):
                        D1, D2 = ball_at_zero(w1, r), ball_at_zero(w2, r)
                        D = D1.concat(D2)
                        counts["a"] += 1
                        if ball_at_zero(dmax, r) != D:
                            problems.append(("a", n, m, r))
                        C1, C2 = complement_of(n, D1.members), complement_of(m, D2.members)
                        if C1 is not None and C2 is not None and not verify_perfect(C1.concat(C2), dmax, r):
                            problems.append(("a-perfect", n, m, r))
                    for r in range(0, top1 + 1):
                        for s in range(0, top2 + 1):
                            D1, D2 = ball_at_zero(w1, r), ball_at_zero(w2, s)
                            w = conditional_sum_weight(w1, r, w2, s)
                            counts["b"] += 1
                            if ball_at_zero(w, r + s) != D1.concat(D2):
                                problems.append(("b", n, m, r, s))
                            C1, C2 = complement_of(n, D1.members), complement_of(m, D2.members)
                            if C1 is not None and C2 is not None and not verify_perfect(C1.concat(C2), w, r + s):
                                problems.append(("b-perfect", n, m, r, s))
            for F1 in covers_n:
                for F2 in covers_m:
                    prod = f_weight_table(covering_product(F1, F2))
                    t1, t2 = f_weight_table(F1), f_weight_table(F2)
                    for r in range(0, max(n, m) + 1):
                        counts["c"] += 1
                        if ball_at_zero(prod, r) != ball_at_zero(t1, r).concat(ball_at_zero(t2, r)):
                            problems.append(("c", n, m, r))
        for F in metric_classes(n)[1]:
            t = f_weight_table(F)
            for r in range(1, n + 1):
                D = ball_at_zero(t, r)
                counts["d"] += 1
                if ball_at_zero(f_weight_table(saturate_covering(F, D)), 1) != D:
                    problems.append(("d", n, r))

    # (e) polyhedromino status is invariant under translation and coordinate
    # permutation, so factors range over sets containing 0 up to permutation;
    # exhaustive for n + m <= 6, sampled above that
    def factor_classes(n):
        seen = {}
        for mask in range(1 << ((1 << n) - 1)):
            members = (0,) + tuple(x for x in range(1, 1 << n) if (mask >> (x - 1)) & 1)
            seen.setdefault(canonical_form(Subset(n, members)).members, Subset(n, members))
        return list(seen.values())

    classes = {n: factor_classes(n) for n in (1, 2, 3, 4)}
    poly = {(D.n, D.members): is_polyhedromino(D) for group in classes.values() for D in group}
    for n in dims:
        for m in dims:
            if n + m > 6:
                continue
            for D1 in classes[n]:
                for D2 in classes[m]:
                    counts["e"] += 1
                    both = poly[(n, D1.members)] and poly[(m, D2.members)]
                    if is_polyhedromino(D1.concat(D2)) != both:
                        problems.append(("e", D1.bitstrings(), D2.bitstrings()))
    rng = random.Random(8)
    for _ in range(300):
        n, m = rng.randint(2, 4), rng.randint(2, 4)
        D1 = Subset(n, (0,) + tuple(rng.sample(range(1, 1 << n), rng.randint(0, min(5, (1 << n) - 1)))))
        D2 = Subset(m, (0,) + tuple(rng.sample(range(1, 1 << m), rng.randint(0, min(5, (1 << m) - 1)))))
        counts["e"] += 1
        if is_polyhedromino(D1.concat(D2)) != (is_polyhedromino(D1) and is_polyhedromino(D2)):
            problems.append(("e", D1.bitstrings(), D2.bitstrings()))
    H = Subset.of(3, ["000", "100", "010", "001"])
    HH = H.concat(H)
    if not (is_polyhedromino(HH) and not is_convex_polyhedromino(HH)):
        problems.append(("e", "convexity counterexample"))

    elapsed = time.perf_counter() - start
    ok = not problems
    assert record(capsys, 8, ok, elapsed,
                  "checks " + ", ".join(f"{k}={v}" for k, v in counts.items())
                  + f"; problems={problems[:5]}")


def test_criterion_09_worked_perfect_codes(capsys):
    start = time.perf_counter()
    results = []
    for n in (3, 5, 7):
        repetition = Subset(n, (0, (1 << n) - 1))
        # every other element lies below n, which is the unique maximal element
        star = poset_from_relations(n, [(i, n) for i in range(1, n)])
        results.append(verify_perfect(repetition, p_weight_table(star), n - 1))
    chain2 = poset_from_relations(2, [(1, 2)])
    results.append(verify_perfect(Subset.of(2, ["00", "11"]), p_weight_table(chain2), 1))
    F = CoveringFamily.of(4, [[1, 2], [1, 3], [1, 4]])
    w = d_max_weight(p_weight_table(chain2), f_weight_table(F))
    C = Subset.of(6, ["000000", "001111", "110000", "111111"])
    results.append(verify_perfect(C, w, 1))
    elapsed = time.perf_counter() - start
    ok = all(results) and elapsed < 1
    assert record(capsys, 9, ok, elapsed, f"verdicts={results}")


def _random_poset(rng, n):
    order = list(range(1, n + 1))
    rng.shuffle(order)
    rel = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
    return poset_from_relations(n, rel)


def _random_covering(rng, n):
    sets = [rng.randint(1, (1 << n) - 1) for _ in range(rng.randint(1, 6))]
    union = 0
    for s in sets:
        union |= s
    if union != (1 << n) - 1:
        sets.append(((1 << n) - 1) & ~union)
    return CoveringFamily(n, tuple(sets))


def _random_weight(rng, n):
    if rng.random() < 0.5:
        return p_weight_table(_random_poset(rng, n))
    return f_weight_table(_random_covering(rng, n))


def test_criterion_10_axioms(capsys):
    start = time.perf_counter()
    rng = random.Random(10)
    counts = dict.fromkeys(["poset", "covering", "flat", "d_max", "sum", "extend"], 0)
    failures = []

    def check(kind, w):
        counts[kind] += 1
        if not validate_ts_weight(w).valid:
            failures.append((kind, w.n))

    for n in range(1, 5):
        for P in iter_labelled_posets(n):
            check("poset", p_weight_table(P))
    for n in range(1, 9):
        for _ in range(15):
            check("poset", p_weight_table(_random_poset(rng, n)))
            F = _random_covering(rng, n)
            check("covering", f_weight_table(F))
            w = _random_weight(rng, n)
            r = rng.randint(0, int(w.values.max()))
            D = ball_at_zero(w, r)
            check("flat", complete_ball_to_ts_weight(D, {x: w[x] for x in D}, r))
            check("flat", is_ts_ball(D)[0])
            if n < 8:
                k = rng.randint(1, 8 - n)
                w2 = _random_weight(rng, k)
                check("d_max", d_max_weight(w, w2))
                s = rng.randint(0, int(w2.values.max()))
                check("sum", conditional_sum_weight(w, r, w2, s))
                check("extend", extend_weight(w, n + k, r))

    oracle_mismatches = 0
    for _ in range(1000):
        n = rng.randint(1, 6)
        F = _random_covering(rng, n)
        x = rng.randint(0, (1 << n) - 1)
        oracle_mismatches += f_weight(F, Vector(x, n)) != oracles.f_weight(n, list(F.sets), x)
    elapsed = time.perf_counter() - start
    ok = not failures and oracle_mismatches == 0
    assert record(capsys, 10, ok, elapsed,
                  "validated " + ", ".join(f"{k}={v}" for k, v in counts.items())
                  + f"; failures={failures[:5]}; f_weight oracle mismatches={oracle_mismatches}/1000")
