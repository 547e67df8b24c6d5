"""Command-line interface: JSON in, JSON out.

Exit codes: 0 when the verdict is true, 1 when it is false or absent, 2 for
usage errors, malformed input or internal inconsistencies.  Only JSON goes to
stdout; diagnostics go to stderr.

Inputs are a file path, ``-`` for stdin, or an inline JSON object.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from typing import Optional, Sequence

from .combinatorial_metric import (CoveringFamily, covering_product, f_weight_table,
                                   saturate_covering)
from .hypercube import Subset, Vector, gf2_rank
from .perfect_codes import (SmallBall, classify_small_ball, classify_tile8, enumerate_canonical,
                            is_ts_ball, load_catalog, small_ball_poset,
                            support_closure_witness, verify_perfect, CATALOG_SCHEMA_VERSION)
from .poset_metric import Poset, find_poset_ball, p_weight_table, poset_from_relations
from .tilings import (Tiling, concat_tiling, find_complement,
                      is_tiling_partition, is_tiling_sumset)
from .weights import (WeightTable, ball, ball_masks, conditional_sum_weight, d_max_weight,
                      decoding_equivalent, validate_ts_weight)

EXIT_TRUE, EXIT_FALSE, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")
    sys.stdout.flush()


def load_json(source: str):
    try:
        if source == "-":
            text = sys.stdin.read()
        elif source.lstrip().startswith(("{", "[")):
            text = source
        else:
            with open(source) as fh:
                text = fh.read()
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read JSON from {source!r}: {exc}") from exc


def load_subset(source: str) -> Subset:
    data = load_json(source)
    try:
        return Subset.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed subset JSON: {exc}") from exc


def load_metric(source: str):
    """A poset, covering or explicit weight table, by the keys present."""
    data = load_json(source)
    try:
        if "values" in data:
            return WeightTable.from_json(data)
        if "sets" in data:
            return CoveringFamily.from_json(data)
        if "relations" in data:
            return Poset.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed metric JSON: {exc}") from exc
    raise UsageError("metric JSON needs one of 'values', 'sets' or 'relations'")


def weight_of_metric(metric) -> WeightTable:
    if isinstance(metric, WeightTable):
        return metric
    if isinstance(metric, CoveringFamily):
        return f_weight_table(metric)
    return p_weight_table(metric)


def _load_tiling_parts(source: str) -> tuple[Subset, Subset]:
    data = load_json(source)
    try:
        n = int(data["n"])
        D, C = Subset.of(n, data["D"]), Subset.of(n, data["C"])
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed tiling JSON: {exc}") from exc
    if not len(D) or not len(C):
        raise UsageError("D and C must be nonempty")
    # normalise by translation, as for Tiling.normalized
    if 0 not in D:
        D = D.translate(D.members[0])
    if 0 not in C:
        C = C.translate(C.members[0])
    return D, C


def cmd_verify_tiling(args) -> int:
    D, C = _load_tiling_parts(args.input)
    partition = is_tiling_partition(D, C)
    sumset = is_tiling_sumset(D, C)
    _emit({"partition": partition, "sumset": sumset, "tiling": partition and sumset})
    if partition != sumset:
        print("internal error: the two tiling definitions disagree", file=sys.stderr)
        return EXIT_ERROR
    return EXIT_TRUE if partition else EXIT_FALSE


def classify_report(D: Subset) -> dict:
    if 0 not in D:
        raise UsageError("0 must belong to D")
    size = len(D)
    if size in (2, 4):
        shape = classify_small_ball(D)
        if shape is SmallBall.NOT_A_TS_BALL:
            w = support_closure_witness(D)
            return {"verdict": "NOT_BALL", "shape": shape.value, "witness": str(w)}
        P, r = small_ball_poset(D)
        return {"verdict": "BALL", "shape": shape.value, "poset": P.to_json(), "radius": r}
    if size == 8 and gf2_rank(D) == D.n and D.n <= 8:
        res = classify_tile8(D)
        if res.entry is None:
            generic = is_ts_ball(D)
            return {"verdict": "UNCATALOGUED", "ts_ball": generic is not None}
        report = {"verdict": res.verdict, "entry": res.entry.name, "table": res.entry.table,
                  "permutation": list(res.to_input.image)}
        if res.verdict == "BALL":
            report["radius"] = res.entry.radius
            if isinstance(res.entry.metric, CoveringFamily):
                report["covering"] = res.entry.covering.as_lists()
                report["input_covering"] = res.input_metric.as_lists()
            else:
                report["poset"] = res.entry.poset.to_json()
                report["input_poset"] = res.input_metric.to_json()
        else:
            report["witness"] = str(res.witness)
        return report
    found = is_ts_ball(D)
    if found is None:
        return {"verdict": "NOT_BALL", "witness": str(support_closure_witness(D))}
    w, r = found
    return {"verdict": "BALL", "radius": r, "weight": w.to_json()}


def cmd_classify(args) -> int:
    report = classify_report(load_subset(args.input))
    _emit(report)
    return EXIT_TRUE if report["verdict"] == "BALL" else EXIT_FALSE


def cmd_find_complement(args) -> int:
    D = load_subset(args.input)
    if 0 not in D:
        raise UsageError("0 must belong to D")
    try:
        C = find_complement(D)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if C is None:
        _emit({"verdict": "NOT_A_TILE"})
        return EXIT_FALSE
    _emit(Tiling(D, C).to_json())
    return EXIT_TRUE


def _infer_radius(w: WeightTable, D: Subset, given: Optional[int], label: str) -> int:
    r = given if given is not None else w.max_over(D)
    if ball_masks(w, r) != list(D.members):
        raise UsageError(f"{label}: the tile is not the ball of radius {r} of the given metric")
    return r


def cmd_concat(args) -> int:
    D1, C1 = _load_tiling_parts(args.first)
    D2, C2 = _load_tiling_parts(args.second)
    try:
        T = concat_tiling(Tiling(D1, C1), Tiling(D2, C2))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    m1, m2 = load_metric(args.metric1), load_metric(args.metric2)
    if m1.n != D1.n or m2.n != D2.n:
        raise UsageError("metric dimensions must match the tilings")
    w1, w2 = weight_of_metric(m1), weight_of_metric(m2)
    r1 = _infer_radius(w1, D1, args.r1, "first tiling")
    r2 = _infer_radius(w2, D2, args.r2, "second tiling")
    out = {"mode": args.mode, "tiling": T.to_json()}
    if args.mode == "max":
        if r1 != r2:
            raise UsageError(f"max mode needs equal radii (got {r1} and {r2}); use --mode sum")
        w, r = d_max_weight(w1, w2), r1
        out["weight"] = w.to_json()
    elif args.mode == "sum":
        w, r = conditional_sum_weight(w1, r1, w2, r2), r1 + r2
        out["weight"] = w.to_json()
    else:
        if not (isinstance(m1, CoveringFamily) and isinstance(m2, CoveringFamily)):
            raise UsageError(f"{args.mode} mode needs covering families for both factors")
        if args.mode == "covering-product":
            if r1 != r2:
                raise UsageError(f"covering-product needs equal radii (got {r1} and {r2}); "
                                 "use --mode saturate-then-product")
            F, r = covering_product(m1, m2), r1
        else:
            F, r = covering_product(saturate_covering(m1, D1), saturate_covering(m2, D2)), 1
        w = f_weight_table(F)
        out["covering"] = F.to_json()
    out["radius"] = r
    out["certified"] = (ball_masks(w, r) == list(T.D.members)) and verify_perfect(T.C, w, r)
    _emit(out)
    return EXIT_TRUE if out["certified"] else EXIT_FALSE


def _tile_check(members: tuple[int, ...], n: int) -> bool:
    return find_complement(Subset(n, members)) is not None


def _workers() -> int:
    try:
        return max(1, int(os.environ.get("HAMMTILE_THREADS", "1")))
    except ValueError:
        return 1


def cmd_enumerate(args) -> int:
    if not 1 <= args.n <= 7 or not 1 <= args.size <= 16:
        raise UsageError("enumerate needs 1 <= n <= 7 and 1 <= size <= 16")
    workers = _workers()
    if not args.tiles_only or workers == 1:
        for form in enumerate_canonical(args.n, args.size, args.full_rank, args.tiles_only):
            _emit(form.to_json())
        return EXIT_TRUE
    forms = list(enumerate_canonical(args.n, args.size, args.full_rank, False))
    with ProcessPoolExecutor(max_workers=workers) as pool:
        flags = pool.map(_tile_check, [f.members for f in forms], [args.n] * len(forms))
        for form, ok in zip(forms, flags):
            if ok:
                _emit(form.to_json())
    return EXIT_TRUE


def cmd_weight_of(args) -> int:
    w = weight_of_metric(load_metric(args.metric))
    try:
        x = Vector.parse(args.vector)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if x.dim != w.n:
        raise UsageError(f"vector has length {x.dim}, metric has n={w.n}")
    _emit({"vector": str(x), "weight": w[x]})
    return EXIT_TRUE


def cmd_ball(args) -> int:
    w = weight_of_metric(load_metric(args.metric))
    center = Vector.parse(args.center) if args.center else Vector(0, w.n)
    if center.dim != w.n or args.radius < 0:
        raise UsageError("center length must equal n and radius must be nonnegative")
    _emit(ball(w, center, args.radius).members.to_json())
    return EXIT_TRUE


def cmd_equiv(args) -> int:
    w1 = weight_of_metric(load_metric(args.first))
    w2 = weight_of_metric(load_metric(args.second))
    if w1.n != w2.n:
        raise UsageError("weights have different dimensions")
    same = decoding_equivalent(w1, w2)
    _emit({"equivalent": same})
    return EXIT_TRUE if same else EXIT_FALSE


def cmd_poset_search(args) -> int:
    D = load_subset(args.input)
    try:
        found = find_poset_ball(D)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if found is None:
        _emit({"verdict": "NO_POSET"})
        return EXIT_FALSE
    P, r = found
    _emit({"verdict": "POSET_BALL", "poset": P.to_json(), "radius": r})
    return EXIT_TRUE


def cmd_catalog(args) -> int:
    _emit({"schema_version": CATALOG_SCHEMA_VERSION,
           "entries": [e.to_json() for e in load_catalog()]})
    return EXIT_TRUE


def _random_poset(rng: random.Random, n: int) -> Poset:
    order = list(range(1, n + 1))
    rng.shuffle(order)
    rel = [(order[i], order[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < 0.3]
    return poset_from_relations(n, rel)


def cmd_selfcheck(args) -> int:
    """Randomised spot checks of the library's internal invariants."""
    rng = random.Random(args.seed)
    failures = []
    for k in range(args.samples):
        n = rng.randint(1, 6)
        P = _random_poset(rng, n)
        if not validate_ts_weight(p_weight_table(P)).valid:
            failures.append({"check": "poset-axioms", "sample": k, "poset": P.to_json()})
        D = Subset(n, (0,) + tuple(rng.sample(range(1, 1 << n), rng.randint(0, (1 << n) - 1) // 2)))
        C = Subset(n, (0,) + tuple(rng.sample(range(1, 1 << n), rng.randint(0, (1 << n) - 1) // 2)))
        if is_tiling_partition(D, C) != is_tiling_sumset(D, C):
            failures.append({"check": "definitions", "sample": k, "D": D.bitstrings(),
                             "C": C.bitstrings()})
    _emit({"seed": args.seed, "samples": args.samples, "failures": failures})
    return EXIT_TRUE if not failures else EXIT_FALSE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hammtile", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify-tiling", help="check a Tiling JSON under both definitions")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify_tiling)

    p = sub.add_parser("classify", help="decide whether a set is a TS-ball")
    p.add_argument("input")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("find-complement", help="search a code C tiling the space with D")
    p.add_argument("input")
    p.set_defaults(func=cmd_find_complement)

    p = sub.add_parser("concat", help="concatenate two tilings and certify the result")
    p.add_argument("first")
    p.add_argument("second")
    p.add_argument("--metric1", required=True)
    p.add_argument("--metric2", required=True)
    p.add_argument("--mode", required=True,
                   choices=["max", "sum", "covering-product", "saturate-then-product"])
    p.add_argument("--r1", type=int)
    p.add_argument("--r2", type=int)
    p.set_defaults(func=cmd_concat)

    p = sub.add_parser("enumerate", help="canonical forms of support-closed sets")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--size", type=int, required=True)
    p.add_argument("--full-rank", action="store_true")
    p.add_argument("--tiles-only", action="store_true")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("weight-of", help="weight of a vector under a metric")
    p.add_argument("metric")
    p.add_argument("vector")
    p.set_defaults(func=cmd_weight_of)

    p = sub.add_parser("ball", help="members of a metric ball")
    p.add_argument("metric")
    p.add_argument("--radius", type=int, required=True)
    p.add_argument("--center")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("equiv", help="decoding equivalence of two metrics")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("poset-search", help="find a poset whose ball is the given set")
    p.add_argument("input")
    p.set_defaults(func=cmd_poset_search)

    p = sub.add_parser("catalog", help="dump the embedded catalogue")
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("selfcheck", help="randomised invariant checks")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int, default=200)
    p.set_defaults(func=cmd_selfcheck)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ERROR if exc.code else EXIT_TRUE
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"hammtile: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"hammtile: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
