"""Rebuild the size-8 tile tables from the embedded catalogue.

For every entry: the rank, whether a complement exists, and either the
metric that realises the ball or the deterministic support-closure witness.
"""

import argparse
import json

from hammtile import find_complement, load_catalog, support_closure_witness
from hammtile.weights import ball_at_zero


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--json", action="store_true", help="emit one JSON object per entry")
    args = parser.parse_args()
    for e in load_catalog():
        C = find_complement(e.members)
        row = {"name": e.name, "table": e.table, "n": e.members.n, "rank": e.rank,
               "tile": C is not None, "verdict": e.verdict}
        if e.verdict == "BALL":
            row["radius"] = e.radius
            row["reconstructs"] = ball_at_zero(e.weight_table(), e.radius) == e.members
            row["metric"] = (e.covering.as_lists() if e.covering is not None
                             else e.poset.to_json()["relations"])
        else:
            row["table_witness"] = str(e.witness)
            row["scan_witness"] = str(support_closure_witness(e.members))
        if args.json:
            print(json.dumps(row, sort_keys=True))
        else:
            extra = (f"r={row['radius']} metric={row['metric']} ok={row['reconstructs']}"
                     if e.verdict == "BALL" else
                     f"witness table={row['table_witness']} scan={row['scan_witness']}")
            print(f"{e.name:8} table {e.table:4} n={row['n']} rank={e.rank} "
                  f"tile={'yes' if row['tile'] else 'NO '} {e.verdict:8} {extra}")


if __name__ == "__main__":
    main()
