"""Enumerate support-closed full-rank tiles of size 8 and match them to the catalogue.

Walks n = 3..7, keeps one canonical form per permutation class, and reports
which catalogue entry each tile corresponds to.
"""

import argparse
import time

from hammtile import load_catalog
from hammtile.perfect_codes import enumerate_canonical
from hammtile.tilings import canonical_form


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-min", type=int, default=3)
    parser.add_argument("--n-max", type=int, default=7)
    args = parser.parse_args()
    index = {(e.members.n, canonical_form(e.members).members): e.name for e in load_catalog()}
    total = 0
    for n in range(args.n_min, args.n_max + 1):
        start = time.perf_counter()
        forms = list(enumerate_canonical(n, 8, full_rank=True))
        tiles = list(enumerate_canonical(n, 8, full_rank=True, tiles_only=True))
        print(f"n={n}: {len(forms)} support-closed classes, {len(tiles)} tiles "
              f"({time.perf_counter() - start:.2f} s)")
        for D in tiles:
            print(f"    {' '.join(D.bitstrings())}  ->  {index.get((n, D.members), 'UNCATALOGUED')}")
        total += len(tiles)
    print(f"total tiles: {total}")


if __name__ == "__main__":
    main()
