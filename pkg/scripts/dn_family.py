"""Tabulate which D_n(x) = {0, e_1, ..., e_n, x} are tiles and which are metric balls.

A tile of size n + 2 needs n + 2 to divide 2^n, so for most n nothing tiles;
the printed table shows this next to the weight-based criterion.
"""

import argparse
from itertools import combinations

from hammtile import Vector, d_n_tile, dn_perfect_metric, find_complement


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-min", type=int, default=4)
    parser.add_argument("--n-max", type=int, default=8)
    args = parser.parse_args()
    for n in range(args.n_min, args.n_max + 1):
        divides = (1 << n) % (n + 2) == 0
        print(f"n={n}: n+2 divides 2^n: {divides}")
        for k in range(2, n + 1):
            # one representative per weight suffices: D_n(x) only depends on |x| up to permutation
            x = Vector.from_support(next(combinations(range(1, n + 1), k)), n)
            tile = find_complement(d_n_tile(n, x)) is not None
            predicted = k not in (n - 1, n - 2)
            ball = dn_perfect_metric(n, x) is not None
            flag = "" if tile == predicted else "   <- differs from weight criterion"
            print(f"    weight {k}: tile={tile!s:5} weight-criterion={predicted!s:5} ball={ball}{flag}")


if __name__ == "__main__":
    main()
