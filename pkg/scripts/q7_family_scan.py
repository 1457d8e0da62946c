"""zeta at q = 7 for every position relabeling tau o P of the affine family P.

The affine group has order 42, so the 5040 relabelings give 120 distinct
base families. Prints the distribution of the resulting lower bounds and the
first relabeling reaching each value. Takes several minutes.
"""
import argparse
from collections import Counter
from itertools import permutations

from tourninv.canon import enumerate_tournaments
from tourninv.field import orthogonal_family
from tourninv.tournament import Permutation
from tourninv.zeta import PackingValues, zeta_search


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    db = enumerate_tournaments(7)
    base = orthogonal_family(7)
    values = PackingValues(7)
    seen, tally, first = set(), Counter(), {}
    for tau in permutations(range(7)):
        fam = base.compose_left(Permutation(tau))
        key = frozenset(p.pos for p in fam.perms)
        if key in seen:
            continue
        seen.add(key)
        z = zeta_search(db, fam, args.trials, args.seed, values=values).zeta
        tally[z] += 1
        first.setdefault(z, tau)
        print(f"{len(seen):>3}  tau={''.join(map(str, tau))}  zeta={z}", flush=True)
    print("\nvalue     families  first tau")
    for z in sorted(tally):
        print(f"{str(z):>8}  {tally[z]:>8}  {''.join(map(str, first[z]))}")


if __name__ == "__main__":
    main()
