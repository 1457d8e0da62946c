"""Print zeta lower bounds and the resulting inv_3 constants next to the reference values.

    python scripts/zeta_bounds.py                 # q = 4, 5, 7 from native enumeration
    python scripts/zeta_bounds.py --db9 d9.tour    # add q = 9 from an offline database
"""
import argparse
import time

from tourninv.canon import enumerate_tournaments
from tourninv.field import orthogonal_family, tabulated_q9_family
from tourninv.tournament import read_tour
from tourninv.zeta import REPORTED, zeta_search


def row(q, db, fam, trials, seed, relabel):
    t0 = time.perf_counter()
    res = zeta_search(db, fam, trials, seed, relabel=relabel)
    ref_z, ref_b = REPORTED[q]
    flag = "" if res.zeta >= ref_z else "  << below reported"
    print(f"{q:>2}  {str(res.zeta):>8}  {str(res.bound):>10}  {str(ref_z):>8}  {str(ref_b):>10}"
          f"  {res.total_trials:>7}  {time.perf_counter() - t0:6.1f}s{flag}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--trials", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--relabel", choices=["vertices", "positions"], default="vertices")
    ap.add_argument("--skip7", action="store_true")
    ap.add_argument("--db8")
    ap.add_argument("--db9")
    ap.add_argument("--tabulated", action="store_true", help="use the tabulated family for q = 9")
    args = ap.parse_args()

    print(" q      zeta       bound  reported    rep.bound   trials    time")
    for q in (4, 5) if args.skip7 else (4, 5, 7):
        row(q, enumerate_tournaments(q), orthogonal_family(q), args.trials, args.seed, args.relabel)
    if args.db8:
        row(8, read_tour(args.db8), orthogonal_family(8), args.trials, args.seed, args.relabel)
    if args.db9:
        fam = tabulated_q9_family() if args.tabulated else orthogonal_family(9)
        row(9, read_tour(args.db9), fam, args.trials, args.seed, args.relabel)


if __name__ == "__main__":
    main()
