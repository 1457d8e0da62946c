"""|steps| / n^2 of the decycling pipelines on seeded random tournaments.

    python scripts/random_experiment.py --n 40 80 160 --k 3 4 --reps 100
"""
import argparse
import time
from statistics import mean, pstdev

from tourninv.experiment import run_random_experiment


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, nargs="+", default=[40, 80])
    ap.add_argument("--k", type=int, nargs="+", default=[3])
    ap.add_argument("--reps", type=int, default=100)
    ap.add_argument("--restarts", type=int, default=1)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    print("   n  k   mean ratio     sd    min     max   reference  verified   time")
    for k in args.k:
        for n in args.n:
            t0 = time.perf_counter()
            rep = run_random_experiment(n, k, args.reps, args.seed, args.restarts)
            r = rep.ratios
            print(f"{n:>4} {k:>2}   {mean(r):.5f}  {pstdev(r):.5f}  {min(r):.4f}  {max(r):.4f}"
                  f"   {float(rep.reference_ratio):.5f}   {all(rep.verified)!s:>5}  {time.perf_counter() - t0:5.1f}s")


if __name__ == "__main__":
    main()
