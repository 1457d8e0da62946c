"""Seeded random-tournament experiments for the decycling pipelines."""
from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from statistics import mean

from .construct import decycle_best, verify_decycling
from .errors import InputError
from .rng import derive_seed
from .tournament import random_tournament


@dataclass
class ExperimentReport:
    n: int
    k: int
    reps: int
    seed: int
    restarts: int = 1
    sizes: list[int] = field(default_factory=list)
    verified: list[bool] = field(default_factory=list)
    wall_times: list[float] = field(default_factory=list)

    @property
    def ratios(self) -> list[float]:
        return [s / self.n**2 for s in self.sizes]

    @property
    def reference_ratio(self) -> Fraction:
        """Leading constant n^2 / (2k(k-1)) expected for random tournaments as n grows."""
        return Fraction(1, 2 * self.k * (self.k - 1))

    def summary(self) -> dict:
        """Deterministic part of the report (no wall times)."""
        r = self.ratios
        return {
            "record": "experiment_random",
            "n": self.n,
            "k": self.k,
            "reps": self.reps,
            "seed": self.seed,
            "restarts": self.restarts,
            "all_verified": all(self.verified),
            "sizes": self.sizes,
            "ratio_mean": round(mean(r), 6) if r else None,
            "ratio_min": round(min(r), 6) if r else None,
            "ratio_max": round(max(r), 6) if r else None,
            "reference_ratio": f"{self.reference_ratio.numerator}/{self.reference_ratio.denominator}",
        }


def run_random_experiment(n: int, k: int, reps: int, seed: int, restarts: int = 1) -> ExperimentReport:
    """Decycle `reps` seeded random tournaments; rep r uses sub-seeds (seed, r, 0) and (seed, r, 1)."""
    if n < 3 or k < 3:
        raise InputError("experiments need n >= 3 and k >= 3")
    if reps < 0:
        raise InputError("reps must be non-negative")
    rep = ExperimentReport(n, k, reps, seed, restarts)
    for r in range(reps):
        t0 = time.perf_counter()
        t = random_tournament(n, derive_seed(seed, r, 0))
        seq = decycle_best(t, k, derive_seed(seed, r, 1), restarts)
        ok = verify_decycling(t, seq)
        if not ok:
            raise AssertionError(f"rep {r}: pipeline produced an unverified sequence")
        rep.sizes.append(len(seq))
        rep.verified.append(ok)
        rep.wall_times.append(time.perf_counter() - t0)
    return rep
