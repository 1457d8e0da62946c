"""Lower bounds for zeta_q: the minimum over q-vertex tournaments Q of the best
average fractional triangle packing of Q_L(sigma) over an orthogonal family.

Everything is exact (`fractions.Fraction`). The search memoizes packing values
per isomorphism class of the left graph, and per-tournament averages per
composed family, so repeated random trials that land on an already-seen
family cost one numpy call and a dict lookup.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from .canon import GraphClasses
from .errors import InputError
from .field import OrthogonalFamily
from .packing import fractional_triangle_packing
from .rng import SplitMix64, derive_seed
from .tournament import LeftGraph, Tournament, left_graph, pairs

# reference (zeta, bound) values; runs landing below are flagged
REPORTED = {
    4: (Fraction(1, 3), Fraction(1, 9)),
    5: (Fraction(7, 10), Fraction(43, 400)),
    7: (Fraction(27, 14), Fraction(5, 49)),
    8: (Fraction(153, 56), Fraction(631, 6272)),
    9: (Fraction(67, 18), Fraction(257, 2592)),
}


RELABEL_MODES = ("vertices", "positions")


def bound_from_zeta(q: int, zeta: Fraction) -> Fraction:
    """Leading constant of the inv_3 upper bound obtained from zeta at this q."""
    if q < 4:
        raise InputError("q must be at least 4")
    zeta = Fraction(zeta)
    if zeta < 0:
        raise InputError("zeta must be non-negative")
    return Fraction(1, 8) - zeta / (2 * q * (q - 1))


def avg_family(Q: Tournament, family: OrthogonalFamily) -> Fraction:
    """Mean fractional triangle packing of Q_L(sigma) over the family (direct LP per member)."""
    if Q.n != family.q:
        raise InputError(f"tournament has {Q.n} vertices, family permutes {family.q}")
    total = sum((fractional_triangle_packing(left_graph(Q, s)).value for s in family.perms), Fraction(0))
    return total / len(family)


class PackingValues:
    """nu*_3 for graphs on q labeled vertices, memoized by isomorphism class."""

    def __init__(self, q: int):
        self.q = q
        self.classes = GraphClasses(q)
        self._by_class: dict[int, Fraction] = {}
        self.lp_calls = 0

    def of_class(self, cid: int) -> Fraction:
        v = self._by_class.get(cid)
        if v is None:
            g = LeftGraph.from_pair_mask(self.q, self.classes.representatives[cid])
            v = self._by_class[cid] = fractional_triangle_packing(g).value
            self.lp_calls += 1
        return v

    def total(self, masks: np.ndarray) -> Fraction:
        cids, counts = np.unique(self.classes.classes_of(masks), return_counts=True)
        return sum((self.of_class(int(c)) * int(k) for c, k in zip(cids, counts)), Fraction(0))


@dataclass
class ZetaResult:
    q: int
    zeta: Fraction
    worst_index: int
    best: list[Fraction] = field(repr=False)  # per-tournament best average found
    loops: list[int] = field(repr=False)  # trials spent per tournament
    lp_calls: int = 0

    @property
    def bound(self) -> Fraction:
        return bound_from_zeta(self.q, self.zeta)

    @property
    def total_trials(self) -> int:
        return sum(self.loops)


class _FamilyAverager:
    def __init__(self, family: OrthogonalFamily, values: PackingValues):
        q = family.q
        self.q = q
        self.size = len(family)
        self.base = family.as_array()
        self.values = values
        ab = np.array(list(pairs(q)), dtype=np.int64).reshape(-1, 2)
        self.a, self.b = ab[:, 0], ab[:, 1]
        self.pw = np.int64(1) << np.arange(len(ab), dtype=np.int64)
        self.code = np.int64(q) ** np.arange(q, dtype=np.int64)

    def composed(self, pi: Sequence[int], relabel: str) -> np.ndarray:
        pi = np.asarray(pi, dtype=np.int64)
        if relabel == "vertices":
            # row r: vertex v sits at position sigma_r(pi(v))
            return self.base[:, pi]
        # row r: vertex v sits at position pi(sigma_r(v))
        return pi[self.base]

    def family_key(self, fam: np.ndarray) -> bytes:
        return np.sort(fam @ self.code).tobytes()

    def average(self, beats: np.ndarray, fam: np.ndarray) -> Fraction:
        # left graph relabeled onto positions: a < b adjacent iff vertex at a beats vertex at b
        at = np.argsort(fam, axis=1)
        masks = beats[at[:, self.a], at[:, self.b]].astype(np.int64) @ self.pw
        return self.values.total(masks) / self.size


def _beats_matrix(t: Tournament) -> np.ndarray:
    m = np.zeros((t.n, t.n), dtype=bool)
    for u, v in t.edges():
        m[u, v] = True
    return m


def zeta_search(
    db: Sequence[Tournament],
    family: OrthogonalFamily,
    trials: int = 1000,
    seed: int = 0,
    prune: bool = True,
    values: PackingValues | None = None,
    relabel: str = "vertices",
) -> ZetaResult:
    """Randomized search for a lower bound on zeta_q over the database.

    For each tournament, up to `trials` random permutations pi give families
    {sigma o pi} (``relabel="vertices"``: pi renames the vertices before sigma
    places them) or {pi o sigma} (``relabel="positions"``: pi permutes the
    positions sigma assigns). Both are orthogonal again. The best average is
    kept per tournament, and the running minimum
    over tournaments is the bound. With `prune`, a tournament stops as soon
    as its best reaches the current minimum (it cannot lower it any more).
    Tournament i draws its relabelings from the sub-seed (seed, i).
    """
    if not db:
        raise InputError("tournament database is empty")
    if trials < 1:
        raise InputError("trials must be at least 1")
    if relabel not in RELABEL_MODES:
        raise InputError(f"relabel must be one of {RELABEL_MODES}, got {relabel!r}")
    q = family.q
    for i, t in enumerate(db):
        if t.n != q:
            raise InputError(f"database entry {i} has {t.n} vertices, expected {q}")
    values = values or PackingValues(q)
    avg = _FamilyAverager(family, values)
    zeta = None
    worst = -1
    bests, loops = [], []
    for idx, t in enumerate(db):
        beats = _beats_matrix(t)
        rng = SplitMix64(derive_seed(seed, idx))
        seen: dict[bytes, Fraction] = {}
        best = Fraction(-1)
        loop = 0
        while loop < trials and (not prune or zeta is None or best < zeta):
            loop += 1
            fam = avg.composed(rng.permutation(q), relabel)
            key = avg.family_key(fam)
            a = seen.get(key)
            if a is None:
                a = seen[key] = avg.average(beats, fam)
            if a > best:
                best = a
        bests.append(best)
        loops.append(loop)
        if zeta is None or best < zeta:
            zeta, worst = best, idx
    return ZetaResult(q, zeta, worst, bests, loops, values.lp_calls)


def zeta_lower_bound(db: Sequence[Tournament], family: OrthogonalFamily, trials: int = 1000,
                     seed: int = 0, relabel: str = "vertices") -> Fraction:
    return zeta_search(db, family, trials, seed, relabel=relabel).zeta
