"""Constructive decycling: inversion gadgets, greedy clique packings and the pipelines.

Every pipeline fixes an ordering pi and then empties the left graph T_L(pi):
once no edge points forward, the tournament is transitive (ordered by
reversed pi). Each stage removes left edges without creating new ones.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from .errors import FormatError, InputError
from .rng import SplitMix64, derive_seed
from .tournament import (
    LeftGraph,
    Permutation,
    Tournament,
    _check_vertices,
    _members,
    invert_all,
    is_acyclic,
    left_graph,
)

Step = tuple[int, ...]
DEFAULT_BICLIQUE_BUDGET = 10**6


@dataclass(frozen=True)
class DecyclingSequence:
    steps: tuple[Step, ...]
    k_cap: int
    # (stage name, steps contributed); informational only
    stages: tuple[tuple[str, int], ...] = field(default=(), compare=False)

    def __len__(self) -> int:
        return len(self.steps)

    def dumps(self) -> str:
        lines = [f"k {self.k_cap}"] + [" ".join(map(str, s)) for s in self.steps]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "DecyclingSequence":
        k_cap = None
        steps = []
        for lineno, line in enumerate(text.splitlines(), 1):
            s = line.strip()
            if not s or s.startswith("#"):
                continue
            fields = s.split()
            if k_cap is None:
                if len(fields) != 2 or fields[0] != "k" or not fields[1].isdigit():
                    raise FormatError("first line must be 'k <k_cap>'", lineno)
                k_cap = int(fields[1])
                continue
            if not all(f.isdigit() for f in fields):
                raise FormatError("steps are space-separated vertex indices", lineno)
            steps.append(tuple(int(f) for f in fields))
        if k_cap is None:
            raise FormatError("missing 'k <k_cap>' header")
        return cls(tuple(steps), k_cap)


def verify_decycling(t: Tournament, seq: DecyclingSequence) -> bool:
    for s in seq.steps:
        if not 2 <= len(s) <= seq.k_cap:
            return False
        if len(set(s)) != len(s) or any(not 0 <= v < t.n for v in s):
            return False
    return is_acyclic(invert_all(t, seq.steps))


# --- four-cycle gadget ---------------------------------------------------

# diagonal (non-cycle) pairs of each case, as index pairs into (a, b, c, d)
_CASE_DIAGONALS = {1: ((0, 3), (1, 2)), 2: ((0, 2), (1, 3)), 3: ((0, 1), (2, 3))}
# (X, Y) as index triples into (a, b, c, d)
_CASE_SETS = {1: ((0, 1, 2), (1, 2, 3)), 2: ((0, 1, 2), (0, 2, 3)), 3: ((0, 1, 2), (0, 1, 3))}


@dataclass(frozen=True)
class FourCycleWitness:
    """4-cycle of a left graph on a, b, c, d listed by increasing position."""

    a: int
    b: int
    c: int
    d: int
    case: int

    @property
    def vertices(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    @property
    def cycle_edges(self) -> list[tuple[int, int]]:
        """The four cycle edges, each directed from earlier to later vertex."""
        vs = self.vertices
        diag = _CASE_DIAGONALS[self.case]
        return [(vs[i], vs[j]) for i, j in combinations(range(4), 2) if (i, j) not in diag]


def _witness_from_cycle(cycle: Sequence[int], perm: Permutation) -> FourCycleWitness:
    u, x, w, y = cycle
    a, b, c, d = sorted(cycle, key=lambda v: perm[v])
    vs = (a, b, c, d)
    diag = {frozenset((u, w)), frozenset((x, y))}
    for case, pairs_ in _CASE_DIAGONALS.items():
        if {frozenset((vs[i], vs[j])) for i, j in pairs_} == diag:
            return FourCycleWitness(a, b, c, d, case)
    raise AssertionError("unreachable: three 4-cycles on four vertices")


def four_cycle_pair(t: Tournament, perm: Permutation, w: FourCycleWitness) -> tuple[Step, Step]:
    """Two 3-sets whose joint inversion reverses exactly the four cycle edges."""
    vs = _check_vertices(t.n, w.vertices)
    if w.case not in _CASE_SETS:
        raise InputError(f"unknown case {w.case}")
    if not perm[vs[0]] < perm[vs[1]] < perm[vs[2]] < perm[vs[3]]:
        raise InputError("witness vertices are not in increasing position order")
    for u, v in w.cycle_edges:
        if not t.beats(u, v):
            raise InputError(f"cycle edge {{{u},{v}}} is not a left edge: {v} beats {u}")
    x, y = _CASE_SETS[w.case]
    return tuple(vs[i] for i in x), tuple(vs[i] for i in y)


def _four_cycles(adj: list[int]):
    """Yield 4-cycles (u, x, w, y) of the mutable graph `adj`.

    The caller may delete edges between yields. Deleting only shrinks common
    neighbourhoods, so pairs already passed never need rescanning.
    """
    n = len(adj)
    for u in range(n):
        for w in range(u + 1, n):
            while True:
                common = adj[u] & adj[w]
                if common.bit_count() < 2:
                    break
                x = (common & -common).bit_length() - 1
                common &= common - 1
                y = (common & -common).bit_length() - 1
                yield (u, x, w, y)


def find_four_cycle(g: LeftGraph, perm: Permutation) -> FourCycleWitness | None:
    cyc = next(_four_cycles(list(g.adj)), None)
    return None if cyc is None else _witness_from_cycle(cyc, perm)


# --- biclique gadget -------------------------------------------------------

def biclique_shape(k: int) -> tuple[int, int]:
    """(larger part, smaller part) sizes used by the quartet for this k."""
    if k < 4:
        raise InputError("biclique quartets need k >= 4")
    return (k, k) if k % 2 == 0 else (k + 1, k - 1)


@dataclass(frozen=True)
class BicliqueWitness:
    left_part: tuple[int, ...]  # the larger part when sizes differ
    right_part: tuple[int, ...]

    def cross_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in self.left_part for v in self.right_part]


def biclique_errors(g: LeftGraph, w: BicliqueWitness) -> list[str]:
    errs = []
    if set(w.left_part) & set(w.right_part):
        errs.append("parts overlap")
    errs += [f"missing edge {{{u},{v}}}" for u, v in w.cross_edges() if not g.has_edge(u, v)]
    return errs


def biclique_quartet(k: int, w: BicliqueWitness) -> tuple[Step, Step, Step, Step]:
    """Four k-sets A+C, A+D, B+C, B+D whose joint inversion flips exactly the cross pairs."""
    big, small = biclique_shape(k)
    if (len(w.left_part), len(w.right_part)) != (big, small):
        raise InputError(
            f"k={k} needs parts of sizes ({big}, {small}), got ({len(w.left_part)}, {len(w.right_part)})"
        )
    if set(w.left_part) & set(w.right_part) or len(set(w.left_part)) != big or len(set(w.right_part)) != small:
        raise InputError("parts must be disjoint sets of distinct vertices")
    A, B = w.left_part[: big // 2], w.left_part[big // 2:]
    C, D = w.right_part[: small // 2], w.right_part[small // 2:]
    return tuple(tuple(sorted(x + y)) for x in (A, B) for y in (C, D))


def _find_biclique(adj: list[int], small: int, big: int, budget: int) -> BicliqueWitness | None:
    """Search `small` vertices whose common neighbourhood has >= `big` vertices.

    Returns None when no such biclique exists or the expansion budget runs out.
    """
    n = len(adj)
    cand = [v for v in range(n) if adj[v].bit_count() >= big]
    expansions = 0

    def grow(chosen: list[int], start: int, common: int):
        nonlocal expansions
        if len(chosen) == small:
            return chosen
        for i in range(start, len(cand)):
            if len(cand) - i < small - len(chosen):
                return None
            expansions += 1
            if expansions > budget:
                raise _BudgetExhausted
            v = cand[i]
            nxt = common & adj[v]
            if nxt.bit_count() >= big:
                found = grow(chosen + [v], i + 1, nxt)
                if found:
                    return found
        return None

    try:
        found = grow([], 0, (1 << n) - 1)
    except _BudgetExhausted:
        return None
    if not found:
        return None
    common = (1 << n) - 1
    for v in found:
        common &= adj[v]
    other = tuple(_members(common)[:big])
    return BicliqueWitness(other, tuple(found))


class _BudgetExhausted(Exception):
    pass


def find_biclique(g: LeftGraph, k: int, budget: int = DEFAULT_BICLIQUE_BUDGET) -> BicliqueWitness | None:
    big, small = biclique_shape(k)
    return _find_biclique(list(g.adj), small, big, budget)


# --- greedy packing ----------------------------------------------------------

def _cliques(adj: Sequence[int], k: int) -> list[Step]:
    out = []

    def extend(clique: list[int], cand: int):
        if len(clique) == k:
            out.append(tuple(clique))
            return
        while cand:
            v = (cand & -cand).bit_length() - 1
            cand &= cand - 1
            extend(clique + [v], cand & adj[v])

    for v in range(len(adj)):
        extend([v], adj[v] >> (v + 1) << (v + 1))
    return out


def _greedy_pack(adj: list[int], k: int, seed: int) -> list[Step]:
    cliques = _cliques(adj, k)
    SplitMix64(seed).shuffle(cliques)
    residual = list(adj)
    chosen = []
    for c in cliques:
        if all(residual[u] >> v & 1 for u, v in combinations(c, 2)):
            chosen.append(c)
            for u, v in combinations(c, 2):
                residual[u] &= ~(1 << v)
                residual[v] &= ~(1 << u)
    return chosen


def greedy_clique_packing(g: LeftGraph, k: int, seed: int) -> list[Step]:
    """Maximal set of edge-disjoint k-cliques, scanning all k-cliques in seeded random order."""
    if k < 3:
        raise InputError("clique packing needs k >= 3")
    return _greedy_pack(list(g.adj), k, seed)


# --- pipelines -------------------------------------------------------------------

def _remove(adj: list[int], u: int, v: int) -> None:
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)


def _run_pipeline(t: Tournament, k: int, seed: int, budget: int,
                  perm: Permutation | None = None) -> DecyclingSequence:
    if perm is None:
        candidates = [Permutation(SplitMix64(seed).permutation(t.n))]
        candidates.append(candidates[0].reversed())
    elif len(perm) != t.n:
        raise InputError(f"ordering has length {len(perm)}, tournament has {t.n} vertices")
    else:
        candidates = [perm]
    sides = []
    for side, p in enumerate(candidates):
        g = left_graph(t, p)
        packing = _greedy_pack(list(g.adj), k, derive_seed(seed, side + 1))
        # larger packing first, then fewer left edges, then pi itself
        sides.append((-len(packing), g.num_edges, side, p, g, packing))
    _, _, _, p, g, packing = min(sides, key=lambda s: s[:3])
    adj = list(g.adj)
    steps: list[Step] = []
    stages = []

    for c in packing:
        steps.append(c)
        for u, v in combinations(c, 2):
            _remove(adj, u, v)
    stages.append(("cliques", len(packing)))

    if k >= 4:
        big, small = biclique_shape(k)
        count = 0
        while (w := _find_biclique(adj, small, big, budget)) is not None:
            steps.extend(biclique_quartet(k, w))
            for u, v in w.cross_edges():
                _remove(adj, u, v)
            count += 4
        stages.append(("bicliques", count))

    count = 0
    for cyc in _four_cycles(adj):
        w = _witness_from_cycle(cyc, p)
        x, y = _CASE_SETS[w.case]
        steps.append(tuple(sorted(w.vertices[i] for i in x)))
        steps.append(tuple(sorted(w.vertices[i] for i in y)))
        for u, v in w.cycle_edges:
            _remove(adj, u, v)
        count += 2
    stages.append(("four_cycles", count))

    singles = LeftGraph(t.n, tuple(adj)).edges()
    steps.extend(singles)
    stages.append(("edges", len(singles)))
    return DecyclingSequence(tuple(steps), k, tuple(stages))


def decycle3(t: Tournament, seed: int, perm: Permutation | None = None) -> DecyclingSequence:
    return _run_pipeline(t, 3, seed, DEFAULT_BICLIQUE_BUDGET, perm)


def decycle_k(t: Tournament, k: int, seed: int, budget: int = DEFAULT_BICLIQUE_BUDGET,
              perm: Permutation | None = None) -> DecyclingSequence:
    """Decycling sequence with steps of size <= k.

    Without `perm`, a seeded random ordering and its reverse are both packed
    and the better side is kept; a given `perm` is used as is.
    """
    if k < 3:
        raise InputError("decycle_k needs k >= 3; for k = 2 use min_feedback_edges")
    return _run_pipeline(t, k, seed, budget, perm)


def decycle_best(t: Tournament, k: int, seed: int, restarts: int = 1,
                 budget: int = DEFAULT_BICLIQUE_BUDGET) -> DecyclingSequence:
    """Shortest sequence over `restarts` runs; run r > 0 uses the sub-seed (seed, r)."""
    if restarts < 1:
        raise InputError("restarts must be at least 1")
    best = None
    for r in range(restarts):
        s = decycle_k(t, k, seed if r == 0 else derive_seed(seed, r), budget)
        if best is None or len(s) < len(best):
            best = s
    return best


def flipped_pairs(before: Tournament, after: Tournament) -> set[frozenset[int]]:
    """Unordered pairs whose orientation differs between the two tournaments."""
    diff = before.bits ^ after.bits
    return {frozenset((i, j)) for p, (i, j) in enumerate(combinations(range(before.n), 2)) if diff >> p & 1}


def apply_steps(t: Tournament, steps: Iterable[Step]) -> Tournament:
    return invert_all(t, steps)
