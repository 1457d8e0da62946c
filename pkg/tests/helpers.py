from hypothesis import strategies as st

from tourninv.construct import BicliqueWitness, FourCycleWitness, biclique_shape
from tourninv.rng import SplitMix64
from tourninv.tournament import (
    LeftGraph,
    Permutation,
    Tournament,
    num_pairs,
    pair_index,
    random_tournament,
)


@st.composite
def tournaments(draw, min_n=1, max_n=9):
    n = draw(st.integers(min_n, max_n))
    return Tournament(n, draw(st.integers(0, (1 << num_pairs(n)) - 1)))


@st.composite
def tournament_and_perm(draw, min_n=1, max_n=9):
    t = draw(tournaments(min_n, max_n))
    return t, Permutation(tuple(draw(st.permutations(range(t.n)))))


def random_graph(n: int, rng: SplitMix64, density_num: int = 1, density_den: int = 2) -> LeftGraph:
    edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.below(density_den) < density_num]
    return LeftGraph.from_edges(n, edges)


def make_left(t: Tournament, perm: Permutation, pairs_) -> Tournament:
    """Reorient each pair so the earlier vertex (by perm) beats the later one."""
    bits = t.bits
    for u, v in pairs_:
        if perm[u] > perm[v]:
            u, v = v, u
        i, j = min(u, v), max(u, v)
        p = pair_index(i, j, t.n)
        bits = bits | (1 << p) if u == i else bits & ~(1 << p)
    return Tournament(t.n, bits)


def four_cycle_instance(rng: SplitMix64, case: int, n: int = 8):
    """Random (T, pi, witness) whose left graph has the 4-cycle of the given case."""
    t = random_tournament(n, rng.next_u64())
    perm = Permutation(tuple(rng.permutation(n)))
    quad = sorted(rng.permutation(n)[:4], key=lambda v: perm[v])
    w = FourCycleWitness(*quad, case)
    return make_left(t, perm, w.cycle_edges), perm, w


def biclique_instance(rng: SplitMix64, k: int, extra: int = 3):
    """Random (T, pi, witness) whose left graph contains the quartet's biclique for k."""
    big, small = biclique_shape(k)
    n = big + small + extra
    t = random_tournament(n, rng.next_u64())
    perm = Permutation(tuple(rng.permutation(n)))
    verts = rng.permutation(n)
    w = BicliqueWitness(tuple(verts[:big]), tuple(verts[big:big + small]))
    return make_left(t, perm, w.cross_edges()), perm, w
