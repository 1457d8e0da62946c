"""Brute-force ground truth for small instances.

These deliberately avoid the machinery they are used to check: the BFS walks
raw bit tables, the packing search works on an explicit triangle list, and
inv_2 tries every ordering.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations, permutations

from .errors import CapacityError, InputError
from .tournament import LeftGraph, Tournament, flip_mask, num_pairs, pairs

BRUTE_INV2_MAX_N = 9
EXACT_NU3_MAX_N = 9


@dataclass(frozen=True)
class SearchBudget:
    max_vertices: int = 6
    max_states: int = 1 << 22

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_states < 1:
            raise InputError("budget caps must be positive")


def _degree_masks(n: int) -> tuple[list[int], list[int]]:
    # out-degree of v = |set bits in fwd[v]| + |clear bits in back[v]|
    fwd, back = [0] * n, [0] * n
    for p, (i, j) in enumerate(pairs(n)):
        fwd[i] |= 1 << p
        back[j] |= 1 << p
    return fwd, back


def exact_inv_k(t: Tournament, k: int, budget: SearchBudget = SearchBudget()) -> int:
    """Fewest inversions of sets of size 2..k that make `t` transitive (breadth-first search)."""
    n = t.n
    if k < 2:
        raise InputError("k must be at least 2")
    if n > budget.max_vertices:
        raise CapacityError(f"exact_inv_k: n={n} exceeds max_vertices={budget.max_vertices}")
    fwd, back = _degree_masks(n)

    def acyclic(state: int) -> bool:
        degs = {(state & fwd[v]).bit_count() + (back[v].bit_count() - (state & back[v]).bit_count())
                for v in range(n)}
        return len(degs) == n

    moves = sorted({flip_mask(n, c) for s in range(2, min(k, n) + 1)
                    for c in combinations(range(n), s)})
    if acyclic(t.bits):
        return 0
    seen = {t.bits}
    frontier = deque([(t.bits, 0)])
    while frontier:
        state, depth = frontier.popleft()
        for mv in moves:
            nxt = state ^ mv
            if nxt in seen:
                continue
            if acyclic(nxt):
                return depth + 1
            seen.add(nxt)
            if len(seen) > budget.max_states:
                raise CapacityError(f"exact_inv_k: more than {budget.max_states} states visited")
            frontier.append((nxt, depth + 1))
    raise AssertionError("transitive tournaments are always reachable")


def exact_nu3(g: LeftGraph) -> int:
    """Maximum number of pairwise edge-disjoint triangles (branch and bound)."""
    if g.n > EXACT_NU3_MAX_N:
        raise CapacityError(f"exact_nu3 supports at most {EXACT_NU3_MAX_N} vertices, got {g.n}")
    tris = []
    for a, b, c in combinations(range(g.n), 3):
        if g.has_edge(a, b) and g.has_edge(a, c) and g.has_edge(b, c):
            tris.append((a, b, c))
    edge_bit = {e: 1 << i for i, e in enumerate(combinations(range(g.n), 2))}
    tri_masks = [edge_bit[(a, b)] | edge_bit[(a, c)] | edge_bit[(b, c)] for a, b, c in tris]
    best = 0

    def search(start: int, used: int, count: int):
        nonlocal best
        best = max(best, count)
        # every later triangle still available needs three unused edges
        free = 0
        for m in tri_masks[start:]:
            if not m & used:
                free |= m
        if count + free.bit_count() // 3 <= best:
            return
        for i in range(start, len(tri_masks)):
            if not tri_masks[i] & used:
                search(i + 1, used | tri_masks[i], count + 1)

    search(0, 0, 0)
    return best


def brute_inv2(t: Tournament) -> int:
    """Minimum backward-edge count over all n! orderings."""
    n = t.n
    if n > BRUTE_INV2_MAX_N:
        raise CapacityError(f"brute_inv2 supports n <= {BRUTE_INV2_MAX_N}, got {n}")
    beats = [[t.beats(i, j) for j in range(n)] for i in range(n)]
    best = num_pairs(n)
    for order in permutations(range(n)):
        back = sum(1 for x, y in combinations(order, 2) if beats[y][x])
        best = min(best, back)
    return best
