"""Canonical forms for small tournaments and graphs, and isomorphism-class enumeration.

A tournament's canonical form is the lexicographically smallest bit string
(pair order as in `tournament`) over all relabelings of its vertices.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations

import numpy as np

from .errors import CapacityError, InputError
from .tournament import Tournament, num_pairs, pair_index, pairs

ENUMERATE_MAX_Q = 7
CLASS_TABLE_MAX_Q = 7


@lru_cache(maxsize=None)
def relabel_tables(q: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """(perms, src, flip) for all q! relabelings.

    For relabeling v -> perms[r, v], target pair p takes its bit from source
    pair src[r, p], complemented when flip[r, p] (tournaments only).
    """
    perms = np.array(list(permutations(range(q))), dtype=np.int64).reshape(-1, q)
    inv = np.argsort(perms, axis=1)
    m = num_pairs(q)
    src = np.zeros((len(perms), m), dtype=np.int64)
    flip = np.zeros((len(perms), m), dtype=np.uint8)
    for p, (a, b) in enumerate(pairs(q)):
        u, v = inv[:, a], inv[:, b]
        lo, hi = np.minimum(u, v), np.maximum(u, v)
        src[:, p] = lo * (2 * q - lo - 1) // 2 + (hi - lo - 1)
        flip[:, p] = u > v
    return perms, src, flip


def _lex_weights(m: int) -> np.ndarray:
    # first character of the bit string is the most significant
    return (np.int64(1) << np.arange(m - 1, -1, -1, dtype=np.int64)) if m else np.zeros(0, np.int64)


def _bit_array(bits: int, m: int) -> np.ndarray:
    return np.array([bits >> p & 1 for p in range(m)], dtype=np.uint8)


def lex_key(t: Tournament) -> int:
    """Bit string read as a binary number, first pair most significant."""
    s = t.bitstring()
    return int(s, 2) if s else 0


def from_lex_key(n: int, key: int) -> Tournament:
    m = num_pairs(n)
    bits = 0
    for p in range(m):
        if key >> (m - 1 - p) & 1:
            bits |= 1 << p
    return Tournament(n, bits)


def _orbit_keys(bitarr: np.ndarray, q: int, directed: bool) -> np.ndarray:
    _, src, flip = relabel_tables(q)
    rel = bitarr[src]
    if directed:
        rel = rel ^ flip
    return rel.astype(np.int64) @ _lex_weights(len(bitarr))


def canonical_key(t: Tournament) -> int:
    if t.n > 9:
        raise CapacityError(f"canonical forms need n <= 9, got {t.n}")
    if t.n < 3:
        return 0
    return int(_orbit_keys(_bit_array(t.bits, num_pairs(t.n)), t.n, True).min())


def canonical_form(t: Tournament) -> Tournament:
    return from_lex_key(t.n, canonical_key(t))


def enumerate_tournaments(q: int) -> list[Tournament]:
    """One canonical representative per isomorphism class, sorted by bit string."""
    if q < 1:
        raise InputError("q must be positive")
    if q > ENUMERATE_MAX_Q:
        raise CapacityError(
            f"native enumeration supports q <= {ENUMERATE_MAX_Q}; load q={q} from a .tour file"
        )
    m = num_pairs(q)
    if q < 3:
        return [from_lex_key(q, 0)]
    seen = bytearray(1 << m)
    reps = []
    x = 0
    while True:
        # scanning in key order makes each first-seen orbit member its minimum
        x = seen.find(0, x)
        if x < 0:
            break
        reps.append(from_lex_key(q, x))
        keys = _orbit_keys(_bit_array(reps[-1].bits, m), q, True)
        for k in np.unique(keys):
            seen[int(k)] = 1
    return reps


class GraphClasses:
    """Isomorphism classes of labeled graphs on q vertices.

    Graphs are keyed by their pair mask (bit p set iff pair p is an edge).
    For q <= 7 the full labeled -> class table is built up front; larger q
    canonicalize on demand.
    """

    def __init__(self, q: int):
        if q < 1:
            raise InputError("q must be positive")
        self.q = q
        self.m = num_pairs(q)
        self.representatives: list[int] = []
        self._index: dict[int, int] = {}
        self.table = None
        if q <= CLASS_TABLE_MAX_Q:
            self._build_table()

    def _build_table(self):
        m = self.m
        table = np.full(1 << m, -1, dtype=np.int32)
        seen = bytearray(1 << m)
        pw = np.int64(1) << np.arange(m, dtype=np.int64)
        _, src, _ = relabel_tables(self.q)
        x = 0
        while True:
            x = seen.find(0, x)
            if x < 0:
                break
            cid = len(self.representatives)
            self.representatives.append(x)
            orbit = np.unique(_bit_array(x, m)[src].astype(np.int64) @ pw) if m else np.zeros(1, np.int64)
            table[orbit] = cid
            for k in orbit:
                seen[int(k)] = 1
        self.table = table

    def __len__(self) -> int:
        return len(self.representatives)

    def class_of(self, mask: int) -> int:
        if self.table is not None:
            return int(self.table[mask])
        _, src, _ = relabel_tables(self.q)
        pw = np.int64(1) << np.arange(self.m, dtype=np.int64)
        canon = int((_bit_array(mask, self.m)[src].astype(np.int64) @ pw).min())
        cid = self._index.get(canon)
        if cid is None:
            cid = self._index[canon] = len(self.representatives)
            self.representatives.append(canon)
        return cid

    def classes_of(self, masks: np.ndarray) -> np.ndarray:
        if self.table is not None:
            return self.table[masks]
        return np.array([self.class_of(int(k)) for k in masks], dtype=np.int64)


def graph_relabel(mask: int, q: int, perm) -> int:
    """Pair mask of the graph with vertex v renamed perm[v]."""
    out = 0
    for p, (u, v) in enumerate(pairs(q)):
        if mask >> p & 1:
            out |= 1 << pair_index(perm[u], perm[v], q)
    return out
