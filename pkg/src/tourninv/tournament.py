"""Tournaments stored as a bit-packed upper triangle, plus the basic operations.

Pair (i, j) with i < j occupies bit ``pair_index(i, j, n)`` of ``Tournament.bits``;
the pairs are numbered row-major: (0,1), (0,2), ..., (0,n-1), (1,2), ...
A set bit means i -> j, a clear bit means j -> i.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Sequence

import numpy as np

from .errors import CapacityError, FormatError, InputError
from .rng import derive_seed, random_bits

MFE_MAX_N = 20


def num_pairs(n: int) -> int:
    return n * (n - 1) // 2


def pair_index(i: int, j: int, n: int) -> int:
    if i > j:
        i, j = j, i
    return i * (2 * n - i - 1) // 2 + (j - i - 1)


def pairs(n: int) -> Iterator[tuple[int, int]]:
    """All pairs (i, j), i < j, in bit order."""
    return combinations(range(n), 2)


def _mask(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _members(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


@dataclass(frozen=True)
class Tournament:
    n: int
    bits: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise InputError(f"tournament needs at least one vertex, got n={self.n}")
        if self.bits < 0 or self.bits >> num_pairs(self.n):
            raise InputError("bit table has bits beyond the n(n-1)/2 pairs")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Tournament":
        """Build from directed edges; pairs not listed default to j -> i."""
        bits = 0
        for u, v in edges:
            if u == v or not (0 <= u < n and 0 <= v < n):
                raise InputError(f"bad edge ({u}, {v}) for n={n}")
            if u < v:
                bits |= 1 << pair_index(u, v, n)
        return cls(n, bits)

    @classmethod
    def transitive(cls, n: int, order: Sequence[int] | None = None) -> "Tournament":
        """Transitive tournament; earlier vertices of `order` beat later ones."""
        if order is None:
            return cls(n, (1 << num_pairs(n)) - 1)
        return cls.from_edges(n, combinations(order, 2))

    @classmethod
    def cycle3(cls) -> "Tournament":
        return cls.from_edges(3, [(0, 1), (1, 2), (2, 0)])

    def beats(self, i: int, j: int) -> bool:
        if i == j:
            return False
        if i < j:
            return bool(self.bits >> pair_index(i, j, self.n) & 1)
        return not (self.bits >> pair_index(j, i, self.n) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        for p, (i, j) in enumerate(pairs(self.n)):
            yield (i, j) if self.bits >> p & 1 else (j, i)

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        out = [0] * self.n
        bits = self.bits
        for p, (i, j) in enumerate(pairs(self.n)):
            if bits >> p & 1:
                out[i] |= 1 << j
            else:
                out[j] |= 1 << i
        return tuple(out)

    def out_degrees(self) -> list[int]:
        return [m.bit_count() for m in self.out_masks]

    def bitstring(self) -> str:
        m = num_pairs(self.n)
        if m == 0:
            return ""
        return format(self.bits, f"0{m}b")[::-1]

    def relabel(self, perm: Sequence[int]) -> "Tournament":
        """Tournament with vertex v renamed perm[v]."""
        return Tournament.from_edges(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def subtournament(self, vertices: Sequence[int]) -> "Tournament":
        """Induced sub-tournament, vertices[t] becoming label t."""
        k = len(vertices)
        return Tournament.from_edges(
            k,
            ((a, b) if self.beats(vertices[a], vertices[b]) else (b, a) for a, b in pairs(k)),
        )


@dataclass(frozen=True)
class Permutation:
    """pos[v] is the position of vertex v."""

    pos: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "pos", tuple(int(x) for x in self.pos))
        if sorted(self.pos) != list(range(len(self.pos))):
            raise InputError(f"not a permutation: {self.pos}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(n)))

    @classmethod
    def from_order(cls, order: Sequence[int]) -> "Permutation":
        """Permutation placing order[0] first, order[1] second, ..."""
        pos = [0] * len(order)
        for t, v in enumerate(order):
            pos[v] = t
        return cls(tuple(pos))

    def __len__(self) -> int:
        return len(self.pos)

    def __getitem__(self, v: int) -> int:
        return self.pos[v]

    @property
    def order(self) -> list[int]:
        """Vertices listed by increasing position."""
        out = [0] * len(self.pos)
        for v, p in enumerate(self.pos):
            out[p] = v
        return out

    def reversed(self) -> "Permutation":
        n = len(self.pos)
        return Permutation(tuple(n - 1 - p for p in self.pos))

    def compose(self, inner: "Permutation") -> "Permutation":
        """(self o inner)(x) = self(inner(x))."""
        return Permutation(tuple(self.pos[p] for p in inner.pos))


@dataclass(frozen=True)
class LeftGraph:
    """Undirected simple graph on 0..n-1 as neighbour bitmasks."""

    n: int
    adj: tuple[int, ...]

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "LeftGraph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise InputError("self-loop")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, tuple(adj))

    @classmethod
    def complete(cls, n: int) -> "LeftGraph":
        full = (1 << n) - 1
        return cls(n, tuple(full ^ (1 << v) for v in range(n)))

    @classmethod
    def from_pair_mask(cls, n: int, mask: int) -> "LeftGraph":
        return cls.from_edges(n, (e for p, e in enumerate(pairs(n)) if mask >> p & 1))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _members(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_set(self) -> frozenset[frozenset[int]]:
        return frozenset(frozenset(e) for e in self.edges())

    @property
    def num_edges(self) -> int:
        return sum(m.bit_count() for m in self.adj) // 2

    def pair_mask(self) -> int:
        m = 0
        for u, v in self.edges():
            m |= 1 << pair_index(u, v, self.n)
        return m

    def triangles(self) -> list[tuple[int, int, int]]:
        out = []
        for a in range(self.n):
            higher = self.adj[a] >> (a + 1) << (a + 1)
            for b in _members(higher):
                for c in _members(higher & self.adj[b] >> (b + 1) << (b + 1)):
                    out.append((a, b, c))
        return out


def tournament_from_bits(n: int, bits: str | Sequence[int]) -> Tournament:
    m = num_pairs(n)
    if len(bits) != m:
        raise FormatError(f"expected {m} bits for n={n}, got {len(bits)}")
    value = 0
    for p, b in enumerate(bits):
        if b in ("1", 1, True):
            value |= 1 << p
        elif b not in ("0", 0, False):
            raise FormatError(f"bit {p} is {b!r}, expected 0 or 1")
    return Tournament(n, value)


def random_tournament(n: int, seed: int) -> Tournament:
    """Each pair's bit is one fair bit from the seeded splitmix64 stream."""
    if n < 1:
        raise InputError("n must be positive")
    bits = random_bits(num_pairs(n), seed)
    return Tournament(n, _bits_to_int(bits))


def _bits_to_int(bits: np.ndarray) -> int:
    if len(bits) == 0:
        return 0
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


def _check_vertices(n: int, verts: Iterable[int]) -> list[int]:
    vs = list(verts)
    if len(set(vs)) != len(vs):
        raise InputError(f"duplicate vertex in {vs}")
    for v in vs:
        if not 0 <= v < n:
            raise InputError(f"vertex {v} out of range for n={n}")
    return vs


def flip_mask(n: int, verts: Iterable[int]) -> int:
    """Bits of all pairs with both endpoints in `verts`."""
    vs = sorted(verts)
    m = 0
    for a, b in combinations(vs, 2):
        m |= 1 << pair_index(a, b, n)
    return m


def invert(t: Tournament, verts: Iterable[int]) -> Tournament:
    vs = _check_vertices(t.n, verts)
    return Tournament(t.n, t.bits ^ flip_mask(t.n, vs))


def invert_all(t: Tournament, steps: Iterable[Iterable[int]]) -> Tournament:
    bits = t.bits
    for step in steps:
        bits ^= flip_mask(t.n, _check_vertices(t.n, step))
    return Tournament(t.n, bits)


def left_graph(t: Tournament, perm: Permutation) -> LeftGraph:
    """Edges of `t` whose tail comes before their head under `perm`."""
    n = t.n
    if len(perm) != n:
        raise InputError(f"permutation has length {len(perm)}, tournament has {n} vertices")
    full = (1 << n) - 1
    order = perm.order
    earlier = [0] * n
    acc = 0
    for v in order:
        earlier[v] = acc
        acc |= 1 << v
    out = t.out_masks
    adj = []
    for v in range(n):
        later = full ^ earlier[v] ^ (1 << v)
        into = full ^ out[v] ^ (1 << v)
        adj.append((out[v] & later) | (into & earlier[v]))
    return LeftGraph(n, tuple(adj))


def right_graph(t: Tournament, perm: Permutation) -> LeftGraph:
    return left_graph(t, perm.reversed())


def is_acyclic(t: Tournament) -> bool:
    # a tournament is transitive iff its out-degrees are pairwise distinct
    return len(set(t.out_degrees())) == t.n


def has_directed_triangle(t: Tournament) -> bool:
    """Exhaustive scan; kept independent of `is_acyclic` for cross-checks."""
    for a, b, c in combinations(range(t.n), 3):
        ab, bc, ca = t.beats(a, b), t.beats(b, c), t.beats(c, a)
        if ab == bc == ca:
            return True
    return False


def backward_edges(t: Tournament, perm: Permutation) -> int:
    return left_graph(t, perm.reversed()).num_edges


def min_feedback_edges(t: Tournament) -> tuple[int, Permutation]:
    """Minimum number of backward edges over all orderings, with an optimal ordering.

    Subset DP: best[S] is the cheapest ordering of S as a prefix; the last
    vertex v of S pays for its out-edges into S - {v}.
    """
    n = t.n
    if n > MFE_MAX_N:
        raise CapacityError(f"min_feedback_edges supports n <= {MFE_MAX_N}, got {n}")
    size = 1 << n
    subsets = np.arange(size, dtype=np.int64)
    pop = np.zeros(size, dtype=np.int64)
    for v in range(n):
        pop += (subsets >> v) & 1
    out = t.out_masks
    inf = np.iinfo(np.int64).max // 4
    best = np.full(size, inf, dtype=np.int64)
    best[0] = 0
    by_layer = np.argsort(pop, kind="stable")
    bounds = np.searchsorted(pop[by_layer], np.arange(n + 2))
    for layer in range(1, n + 1):
        s = by_layer[bounds[layer]:bounds[layer + 1]]
        cur = np.full(len(s), inf, dtype=np.int64)
        for v in range(n):
            has = ((s >> v) & 1).astype(bool)
            rest = s[has] ^ (1 << v)
            cand = best[rest] + pop[rest & out[v]]
            cur[has] = np.minimum(cur[has], cand)
        best[s] = cur
    order = []
    s = size - 1
    while s:
        for v in _members(s):
            rest = s ^ (1 << v)
            if best[s] == best[rest] + (rest & out[v]).bit_count():
                order.append(v)
                s = rest
                break
    order.reverse()
    return int(best[size - 1]), Permutation.from_order(order)


@dataclass(frozen=True)
class BlowupSpec:
    seed_tournament: Tournament
    part_size: int
    inner_seed: int = 0

    def __post_init__(self):
        if self.part_size < 1:
            raise InputError("part_size must be positive")

    @property
    def n(self) -> int:
        return self.seed_tournament.n * self.part_size


@dataclass(frozen=True)
class Blowup:
    """Blown-up tournament; vertex v lies in part ``part[v]``."""

    tournament: Tournament
    part: tuple[int, ...]
    outer_bits: int = field(repr=False)

    def is_outer(self, u: int, v: int) -> bool:
        return self.part[u] != self.part[v]

    @property
    def outer_edge_count(self) -> int:
        return self.outer_bits.bit_count()

    @property
    def inner_edge_count(self) -> int:
        return num_pairs(self.tournament.n) - self.outer_edge_count

    def outer_left_edges(self, perm: Permutation) -> int:
        g = left_graph(self.tournament, perm)
        return (g.pair_mask() & self.outer_bits).bit_count()


def balanced_blowup(spec: BlowupSpec) -> Blowup:
    """Vertices of part i are i*s .. i*s+s-1; inner pairs come from a per-part sub-seed."""
    seed_t, s = spec.seed_tournament, spec.part_size
    r = seed_t.n
    n = r * s
    part = tuple(v // s for v in range(n))
    inner = [random_bits(num_pairs(s), derive_seed(spec.inner_seed, i)) for i in range(r)]
    bits = 0
    outer = 0
    for p, (u, v) in enumerate(pairs(n)):
        pu, pv = part[u], part[v]
        if pu != pv:
            outer |= 1 << p
            if seed_t.beats(pu, pv):
                bits |= 1 << p
        elif inner[pu][pair_index(u - pu * s, v - pu * s, s)]:
            bits |= 1 << p
    return Blowup(Tournament(n, bits), part, outer)


def serialize(t: Tournament) -> str:
    return f"{t.n} {t.bitstring()}".rstrip()


def parse_line(line: str, lineno: int | None = None) -> Tournament:
    fields = line.split()
    if not fields or len(fields) > 2:
        raise FormatError(f"expected '<n> <bits>', got {line.strip()!r}", lineno)
    try:
        n = int(fields[0])
    except ValueError:
        raise FormatError(f"vertex count {fields[0]!r} is not an integer", lineno) from None
    if n < 1:
        raise FormatError(f"vertex count must be positive, got {n}", lineno)
    bits = fields[1] if len(fields) == 2 else ""
    if set(bits) - {"0", "1"}:
        raise FormatError("bit string may only contain 0 and 1", lineno)
    try:
        return tournament_from_bits(n, bits)
    except FormatError as e:
        raise FormatError(str(e), lineno) from None


def parse(text: str) -> Tournament:
    """Parse text holding exactly one tournament."""
    ts = loads(text)
    if len(ts) != 1:
        raise FormatError(f"expected one tournament, found {len(ts)}")
    return ts[0]


def loads(text: str) -> list[Tournament]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if not s or s.startswith("#"):
            continue
        out.append(parse_line(s, lineno))
    return out


def dumps(ts: Iterable[Tournament]) -> str:
    return "".join(serialize(t) + "\n" for t in ts)


def read_tour(path) -> list[Tournament]:
    with open(path, encoding="utf-8") as f:
        text = f.read()
    try:
        return loads(text)
    except FormatError as e:
        raise FormatError(f"{path}: {e}") from None


def write_tour(path, ts: Iterable[Tournament]) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(ts))
