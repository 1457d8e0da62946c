"""Finite fields GF(p^m) as lookup tables, and orthogonal permutation families.

Elements are labeled 0..q-1; label e encodes the polynomial whose base-p
digits (least significant first) are its coefficients. 0 and 1 are the
additive and multiplicative identities.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .errors import UnsupportedError
from .tournament import Permutation

MAX_Q = 64


def prime_power(q: int) -> tuple[int, int] | None:
    """(p, m) with q = p**m, or None."""
    if q < 2:
        return None
    p = next(d for d in range(2, q + 1) if q % d == 0)
    m, r = 0, q
    while r % p == 0:
        r //= p
        m += 1
    return (p, m) if r == 1 else None


def _poly_mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """a*b reduced modulo the monic polynomial `mod` (coefficient lists, low first)."""
    m = len(mod) - 1
    prod = [0] * (2 * m - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, m - 1, -1):
        f = prod[d]
        if f:
            for t in range(m + 1):
                prod[d - m + t] = (prod[d - m + t] - f * mod[t]) % p
    return prod[:m]


def _has_root_or_factor(mod: list[int], p: int) -> bool:
    # degree <= 3: reducible iff it has a linear factor iff it has a root
    m = len(mod) - 1
    if m <= 3:
        return any(sum(c * pow(x, i, p) for i, c in enumerate(mod)) % p == 0 for x in range(p))
    # generic: trial division by every monic polynomial of degree 1..m//2
    for d in range(1, m // 2 + 1):
        for low in product(range(p), repeat=d):
            div = list(low) + [1]
            rem = list(mod)
            for k in range(len(rem) - 1, d - 1, -1):
                f = rem[k]
                if f:
                    for t in range(d + 1):
                        rem[k - d + t] = (rem[k - d + t] - f * div[t]) % p
            if not any(rem[:d]):
                return True
    return False


def irreducible_polynomial(p: int, m: int) -> list[int]:
    """First monic irreducible of degree m, coefficients low first, in label order."""
    for code in range(p ** m):
        low = [(code // p ** i) % p for i in range(m)]
        mod = low + [1]
        if not _has_root_or_factor(mod, p):
            return mod
    raise AssertionError("no irreducible polynomial found")


@dataclass(frozen=True)
class FiniteField:
    q: int
    p: int
    modulus: tuple[int, ...]
    add: np.ndarray
    mul: np.ndarray

    def neg(self, a: int) -> int:
        return int(np.flatnonzero(self.add[a] == 0)[0])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(np.flatnonzero(self.mul[a] == 1)[0])


def field_axiom_errors(add: np.ndarray, mul: np.ndarray) -> list[str]:
    """Exhaustive check of the field axioms on the two tables."""
    q = len(add)
    errs = []
    e = np.arange(q)
    for name, t in (("add", add), ("mul", mul)):
        if not (t == t.T).all():
            errs.append(f"{name} not commutative")
        lhs = t[t[:, :, None], e[None, None, :]]  # (a*b)*c
        rhs = t[e[:, None, None], t[None, :, :]]  # a*(b*c)
        if not (lhs == rhs).all():
            errs.append(f"{name} not associative")
    if not (add[0] == e).all():
        errs.append("0 is not the additive identity")
    if not (mul[1] == e).all():
        errs.append("1 is not the multiplicative identity")
    if not all((add[a] == 0).sum() == 1 for a in range(q)):
        errs.append("missing additive inverse")
    if not all((mul[a] == 1).sum() == 1 for a in range(1, q)):
        errs.append("missing multiplicative inverse")
    dist_l = mul[e[:, None, None], add[None, :, :]]  # a*(b+c)
    dist_r = add[mul[:, :, None], mul[:, None, :]]  # a*b + a*c
    if not (dist_l == dist_r).all():
        errs.append("not distributive")
    return errs


@lru_cache(maxsize=None)
def field_construct(q: int) -> FiniteField:
    pm = prime_power(q)
    if pm is None:
        raise UnsupportedError(f"q={q} is not a prime power; no finite field of that order")
    if q > MAX_Q:
        raise UnsupportedError(f"fields above order {MAX_Q} are not tabulated")
    p, m = pm
    digits = [[(e // p ** i) % p for i in range(m)] for e in range(q)]

    def label(coeffs):
        return sum(c * p ** i for i, c in enumerate(coeffs))

    mod = irreducible_polynomial(p, m) if m > 1 else [0, 1]
    add = np.array([[label([(x + y) % p for x, y in zip(digits[a], digits[b])]) for b in range(q)]
                    for a in range(q)], dtype=np.int64)
    if m == 1:
        mul = np.array([[a * b % p for b in range(q)] for a in range(q)], dtype=np.int64)
    else:
        mul = np.array([[label(_poly_mulmod(digits[a], digits[b], mod, p)) for b in range(q)]
                        for a in range(q)], dtype=np.int64)
    errs = field_axiom_errors(add, mul)
    if errs:
        raise AssertionError(f"GF({q}) tables fail: {errs}")
    add.setflags(write=False)
    mul.setflags(write=False)
    return FiniteField(q, p, tuple(mod), add, mul)


@dataclass(frozen=True)
class OrthogonalFamily:
    q: int
    perms: tuple[Permutation, ...]

    def __len__(self) -> int:
        return len(self.perms)

    def as_array(self) -> np.ndarray:
        return np.array([p.pos for p in self.perms], dtype=np.int64).reshape(-1, self.q)

    def compose_left(self, pi: Permutation) -> "OrthogonalFamily":
        """{pi o sigma : sigma in family}; pi relabels positions."""
        return OrthogonalFamily(self.q, tuple(pi.compose(s) for s in self.perms))

    def compose_right(self, pi: Permutation) -> "OrthogonalFamily":
        """{sigma o pi : sigma in family}; pi renames vertices."""
        return OrthogonalFamily(self.q, tuple(s.compose(pi) for s in self.perms))


def orthogonal_family(q: int) -> OrthogonalFamily:
    """All affine maps x -> a*x + b (a != 0), read as vertex -> position."""
    f = field_construct(q)
    perms = tuple(
        Permutation(tuple(int(f.add[f.mul[a, x], b]) for x in range(q)))
        for a in range(1, q) for b in range(q)
    )
    return OrthogonalFamily(q, perms)


def verify_orthogonal(family: OrthogonalFamily) -> bool:
    """Each (ordered vertex pair u != v, positions i < j) is hit by exactly one member."""
    q = family.q
    if any(len(s) != q for s in family.perms):
        return False
    tally = np.zeros((q * q, q * q), dtype=np.int64)
    for s in family.perms:
        pos = np.array(s.pos)
        u, v = np.nonzero(pos[:, None] < pos[None, :])
        np.add.at(tally, (u * q + v, pos[u] * q + pos[v]), 1)
    u, v = np.nonzero(~np.eye(q, dtype=bool))
    i, j = np.triu_indices(q, 1)
    cells = tally[np.ix_(u * q + v, i * q + j)]
    return bool((cells == 1).all())


# Orthogonal family of permutations of {0..8}; string position x holds the position of vertex x.
Q9_FAMILY_ROWS = (
    "012345678 120453786 201534867 345678012 453786120 534867201 "
    "678012345 786120453 867201534 021687354 102768435 210876543 "
    "354021687 435102768 543210876 687354021 768435102 876543210 "
    "036471825 147582603 258360714 360714258 471825036 582603147 "
    "603147582 714258360 825036471 048723561 156804372 237615480 "
    "372156804 480237615 561048723 615480237 723561048 804372156 "
    "057138246 138246057 246057138 381462570 462570381 570381462 "
    "624705813 705813624 813624705 063852417 174630528 285741306 "
    "306285741 417063852 528174630 630528174 741306285 852417063 "
    "075264183 183075264 264183075 318507426 426318507 507426318 "
    "642831750 750642831 831750642 084516732 165327840 273408651 "
    "327840165 408651273 516732084 651273408 732084516 840165327"
).split()


def tabulated_q9_family() -> OrthogonalFamily:
    return OrthogonalFamily(9, tuple(Permutation(tuple(int(c) for c in s)) for s in Q9_FAMILY_ROWS))
