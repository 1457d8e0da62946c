"""Dense exact simplex over `fractions.Fraction` with Bland's anti-cycling rule.

Solves  max c.x  subject to  A x <= b,  x >= 0  with b >= 0, so the slack
basis is feasible from the start and no phase one is needed.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import InputError


class Unbounded(Exception):
    pass


@dataclass(frozen=True)
class LPSolution:
    value: Fraction
    x: tuple[Fraction, ...]
    y: tuple[Fraction, ...]  # optimal dual, one entry per constraint row
    pivots: int


def solve_max(c: Sequence, A: Sequence[Sequence], b: Sequence) -> LPSolution:
    m, n = len(A), len(c)
    c = [Fraction(v) for v in c]
    b = [Fraction(v) for v in b]
    if any(v < 0 for v in b):
        raise InputError("right-hand side must be non-negative")
    rows = []
    for i, row in enumerate(A):
        if len(row) != n:
            raise InputError(f"row {i} has {len(row)} entries, expected {n}")
        r = [Fraction(v) for v in row] + [Fraction(0)] * m
        r[n + i] = Fraction(1)
        rows.append(r)
    width = n + m
    basis = list(range(n, n + m))
    # reduced costs c_j - c_B B^-1 A_j; slack basis has c_B = 0
    red = c + [Fraction(0)] * m
    obj = Fraction(0)
    pivots = 0
    while True:
        enter = next((j for j in range(width) if red[j] > 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = rows[i][enter]
            if a > 0:
                ratio = b[i] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            raise Unbounded(f"objective unbounded along column {enter}")
        piv_row = rows[leave]
        piv = piv_row[enter]
        if piv != 1:
            piv_row[:] = [v / piv for v in piv_row]
            b[leave] /= piv
        nz = [j for j in range(width) if piv_row[j]]
        for i in range(m):
            if i == leave:
                continue
            f = rows[i][enter]
            if f:
                r = rows[i]
                for j in nz:
                    r[j] -= f * piv_row[j]
                b[i] -= f * b[leave]
        f = red[enter]
        for j in nz:
            red[j] -= f * piv_row[j]
        obj += f * b[leave]
        basis[leave] = enter
        pivots += 1
    x = [Fraction(0)] * width
    for i, j in enumerate(basis):
        x[j] = b[i]
    y = tuple(-red[n + i] for i in range(m))
    return LPSolution(obj, tuple(x[:n]), y, pivots)
