"""Fractional triangle packings solved exactly, with a dual certificate."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .simplex import solve_max
from .tournament import LeftGraph

Triangle = tuple[int, int, int]
Edge = tuple[int, int]


@dataclass(frozen=True)
class FractionalPacking:
    weights: dict[Triangle, Fraction]
    value: Fraction
    # edge loads priced by the optimal dual; only edges lying on a triangle appear
    dual: dict[Edge, Fraction]


def _tri_edges(t: Triangle) -> tuple[Edge, Edge, Edge]:
    a, b, c = t
    return (a, b), (a, c), (b, c)


def fractional_triangle_packing(g: LeftGraph) -> FractionalPacking:
    tris = g.triangles()
    if not tris:
        return FractionalPacking({}, Fraction(0), {})
    edges = sorted({e for t in tris for e in _tri_edges(t)})
    row = {e: i for i, e in enumerate(edges)}
    A = [[0] * len(tris) for _ in edges]
    for j, t in enumerate(tris):
        for e in _tri_edges(t):
            A[row[e]][j] = 1
    sol = solve_max([1] * len(tris), A, [1] * len(edges))
    weights = {t: w for t, w in zip(tris, sol.x) if w}
    dual = {e: y for e, y in zip(edges, sol.y)}
    return FractionalPacking(weights, sol.value, dual)


def certificate_errors(g: LeftGraph, fp: FractionalPacking) -> list[str]:
    """Everything wrong with `fp` as a certified optimum for `g` (empty if valid).

    Checks primal feasibility, dual feasibility and equal objectives, all in
    exact arithmetic.
    """
    errs = []
    tris = set(g.triangles())
    load: dict[Edge, Fraction] = {}
    for t, w in fp.weights.items():
        if t not in tris:
            errs.append(f"{t} is not a triangle of the graph")
        if not 0 <= w <= 1:
            errs.append(f"weight {w} on {t} outside [0, 1]")
        for e in _tri_edges(t):
            load[e] = load.get(e, Fraction(0)) + w
    errs += [f"edge {e} overloaded: {v}" for e, v in load.items() if v > 1]
    if sum(fp.weights.values(), Fraction(0)) != fp.value:
        errs.append("value is not the sum of the weights")
    if any(y < 0 for y in fp.dual.values()):
        errs.append("negative dual price")
    for t in tris:
        cover = sum((fp.dual.get(e, Fraction(0)) for e in _tri_edges(t)), Fraction(0))
        if cover < 1:
            errs.append(f"dual leaves {t} under-covered ({cover})")
    if sum(fp.dual.values(), Fraction(0)) != fp.value:
        errs.append("dual objective differs from primal value")
    return errs
