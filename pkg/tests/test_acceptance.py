"""One test per acceptance criterion; each records a pass/fail line for the terminal summary."""
import json
import time
from fractions import Fraction
from itertools import permutations
from math import comb

from tests.helpers import biclique_instance, four_cycle_instance, random_graph
from tourninv.cli import main
from tourninv.construct import (
    biclique_quartet,
    decycle3,
    decycle_k,
    flipped_pairs,
    four_cycle_pair,
    verify_decycling,
)
from tourninv.experiment import run_random_experiment
from tourninv.field import orthogonal_family, tabulated_q9_family, verify_orthogonal
from tourninv.oracles import brute_inv2, exact_inv_k, exact_nu3
from tourninv.packing import certificate_errors, fractional_triangle_packing
from tourninv.rng import SplitMix64
from tourninv.tournament import (
    BlowupSpec,
    LeftGraph,
    Permutation,
    Tournament,
    balanced_blowup,
    invert_all,
    min_feedback_edges,
)
from tourninv.zeta import REPORTED, bound_from_zeta

F = Fraction


def zeta_record(capsys, q, *extra):
    code = main(["zeta", "--enumerate", str(q), "--trials", "1000", "--seed", "1", *extra])
    lines = capsys.readouterr().out.splitlines()
    return code, next(json.loads(x) for x in lines if '"record": "zeta"' in x)


def test_criterion_1_small_q(capsys, criterion):
    got = {}
    for q in (4, 5):
        t0 = time.perf_counter()
        code, rec = zeta_record(capsys, q)
        got[q] = (code, rec["zeta"], rec["bound"], time.perf_counter() - t0)
    ok = got[4][:3] == (0, "1/3", "1/9") and got[5][:3] == (0, "7/10", "43/400")
    ok = ok and all(v[3] < 120 for v in got.values())
    criterion(1, ok, "; ".join(f"q={q}: zeta={z} bound={b} ({s:.2f}s)" for q, (_, z, b, s) in got.items()))
    assert ok


def test_criterion_2_q7(capsys, criterion):
    t0 = time.perf_counter()
    code, rec = zeta_record(capsys, 7, "--expensive")
    secs = time.perf_counter() - t0
    assert code == 0 and rec["tournaments"] == 456
    target = REPORTED[7][0]
    achieved = F(rec["zeta"])
    if achieved == target:
        criterion(2, True, f"q=7: zeta={rec['zeta']} ({secs:.1f}s)")
        return
    # the criterion's fallback: flag the shortfall and report the achieved rational
    flagged = rec["below_reported"] is True and achieved < target
    criterion(
        2, flagged,
        f"q=7: zeta={rec['zeta']} below reported {rec['reported_zeta']}, flagged; "
        f"worst tournament {rec['worst_tournament']}; bound {rec['bound']} ({secs:.1f}s)",
        status="FLAGGED" if flagged else "FAIL",
    )
    assert flagged


def test_criterion_3_families(criterion):
    t0 = time.perf_counter()
    tab = tabulated_q9_family()
    ok = len(tab) == 72 and verify_orthogonal(tab)
    sizes = {}
    for q in (4, 5, 7, 8, 9):
        fam = orthogonal_family(q)
        sizes[q] = len(fam)
        ok = ok and len(fam) == q * (q - 1) and verify_orthogonal(fam)
    secs = time.perf_counter() - t0
    ok = ok and secs < 1
    criterion(3, ok, f"tabulated q=9 family: 72 members, orthogonal; affine sizes {sizes} ({secs:.3f}s)")
    assert ok


def test_criterion_4_bound_formula(criterion):
    rows = {q: bound_from_zeta(q, z) == b for q, (z, b) in REPORTED.items()}
    ok = all(rows.values()) and bound_from_zeta(9, F(67, 18)) == F(257, 2592)
    criterion(4, ok, f"rows {sorted(q for q, r in rows.items() if r)} match; (9, 67/18) -> {bound_from_zeta(9, F(67, 18))}")
    assert ok


def test_criterion_5_oracles(small_tournaments, criterion):
    t0 = time.perf_counter()
    assert [t.n for t in small_tournaments].count(5) == 12 and len(small_tournaments) == 20
    bad = []
    for t in small_tournaments:
        m = min_feedback_edges(t)[0]
        if not exact_inv_k(t, 2) == m == brute_inv2(t):
            bad.append(("identity", t.bitstring()))
        for k in (3, 4, 5):
            opt = exact_inv_k(t, k)
            if not (m <= opt * comb(k, 2) and opt <= m):
                bad.append(("sandwich", k, t.bitstring()))
            s = decycle3(t, 0) if k == 3 else decycle_k(t, k, 0)
            if not verify_decycling(t, s) or len(s) < opt:
                bad.append(("pipeline", k, t.bitstring()))
    secs = time.perf_counter() - t0
    ok = not bad and secs < 60
    criterion(5, ok, f"{len(small_tournaments)} classes, {len(bad)} violations ({secs:.2f}s)")
    assert ok


def test_criterion_6_gadgets(criterion):
    t0 = time.perf_counter()
    counts = {}
    for case in (1, 2, 3):
        rng = SplitMix64(1000 + case)
        good = 0
        for _ in range(500):
            t, perm, w = four_cycle_instance(rng, case)
            x, y = four_cycle_pair(t, perm, w)
            good += flipped_pairs(t, invert_all(t, [x, y])) == {frozenset(e) for e in w.cycle_edges}
        counts[f"case{case}"] = good
    for k in (4, 5):
        rng = SplitMix64(2000 + k)
        good = 0
        for _ in range(500):
            t, perm, w = biclique_instance(rng, k)
            sets = biclique_quartet(k, w)
            good += all(len(s) == k for s in sets) and (
                flipped_pairs(t, invert_all(t, sets)) == {frozenset(e) for e in w.cross_edges()})
        counts[f"k={k}"] = good
    secs = time.perf_counter() - t0
    ok = all(v == 500 for v in counts.values()) and secs < 60
    criterion(6, ok, f"exact flips out of 500: {counts} ({secs:.2f}s)")
    assert ok


def test_criterion_7_lp(criterion):
    t0 = time.perf_counter()
    k4 = fractional_triangle_packing(LeftGraph.complete(4))
    k5 = fractional_triangle_packing(LeftGraph.complete(5))
    ok = k4.value == 2 and k5.value == F(10, 3)
    rng = SplitMix64(7)
    failures = 0
    for _ in range(500):
        n = 3 + rng.below(5)
        g = random_graph(n, rng, 1 + rng.below(4), 4)
        fp = fractional_triangle_packing(g)
        if not (exact_nu3(g) <= fp.value <= F(g.num_edges, 3)) or certificate_errors(g, fp):
            failures += 1
    secs = time.perf_counter() - t0
    ok = ok and failures == 0 and secs < 300
    criterion(7, ok, f"K4={k4.value}, K5={k5.value}; 500 graphs, {failures} failures ({secs:.2f}s)")
    assert ok


def test_criterion_8_blowup(criterion):
    t0 = time.perf_counter()
    b = balanced_blowup(BlowupSpec(Tournament.cycle3(), 2, inner_seed=1))
    counts = [b.outer_left_edges(Permutation(p)) for p in permutations(range(6))]
    secs = time.perf_counter() - t0
    ok = len(counts) == 720 and min(counts) >= 4 and secs < 1
    criterion(8, ok, f"720 orderings, min outer left edges {min(counts)} >= 4 ({secs:.3f}s)")
    assert ok


def test_criterion_9_random_experiments(criterion):
    parts = []
    ok = True
    for n in (40, 80):
        rep = run_random_experiment(n, 3, 100, seed=1)
        s = rep.summary()
        ok = ok and s["all_verified"] and len(rep.sizes) == 100
        parts.append(f"n={n}: mean |steps|/n^2={s['ratio_mean']} [{s['ratio_min']}, {s['ratio_max']}]")
    # no numeric threshold: the asymptotic constant is recorded for trend inspection only
    criterion(9, ok, "; ".join(parts) + " (reference 1/12, all sequences verified)")
    assert ok
