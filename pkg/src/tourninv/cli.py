"""Command-line entry point.

Each subcommand prints one JSON object per line. Primary records are
deterministic for fixed inputs and seeds; wall-clock times go to a separate
``{"record": "timing", ...}`` line.

Exit status: 0 success, 2 input/format error, 3 capacity/unsupported.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import canon, construct, field, oracles, zeta
from .errors import CapacityError, FormatError, InputError, UnsupportedError
from .experiment import run_random_experiment
from .tournament import (
    BlowupSpec,
    LeftGraph,
    balanced_blowup,
    min_feedback_edges,
    read_tour,
    write_tour,
)

EXPENSIVE_ZETA_Q = 7
EXPENSIVE_EXPERIMENT_N = 200


def frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def emit(record: dict, out=None) -> None:
    print(json.dumps(record), file=out or sys.stdout)


def emit_timing(command: str, started: float) -> None:
    emit({"record": "timing", "command": command, "wall_s": round(time.perf_counter() - started, 3)})


def _numbered(path: str, i: int, total: int) -> Path:
    p = Path(path)
    return p if total == 1 else p.with_name(f"{p.name}.{i}")


def cmd_decycle(args) -> None:
    if args.k < 3:
        raise InputError("k must be at least 3; for k = 2 use the 'feedback' subcommand")
    ts = read_tour(args.input)
    for i, t in enumerate(ts):
        seq = construct.decycle_best(t, args.k, args.seed, args.restarts)
        ok = construct.verify_decycling(t, seq)
        if not ok:
            raise AssertionError("pipeline produced an unverified sequence")
        if args.out:
            _numbered(args.out, i, len(ts)).write_text(seq.dumps(), encoding="utf-8")
        emit({
            "record": "decycle", "index": i, "n": t.n, "k": args.k, "seed": args.seed,
            "restarts": args.restarts, "size": len(seq), "verified": ok,
            "stages": dict(seq.stages),
        })


def cmd_feedback(args) -> None:
    for i, t in enumerate(read_tour(args.input)):
        value, perm = min_feedback_edges(t)
        emit({"record": "feedback", "index": i, "n": t.n, "value": value, "order": perm.order})


def _family(q: int, which: str) -> field.OrthogonalFamily:
    if which == "tabulated":
        if q != 9:
            raise InputError("the tabulated family is for q = 9 only")
        return field.tabulated_q9_family()
    return field.orthogonal_family(q)


def cmd_zeta(args) -> None:
    if args.enumerate is not None:
        q = args.enumerate
        field.field_construct(q)  # unsupported q fails before any enumeration
        if q >= EXPENSIVE_ZETA_Q and not args.expensive:
            raise CapacityError(f"zeta for q={q} is a long run; pass --expensive")
        db = canon.enumerate_tournaments(q)
    else:
        db = read_tour(args.db)
        if not db:
            raise InputError(f"{args.db}: no tournaments")
        q = db[0].n
        field.field_construct(q)
        if q >= EXPENSIVE_ZETA_Q and not args.expensive:
            raise CapacityError(f"zeta for q={q} is a long run; pass --expensive")
    fam = _family(q, args.family)
    res = zeta.zeta_search(db, fam, args.trials, args.seed, prune=not args.no_prune, relabel=args.relabel)
    rec = {
        "record": "zeta", "q": q, "tournaments": len(db), "trials": args.trials, "seed": args.seed,
        "family": args.family, "relabel": args.relabel, "pruned": not args.no_prune,
        "zeta": frac(res.zeta), "bound": frac(res.bound),
        "worst_index": res.worst_index, "worst_tournament": db[res.worst_index].bitstring(),
        "total_trials": res.total_trials, "lp_calls": res.lp_calls,
    }
    if q in zeta.REPORTED:
        ref_z, ref_b = zeta.REPORTED[q]
        rec["reported_zeta"] = frac(ref_z)
        rec["reported_bound"] = frac(ref_b)
        rec["below_reported"] = res.zeta < ref_z
    emit(rec)
    if rec.get("below_reported"):
        print(f"warning: zeta {frac(res.zeta)} is below the reported {rec['reported_zeta']} for q={q}",
              file=sys.stderr)


def cmd_family(args) -> None:
    fam = _family(args.q, "tabulated" if args.tabulated else "affine")
    rec = {"record": "family", "q": args.q, "size": len(fam),
           "perms": ["".join(map(str, p.pos)) if args.q <= 10 else " ".join(map(str, p.pos))
                     for p in fam.perms]}
    if args.verify:
        rec["orthogonal"] = field.verify_orthogonal(fam)
    emit(rec)


def cmd_enumerate(args) -> None:
    ts = canon.enumerate_tournaments(args.q)
    if args.out:
        write_tour(args.out, ts)
    emit({"record": "enumerate", "q": args.q, "count": len(ts)})


def cmd_oracle(args) -> None:
    for i, t in enumerate(read_tour(args.input)):
        if args.which == "inv-k":
            budget = oracles.SearchBudget(max_vertices=args.max_vertices)
            emit({"record": "oracle", "kind": "inv-k", "index": i, "n": t.n, "k": args.k,
                  "value": oracles.exact_inv_k(t, args.k, budget)})
        elif args.which == "inv2":
            emit({"record": "oracle", "kind": "inv2", "index": i, "n": t.n,
                  "value": oracles.brute_inv2(t)})
        else:
            # graph whose edges are the pairs with bit 1, i.e. the left graph under the identity
            g = LeftGraph.from_pair_mask(t.n, t.bits)
            emit({"record": "oracle", "kind": "nu3", "index": i, "n": t.n, "edges": g.num_edges,
                  "value": oracles.exact_nu3(g)})


def cmd_blowup(args) -> None:
    ts = read_tour(args.input)
    if len(ts) != 1:
        raise InputError(f"{args.input}: expected one seed tournament, found {len(ts)}")
    seed_t = ts[0]
    b = balanced_blowup(BlowupSpec(seed_t, args.part_size, args.inner_seed))
    if args.out:
        write_tour(args.out, [b.tournament])
    s = args.part_size
    transversal = b.tournament.subtournament([i * s for i in range(seed_t.n)])
    emit({"record": "blowup", "r": seed_t.n, "part_size": s, "n": b.tournament.n,
          "outer_edges": b.outer_edge_count, "inner_edges": b.inner_edge_count,
          "transversal_matches_seed": transversal == seed_t})


def cmd_experiment(args) -> None:
    if args.n >= EXPENSIVE_EXPERIMENT_N and not args.expensive:
        raise CapacityError(f"n={args.n} experiments are long runs; pass --expensive")
    rep = run_random_experiment(args.n, args.k, args.reps, args.seed, args.restarts)
    emit(rep.summary())


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="tourninv", description="Tournament decycling toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, seed=True, out=True):
        if seed:
            sp.add_argument("--seed", type=int, default=1)
        if out:
            sp.add_argument("--out")
        sp.add_argument("--expensive", action="store_true", help="allow long runs")

    sp = sub.add_parser("decycle", help="decycling sequence with steps of size <= k")
    sp.add_argument("input")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--restarts", type=int, default=1)
    common(sp)
    sp.set_defaults(func=cmd_decycle)

    sp = sub.add_parser("feedback", help="exact minimum feedback edge set (n <= 20)")
    sp.add_argument("input")
    common(sp, seed=False, out=False)
    sp.set_defaults(func=cmd_feedback)

    sp = sub.add_parser("zeta", help="lower bound for zeta_q and the resulting inv_3 constant")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--db", help=".tour file with one tournament per isomorphism class")
    src.add_argument("--enumerate", type=int, metavar="Q", help="enumerate all tournaments on Q vertices")
    sp.add_argument("--trials", type=int, default=1000)
    sp.add_argument("--family", choices=["affine", "tabulated"], default="affine")
    sp.add_argument("--relabel", choices=list(zeta.RELABEL_MODES), default="vertices")
    sp.add_argument("--no-prune", action="store_true")
    common(sp, out=False)
    sp.set_defaults(func=cmd_zeta)

    sp = sub.add_parser("family", help="print an orthogonal family of permutations")
    sp.add_argument("--q", type=int, required=True)
    sp.add_argument("--verify", action="store_true")
    sp.add_argument("--tabulated", action="store_true", help="the tabulated q = 9 family")
    common(sp, seed=False, out=False)
    sp.set_defaults(func=cmd_family)

    sp = sub.add_parser("enumerate", help="all tournaments on q vertices up to isomorphism")
    sp.add_argument("--q", type=int, required=True)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_enumerate)

    sp = sub.add_parser("oracle", help="exact brute-force values")
    sp.add_argument("which", choices=["inv-k", "nu3", "inv2"])
    sp.add_argument("input")
    sp.add_argument("--k", type=int, default=3)
    sp.add_argument("--max-vertices", type=int, default=6)
    common(sp, seed=False, out=False)
    sp.set_defaults(func=cmd_oracle)

    sp = sub.add_parser("blowup", help="balanced blowup of a seed tournament")
    sp.add_argument("input")
    sp.add_argument("--part-size", type=int, required=True)
    sp.add_argument("--inner-seed", type=int, default=0)
    common(sp, seed=False)
    sp.set_defaults(func=cmd_blowup)

    sp = sub.add_parser("experiment", help="seeded experiments")
    esub = sp.add_subparsers(dest="kind", required=True)
    ep = esub.add_parser("random", help="decycle random tournaments")
    ep.add_argument("--n", type=int, required=True)
    ep.add_argument("--k", type=int, default=3)
    ep.add_argument("--reps", type=int, default=100)
    ep.add_argument("--restarts", type=int, default=1)
    common(ep, out=False)
    ep.set_defaults(func=cmd_experiment)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    started = time.perf_counter()
    try:
        args.func(args)
    except (FormatError, InputError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except (CapacityError, UnsupportedError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 3
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    emit_timing(args.command, started)
    return 0


if __name__ == "__main__":
    sys.exit(main())
