"""``gtoric`` command line.

Machine-readable results go to stdout (``--json`` for structured output);
logging and progress go to stderr.  Exit status: 0 success, 1 verification
failure, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from . import bounds as bounds_mod
from .champions import TABLE1, verify_champion
from .distance import BZ_BUDGET, bz_min_distance, default_threads, trial_distance
from .enumeration import (burnside_count, orbit_decomposition, polygon_action,
                          square_counts, subsets_up_to_action)
from .geometry import affine_automorphism_group, convex_hull, read_points
from .gf import make_field
from .polygons import MAX_M, enumerate_hull_classes, min_square, write_classes
from .search import count_realizations, profile_table, search
from .toric import CodeProfile, dimension, generator_matrix

log = logging.getLogger("gtoric")


def _emit(args, obj, text: str) -> None:
    if args.json:
        print(json.dumps(obj))
    else:
        print(text)


def _progress(prefix):
    def cb(w, j, lower, upper, work):
        log.info("%s w=%d j=%d lower=%d upper=%d work=%d", prefix, w, j, lower, upper, work)
    return cb


# -- subcommands -------------------------------------------------------------

def cmd_field(args) -> int:
    f = make_field(args.q)
    obj = {"q": f.q, "p": f.p, "e": f.e, "primitive": f.primitive,
           "exp": f.exp.tolist(), "log": f.log.tolist(),
           "add": f.add_table.tolist(), "mul": f.mul_table.tolist()}
    text = ["GF(%d) p=%d e=%d primitive=%d" % (f.q, f.p, f.e, f.primitive),
            "exp " + " ".join(map(str, f.exp.tolist())),
            "log " + " ".join(map(str, f.log.tolist())), "add"]
    text += [" ".join(map(str, r)) for r in f.add_table.tolist()]
    text += ["mul"] + [" ".join(map(str, r)) for r in f.mul_table.tolist()]
    _emit(args, obj, "\n".join(text))
    return 0


def cmd_aut(args) -> int:
    P = convex_hull(read_points(args.points))
    G = affine_automorphism_group(P)
    orb = orbit_decomposition(G, P)
    orbits = [[orb.points[i] for i in o] for o in orb.orbits]
    obj = {"vertices": [list(v) for v in P.vertices], "order": G.order,
           "maps": [[g.m11, g.m12, g.m21, g.m22, g.t1, g.t2] for g in G.elements],
           "orbits": [[list(p) for p in o] for o in orbits]}
    text = ["vertices " + " ".join("(%d,%d)" % v for v in P.vertices), "order %d" % G.order]
    text += ["orbit " + " ".join("(%d,%d)" % p for p in o) for o in orbits]
    _emit(args, obj, "\n".join(text))
    return 0


def cmd_classes(args) -> int:
    if args.square_only:
        raw, classes = square_counts(args.m)
        _emit(args, {"m": args.m, "subsets": raw, "classes": classes}, str(classes))
        return 0
    rows = []
    for i, c in enumerate(enumerate_hull_classes(args.m)):
        act = polygon_action(c.representative)
        n_sub = len(subsets_up_to_action(c.representative, act.group))
        rows.append({"index": i, "vertices": [list(v) for v in c.representative.vertices],
                     "points": len(c.lattice_points), "m_min": c.m_min, "subsets": n_sub,
                     "burnside": burnside_count(act)})
    if args.json:
        for r in rows:
            print(json.dumps(r))
    else:
        for r in rows:
            print("%d\t%s\t%d\t%d" % (r["index"], " ".join("(%d,%d)" % tuple(v) for v in r["vertices"]),
                                      r["points"], r["subsets"]))
        print("total %d" % sum(r["subsets"] for r in rows))
    return 0


def cmd_polygons(args) -> int:
    classes = enumerate_hull_classes(args.m, min_dim=args.min_dim)
    if args.out:
        write_classes(classes, args.out)
        log.info("wrote %d classes to %s", len(classes), args.out)
    if args.json:
        for c in classes:
            print(c.to_json())
    else:
        by_dim = {}
        for c in classes:
            by_dim[c.dim] = by_dim.get(c.dim, 0) + 1
        print("%d" % len(classes))
        for d in sorted(by_dim):
            print("dim %d: %d" % (d, by_dim[d]))
    return 0


def cmd_code(args) -> int:
    pts = read_points(args.points)
    M = generator_matrix(pts, args.q)
    if args.matrix:
        sys.stdout.write(M.dump())
        return 0
    if args.dim:
        k = dimension(M)
        _emit(args, {"n": M.n, "k": k, "min_m": min_square(pts)}, "k=%d" % k)
        return 0
    if args.trial:
        tb = trial_distance(M, args.rows, threads=args.threads)
        _emit(args, {"r": tb.r, "bound": tb.bound, "witness": list(tb.witness), "work": tb.work},
              "trial<=%d" % tb.bound)
        return 0
    res = bz_min_distance(M, budget=args.budget, target=args.target, exact=args.exact,
                          threads=args.threads, progress=_progress("mindist"))
    if res.exact:
        text = "d=%d" % res.upper
    else:
        text = "%d<=d<=%d" % (res.lower, res.upper)
    _emit(args, dict(res.to_dict(), n=M.n, k=M.k), text)
    return 0


def cmd_search(args) -> int:
    path = args.bounds or bounds_mod.default_bounds_path()
    b = bounds_mod.load_bounds(path, bounds_mod.BoundsTable.builtin(args.edition))
    summary = search(args.q, args.m, b, args.out, resume=args.resume, budget=args.budget,
                     threads=args.threads)
    d = summary.to_dict()
    text = ["subsets %d discarded %d survivors %d (distinct %d) unbounded %d candidates %d"
            % (d["subsets"], d["discarded"], d["survivors"], d["survivors_distinct"],
               d["unbounded"], d["candidates"])]
    text += ["champion %s x%d" % kv for kv in d["champion_profiles"].items()]
    _emit(args, d, "\n".join(text))
    return 0


def cmd_verify(args) -> int:
    rows = [c for c in TABLE1 if not args.k or c.profile.k in args.k]
    ok = True
    out = []
    for c in rows:
        mode = args.mode or c.tier
        chk = verify_champion(c, mode, budget=args.budget, threads=args.threads,
                              progress=_progress(str(c.profile)))
        ok &= chk.passed
        out.append(chk)
        if not args.json:
            print(chk.line(), flush=True)
    if args.json:
        print(json.dumps([{"profile": str(c.champion.profile), "mode": c.mode, "passed": c.passed,
                           "k": c.k, "min_m": c.min_m, "seconds": round(c.seconds, 2),
                           "result": c.result.to_dict() if c.result else None} for c in out]))
    return 0 if ok else 1


def cmd_profile_table(args) -> int:
    b = bounds_mod.load_bounds(args.bounds, bounds_mod.BoundsTable()) if args.bounds else None
    rows = profile_table(args.q, args.m, b, budget=args.budget)
    if args.json:
        for r in rows:
            print(json.dumps({"n": r.n, "k": r.k, "d_t": r.d_t, "d_g": r.d_g, "meets": r.meets,
                              "d_toric": r.d_toric, "generalised": r.generalised_required,
                              "example": [list(p) for p in r.example]}))
        return 0
    print("n\tk\td_t\td_g\tmeets\tgeneralised")
    for r in rows:
        print("%d\t%d\t%d\t%s\t%s\t%s" % (r.n, r.k, r.d_t, "" if r.d_g is None else r.d_g,
                                          "" if r.meets is None else ("yes" if r.meets else "no"),
                                          "yes" if r.generalised_required else ""))
    return 0


def cmd_count(args) -> int:
    c = count_realizations(CodeProfile(args.n, args.k, args.d), args.q, args.m, budget=args.budget)
    _emit(args, {"n": args.n, "k": args.k, "d": args.d, "q": args.q, "m": args.m, "count": c}, str(c))
    return 0


# -- parser ------------------------------------------------------------------

def _q(s: str) -> int:
    try:
        q = int(s)
        make_field(q)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None
    return q


def _m(s: str) -> int:
    m = int(s)
    if not 0 <= m <= MAX_M:
        raise argparse.ArgumentTypeError("m must be in [0, %d]" % MAX_M)
    return m


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="structured output")
    common.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument("--budget", type=int, default=BZ_BUDGET,
                        help="max codeword evaluations for a distance run")
    budget.add_argument("--threads", type=int, default=default_threads(),
                        help="worker threads (default: available cores)")

    p = argparse.ArgumentParser(prog="gtoric", description="Generalised toric codes from lattice point sets.")
    sub = p.add_subparsers(dest="cmd", required=True, metavar="command")

    s = sub.add_parser("field", parents=[common], help="dump GF(q) tables")
    s.add_argument("--q", type=_q, required=True)
    s.set_defaults(func=cmd_field)

    s = sub.add_parser("aut", parents=[common], help="automorphism group of a hull")
    s.add_argument("--points", required=True)
    s.set_defaults(func=cmd_aut)

    s = sub.add_parser("classes", parents=[common], help="subset classes per polygon")
    s.add_argument("--m", type=_m, required=True)
    s.add_argument("--square-only", action="store_true", help="only the [0,m]^2 square")
    s.set_defaults(func=cmd_classes)

    s = sub.add_parser("polygons", parents=[common], help="hull classes in [0,m]^2")
    s.add_argument("--m", type=_m, required=True)
    s.add_argument("--min-dim", type=int, default=0, choices=(0, 1, 2))
    s.add_argument("--out", help="write classes as JSONL")
    s.set_defaults(func=cmd_polygons)

    s = sub.add_parser("code", parents=[common, budget], help="code of a point set")
    s.add_argument("--q", type=_q, required=True)
    s.add_argument("--points", required=True)
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--matrix", action="store_true")
    g.add_argument("--dim", action="store_true")
    g.add_argument("--trial", action="store_true")
    g.add_argument("--mindist", action="store_true")
    s.add_argument("--rows", type=int, default=4, help="rows combined by --trial")
    t = s.add_mutually_exclusive_group()
    t.add_argument("--exact", action="store_true", help="run to the exact distance")
    t.add_argument("--target", type=int, help="stop once d <= T or d > T is decided")
    s.set_defaults(func=cmd_code)

    s = sub.add_parser("search", parents=[common, budget], help="champion search")
    s.add_argument("--q", type=_q, required=True)
    s.add_argument("--m", type=_m, required=True)
    s.add_argument("--bounds", help="q,n,k,d CSV (default: $%s)" % bounds_mod.BOUNDS_ENV)
    s.add_argument("--edition", choices=("records", "prior", "none"), default="records",
                   help="builtin bounds underneath the CSV")
    s.add_argument("--out", required=True)
    s.add_argument("--resume", action="store_true")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("verify-champions", parents=[common, budget], help="re-verify the champion table")
    s.add_argument("--k", type=int, action="append", help="restrict to these dimensions")
    s.add_argument("--mode", choices=("exact", "certificate"))
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("profile-table", parents=[common, budget], help="best distance per dimension")
    s.add_argument("--q", type=_q, required=True)
    s.add_argument("--m", type=_m, required=True)
    s.add_argument("--bounds", help="q,n,k,d CSV for the comparison column")
    s.set_defaults(func=cmd_profile_table)

    s = sub.add_parser("count", parents=[common, budget], help="realisations of an [n,k,d] profile")
    for name in ("q", "m", "n", "k", "d"):
        s.add_argument("--" + name, type={"q": _q, "m": _m}.get(name, int), required=True)
    s.set_defaults(func=cmd_count)
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 0 if e.code == 0 else 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if getattr(args, "threads", 1) < 1:
        print("gtoric: error: --threads must be >= 1", file=sys.stderr)
        return 2
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as e:
        print("gtoric: error: %s" % e, file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
