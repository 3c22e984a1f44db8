"""Command-line front end.

Exit status: 0 success, 1 a verification failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import bateman_horn as bh
from . import belyi, chartable, constructions, golden, group_id, projective
from .dessin import Dessin, format_dessin, make_dessin, parse_dessins
from .enumerate import PassportQuery, chirality_partition, enumerate_passport
from .perm import CycleType, PermGroup, cycle_type, format_cycles, parse_cycles


class UsageError(Exception):
    pass


def _emit(args, payload: Any, text: str | None = None, rows: list[list] | None = None):
    fmt = args.format
    if fmt == "json":
        print(json.dumps(payload, indent=2, default=str))
    elif fmt == "tsv" and rows is not None:
        for r in rows:
            print("\t".join(str(c) for c in r))
    else:
        print(text if text is not None else json.dumps(payload, indent=2, default=str))


def _dessin_dict(d: Dessin, with_group: bool = False) -> dict:
    out = {
        "label": d.label,
        "degree": d.degree,
        "x": format_cycles(d.x),
        "y": format_cycles(d.y),
        "z": format_cycles(d.z),
        "passport": str(d.passport),
        "genus": d.genus,
    }
    if with_group:
        out["group_order"] = d.group_order()
    return out


def _emit_dessins(args, ds: list[Dessin], with_group: bool = False):
    _emit(
        args,
        [_dessin_dict(d, with_group) for d in ds],
        "\n".join((f"# group order {d.group_order()}\n" if with_group else "") + format_dessin(d) for d in ds),
        [["label", "degree", "x", "y", "genus"] + (["group_order"] if with_group else [])]
        + [[d.label, d.degree, format_cycles(d.x), format_cycles(d.y), d.genus]
           + ([d.group_order()] if with_group else []) for d in ds],
    )


def _read_dessins(args) -> list[Dessin]:
    if args.file:
        with open(args.file) as fh:
            return parse_dessins(fh.read())
    if args.x and args.y:
        n = args.degree or max(int(t) for t in (args.x + args.y).replace("(", " ").replace(")", " ").replace(",", " ").split())
        return [make_dessin(parse_cycles(args.x, n), parse_cycles(args.y, n))]
    raise UsageError("give --file or both --x and --y")


# -- subcommands -------------------------------------------------------------

def cmd_enumerate(args) -> int:
    q = PassportQuery.parse(args.black, args.white, args.faces, args.degree)
    budget = int(args.budget) if args.budget else 10**9
    ds = enumerate_passport(q, degree_bound=args.degree_bound, budget=budget, workers=args.threads)
    ds = [Dessin(d.x, d.y, f"D{i}") for i, d in enumerate(ds, 1)]
    if args.chirality:
        sym, pairs, unpaired = chirality_partition(ds, strict=False)
        info = {
            "count": len(ds),
            "symmetric": [d.label for d in sym],
            "pairs": [[a.label, b.label] for a, b in pairs],
            "unpaired": [d.label for d in unpaired],
        }
        if args.format == "json":
            _emit(args, {"dessins": [_dessin_dict(d, args.orders) for d in ds], **info})
            return 0
        _emit_dessins(args, ds, args.orders)
        print(f"# {len(ds)} dessins; {len(sym)} symmetric; {len(pairs)} chiral pairs; {len(unpaired)} unpaired")
        return 0
    _emit_dessins(args, ds, args.orders)
    if args.format == "text":
        print(f"# {len(ds)} dessins")
    return 0


def cmd_identify(args) -> int:
    out = []
    for d in _read_dessins(args):
        label = group_id.identify(d)
        rec = {"label": d.label, "passport": str(d.passport), "group": label.as_dict()}
        try:
            w = group_id.jordan_witness(d)
        except group_id.NotPrimitive:
            w = None
        rec["jordan_witness"] = None if w is None else {"word": w[0], "prime": w[1]}
        out.append(rec)
    _emit(args, out, "\n".join(f"{r['label'] or '-'}\t{r['group']['name']}\torder {r['group']['order']}" for r in out),
          [[r["label"], r["group"]["name"], r["group"]["order"]] for r in out])
    return 0


def _class_rep(G: PermGroup, ct: str, budget: int):
    want = CycleType.parse(ct)
    for i, g in enumerate(G.elements()):
        if cycle_type(g) == want:
            return g
        if i > budget:
            break
    raise UsageError(f"no element of cycle type {ct} found")


def cmd_count_triples(args) -> int:
    result: dict = {}
    if args.table:
        if not (args.x and args.y and args.z):
            raise UsageError("--table needs --x, --y and --z class names")
        t = chartable.load_table(args.table)
        zs = args.z
        per = {c: str(chartable.frobenius_count(t, args.x, args.y, c)) for c in zs}
        result["frobenius"] = {
            "table": t.group_name,
            "sigma": {c: str(chartable.character_sum(t, args.x, args.y, c)) for c in zs},
            "per_class": per,
            "total": str(sum(chartable.frobenius_count(t, args.x, args.y, c) for c in zs)),
        }
    if args.gens:
        n = args.degree
        gens = [parse_cycles(g, n) for g in args.gens]
        G = PermGroup(gens, n)
        budget = int(args.budget) if args.budget else 2 * 10**7
        xr = _class_rep(G, args.x_type, budget)
        yr = _class_rep(G, args.y_type, budget)
        zo = args.z_order
        tc = chartable.brute_force_triples(
            gens, xr, yr, lambda z: f"order {zo}" if z.order() == zo else None, budget=budget,
        )
        result["brute_force"] = {"group_order": G.order(), "total": tc.total, "generating": tc.generating}
        if args.aut_order:
            result["brute_force"]["aut_orbits"] = str(chartable.aut_orbit_count(tc.generating, args.aut_order))
    if not result:
        raise UsageError("give --table or --gens")
    _emit(args, result)
    return 0


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "d0":
        ds = [constructions.modular_dessin(args.p)]
    elif kind == "coset":
        ds = [constructions.psl2_coset_dessin(11, args.variant or "H")]
    elif kind == "family":
        if args.variant:
            ds = [constructions.family_dessin_degree_p(args.p, args.variant)]
        else:
            ds = [constructions.family_dessin_degree_p_plus_1(args.p)]
    elif kind == "glnq":
        x, y, _ = constructions.find_glnq_triple(args.n, args.seed)
        ds = [constructions.glnq_dessin(x, y, f"GL{args.n}(2) seed={args.seed}")]
    elif kind == "agl":
        x, y, z = constructions.find_glnq_triple(args.n, args.seed)
        ta, tb, img = constructions.agl_choices(x, y)
        if not (0 <= args.a_index < len(ta) and 0 <= args.b_index < len(tb)):
            raise UsageError(f"a-index < {len(ta)} and b-index < {len(tb)} required")
        ds = [constructions.agl_lift(args.n, x, y, z, ta[args.a_index], tb[args.b_index])]
    else:
        raise UsageError(f"unknown construction {kind!r}")
    _emit_dessins(args, ds, args.orders)
    return 0


def cmd_bh(args) -> int:
    fam = bh.PolyFamily.parse(args.poly)
    C = bh.bh_constant(fam, int(args.prime_bound), args.assume_irreducible)
    header = ["x", "E(x)"] + (["Q(x)", "E(x)/Q(x)"] if args.count_q else [])
    rows = []
    for x in args.x:
        e = bh.bh_estimate(bh.BHJob(fam, float(x), int(args.prime_bound), args.li, C))
        row = [x, e]
        if args.count_q:
            n, ee = args.count_q
            budget = int(args.budget) if args.budget else 10**8
            q = projective.count_Q(n, ee, int(float(x)), budget, args.threads)
            row += [q, e / q if q else float("nan")]
        rows.append(row)
    out = {"family": str(fam), "prime_bound": int(args.prime_bound), "constant": C,
           "rows": [dict(zip(header, r)) for r in rows]}
    text = f"# C = {C!r} over primes <= {int(args.prime_bound)}\n" + "\n".join(
        "\t".join(map(str, r)) for r in [header] + rows)
    _emit(args, out, text, [header] + rows)
    return 0


def cmd_projective_primes(args) -> int:
    budget = int(args.budget) if args.budget else 10**10
    if args.histogram:
        total, hist = projective.count_projective_primes(int(args.x), budget)
        rows = [["n", "e", "count"]] + [[n, e, c] for (n, e), c in sorted(hist.items())]
        _emit(args, {"count": total, "histogram": {f"n={n},e={e}": c for (n, e), c in sorted(hist.items())}},
              "\n".join("\t".join(map(str, r)) for r in rows) + f"\n# {total} projective primes", rows)
        return 0
    found = projective.projective_primes(int(args.x), budget)
    out = {str(p): [{"r": r, "e": e, "q": r**e, "n": n} for (r, e), n in pairs] for p, pairs in found.items()}
    rows = [[p, r**e, n] for p, pairs in found.items() for (r, e), n in pairs]
    text = "\n".join(f"{p}\t" + ", ".join(f"q={r**e} n={n}" for (r, e), n in pairs) for p, pairs in found.items())
    _emit(args, {"count": len(found), "primes": out}, text + f"\n# {len(found)} projective primes", rows)
    return 0


def cmd_goormaghtigh(args) -> int:
    budget = int(args.budget) if args.budget else 10**10
    hits = projective.goormaghtigh_scan(int(args.x), budget)
    _emit(args, hits, "\n".join(map(str, hits)), [[h] for h in hits])
    return 0


def cmd_verify_belyi(args) -> int:
    ok = True
    out = {}
    if args.which in ("klein", "all"):
        r = belyi.verify_klein_shabat(args.sqrt_sign, args.p_minus_1_sign)
        out["klein"] = r.as_dict()
        ok &= r.ok
    if args.which in ("d013", "all"):
        r2 = belyi.verify_d013_belyi()
        out["d013"] = r2.as_dict()
        ok &= r2.ok
    _emit(args, out)
    return 0 if ok else 1


def cmd_verify_appendix(args) -> int:
    rep = golden.verify_appendix(args.set or None)
    rows = [[r.id, "ok" if r.ok else "FAIL", "; ".join(k for k, v in r.checks.items() if not v)] for r in rep.records]
    text = "\n".join("\t".join(r) for r in rows) + f"\n# {len(rep.records)} records, {len(rep.failures())} failures"
    _emit(args, rep.as_dict(), text, rows)
    return 0 if rep.ok else 1


def cmd_report_tables(args) -> int:
    rows = golden.report_tables(int(args.prime_bound), args.threads, tuple(args.skip or ()))
    data = [[r.table, r.key, r.expected, r.computed, "ok" if r.ok else "MISMATCH"] for r in rows]
    _emit(args, [r.__dict__ for r in rows], "\n".join("\t".join(map(str, d)) for d in data), data)
    return 0 if all(r.ok for r in rows) else 1


# -- parser --------------------------------------------------------------------

_GLOBALS = {"format": "text", "threads": 1, "seed": 0, "budget": None}


def _global_flags(parser: argparse.ArgumentParser, defaults: bool) -> None:
    # subcommands accept the same flags; SUPPRESS keeps them from clobbering
    # values given before the subcommand name
    d = (lambda k: _GLOBALS[k]) if defaults else (lambda k: argparse.SUPPRESS)
    parser.add_argument("--format", choices=("text", "json", "tsv"), default=d("format"))
    parser.add_argument("--threads", type=int, default=d("threads"))
    parser.add_argument("--seed", type=int, default=d("seed"))
    parser.add_argument("--budget", type=float, default=d("budget"))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    _global_flags(common, defaults=False)

    ap = argparse.ArgumentParser(prog="dessins", description="Dessins of type (3,2,p): enumeration, groups, counts.")
    _global_flags(ap, defaults=True)
    sub = ap.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("enumerate", parents=[common], help="all dessins with a passport")
    p.add_argument("--black", required=True, help='cycle type of x, e.g. "3^3 1^2"')
    p.add_argument("--white", required=True)
    p.add_argument("--faces", default="-", help='cycle type of z, or "-" for any')
    p.add_argument("--degree", type=int)
    p.add_argument("--degree-bound", type=int, default=24)
    p.add_argument("--chirality", action="store_true")
    p.add_argument("--orders", action="store_true", help="also report monodromy orders")
    p.set_defaults(func=cmd_enumerate)

    p = sub.add_parser("identify", parents=[common], help="name the monodromy group")
    p.add_argument("--dessin", "--file", dest="file", help="file in the dessin text format")
    p.add_argument("--x")
    p.add_argument("--y")
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_identify)

    p = sub.add_parser("count-triples", parents=[common], help="Frobenius and brute-force triple counts")
    p.add_argument("--table", choices=chartable.SHIPPED_TABLES)
    p.add_argument("--x", help="class name for x")
    p.add_argument("--y", help="class name for y")
    p.add_argument("--z", nargs="+", help="class names for z; counts are summed")
    p.add_argument("--gens", nargs="+", help="generators in cycle notation")
    p.add_argument("--degree", type=int)
    p.add_argument("--x-type", default="3^3 1^2")
    p.add_argument("--y-type", default="2^4 1^3")
    p.add_argument("--z-order", type=int, default=11)
    p.add_argument("--aut-order", type=int)
    p.set_defaults(func=cmd_count_triples)

    p = sub.add_parser("construct", parents=[common], help="explicit dessins")
    p.add_argument("kind", choices=("d0", "coset", "family", "glnq", "agl"))
    p.add_argument("--p", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--variant")
    p.add_argument("--a-index", type=int, default=1)
    p.add_argument("--b-index", type=int, default=1)
    p.add_argument("--orders", action="store_true")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("bh", parents=[common], help="Bateman-Horn constant and estimates")
    p.add_argument("--poly", nargs="+", action="extend", required=True,
                   help='polynomials such as "t" "1+t+t^2"; may be repeated')
    p.add_argument("--prime-bound", type=float, default=1e7)
    p.add_argument("--x", nargs="+", action="extend", default=[])
    p.add_argument("--count-q", nargs=2, type=int, metavar=("N", "E"),
                   help="also count Q(x) exactly for 1 + q + ... + q^(N-1), q = t^E")
    p.add_argument("--li", action="store_true")
    p.add_argument("--assume-irreducible", action="store_true")
    p.set_defaults(func=cmd_bh)

    p = sub.add_parser("projective-primes", parents=[common], help="projective primes up to x")
    p.add_argument("--max", "--x", dest="x", required=True, type=float)
    p.add_argument("--histogram", action="store_true", help="counts by (n, e) instead of the list")
    p.set_defaults(func=cmd_projective_primes)

    p = sub.add_parser("goormaghtigh", parents=[common], help="projective primes with two decompositions")
    p.add_argument("--max", "--x", dest="x", required=True, type=float)
    p.set_defaults(func=cmd_goormaghtigh)

    p = sub.add_parser("verify-belyi", parents=[common], help="exact Belyi map identities")
    p.add_argument("--which", choices=("klein", "d013", "all"), default="all")
    p.add_argument("--sqrt-sign", type=int, choices=(1, -1), default=1)
    p.add_argument("--p-minus-1-sign", type=int, choices=(1, -1), default=-1)
    p.set_defaults(func=cmd_verify_belyi)

    p = sub.add_parser("verify-appendix", parents=[common], help="check the shipped reference triples")
    p.add_argument("--set", nargs="*", choices=[g.name for g in golden.GOLDEN_SETS])
    p.set_defaults(func=cmd_verify_appendix)

    p = sub.add_parser("report-tables", parents=[common], help="regenerate the reference tables")
    p.add_argument("--prime-bound", type=float, default=1e9)
    p.add_argument("--skip", nargs="*", choices=("covers", "d0", "estimates"))
    p.set_defaults(func=cmd_report_tables)
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return args.func(args)
    except (UsageError, ValueError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


def main_exit() -> None:
    sys.exit(main())


if __name__ == "__main__":
    main_exit()
