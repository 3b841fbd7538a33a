"""Command-line front end.

Verbs: verify, metric, double, classify, sl2, dnumber, galois, fixtures.
Exit codes: 0 all checks pass, 1 validation failure, 2 usage error.
Output is deterministic; TWISTBENCH_THREADS caps the worker pool used for
batch validation (default 1, serial).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .cyclotomic import RootOfUnity
from .moddata import (
    ModularData,
    canonical_json,
    central_charge,
    fs_exponent,
    galois_permutation,
    twist_spectrum,
    validate,
)
from . import classify as cls
from . import doubles as dbl
from . import fixtures as fx
from . import metricgroups as mg
from . import sl2tables as sl2


def _threads() -> int:
    try:
        return max(1, int(os.environ.get("TWISTBENCH_THREADS", "1")))
    except ValueError:
        return 1


def _batch(fn, items):
    n = _threads()
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    from concurrent.futures import ThreadPoolExecutor

    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


def _load_data(path: str) -> ModularData:
    with open(path) as fh:
        payload = json.load(fh)
    return ModularData.from_json_dict(payload)


def _emit(obj, as_json: bool, out=None):
    out = out if out is not None else sys.stdout
    if as_json:
        out.write(canonical_json(obj) + "\n")
    else:
        _render(obj, out)


def _render(obj, out, indent=0):
    pad = "  " * indent
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                out.write(f"{pad}{k}:\n")
                _render(v, out, indent + 1)
            else:
                out.write(f"{pad}{k}: {v}\n")
    elif isinstance(obj, list):
        for v in obj:
            if isinstance(v, (dict, list)):
                _render(v, out, indent)
                out.write("\n" if indent == 0 else "")
            else:
                out.write(f"{pad}- {v}\n")
    else:
        out.write(f"{pad}{obj}\n")


# ---------------------------------------------------------------------------
# verbs


def cmd_verify(args) -> int:
    try:
        md = _load_data(args.file)
    except (OSError, ValueError, KeyError, TypeError) as e:
        print(f"error: cannot read modular data: {e}", file=sys.stderr)
        return 2
    rep = validate(md)
    info = {
        "rank": md.rank,
        "checks": [{"name": n, "ok": ok, "detail": d} for n, ok, d in rep.checks],
        "ok": rep.ok,
    }
    if rep.ok:
        spec = twist_spectrum(md)
        info["N"] = fs_exponent(md)
        info["xi"] = central_charge(md).token()
        info["D"] = md.global_dim.reduced().to_dict()
        info["twist_spectrum"] = {
            t.token(): v.reduced().to_dict()
            for t, v in sorted(spec.items(), key=lambda kv: kv[0].sort_key())
        }
        summary = (f"{md.rank} simples, N={info['N']}, xi={info['xi']}, "
                   "all checks pass")
    else:
        summary = "FAILED: " + ", ".join(rep.failures())
    if args.json:
        _emit(info, True)
    else:
        print(summary)
        for n, ok, d in rep.checks:
            mark = "pass" if ok else "FAIL"
            print(f"  {mark}  {n}" + (f" ({d})" if d else ""))
    return 0 if rep.ok else 1


def _parse_twists(spec: str) -> frozenset[RootOfUnity]:
    return frozenset(RootOfUnity.parse(tok) for tok in spec.split(","))


def cmd_metric(args) -> int:
    factors = tuple(int(x) for x in args.group.split(","))
    G = mg.abelian_group(*factors)
    forms = mg.enumerate_forms(G)
    if args.twists:
        allowed = _parse_twists(args.twists)
        forms = mg.filter_by_twists(forms, allowed, exact=not args.subset)
    rows = []
    for q in forms:
        rows.append({
            "group": str(G),
            "values": " ".join(v.token() for _, v in q.values),
            "twists": ",".join(t.token() for t in
                               sorted(q.twist_values(), key=lambda r: r.sort_key())),
        })
    if args.classes:
        classes = mg.isometry_classes(forms)
        payload = {"group": str(G), "forms": len(forms), "classes": len(classes)}
    else:
        payload = {"group": str(G), "forms": rows}
    _emit(payload, args.json)
    return 0


def cmd_double(args) -> int:
    factors = tuple(int(x) for x in args.group.split(","))
    G = mg.abelian_group(*factors)
    classes = dbl.enumerate_cocycle_classes(G)
    if args.scan:
        rows = dbl.classify_doubles_by_twistcount([G], args.max_twists)
        payload = [{
            "group": str(r.group),
            "omega": r.omega.label(),
            "twist_count": r.twist_count,
            "twists": ",".join(t.token() for t in
                               sorted(r.twists, key=lambda x: x.sort_key())),
            "rank": r.rank,
        } for r in rows]
        _emit(payload, args.json)
        return 0
    if args.omega_index < 0 or args.omega_index >= len(classes):
        print(f"error: omega index out of range, {len(classes)} classes",
              file=sys.stderr)
        return 2
    omega = classes[args.omega_index]
    md = dbl.double_modular_data(G, omega)
    rep = validate(md)
    if args.emit:
        with open(args.emit, "w") as fh:
            fh.write(md.to_json() + "\n")
    print(f"double of {G}, omega [{omega.label()}]: rank {md.rank}, "
          f"{'valid' if rep.ok else 'INVALID'}")
    return 0 if rep.ok else 1


def cmd_classify(args) -> int:
    if args.twists == 2:
        rep = cls.solve_two_twists()
        payload = {
            "rows": [_row_dict(r) for r in rep.rows],
            "families": [{"N": f.N, "description": f.description}
                         for f in rep.families],
            "empty": {str(N): cert.describe()
                      for N, cert in sorted(rep.empties.items())},
        }
    else:
        rep3 = cls.solve_three_twists()
        payload = {
            "rows": [_row_dict(r) for r in rep3.rows],
            "families": [{"N": f.N, "description": f.description}
                         for f in rep3.families],
            "per_N": {str(k): v for k, v in sorted(rep3.per_n_counts().items())},
            "branches": [{
                "label": b.label,
                "outcome": b.outcome,
                "evidence": [{"kind": e.kind, "detail": e.detail,
                              "citation": e.citation} for e in b.evidence],
            } for b in rep3.branches],
        }
    if args.csv:
        out = io.StringIO()
        w = csv.writer(out)
        w.writerow(["family", "count", "N", "fpdim", "twists"])
        for r in payload["rows"]:
            w.writerow([r["family"], r["count"], r["N"], r["fpdim"],
                        "|".join(r["twists"])])
        sys.stdout.write(out.getvalue())
        return 0
    _emit(payload, args.json)
    return 0


def _row_dict(r) -> dict:
    return {
        "family": r.family,
        "count": r.count,
        "N": r.N,
        "fpdim": r.fpdim,
        "twists": list(r.twists),
        "members": list(r.members),
        "evidence": [{"kind": e.kind, "detail": e.detail, "citation": e.citation}
                     for e in r.evidence],
    }


def cmd_sl2(args) -> int:
    if args.csv:
        sys.stdout.write(sl2.table_csv(args.max_distinct))
        return 0
    rows = [str(rep) for rep in sl2.rep_table(args.max_distinct)]
    _emit(rows, args.json)
    return 0


def cmd_dnumber(args) -> int:
    if args.scan_sqrt2:
        a_max, b_max = args.scan_sqrt2
        hits = cls.sqrt2_obstruction_scan(a_max, b_max)
        payload = {"scan": f"2^a*eps^b (a<={a_max}, b<={b_max})",
                   "hits": [str(h) for h in hits]}
        _emit(payload, args.json)
        return 0 if not hits else 1
    low, high = args.window
    out = cls.d_numbers_q5_in_window(5, Fraction(low), Fraction(high))
    _emit([str(x) for x in out], args.json)
    return 0


def cmd_galois(args) -> int:
    try:
        md = _load_data(args.file)
    except (OSError, ValueError, KeyError, TypeError) as e:
        print(f"error: cannot read modular data: {e}", file=sys.stderr)
        return 2
    try:
        perm = galois_permutation(md, args.k)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    _emit({"k": args.k, "permutation": perm}, args.json)
    return 0


def cmd_fixtures(args) -> int:
    if args.emit:
        sums = fx.emit_fixture_files(args.emit)
        print(f"wrote {len(sums)} fixtures to {args.emit}")
        return 0
    reg = fx.fixtures()
    if args.check:
        names = sorted(reg)
        reps = _batch(lambda n: validate(reg[n]), names)
        bad = [n for n, r in zip(names, reps) if not r.ok]
        for n, r in zip(names, reps):
            print(f"{'pass' if r.ok else 'FAIL'}  {n}")
        return 0 if not bad else 1
    _emit(sorted(reg), args.json)
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="twistbench",
        description="exact workbench for modular fusion data with at most "
                    "three distinct twists",
    )
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("verify", help="validate a modular-data JSON file")
    v.add_argument("file")
    v.add_argument("--json", action="store_true")
    v.set_defaults(fn=cmd_verify)

    m = sub.add_parser("metric", help="enumerate quadratic forms on an "
                                      "abelian group")
    m.add_argument("--group", required=True, help="comma-separated factors, "
                                                  "e.g. 4,4")
    m.add_argument("--list", action="store_true",
                   help="list the forms (the default behavior)")
    m.add_argument("--twists", help="filter by twist tokens, e.g. 1,i,-i")
    m.add_argument("--subset", action="store_true",
                   help="twist filter means containment, not equality")
    m.add_argument("--classes", action="store_true",
                   help="report isometry class count")
    m.add_argument("--json", action="store_true")
    m.set_defaults(fn=cmd_metric)

    d = sub.add_parser("double", help="twisted doubles of an abelian group")
    d.add_argument("--group", required=True)
    d.add_argument("--omega-index", type=int, default=0)
    d.add_argument("--emit", help="write modular data JSON here")
    d.add_argument("--scan", action="store_true")
    d.add_argument("--max-twists", type=int, default=3)
    d.add_argument("--json", action="store_true")
    d.set_defaults(fn=cmd_double)

    c = sub.add_parser("classify", help="run the twist classification")
    c.add_argument("--twists", type=int, choices=(2, 3), required=True)
    c.add_argument("--json", action="store_true")
    c.add_argument("--csv", action="store_true")
    c.set_defaults(fn=cmd_classify)

    s = sub.add_parser("sl2", help="dump the congruence representation tables")
    s.add_argument("--max-distinct", type=int, choices=(1, 2, 3), default=3)
    s.add_argument("--csv", action="store_true")
    s.add_argument("--json", action="store_true")
    s.set_defaults(fn=cmd_sl2)

    n = sub.add_parser("dnumber", help="d-number window scans")
    n.add_argument("--window", nargs=2, type=str, default=("1", "18"),
                   metavar=("LOW", "HIGH"))
    n.add_argument("--scan-sqrt2", nargs=2, type=int, metavar=("A_MAX", "B_MAX"))
    n.add_argument("--json", action="store_true")
    n.set_defaults(fn=cmd_dnumber)

    g = sub.add_parser("galois", help="Galois permutation of a data file")
    g.add_argument("file")
    g.add_argument("-k", type=int, required=True)
    g.add_argument("--json", action="store_true")
    g.set_defaults(fn=cmd_galois)

    f = sub.add_parser("fixtures", help="golden data registry")
    f.add_argument("--emit", help="write fixture JSON files to a directory")
    f.add_argument("--check", action="store_true", help="validate every fixture")
    f.add_argument("--json", action="store_true")
    f.set_defaults(fn=cmd_fixtures)

    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
