"""Command-line entry point: ``shiqp <command> [flags]``.

Exit status is 0 on success, 1 when a verification fails, 2 on bad usage.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import bijections, collapse, encodings, formulas
from .arrangement import (
    ROOT_TYPES,
    Arrangement,
    ArrangementError,
    Selector,
    build_shi,
    delete_hyperplanes,
    selector_to_hyperplane,
)
from .counting import BudgetExceeded, CountSample, count_complement, count_on_flat
from .quasipoly import FitError, fit_quasi_polynomial, lcm_period, minimal_period

OK, FAIL, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def _table(rows: list[list[object]], header: list[str]) -> str:
    cells = [header] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = ["  ".join(c.rjust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def _csv(rows: list[list[object]], header: list[str]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _render(args, rows, header, payload) -> str:
    if args.json:
        return json.dumps(payload, indent=2)
    if getattr(args, "csv", False):
        return _csv(rows, header)
    return _table(rows, header)


def _qs(args) -> list[int]:
    if args.q is not None:
        if args.qmin is not None or args.qmax is not None:
            raise UsageError("use either --q or --qmin/--qmax")
        qs = [args.q]
    elif args.qmin is not None and args.qmax is not None:
        qs = list(range(args.qmin, args.qmax + 1))
    else:
        raise UsageError("give --q or both --qmin and --qmax")
    if not qs or min(qs) < 1:
        raise UsageError("moduli must be positive and the range nonempty")
    return qs


def _arrangement(args) -> Arrangement:
    if getattr(args, "arrangement", None):
        return Arrangement.from_json(json.loads(Path(args.arrangement).read_text(encoding="utf-8")))
    if args.type is None or args.m is None:
        raise UsageError("give --type and --m (or --arrangement FILE)")
    return build_shi(args.type, args.m)


def _selector(args) -> Selector:
    if args.family is None or args.i is None or args.offset is None:
        raise UsageError("restriction needs --family, --i and --offset")
    return Selector(args.family, args.i, args.offset, args.j)


# commands

def cmd_build(args, out) -> int:
    arr = _arrangement(args)
    if args.json:
        _emit(out, json.dumps(arr.to_json()))
    else:
        for h in arr:
            _emit(out, str(h))
    return OK


def cmd_count(args, out) -> int:
    arr = _arrangement(args)
    qs = _qs(args)
    vals = [count_complement(arr, q, budget=args.budget, workers=args.threads) for q in qs]
    if args.json:
        _emit(out, json.dumps([{"q": q, "count": v} for q, v in zip(qs, vals)]))
    elif len(qs) == 1:
        _emit(out, str(vals[0]))
    else:
        m = arr.dim
        _emit(out, _render(args, [[q, q - 2 * m, v] for q, v in zip(qs, vals)], ["q", "T", "count"], None))
    return OK


def cmd_restrict_count(args, out) -> int:
    arr = _arrangement(args)
    h = selector_to_hyperplane(_selector(args), arr.dim)
    if h not in arr:
        raise UsageError(f"{h} is not a hyperplane of the arrangement")
    qs = _qs(args)
    vals = [count_on_flat(arr, [h], q, budget=args.budget, workers=args.threads) for q in qs]
    if args.json:
        _emit(out, json.dumps([{"q": q, "count": v} for q, v in zip(qs, vals)]))
    elif len(qs) == 1:
        _emit(out, str(vals[0]))
    else:
        m = arr.dim
        _emit(out, _render(args, [[q, q - 2 * m, v] for q, v in zip(qs, vals)], ["q", "T", "count"], None))
    return OK


def cmd_fit(args, out) -> int:
    arr = _arrangement(args)
    m = arr.dim
    flat = []
    if args.family is not None:
        h = selector_to_hyperplane(_selector(args), m)
        if args.delete:
            arr = delete_hyperplanes(arr, [h])
        else:
            flat = [h]
    period = args.period if args.period else lcm_period(arr)
    qmin = args.qmin if args.qmin is not None else 2 * m + 1
    qmax = args.qmax if args.qmax is not None else 2 * m + 12
    samples = []
    for q in range(qmin, qmax + 1):
        c = count_on_flat(arr, flat, q, budget=args.budget, workers=args.threads) if flat else \
            count_complement(arr, q, budget=args.budget, workers=args.threads)
        samples.append(CountSample(q, c))
    try:
        qp = fit_quasi_polynomial(samples, period, m, args.fit_from if args.fit_from else 2 * m + 1)
    except FitError as e:
        _emit(out, json.dumps({"error": str(e), "q": e.q,
                               "expected": str(e.expected) if e.expected is not None else None,
                               "actual": e.actual}) if args.json else f"fit failed: {e}")
        return FAIL
    mp = minimal_period(qp)
    if args.json:
        payload = qp.to_json()
        payload["minimalPeriod"] = mp
        payload["validFrom"] = list(qp.valid_from)
        _emit(out, json.dumps(payload))
    else:
        _emit(out, f"period {qp.period} (minimal {mp}), fitted from q >= {qp.q_min}")
        for r, c in enumerate(qp.constituents):
            _emit(out, f"  q = {r} mod {qp.period}: {c}    [matches from q = {qp.valid_from[r]}]")
    return OK


def cmd_lcm_period(args, out) -> int:
    arr = _arrangement(args)
    rho = lcm_period(arr, augmented=args.augmented, max_columns=args.max_columns)
    _emit(out, json.dumps({"lcmPeriod": rho, "augmented": args.augmented}) if args.json else str(rho))
    return OK


def cmd_verify_formulas(args, out) -> int:
    root, m = args.type, args.m
    if root is None or m is None:
        raise UsageError("verify-formulas needs --type and --m")
    fams = [args.formula] if args.formula else list(formulas.VALID_FAMILIES[root])
    qs = _qs(args)
    rows, payload, ok = [], [], True
    for fam in fams:
        fid = formulas.FormulaId(root, fam)
        if fid.is_pair and m < 2:
            continue
        for i, j in formulas.index_choices(fid, m):
            arr, flat = formulas.target(fid, m, i, j)
            for q in qs:
                if q < formulas.min_q(fid, m):
                    continue
                val = formulas.evaluate(fid, m, q, i, j, errata=args.errata)
                cnt = count_on_flat(arr, flat, q, budget=args.budget, workers=args.threads) if flat else \
                    count_complement(arr, q, budget=args.budget, workers=args.threads)
                match = val == cnt
                ok &= match
                rows.append([fam, i or "", j or "", q, q - 2 * m, val, cnt, "ok" if match else "MISMATCH"])
                payload.append({"family": fam, "i": i, "j": j, "q": q, "formula": val,
                                "oracle": cnt, "match": match})
    header = ["family", "i", "j", "q", "T", "formula", "oracle", "match"]
    _emit(out, _render(args, rows, header, {"type": root, "m": m, "pass": ok, "rows": payload}))
    return OK if ok else FAIL


def cmd_verify_bijection(args, out) -> int:
    if args.m is None:
        raise UsageError("verify-bijection needs --m")
    if args.variant:
        if args.variant == "FullD":
            variants = [bijections.Variant("FullD")]
        elif args.i is not None and args.j is not None:
            variants = [bijections.Variant(args.variant, args.i, args.j)]
        else:
            variants = [v for v in bijections.variants_for(args.m) if v.kind == args.variant]
    else:
        variants = bijections.variants_for(args.m)
    reports = [bijections.verify_bijection(v, args.m, q, budget=args.budget)
               for q in _qs(args) for v in variants]
    ok = all(r.passed for r in reports)
    rows = [[r.variant, r.q, r.domain_size, r.codomain_size, "pass" if r.passed else "FAIL",
             "" if r.counterexample is None else str(r.counterexample)] for r in reports]
    header = ["variant", "q", "domain", "codomain", "result", "counterexample"]
    _emit(out, _render(args, rows, header, [r.to_json() for r in reports]))
    return OK if ok else FAIL


def cmd_verify_encoding(args, out) -> int:
    if args.placement:
        obj = json.loads(args.placement)
        placement, layout = encodings.Placement.from_json(obj)
        x = encodings.decode_placement(placement, layout)
        _emit(out, json.dumps({"point": list(x)}) if args.json else " ".join(map(str, x)))
        return OK
    if args.m is None:
        raise UsageError("verify-encoding needs --m (or --placement JSON)")
    reports = [encodings.verify_encoding(args.m, q) for q in _qs(args)]
    ok = all(r.passed for r in reports)
    rows = [[r.m, r.q, r.q - 2 * r.m, r.placements, r.complement_size, "pass" if r.passed else "FAIL"]
            for r in reports]
    header = ["m", "q", "T", "placements", "complement", "result"]
    _emit(out, _render(args, rows, header, [r.to_json() for r in reports]))
    return OK if ok else FAIL


def cmd_classify(args, out) -> int:
    if args.type not in ("C", "D") or args.m is None:
        raise UsageError("classify needs --type C|D and --m")
    singles = not args.pairs or args.singles
    pairs = args.pairs or not args.singles
    rep = collapse.verify_corollaries(args.type, args.m, singles=singles, pairs=pairs, oracle=args.oracle)
    if args.json:
        _emit(out, json.dumps(rep.to_json(), indent=2))
    elif args.csv:
        _emit(out, rep.to_csv())
    else:
        rows = [[r.kind, r.hyperplanes, r.verdict, r.expected, r.oracle or "-", "yes" if r.agree else "NO"]
                for r in rep.rows]
        _emit(out, _table(rows, ["kind", "deleted", "verdict", "expected", "oracle", "agree"]))
    return OK if rep.passed else FAIL


def cmd_report(args, out) -> int:
    from .report import run_report

    results = run_report(max_m=args.m or 3, errata=args.errata)
    ok = all(r["pass"] for r in results)
    if args.json:
        _emit(out, json.dumps({"pass": ok, "checks": results}, indent=2))
    else:
        for r in results:
            _emit(out, f"{'PASS' if r['pass'] else 'FAIL'}  {r['name']}: {r['detail']}")
    return OK if ok else FAIL


def cmd_catalog(args, out) -> int:
    cat = formulas.catalog()
    if args.json:
        _emit(out, json.dumps(cat, indent=2))
    else:
        rows = [[c["id"], c["indices"], c["domain"], c["parity"], c["source"]] for c in cat]
        _emit(out, _table(rows, ["id", "indices", "domain", "parity", "source"]))
    return OK


COMMANDS: dict[str, Callable] = {
    "build": cmd_build,
    "count": cmd_count,
    "restrict-count": cmd_restrict_count,
    "fit": cmd_fit,
    "lcm-period": cmd_lcm_period,
    "verify-formulas": cmd_verify_formulas,
    "verify-bijection": cmd_verify_bijection,
    "verify-encoding": cmd_verify_encoding,
    "classify": cmd_classify,
    "report": cmd_report,
    "catalog": cmd_catalog,
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="shiqp", description="Exact point counts for Shi arrangements over Z_q.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, *, q=True, arrangement=True, restriction=False):
        sp.add_argument("--type", choices=ROOT_TYPES)
        sp.add_argument("--m", type=int)
        if arrangement:
            sp.add_argument("--arrangement", metavar="FILE", help="arrangement JSON instead of --type/--m")
        if q:
            sp.add_argument("--q", type=int)
            sp.add_argument("--qmin", type=int)
            sp.add_argument("--qmax", type=int)
        if restriction:
            sp.add_argument("--family", choices=("coord2", "diff", "sum", "coord"))
            sp.add_argument("--i", type=int)
            sp.add_argument("--j", type=int)
            sp.add_argument("--offset", type=int)
        sp.add_argument("--json", action="store_true")
        sp.add_argument("--csv", action="store_true")
        sp.add_argument("--budget", type=int, default=None, help="max q^m * #hyperplanes")
        sp.add_argument("--threads", type=int, default=1)

    common(sub.add_parser("build", help="print an arrangement"), q=False)
    common(sub.add_parser("count", help="count complement points"))
    common(sub.add_parser("restrict-count", help="count points on one hyperplane"), restriction=True)
    sp = sub.add_parser("fit", help="fit the quasi-polynomial from counts")
    common(sp, restriction=True)
    sp.add_argument("--delete", action="store_true", help="delete the selected hyperplane instead")
    sp.add_argument("--period", type=int)
    sp.add_argument("--fit-from", type=int, help="smallest q used for interpolation (default 2m+1)")
    sp = sub.add_parser("lcm-period", help="lcm period from the coefficient matrix")
    common(sp, q=False)
    sp.add_argument("--augmented", action="store_true", help="append offsets as an extra row")
    sp.add_argument("--max-columns", type=int, default=18)
    sp = sub.add_parser("verify-formulas", help="catalog vs brute-force counts")
    common(sp, arrangement=False)
    sp.add_argument("--formula", help="a single catalog family, e.g. RestSum0")
    sp.add_argument("--errata", action="store_true", help="use corrected catalog entries")
    sp = sub.add_parser("verify-bijection", help="check the D/B shift bijections")
    common(sp, arrangement=False, restriction=True)
    sp.add_argument("--variant", choices=bijections.VARIANTS)
    sp = sub.add_parser("verify-encoding", help="check the box-and-circle decoder")
    common(sp, arrangement=False)
    sp.add_argument("--placement", help='decode one placement, e.g. {"m":1,"q":5,"boxes":{"1":"U1"}}')
    sp = sub.add_parser("classify", help="period-collapse classification of deletions")
    common(sp, q=False, arrangement=False)
    sp.add_argument("--pairs", action="store_true", help="parallel pairs only")
    sp.add_argument("--singles", action="store_true", help="single hyperplanes only")
    sp.add_argument("--oracle", action="store_true", help="cross-check with brute-force fits")
    sp = sub.add_parser("report", help="run the desk-scale verification sweep")
    common(sp, q=False, arrangement=False)
    sp.add_argument("--errata", action="store_true")
    sp = sub.add_parser("catalog", help="list closed forms")
    common(sp, q=False, arrangement=False)
    return p


def main(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code) if e.code is not None else USAGE
    if args.threads < 1:
        print("error: --threads must be positive", file=sys.stderr)
        return USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, ArrangementError, formulas.FormulaError, bijections.BijectionError,
            encodings.EncodingError, collapse.ClassificationError, BudgetExceeded,
            ValueError, OSError) as e:
        print(f"error: {e}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
