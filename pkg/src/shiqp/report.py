"""Desk-scale sweep that re-derives every catalog claim from brute-force counts."""

from __future__ import annotations

from .arrangement import build_shi
from .bijections import variants_for, verify_bijection
from .collapse import verify_corollaries
from .counting import count_complement, count_on_flat
from .encodings import verify_encoding
from .formulas import FormulaId, VALID_FAMILIES, evaluate, index_choices, min_q, target


def _formula_sweep(root: str, m: int, errata: bool) -> dict:
    bad = []
    cells = 0
    for fam in VALID_FAMILIES[root]:
        fid = FormulaId(root, fam)
        if fid.is_pair and m < 2:
            continue
        for i, j in index_choices(fid, m):
            arr, flat = target(fid, m, i, j)
            for q in range(max(min_q(fid, m), 2 * m + 1), 2 * m + 13):
                cells += 1
                got = count_on_flat(arr, flat, q) if flat else count_complement(arr, q)
                want = evaluate(fid, m, q, i, j, errata=errata)
                if got != want:
                    bad.append(f"{fam}(i={i},j={j},q={q}): catalog {want}, count {got}")
    detail = f"{cells} cells" + (f", {len(bad)} mismatches, first {bad[0]}" if bad else ", all match")
    return {"name": f"formulas {root}{m}", "pass": not bad, "detail": detail}


def run_report(max_m: int = 3, errata: bool = False) -> list[dict]:
    out = []
    for m in range(1, max_m + 1):
        for root in ("B", "C", "D"):
            out.append(_formula_sweep(root, m, errata))
    for m, qs in ((2, range(5, 13)), (3, (7, 8))):
        if m > max_m:
            continue
        reps = [verify_bijection(v, m, q) for v in variants_for(m) for q in qs]
        failed = [r for r in reps if not r.passed]
        out.append({"name": f"bijections m={m}", "pass": not failed,
                    "detail": f"{len(reps)} checks" + (f", first failure {failed[0].variant} q={failed[0].q}: "
                                                       f"{failed[0].reason}" if failed else "")})
    for m in range(1, min(max_m, 3) + 1):
        reps = [verify_encoding(m, q) for q in range(2 * m + 1, 2 * m + 9)]
        failed = [r for r in reps if not r.passed]
        out.append({"name": f"encoding m={m}", "pass": not failed,
                    "detail": f"{len(reps)} moduli" + (f", q={failed[0].q}: {failed[0].reason}" if failed else "")})
    for root in ("C", "D"):
        for m in range(2, max(max_m, 2) + 1):
            rep = verify_corollaries(root, m, oracle=m <= 3)
            bad = [r for r in rep.rows if not r.agree]
            out.append({"name": f"classification {root}{m}", "pass": rep.passed,
                        "detail": f"{len(rep.rows)} deletions" + (f", disagreement on {bad[0].hyperplanes}" if bad else "")})
    return out
