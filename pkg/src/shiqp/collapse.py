"""Period-collapse classification for single and parallel-pair deletions (types C, D).

A deletion's count is the full count plus the restriction count(s), so its
quasi-polynomial is polynomial exactly when the odd and even constituents
coincide. Constituents are recovered exactly by interpolating catalog values
(symbolic route) or oracle counts (brute-force route).
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

from .arrangement import Selector, build_shi, delete_hyperplanes, selector_to_hyperplane, shi_selectors
from .counting import CountSample, count_complement
from .formulas import FormulaId, eval_full_shi, eval_restriction
from .quasipoly import QuasiPolynomial, fit_quasi_polynomial, lcm_period, minimal_period, reduce_period

POLYNOMIAL = "polynomial"
QUASI = "quasi"


class ClassificationError(ValueError):
    pass


def _family(sel: Selector) -> str:
    if sel.kind == "coord2":
        return f"Rest2xi{sel.c}"
    if sel.kind == "diff":
        return f"RestDiff{sel.c}"
    if sel.kind == "sum":
        return f"RestSum{sel.c}"
    raise ClassificationError(f"{sel.kind} hyperplanes are not in types C/D")


def _check(root: str, m: int, sel: Selector) -> None:
    if root not in ("C", "D"):
        raise ClassificationError(f"classification covers types C and D, not {root!r}")
    if m < 2:
        raise ClassificationError("need m >= 2")
    sel.check(m)
    if sel.kind == "coord" or (root == "D" and sel.kind == "coord2"):
        raise ClassificationError(f"{sel} is not a hyperplane of type {root}")


def _catalog_qp(root: str, m: int, sels: list[Selector], restrictions_only: bool = False) -> QuasiPolynomial:
    """Quasi-polynomial (period 2) of full + restrictions, interpolated from the catalog."""
    qs = range(2 * m + 1, 2 * m + 1 + 2 * (m + 3))
    samples = []
    for q in qs:
        v = 0 if restrictions_only else eval_full_shi(root, m, q)
        for s in sels:
            v += eval_restriction(FormulaId(root, _family(s)), m, s.i, s.j, q)
        samples.append(CountSample(q, v))
    return fit_quasi_polynomial(samples, 2, m, 2 * m + 1)


def _verdict(qp: QuasiPolynomial) -> str:
    return POLYNOMIAL if minimal_period(qp) == 1 else QUASI


def deletion_quasi_polynomial(root: str, m: int, sels: list[Selector]) -> QuasiPolynomial:
    for s in sels:
        _check(root, m, s)
    return _catalog_qp(root, m, sels)


def classify_single_deletion(root: str, m: int, sel: Selector) -> str:
    _check(root, m, sel)
    return _verdict(_catalog_qp(root, m, [sel]))


def _pair(kind: str, i: int, j: int | None) -> list[Selector]:
    if kind not in ("coord2", "diff", "sum"):
        raise ClassificationError(f"no parallel pair family {kind!r}")
    return [Selector(kind, i, 0, j), Selector(kind, i, 1, j)]


def classify_pair_deletion(root: str, m: int, kind: str, i: int, j: int | None = None) -> str:
    sels = _pair(kind, i, j)
    for s in sels:
        _check(root, m, s)
    return _verdict(_catalog_qp(root, m, sels))


def restriction_sum_verdict(root: str, m: int, sels: list[Selector]) -> str:
    """Verdict for the bare restriction count(s), without the full-arrangement term."""
    return _verdict(_catalog_qp(root, m, sels, restrictions_only=True))


def oracle_deletion_quasi_polynomial(root: str, m: int, sels: list[Selector], q_span: int = 12) -> QuasiPolynomial:
    arr = build_shi(root, m)
    dele = delete_hyperplanes(arr, [selector_to_hyperplane(s, m) for s in sels])
    rho = lcm_period(dele)
    samples = [CountSample(q, count_complement(dele, q)) for q in range(2 * m + 1, 2 * m + 1 + q_span)]
    return fit_quasi_polynomial(samples, rho, m, 2 * m + 1)


# Expected verdicts as closed-form predicates on the deleted hyperplanes.

def expected_single(root: str, m: int, sel: Selector) -> str:
    i, j, c = sel.i, sel.j, sel.c
    if root == "C":
        ok = sel.kind == "diff"
    else:
        ok = ((sel.kind == "diff" and c == 0 and j == m + 1 - i)
              or (sel.kind == "diff" and c == 1)
              or (sel.kind == "sum" and c == 0 and i == 1)
              or (sel.kind == "sum" and c == 1 and j == m))
    return POLYNOMIAL if ok else QUASI


def expected_pair(root: str, m: int, kind: str, i: int, j: int | None) -> str:
    if root == "C":
        ok = ((kind == "coord2" and m % 2 == 1 and i == (m + 1) // 2)
              or kind == "diff"
              or (kind == "sum" and i + j == m + 1))
    else:
        ok = kind in ("diff", "sum") and i + j == m + 1
    return POLYNOMIAL if ok else QUASI


@dataclass
class Row:
    kind: str  # "single" or "pair"
    hyperplanes: str
    verdict: str
    expected: str
    oracle: str | None = None
    restriction_verdict: str | None = None

    @property
    def agree(self) -> bool:
        return (self.verdict == self.expected
                and self.oracle in (None, self.verdict)
                and self.restriction_verdict in (None, self.verdict))

    def to_json(self) -> dict:
        return {"kind": self.kind, "hyperplanes": self.hyperplanes, "verdict": self.verdict,
                "expected": self.expected, "oracle": self.oracle,
                "restrictionVerdict": self.restriction_verdict, "agree": self.agree}


@dataclass
class ClassificationReport:
    root: str
    m: int
    rows: list[Row] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.agree for r in self.rows)

    def to_json(self) -> dict:
        return {"root": self.root, "m": self.m, "pass": self.passed,
                "rows": [r.to_json() for r in self.rows]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "hyperplanes", "verdict", "expected", "oracle", "restriction_verdict", "agree"])
        for r in self.rows:
            w.writerow([r.kind, r.hyperplanes, r.verdict, r.expected, r.oracle or "",
                        r.restriction_verdict or "", r.agree])
        return buf.getvalue()


def _pairs_of(root: str, m: int) -> list[tuple[str, int, int | None]]:
    seen = []
    for s in shi_selectors(root, m):
        key = (s.kind, s.i, s.j)
        if key not in seen:
            seen.append(key)
    return seen


def verify_corollaries(root: str, m: int, *, singles: bool = True, pairs: bool = True,
                       oracle: bool = False) -> ClassificationReport:
    """Classify every hyperplane and every parallel pair, compare with the expected lists.

    With ``oracle`` the deletion counts are also fitted from brute-force
    samples and must give the same constituents as the catalog.
    """
    if root not in ("C", "D"):
        raise ClassificationError(f"classification covers types C and D, not {root!r}")
    if m < 2:
        raise ClassificationError("need m >= 2")
    report = ClassificationReport(root, m)
    groups: list[tuple[str, list[Selector], str]] = []
    if singles:
        for s in shi_selectors(root, m):
            groups.append(("single", [s], expected_single(root, m, s)))
    if pairs:
        for kind, i, j in _pairs_of(root, m):
            groups.append(("pair", _pair(kind, i, j), expected_pair(root, m, kind, i, j)))
    for kind, sels, expected in groups:
        qp = _catalog_qp(root, m, sels)
        row = Row(kind, " & ".join(str(selector_to_hyperplane(s, m)) for s in sels),
                  _verdict(qp), expected, restriction_verdict=restriction_sum_verdict(root, m, sels))
        if oracle:
            oqp = oracle_deletion_quasi_polynomial(root, m, sels)
            # the lcm period of a deletion can drop to 1, so compare minimal forms
            a, b = reduce_period(oqp), reduce_period(qp)
            same = a.period == b.period and a.constituents == b.constituents
            row.oracle = _verdict(oqp) if same else "mismatch"
        report.rows.append(row)
    return report
