"""Closed-form counts for Shi arrangements of types B, C, D and their restrictions.

Every expression is evaluated in exact rational arithmetic. Boundary indices
can produce negative exponents (``(T+1)**(i-2)`` at ``i == 1``); these are
legal rational powers and the combined expression is integral on the domain
``q >= 2m + 1``, which is asserted on every evaluation.

Two independent transcriptions are kept: ``_t_form`` uses ``T = q - 2m`` as
in the summary statements, ``_q_form`` spells the bases out in ``q`` as in
the per-case statements. ``evaluate`` uses the first; tests compare both.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arrangement import (
    Arrangement,
    Hyperplane,
    Selector,
    augmented_b,
    build_shi,
    coord,
    coord2,
    diff,
    selector_to_hyperplane,
    sum_,
)

FAMILIES = (
    "Full",
    "Rest2xi0", "Rest2xi1",
    "RestXi0", "RestXi1",
    "RestDiff0", "RestDiff1",
    "RestSum0", "RestSum1",
    "AuxLemma35", "AuxLemma37",
)
PAIR_FAMILIES = ("RestDiff0", "RestDiff1", "RestSum0", "RestSum1", "AuxLemma35", "AuxLemma37")
COORD_FAMILIES = ("Rest2xi0", "Rest2xi1", "RestXi0", "RestXi1")

VALID_FAMILIES = {
    "B": ("Full", "RestXi0", "RestXi1", "RestDiff0", "RestDiff1", "RestSum0", "RestSum1",
          "AuxLemma35", "AuxLemma37"),
    "C": ("Full", "Rest2xi0", "Rest2xi1", "RestDiff0", "RestDiff1", "RestSum0", "RestSum1"),
    "D": ("Full", "RestDiff0", "RestDiff1", "RestSum0", "RestSum1"),
}

# families whose value depends on the parity of q
PARITY_SPLIT = {
    "B": {"RestDiff0", "RestSum0", "RestSum1"},
    "C": {"Rest2xi0", "Rest2xi1", "RestSum0", "RestSum1"},
    "D": {"RestDiff0", "RestSum0", "RestSum1"},
}

CITATIONS = {
    ("B", "Full"): "type B Shi arrangement: (q-2m)^m",
    ("C", "Full"): "type C Shi arrangement: (q-2m)^m",
    ("D", "Full"): "type D Shi arrangement: (q-2m+2)^m",
    ("B", "RestXi0"): "B restricted to x_i=0",
    ("B", "RestXi1"): "B restricted to x_i=1",
    ("B", "RestDiff0"): "B restricted to x_i-x_j=0",
    ("B", "RestDiff1"): "B restricted to x_i-x_j=1",
    ("B", "RestSum0"): "B restricted to x_i+x_j=0",
    ("B", "RestSum1"): "B restricted to x_i+x_j=1",
    ("B", "AuxLemma35"): "(B u {x_j=-1}) restricted to x_i-x_j=0, x_j=-1",
    ("B", "AuxLemma37"): "(B u {x_j=-1}) restricted to x_i+x_j=1, x_j=-1",
    ("C", "Rest2xi0"): "C restricted to 2x_i=0",
    ("C", "Rest2xi1"): "C restricted to 2x_i=1",
    ("C", "RestDiff0"): "C restricted to x_i-x_j=0",
    ("C", "RestDiff1"): "C restricted to x_i-x_j=1",
    ("C", "RestSum0"): "C restricted to x_i+x_j=0",
    ("C", "RestSum1"): "C restricted to x_i+x_j=1",
    ("D", "RestDiff0"): "D restricted to x_i-x_j=0",
    ("D", "RestDiff1"): "D restricted to x_i-x_j=1",
    ("D", "RestSum0"): "D restricted to x_i+x_j=0",
    ("D", "RestSum1"): "D restricted to x_i+x_j=1",
}


class FormulaError(ValueError):
    pass


@dataclass(frozen=True)
class FormulaId:
    root: str
    family: str
    parity: str = "both"  # "odd" / "even" pin a branch, "both" selects by q

    def __post_init__(self) -> None:
        if self.root not in VALID_FAMILIES:
            raise FormulaError(f"unknown root type {self.root!r}")
        if self.family not in VALID_FAMILIES[self.root]:
            raise FormulaError(f"family {self.family} is not defined for type {self.root}")
        if self.parity not in ("odd", "even", "both"):
            raise FormulaError(f"bad parity {self.parity!r}")

    @property
    def is_pair(self) -> bool:
        return self.family in PAIR_FAMILIES

    @property
    def parity_split(self) -> bool:
        return self.family in PARITY_SPLIT[self.root]

    def __str__(self) -> str:
        return f"{self.root}:{self.family}" + ("" if self.parity == "both" else f":{self.parity}")


def _pw(base: int, exp: int) -> Fraction:
    return Fraction(base) ** exp


def _t_form(root: str, family: str, m: int, i: int, j: int, q: int) -> Fraction:
    T = q - 2 * m
    odd = q % 2 == 1
    if family == "Full":
        return _pw(T + 2, m) if root == "D" else _pw(T, m)
    if family == "AuxLemma35":
        return _pw(T + 1, m - i - 1) * _pw(T + 2, i - 1)
    if family == "AuxLemma37":
        return _pw(T, i - 1) * _pw(T + 1, m - i - 1)
    if root == "B":
        if family == "RestXi0":
            return _pw(T + 2, m - 1)
        if family == "RestXi1":
            return _pw(T, i - 1) * _pw(T + 1, m - i)
        if family == "RestDiff0":
            if odd:
                return _pw(T + 1, j - i - 1) * _pw(T + 2, m - j) * (_pw(T + 2, i) - _pw(T + 1, i - 1))
            return _pw(T + 1, j - i - 1) * _pw(T + 2, i - 1) * (_pw(T + 2, m - j + 1) - _pw(T + 1, m - j))
        if family == "RestDiff1":
            return _pw(T, m + i - j) * _pw(T + 1, j - i - 1)
        if family == "RestSum0":
            if odd:
                return _pw(T, m - j) * _pw(T + 1, j - i) * (_pw(T + 2, i - 1) - _pw(T + 1, i - 2))
            return _pw(T, m - j + 1) * _pw(T + 1, j - i - 1) * _pw(T + 2, i - 1)
        if family == "RestSum1":
            if odd:
                return _pw(T, i - 1) * _pw(T + 1, j - i) * _pw(T + 2, m - j)
            return _pw(T, i - 1) * _pw(T + 1, j - i - 1) * (_pw(T + 2, m - j + 1) - _pw(T + 1, m - j))
    if root == "C":
        if family == "Rest2xi0":
            v = _pw(T, m - i) * _pw(T + 1, i - 1)
            return v if odd else 2 * v
        if family == "Rest2xi1":
            return _pw(T, i - 1) * _pw(T + 1, m - i) if odd else Fraction(0)
        if family == "RestDiff0":
            return _pw(T + 1, j - i - 1) * _pw(T + 2, m - j + i)
        if family == "RestDiff1":
            return _pw(T, m - j + i) * _pw(T + 1, j - i - 1)
        if family == "RestSum0":
            if odd:
                return _pw(T, m - j) * _pw(T + 1, j - i) * _pw(T + 2, i - 1)
            return _pw(T, m - j) * _pw(T + 1, j - i - 1) * _pw(T + 2, i)
        if family == "RestSum1":
            if odd:
                return _pw(T, i - 1) * _pw(T + 1, j - i) * _pw(T + 2, m - j)
            return _pw(T, i) * _pw(T + 1, j - i - 1) * _pw(T + 2, m - j)
    if root == "D":
        if family == "RestDiff0":
            corr = _pw(T + 3, m - i - 1) * _pw(T + 4, i - 1)
            if odd:
                return _pw(T + 3, j - i - 1) * _pw(T + 4, m - j) * (_pw(T + 4, i) - _pw(T + 3, i - 1)) - corr
            return _pw(T + 3, j - i - 1) * _pw(T + 4, i - 1) * (_pw(T + 4, m - j + 1) - _pw(T + 3, m - j)) - corr
        if family == "RestDiff1":
            return _pw(T + 2, m + i - j) * _pw(T + 3, j - i - 1)
        if family == "RestSum0":
            if odd:
                return _pw(T + 2, m - j) * _pw(T + 3, j - i) * (_pw(T + 4, i - 1) - _pw(T + 3, i - 2))
            return _pw(T + 2, m - j + 1) * _pw(T + 3, j - i - 1) * _pw(T + 4, i - 1)
        if family == "RestSum1":
            corr = _pw(T + 2, i - 1) * _pw(T + 3, m - i - 1)
            if odd:
                return _pw(T + 2, i - 1) * _pw(T + 3, j - i) * _pw(T + 4, m - j) - corr
            return _pw(T + 2, i - 1) * _pw(T + 3, j - i - 1) * (_pw(T + 4, m - j + 1) - _pw(T + 3, m - j)) - corr
    raise FormulaError(f"no formula for {root}:{family}")


def _q_form(root: str, family: str, m: int, i: int, j: int, q: int) -> Fraction:
    odd = q % 2 == 1
    n = 2 * m
    if family == "Full":
        return _pw(q - n + 2, m) if root == "D" else _pw(q - n, m)
    if family == "AuxLemma35":
        return _pw(q - n + 1, m - i - 1) * _pw(q - n + 2, i - 1)
    if family == "AuxLemma37":
        return _pw(q - n, i - 1) * _pw(q - n + 1, m - i - 1)
    if root == "C":
        if family == "Rest2xi0":
            return (1 if odd else 2) * _pw(q - n, m - i) * _pw(q - n + 1, i - 1)
        if family == "Rest2xi1":
            return _pw(q - n, i - 1) * _pw(q - n + 1, m - i) if odd else Fraction(0)
        if family == "RestDiff0":
            return _pw(q - n + 1, j - i - 1) * _pw(q - n + 2, m - j + i)
        if family == "RestDiff1":
            return _pw(q - n, m - j + i) * _pw(q - n + 1, j - i - 1)
        if family == "RestSum0":
            if odd:
                return _pw(q - n, m - j) * _pw(q - n + 1, j - i) * _pw(q - n + 2, i - 1)
            return _pw(q - n, m - j) * _pw(q - n + 1, j - i - 1) * _pw(q - n + 2, i)
        if family == "RestSum1":
            if odd:
                return _pw(q - n, i - 1) * _pw(q - n + 1, j - i) * _pw(q - n + 2, m - j)
            return _pw(q - n, i) * _pw(q - n + 1, j - i - 1) * _pw(q - n + 2, m - j)
    if root == "D":
        a, b, c = q - n + 2, q - n + 3, q - n + 4
        if family == "RestSum0":
            if odd:
                return _pw(a, m - j) * _pw(b, j - i) * (_pw(c, i - 1) - _pw(b, i - 2))
            return _pw(a, m - j + 1) * _pw(b, j - i - 1) * _pw(c, i - 1)
        if family == "RestDiff1":
            return _pw(a, m + i - j) * _pw(b, j - i - 1)
        if family == "RestDiff0":
            if odd:
                return (_pw(b, j - i - 1) * _pw(c, m - j) * (_pw(c, i) - _pw(b, i - 1))
                        - _pw(b, m - i - 1) * _pw(c, i - 1))
            return (_pw(b, j - i - 1) * _pw(c, i - 1) * (_pw(c, m - j + 1) - _pw(b, m - j))
                    - _pw(b, m - i - 1) * _pw(c, i - 1))
        if family == "RestSum1":
            if odd:
                return _pw(a, i - 1) * _pw(b, j - i) * _pw(c, m - j) - _pw(a, i - 1) * _pw(b, m - i - 1)
            return (_pw(a, i - 1) * _pw(b, j - i - 1) * (_pw(c, m - j + 1) - _pw(b, m - j))
                    - _pw(a, i - 1) * _pw(b, m - i - 1))
    raise FormulaError(f"no second transcription for {root}:{family}")


def _b_xi0_corrected(m: int, i: int, j: int, q: int) -> Fraction:
    T = q - 2 * m
    return _pw(T + 1, m - i) * _pw(T + 2, i - 1)


# Catalog entries are kept verbatim. The B x_i = 0 entry, (T+2)^(m-1), only
# matches exhaustive counts at i = m; the form below matches them for every i
# (hand check: m=2, q=5, i=1 leaves x_2 in {2, 3}, i.e. 2 points, not 3).
ERRATA = {("B", "RestXi0"): _b_xi0_corrected}


def has_q_form(fid: FormulaId) -> bool:
    return fid.root != "B" or fid.family in ("Full", "AuxLemma35", "AuxLemma37")


def min_q(fid: FormulaId, m: int) -> int:
    if fid.family == "Full" and fid.root == "D":
        return 2 * m - 1
    return 2 * m + 1


def _check(fid: FormulaId, m: int, i: int | None, j: int | None, q: int) -> tuple[int, int]:
    if m < 1:
        raise FormulaError("m must be positive")
    if fid.family == "Full":
        i, j = 1, 1
    elif fid.is_pair:
        if i is None or j is None or not 1 <= i < j <= m:
            raise FormulaError(f"{fid} needs 1 <= i < j <= m, got i={i}, j={j}, m={m}")
    else:
        if i is None or not 1 <= i <= m:
            raise FormulaError(f"{fid} needs 1 <= i <= m, got i={i}, m={m}")
        if j is not None:
            raise FormulaError(f"{fid} takes no j")
        j = 0
    if q < min_q(fid, m):
        raise FormulaError(f"{fid} is only claimed for q >= {min_q(fid, m)}, got q={q}")
    if fid.parity != "both" and (q % 2 == 1) != (fid.parity == "odd"):
        raise FormulaError(f"{fid} pins the {fid.parity} branch but q={q}")
    return i, j


def _as_int(v: Fraction, what: str) -> int:
    if v.denominator != 1:
        raise FormulaError(f"{what} evaluated to non-integer {v}")
    return v.numerator


def evaluate(fid: FormulaId, m: int, q: int, i: int | None = None, j: int | None = None,
             *, errata: bool = False) -> int:
    """Catalog value; ``errata=True`` substitutes the corrected form where one exists."""
    i, j = _check(fid, m, i, j, q)
    fix = ERRATA.get((fid.root, fid.family)) if errata else None
    v = fix(m, i, j, q) if fix else _t_form(fid.root, fid.family, m, i, j, q)
    return _as_int(v, f"{fid} (m={m}, i={i}, j={j}, q={q})")


def evaluate_q_form(fid: FormulaId, m: int, q: int, i: int | None = None, j: int | None = None) -> int:
    i, j = _check(fid, m, i, j, q)
    return _as_int(_q_form(fid.root, fid.family, m, i, j, q), f"{fid} (m={m}, i={i}, j={j}, q={q})")


def eval_full_shi(root: str, m: int, q: int) -> int:
    return evaluate(FormulaId(root, "Full"), m, q)


def eval_restriction(fid: FormulaId, m: int, i: int, j: int | None, q: int, *, errata: bool = False) -> int:
    if fid.family == "Full" or fid.family.startswith("Aux"):
        raise FormulaError(f"{fid} is not a restriction family")
    return evaluate(fid, m, q, i, j, errata=errata)


def eval_auxiliary(family: str, m: int, i: int, j: int, q: int) -> int:
    if family not in ("AuxLemma35", "AuxLemma37"):
        raise FormulaError(f"{family} is not an auxiliary family")
    return evaluate(FormulaId("B", family), m, q, i, j)


def eval_deletion(root: str, family: str, m: int, i: int, j: int | None, q: int, *,
                  errata: bool = False) -> int:
    """Count for the arrangement with the selected hyperplane removed."""
    return eval_full_shi(root, m, q) + eval_restriction(FormulaId(root, family), m, i, j, q, errata=errata)


def type_d_via_type_b(family: str, m: int, i: int, j: int, q: int) -> int:
    """D restriction counts rebuilt from the type B catalog at modulus q + 2.

    The shift map identifies the D side at q with the (possibly augmented)
    B side at q + 2; the augmented cases subtract the auxiliary counts.
    """
    B = lambda fam: evaluate(FormulaId("B", fam), m, q + 2, i, j)
    if family in ("RestSum0", "RestDiff1"):
        return B(family)
    if family == "RestDiff0":
        return B("RestDiff0") - B("AuxLemma35")
    if family == "RestSum1":
        return B("RestSum1") - B("AuxLemma37")
    raise FormulaError(f"no type B route for D:{family}")


_FAMILY_SELECTOR = {
    "Rest2xi0": lambda i, j: coord2(i, 0),
    "Rest2xi1": lambda i, j: coord2(i, 1),
    "RestXi0": lambda i, j: coord(i, 0),
    "RestXi1": lambda i, j: coord(i, 1),
    "RestDiff0": lambda i, j: diff(i, j, 0),
    "RestDiff1": lambda i, j: diff(i, j, 1),
    "RestSum0": lambda i, j: sum_(i, j, 0),
    "RestSum1": lambda i, j: sum_(i, j, 1),
}


def family_selector(family: str, i: int, j: int | None = None) -> Selector:
    try:
        return _FAMILY_SELECTOR[family](i, j)
    except KeyError:
        raise FormulaError(f"{family} has no single-hyperplane selector") from None


def target(fid: FormulaId, m: int, i: int | None = None, j: int | None = None) -> tuple[Arrangement, list[Hyperplane]]:
    """The arrangement and the hyperplanes it is restricted to for a catalog entry."""
    if fid.family == "Full":
        return build_shi(fid.root, m), []
    if fid.family == "AuxLemma35":
        arr = augmented_b(m, j)
        return arr, [selector_to_hyperplane(diff(i, j, 0), m), selector_to_hyperplane(coord(j, -1), m)]
    if fid.family == "AuxLemma37":
        arr = augmented_b(m, j)
        return arr, [selector_to_hyperplane(sum_(i, j, 1), m), selector_to_hyperplane(coord(j, -1), m)]
    return build_shi(fid.root, m), [selector_to_hyperplane(family_selector(fid.family, i, j), m)]


def index_choices(fid: FormulaId, m: int) -> list[tuple[int | None, int | None]]:
    if fid.family == "Full":
        return [(None, None)]
    if fid.is_pair:
        return [(i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    return [(i, None) for i in range(1, m + 1)]


def catalog() -> list[dict]:
    """JSON-ready listing of every closed form."""
    out = []
    for root, fams in VALID_FAMILIES.items():
        for fam in fams:
            fid = FormulaId(root, fam)
            out.append({
                "id": str(fid),
                "root": root,
                "family": fam,
                "indices": "none" if fam == "Full" else ("i<j" if fid.is_pair else "i"),
                "domain": "q >= 2m-1" if (fam == "Full" and root == "D") else "q >= 2m+1",
                "parity": "odd/even" if fid.parity_split else "both",
                "source": CITATIONS[(root, fam)],
                "erratum": (root, fam) in ERRATA,
            })
    return out
