"""Integral hyperplane arrangements and the Shi B/C/D catalog."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Literal, Sequence

RootType = Literal["B", "C", "D"]
ROOT_TYPES: tuple[str, ...] = ("B", "C", "D")


class ArrangementError(ValueError):
    pass


@dataclass(frozen=True)
class Hyperplane:
    """The solution set of ``coeffs . x = offset``; never normalized."""

    coeffs: tuple[int, ...]
    offset: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(int(a) for a in self.coeffs))
        object.__setattr__(self, "offset", int(self.offset))
        if not any(self.coeffs):
            raise ArrangementError("hyperplane needs a nonzero coefficient")

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def to_json(self) -> dict:
        return {"a": list(self.coeffs), "b": self.offset}

    @classmethod
    def from_json(cls, obj: dict) -> "Hyperplane":
        return cls(tuple(obj["a"]), obj["b"])

    def __str__(self) -> str:
        parts = []
        for k, a in enumerate(self.coeffs, start=1):
            if a == 0:
                continue
            mag = "" if abs(a) == 1 else str(abs(a))
            sign = "-" if a < 0 else "+"
            parts.append((sign, f"{mag}x{k}"))
        s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
        for sign, body in parts[1:]:
            s += f" {sign} {body}"
        return f"{s} = {self.offset}"


@dataclass(frozen=True)
class Arrangement:
    dim: int
    hyperplanes: tuple[Hyperplane, ...] = ()

    def __post_init__(self) -> None:
        if self.dim < 1:
            raise ArrangementError("dimension must be at least 1")
        hs = tuple(self.hyperplanes)
        object.__setattr__(self, "hyperplanes", hs)
        seen = set()
        for h in hs:
            if h.dim != self.dim:
                raise ArrangementError(f"{h} has length {h.dim}, expected {self.dim}")
            if h in seen:
                raise ArrangementError(f"duplicate hyperplane {h}")
            seen.add(h)

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def __contains__(self, h: object) -> bool:
        return h in self.hyperplanes

    def as_set(self) -> frozenset[Hyperplane]:
        return frozenset(self.hyperplanes)

    def to_json(self) -> dict:
        return {"m": self.dim, "hyperplanes": [h.to_json() for h in self.hyperplanes]}

    @classmethod
    def from_json(cls, obj: dict) -> "Arrangement":
        return cls(int(obj["m"]), tuple(Hyperplane.from_json(h) for h in obj["hyperplanes"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# Selector kinds: "coord2" (2x_i = c), "diff" (x_i - x_j = c),
# "sum" (x_i + x_j = c), "coord" (x_i = c).
SELECTOR_KINDS = ("coord2", "diff", "sum", "coord")


@dataclass(frozen=True)
class Selector:
    kind: str
    i: int
    c: int
    j: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in SELECTOR_KINDS:
            raise ArrangementError(f"unknown selector kind {self.kind!r}")
        pair = self.kind in ("diff", "sum")
        if pair and self.j is None:
            raise ArrangementError(f"{self.kind} selector needs j")
        if not pair and self.j is not None:
            raise ArrangementError(f"{self.kind} selector takes no j")
        if self.i < 1:
            raise ArrangementError("selector indices start at 1")
        if pair and not self.i < self.j:
            raise ArrangementError("pair selectors require i < j")
        allowed = (-1, 0, 1) if self.kind == "coord" else (0, 1)
        if self.c not in allowed:
            raise ArrangementError(f"offset {self.c} not allowed for {self.kind}")

    def check(self, m: int) -> None:
        top = self.j if self.j is not None else self.i
        if self.i < 1 or top > m:
            raise ArrangementError(f"selector indices out of range for m={m}: {self}")

    def __str__(self) -> str:
        lhs = {"coord2": f"2x{self.i}", "coord": f"x{self.i}",
               "diff": f"x{self.i} - x{self.j}", "sum": f"x{self.i} + x{self.j}"}[self.kind]
        return f"{lhs} = {self.c}"


def coord2(i: int, c: int) -> Selector:
    return Selector("coord2", i, c)


def diff(i: int, j: int, c: int) -> Selector:
    return Selector("diff", i, c, j)


def sum_(i: int, j: int, c: int) -> Selector:
    return Selector("sum", i, c, j)


def coord(i: int, c: int) -> Selector:
    return Selector("coord", i, c)


def selector_to_hyperplane(sel: Selector, m: int) -> Hyperplane:
    sel.check(m)
    a = [0] * m
    if sel.kind == "coord2":
        a[sel.i - 1] = 2
    elif sel.kind == "coord":
        a[sel.i - 1] = 1
    else:
        a[sel.i - 1] = 1
        a[sel.j - 1] = -1 if sel.kind == "diff" else 1
    return Hyperplane(tuple(a), sel.c)


def shi_selectors(root: str, m: int) -> list[Selector]:
    """Catalog order: coordinate hyperplanes by index, then pairs (i, j) lexicographic."""
    if root not in ROOT_TYPES:
        raise ArrangementError(f"unknown root type {root!r}")
    if m < 1:
        raise ArrangementError("m must be at least 1")
    out: list[Selector] = []
    if root in ("B", "C"):
        kind = "coord" if root == "B" else "coord2"
        for i in range(1, m + 1):
            out += [Selector(kind, i, 0), Selector(kind, i, 1)]
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            out += [diff(i, j, 0), diff(i, j, 1), sum_(i, j, 0), sum_(i, j, 1)]
    return out


def build_shi(root: str, m: int) -> Arrangement:
    return Arrangement(m, tuple(selector_to_hyperplane(s, m) for s in shi_selectors(root, m)))


def delete_hyperplanes(arr: Arrangement, hs: Iterable[Hyperplane]) -> Arrangement:
    drop = set(hs)
    missing = [h for h in drop if h not in arr]
    if missing:
        raise ArrangementError(f"not in arrangement: {', '.join(map(str, missing))}")
    return Arrangement(arr.dim, tuple(h for h in arr.hyperplanes if h not in drop))


def add_hyperplane(arr: Arrangement, h: Hyperplane) -> Arrangement:
    if h.dim != arr.dim:
        raise ArrangementError(f"{h} has length {h.dim}, expected {arr.dim}")
    if h in arr:
        raise ArrangementError(f"{h} already present")
    return Arrangement(arr.dim, arr.hyperplanes + (h,))


def augmented_b(m: int, j: int) -> Arrangement:
    """B_m together with the extra hyperplane x_j = -1."""
    return add_hyperplane(build_shi("B", m), selector_to_hyperplane(coord(j, -1), m))


def coefficient_columns(arr: Arrangement) -> list[tuple[int, ...]]:
    return [h.coeffs for h in arr.hyperplanes]


def hyperplanes_of(arr: Arrangement, selectors: Sequence[Selector]) -> list[Hyperplane]:
    return [selector_to_hyperplane(s, arr.dim) for s in selectors]
