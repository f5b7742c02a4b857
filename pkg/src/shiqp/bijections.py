"""The shift maps between type D complements at q and type B complements at q + 2.

``phi`` adds 1 to every coordinate and sends a zero coordinate to q + 1;
``psi`` undoes it. Restricted variants pair a D restriction with the
matching B restriction, augmented by x_j = -1 where the D side forces
x_j != 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .arrangement import (
    Arrangement,
    Hyperplane,
    augmented_b,
    build_shi,
    diff,
    selector_to_hyperplane,
    sum_,
)
from .counting import enumerate_complement, enumerate_on_flat, in_complement

VARIANTS = ("FullD", "SumZero", "DiffOne", "DiffZero", "SumOne")


class BijectionError(ValueError):
    pass


@dataclass(frozen=True)
class Variant:
    kind: str
    i: int | None = None
    j: int | None = None

    def __post_init__(self) -> None:
        if self.kind not in VARIANTS:
            raise BijectionError(f"unknown variant {self.kind!r}")
        if self.kind == "FullD":
            if self.i is not None or self.j is not None:
                raise BijectionError("FullD takes no indices")
        elif self.i is None or self.j is None or not 1 <= self.i < self.j:
            raise BijectionError(f"{self.kind} needs 1 <= i < j")

    def __str__(self) -> str:
        return self.kind if self.kind == "FullD" else f"{self.kind}{{{self.i},{self.j}}}"


def phi(x: Sequence[int], q: int) -> tuple[int, ...]:
    zeros = [u for u, v in enumerate(x) if v % q == 0]
    if len(zeros) > 1:
        raise BijectionError(f"{tuple(x)} has {len(zeros)} zero coordinates")
    n = q + 2
    return tuple((v % q + 1 + (q if u in zeros else 0)) % n for u, v in enumerate(x))


def psi(y: Sequence[int], q: int) -> tuple[int, ...]:
    n = q + 2
    tops = [u for u, v in enumerate(y) if v % n == q + 1]
    if len(tops) > 1:
        raise BijectionError(f"{tuple(y)} has {len(tops)} coordinates equal to q+1")
    return tuple((v % n - 1 - (q if u in tops else 0)) % q for u, v in enumerate(y))


def sides(variant: Variant, m: int) -> tuple[tuple[Arrangement, list[Hyperplane]], tuple[Arrangement, list[Hyperplane]]]:
    """(D arrangement, flat) and (B-side arrangement, flat) for a variant."""
    if variant.kind == "FullD":
        return (build_shi("D", m), []), (build_shi("B", m), [])
    i, j = variant.i, variant.j
    if j > m:
        raise BijectionError(f"{variant} out of range for m={m}")
    sel = {
        "SumZero": sum_(i, j, 0),
        "DiffOne": diff(i, j, 1),
        "DiffZero": diff(i, j, 0),
        "SumOne": sum_(i, j, 1),
    }[variant.kind]
    h = selector_to_hyperplane(sel, m)
    d_side = (build_shi("D", m), [h])
    if variant.kind in ("DiffZero", "SumOne"):
        b_side = (augmented_b(m, j), [h])
    else:
        b_side = (build_shi("B", m), [h])
    return d_side, b_side


@dataclass
class BijectionReport:
    variant: str
    m: int
    q: int
    domain_size: int
    codomain_size: int
    passed: bool
    counterexample: tuple[int, ...] | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "m": self.m,
            "q": self.q,
            "domainSize": self.domain_size,
            "codomainSize": self.codomain_size,
            "pass": self.passed,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "reason": self.reason,
        }


def verify_bijection(variant: Variant, m: int, q: int, *, budget: int | None = None) -> BijectionReport:
    (d_arr, d_flat), (b_arr, b_flat) = sides(variant, m)
    domain = enumerate_on_flat(d_arr, d_flat, q, budget=budget)
    codomain = enumerate_on_flat(b_arr, b_flat, q + 2, budget=budget)
    cod_set = set(codomain)
    report = BijectionReport(str(variant), m, q, len(domain), len(codomain), True)

    def fail(x, why):
        report.passed = False
        report.counterexample = x
        report.reason = why
        return report

    # domain is lexicographic, so the first failure is the smallest counterexample
    seen: dict[tuple[int, ...], tuple[int, ...]] = {}
    for x in domain:
        try:
            y = phi(x, q)
        except BijectionError as e:
            return fail(x, str(e))
        if y not in cod_set:
            return fail(x, f"phi(x) = {y} is not in the codomain")
        if y in seen:
            return fail(x, f"phi(x) = phi({seen[y]}) = {y}")
        seen[y] = x
        if psi(y, q) != x:
            return fail(x, "psi(phi(x)) != x")
    for y in codomain:
        try:
            x = psi(y, q)
        except BijectionError as e:
            return fail(y, str(e))
        if not in_complement(d_arr, x, q, d_flat):
            return fail(y, f"psi(y) = {x} is not in the domain")
        if phi(x, q) != y:
            return fail(y, "phi(psi(y)) != y")
    if len(domain) != len(codomain):
        return fail(None, f"|domain| = {len(domain)} != |codomain| = {len(codomain)}")
    return report


def variants_for(m: int) -> list[Variant]:
    out = [Variant("FullD")]
    for kind in VARIANTS[1:]:
        out += [Variant(kind, i, j) for i in range(1, m + 1) for j in range(i + 1, m + 1)]
    return out
