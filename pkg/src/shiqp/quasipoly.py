"""Quasi-polynomials: fitting constituents from counts, periods."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import lcm
from typing import Sequence

from .arrangement import Arrangement
from .counting import CountSample
from .exactmath import IntMatrix, RatPolynomial, interpolate_polynomial, smith_elementary_divisors

DEFAULT_MAX_COLUMNS = 18


class FitError(ValueError):
    """A validation sample disagrees with the fitted constituent."""

    def __init__(self, message: str, q: int | None = None, expected: Fraction | None = None,
                 actual: int | None = None):
        super().__init__(message)
        self.q = q
        self.expected = expected
        self.actual = actual


@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    constituents: tuple[RatPolynomial, ...]
    degree: int
    q_min: int
    # per residue: smallest sampled q from which every sample in that class matches
    valid_from: tuple[int | None, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.period < 1:
            raise ValueError("period must be positive")
        if len(self.constituents) != self.period:
            raise ValueError("need exactly one constituent per residue class")

    def constituent(self, q: int) -> RatPolynomial:
        return self.constituents[q % self.period]

    def __call__(self, q: int) -> int:
        return evaluate(self, q)

    def is_monic(self) -> bool:
        return all(c.degree == self.degree and c.leading == 1 for c in self.constituents)

    def to_json(self) -> dict:
        return {
            "period": self.period,
            "qmin": self.q_min,
            "degree": self.degree,
            "constituents": [c.to_pairs() for c in self.constituents],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "QuasiPolynomial":
        cons = tuple(RatPolynomial.from_pairs(c) for c in obj["constituents"])
        degree = obj.get("degree", max((c.degree for c in cons), default=0))
        return cls(int(obj["period"]), cons, int(degree), int(obj["qmin"]))

    def __str__(self) -> str:
        if self.period == 1:
            return str(self.constituents[0])
        return "; ".join(f"q≡{r} (mod {self.period}): {c}" for r, c in enumerate(self.constituents))


def evaluate(qp: QuasiPolynomial, q: int) -> int:
    if q < qp.q_min:
        raise ValueError(f"q={q} is below the validity threshold {qp.q_min}")
    v = qp.constituent(q)(q)
    if v.denominator != 1:
        raise ArithmeticError(f"constituent {q % qp.period} gives non-integer {v} at q={q}")
    return v.numerator


def fit_quasi_polynomial(samples: Sequence[CountSample], period: int, degree: int,
                         q_min: int) -> QuasiPolynomial:
    """Interpolate each residue class from its first degree+1 samples at q >= q_min.

    The remaining samples of the class are validation points and must agree
    exactly. Samples below q_min are used only to report how far down each
    fitted constituent keeps matching.
    """
    if period < 1 or degree < 0:
        raise ValueError("period must be positive and degree non-negative")
    by_q = {}
    for s in samples:
        if s.q in by_q and by_q[s.q] != s.count:
            raise FitError(f"conflicting samples at q={s.q}", s.q)
        by_q[s.q] = s.count
    cons = []
    valid_from = []
    for r in range(period):
        cls_q = sorted(q for q in by_q if q % period == r)
        fit_q = [q for q in cls_q if q >= q_min]
        if len(fit_q) < degree + 2:
            raise FitError(
                f"residue {r} mod {period}: need {degree + 2} samples with q >= {q_min}, "
                f"have {len(fit_q)}"
            )
        poly = interpolate_polynomial([(q, by_q[q]) for q in fit_q[:degree + 1]])
        for q in fit_q[degree + 1:]:
            if poly(q) != by_q[q]:
                raise FitError(
                    f"residue {r} mod {period}: sample at q={q} is {by_q[q]}, fit predicts {poly(q)}",
                    q, poly(q), by_q[q],
                )
        start = fit_q[0]
        for q in reversed([q for q in cls_q if q < q_min]):
            if poly(q) != by_q[q]:
                break
            start = q
        cons.append(poly)
        valid_from.append(start)
    return QuasiPolynomial(period, tuple(cons), degree, q_min, tuple(valid_from))


def _divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def minimal_period(qp: QuasiPolynomial) -> int:
    for d in _divisors(qp.period):
        if all(qp.constituents[r] == qp.constituents[r % d] for r in range(qp.period)):
            return d
    return qp.period


def reduce_period(qp: QuasiPolynomial) -> QuasiPolynomial:
    d = minimal_period(qp)
    vf = qp.valid_from[:d] if qp.valid_from else ()
    return QuasiPolynomial(d, qp.constituents[:d], qp.degree, qp.q_min, vf)


@lru_cache(maxsize=None)
def _largest_divisor(columns: tuple[tuple[int, ...], ...]) -> int:
    d = smith_elementary_divisors(IntMatrix.from_columns(columns))
    return d[-1] if d else 1


def lcm_period(arr: Arrangement, *, augmented: bool = False,
               max_columns: int | None = DEFAULT_MAX_COLUMNS) -> int:
    """lcm over nonempty column subsets J of the largest elementary divisor of A_J.

    ``augmented`` appends each hyperplane's offset as an extra row, i.e. uses
    (A | b) instead of the coefficient matrix alone.
    """
    cols = [h.coeffs + ((h.offset,) if augmented else ()) for h in arr]
    # a repeated column never changes the elementary divisors of a subset
    cols = sorted(set(cols))
    if not cols:
        return 1
    if max_columns is not None and len(cols) > max_columns:
        raise ValueError(
            f"{len(cols)} distinct columns exceed the subset cap of {max_columns}"
        )
    rho = 1
    for k in range(1, len(cols) + 1):
        for sub in combinations(cols, k):
            rho = lcm(rho, _largest_divisor(sub))
    return rho
