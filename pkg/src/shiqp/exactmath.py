"""Exact integer and rational helpers: elementary divisors and interpolation."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    entries: tuple[int, ...]  # row-major

    def __post_init__(self) -> None:
        if self.rows < 1 or self.cols < 1:
            raise ValueError("matrix must have at least one row and one column")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> "IntMatrix":
        rows = [list(r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrix must be nonempty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        return cls(len(rows), width, tuple(int(v) for r in rows for v in r))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence[int]]) -> "IntMatrix":
        if not columns:
            raise ValueError("matrix must be nonempty")
        height = len(columns[0])
        return cls.from_rows([[c[r] for c in columns] for r in range(height)])

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[r * c:(r + 1) * c]) for r in range(self.rows)]


def smith_elementary_divisors(mat: IntMatrix) -> tuple[int, ...]:
    """Nonzero diagonal of the Smith normal form, d_1 | d_2 | ... | d_r.

    Computed by integer diagonalization (row/column operations with
    Euclidean pivoting), followed by the gcd/lcm fix-up that enforces the
    divisibility chain.
    """
    a = mat.to_rows()
    nr, nc = mat.rows, mat.cols
    diag: list[int] = []
    t = 0
    while t < min(nr, nc):
        # pivot: smallest nonzero absolute value in the remaining block
        pivot = None
        for i in range(t, nr):
            for j in range(t, nc):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        pi, pj = pivot
        a[t], a[pi] = a[pi], a[t]
        for row in a:
            row[t], row[pj] = row[pj], row[t]

        while True:
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    f = a[i][t] // a[t][t]
                    for j in range(t, nc):
                        a[i][j] -= f * a[t][j]
                    if a[i][t]:
                        done = False
            for j in range(t + 1, nc):
                if a[t][j]:
                    f = a[t][j] // a[t][t]
                    for i in range(t, nr):
                        a[i][j] -= f * a[i][t]
                    if a[t][j]:
                        done = False
            if done:
                break
            # remainders left over: move the smallest one into the pivot slot
            best = (t, t)
            for i in range(t, nr):
                if a[i][t] and abs(a[i][t]) < abs(a[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t, nc):
                if a[t][j] and abs(a[t][j]) < abs(a[best[0]][best[1]]):
                    best = (t, j)
            bi, bj = best
            a[t], a[bi] = a[bi], a[t]
            for row in a:
                row[t], row[bj] = row[bj], row[t]
        diag.append(abs(a[t][t]))
        t += 1

    # diagonal entries need not divide each other yet
    for k in range(len(diag)):
        for l in range(k + 1, len(diag)):
            g = gcd(diag[k], diag[l])
            diag[k], diag[l] = g, diag[k] * diag[l] // g
    return tuple(diag)


@dataclass(frozen=True)
class RatPolynomial:
    """Polynomial with exact rational coefficients, lowest degree first."""

    coeffs: tuple[Fraction, ...] = ()

    def __post_init__(self) -> None:
        c = [Fraction(v) for v in self.coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: int | Fraction) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: "RatPolynomial") -> "RatPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        pad = lambda c: list(c) + [Fraction(0)] * (n - len(c))
        return RatPolynomial(tuple(x + y for x, y in zip(pad(self.coeffs), pad(other.coeffs))))

    def __sub__(self, other: "RatPolynomial") -> "RatPolynomial":
        return self + RatPolynomial(tuple(-c for c in other.coeffs))

    def __mul__(self, other: "RatPolynomial") -> "RatPolynomial":
        if self.is_zero() or other.is_zero():
            return RatPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return RatPolynomial(tuple(out))

    def to_pairs(self) -> list[list[int]]:
        return [[c.numerator, c.denominator] for c in self.coeffs]

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]]) -> "RatPolynomial":
        return cls(tuple(Fraction(int(n), int(d)) for n, d in pairs))

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("q" if k == 1 else f"q^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}{'*' + mono if mono else ''}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def interpolate_polynomial(points: Sequence[tuple[int, int]]) -> RatPolynomial:
    """Lagrange interpolation in exact arithmetic (Newton divided differences)."""
    if not points:
        raise ValueError("need at least one point")
    xs = [Fraction(x) for x, _ in points]
    if len(set(xs)) != len(xs):
        raise ValueError("duplicate abscissae")
    n = len(points)
    dd = [Fraction(y) for _, y in points]
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k])
    # expand the Newton form from the innermost factor outward
    poly = RatPolynomial((dd[-1],))
    for k in range(n - 2, -1, -1):
        poly = poly * RatPolynomial((-xs[k], Fraction(1))) + RatPolynomial((dd[k],))
    return poly
