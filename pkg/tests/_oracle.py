"""Independent reference implementations used only by the tests.

Everything here is deliberately naive: full itertools enumeration for point
counts, gcd of all k x k minors for elementary divisors, Lagrange's formula
for interpolation.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product
from math import gcd


def on_hyperplane(coeffs, offset, x, q) -> bool:
    return (sum(a * v for a, v in zip(coeffs, x)) - offset) % q == 0


def naive_points(hyperplanes, m, q, equal=()):
    """hyperplanes / equal are lists of (coeffs, offset)."""
    eq = set(equal)
    avoid = [h for h in hyperplanes if h not in eq]
    out = []
    for x in product(range(q), repeat=m):
        if all(on_hyperplane(a, b, x, q) for a, b in eq) and not any(on_hyperplane(a, b, x, q) for a, b in avoid):
            out.append(x)
    return out


def naive_count(hyperplanes, m, q, equal=()):
    return len(naive_points(hyperplanes, m, q, equal))


def shi_by_hand(root, m):
    """Shi hyperplanes written out from the definition, as (coeffs, offset) pairs."""
    hs = []
    e = lambda i: tuple(1 if k == i else 0 for k in range(m))
    for i in range(m):
        for c in (0, 1):
            if root == "B":
                hs.append((e(i), c))
            elif root == "C":
                hs.append((tuple(2 * v for v in e(i)), c))
    for i, j in combinations(range(m), 2):
        for c in (0, 1):
            hs.append((tuple(a - b for a, b in zip(e(i), e(j))), c))
            hs.append((tuple(a + b for a, b in zip(e(i), e(j))), c))
    return hs


def _det(rows):
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        sign = 1
        for a in range(n):
            for b in range(a + 1, n):
                if perm[a] > perm[b]:
                    sign = -sign
        p = sign
        for r in range(n):
            p *= rows[r][perm[r]]
        total += p
    return total


def minor_divisors(rows):
    """Elementary divisors as ratios of determinantal divisors D_k / D_{k-1}."""
    if not rows or not rows[0]:
        return ()
    nr, nc = len(rows), len(rows[0])
    ds = [1]
    for k in range(1, min(nr, nc) + 1):
        g = 0
        for rs in combinations(range(nr), k):
            for cs in combinations(range(nc), k):
                g = gcd(g, _det([[rows[r][c] for c in cs] for r in rs]))
        if g == 0:
            break
        ds.append(g)
    return tuple(ds[k] // ds[k - 1] for k in range(1, len(ds)))


def lagrange(points, x):
    total = Fraction(0)
    for k, (xk, yk) in enumerate(points):
        term = Fraction(yk)
        for l, (xl, _) in enumerate(points):
            if l != k:
                term *= Fraction(x - xl, xk - xl)
        total += term
    return total
