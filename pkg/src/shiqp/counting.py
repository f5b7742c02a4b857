"""Exhaustive point counting over Z_q^m.

Coordinates are filled left to right. A hyperplane is checked at the level of
its last nonzero coefficient (after reduction mod q), so a prefix is
abandoned as soon as any hyperplane it fully determines is violated. At each
level the forbidden values are read off precomputed solution tables for
``c * x = r (mod q)`` instead of scanning all q candidates.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .arrangement import Arrangement, ArrangementError, Hyperplane

DEFAULT_BUDGET = 10**8


class BudgetExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class CountSample:
    q: int
    count: int


@dataclass
class _Level:
    # (earlier (index, coeff) pairs, own coeff, offset) all reduced mod q
    avoid: list[tuple[tuple[tuple[int, int], ...], int, int]]
    equal: list[tuple[tuple[tuple[int, int], ...], int, int]]


class _Plan:
    """Per-call preprocessing: hyperplanes reduced mod q and bucketed by level."""

    def __init__(self, m: int, q: int, avoid: Sequence[Hyperplane], equal: Sequence[Hyperplane]):
        if q < 1:
            raise ValueError("modulus must be positive")
        self.m = m
        self.q = q
        self.empty = False
        self.levels = [_Level([], []) for _ in range(m)]
        self.tables: dict[int, list[list[int]]] = {}
        for kind, hs in (("avoid", avoid), ("equal", equal)):
            for h in hs:
                a = [c % q for c in h.coeffs]
                b = h.offset % q
                nz = [k for k, c in enumerate(a) if c]
                if not nz:
                    # the reduced hyperplane is all of Z_q^m or nothing
                    if (kind == "avoid") == (b == 0):
                        self.empty = True
                    continue
                last = nz[-1]
                earlier = tuple((k, a[k]) for k in nz[:-1])
                getattr(self.levels[last], kind).append((earlier, a[last], b))
                self._table(a[last])

    def _table(self, c: int) -> list[list[int]]:
        t = self.tables.get(c)
        if t is None:
            q = self.q
            t = [[] for _ in range(q)]
            for x in range(q):
                t[c * x % q].append(x)
            self.tables[c] = t
        return t

    def allowed(self, k: int, prefix: Sequence[int]) -> set[int] | range:
        q = self.q
        lev = self.levels[k]
        if lev.equal:
            cand: set[int] | None = None
            for earlier, c, b in lev.equal:
                r = (b - sum(a * prefix[i] for i, a in earlier)) % q
                sols = self.tables[c][r]
                cand = set(sols) if cand is None else cand.intersection(sols)
                if not cand:
                    return cand
        elif not lev.avoid:
            return range(q)
        else:
            cand = set(range(q))
        for earlier, c, b in lev.avoid:
            r = (b - sum(a * prefix[i] for i, a in earlier)) % q
            cand.difference_update(self.tables[c][r])
        return cand

    def count(self, first: Iterable[int] | None = None) -> int:
        if self.empty:
            return 0
        m = self.m
        prefix = [0] * m

        def rec(k: int) -> int:
            opts = self.allowed(k, prefix)
            if k == m - 1:
                return len(opts)
            total = 0
            for v in opts:
                prefix[k] = v
                total += rec(k + 1)
            return total

        if first is None:
            return rec(0)
        opts = self.allowed(0, prefix)
        total = 0
        for v in first:
            if v in opts:
                if m == 1:
                    total += 1
                else:
                    prefix[0] = v
                    total += rec(1)
        return total

    def points(self) -> Iterator[tuple[int, ...]]:
        if self.empty:
            return
        m = self.m
        prefix = [0] * m

        def rec(k: int) -> Iterator[tuple[int, ...]]:
            for v in sorted(self.allowed(k, prefix)):
                prefix[k] = v
                if k == m - 1:
                    yield tuple(prefix)
                else:
                    yield from rec(k + 1)

        yield from rec(0)


def _check_budget(arr: Arrangement, q: int, budget: int | None) -> None:
    budget = DEFAULT_BUDGET if budget is None else budget
    work = q ** arr.dim * max(1, len(arr))
    if work > budget:
        raise BudgetExceeded(
            f"q^m * #hyperplanes = {work} exceeds the enumeration budget of {budget}"
        )


def _split_flat(arr: Arrangement, flat: Sequence[Hyperplane]) -> tuple[list[Hyperplane], list[Hyperplane]]:
    flat = list(dict.fromkeys(flat))
    for h in flat:
        if h not in arr:
            raise ArrangementError(f"{h} is not a member of the arrangement")
    on = set(flat)
    return [h for h in arr if h not in on], flat


def _count_shard(args) -> int:
    m, q, avoid, equal, values = args
    return _Plan(m, q, avoid, equal).count(values)


def _count(arr: Arrangement, q: int, avoid, equal, budget, workers: int) -> int:
    _check_budget(arr, q, budget)
    if workers <= 1 or q < 2:
        return _Plan(arr.dim, q, avoid, equal).count()
    workers = min(workers, q)
    # contiguous blocks of the first coordinate; summed in shard order
    bounds = [q * w // workers for w in range(workers + 1)]
    jobs = [(arr.dim, q, list(avoid), list(equal), range(bounds[w], bounds[w + 1]))
            for w in range(workers)]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return sum(pool.map(_count_shard, jobs))


def count_complement(arr: Arrangement, q: int, *, budget: int | None = None, workers: int = 1) -> int:
    """|{x in Z_q^m : a.x != b (mod q) for every hyperplane}|."""
    return _count(arr, q, list(arr), [], budget, workers)


def count_on_flat(arr: Arrangement, flat: Sequence[Hyperplane], q: int, *,
                  budget: int | None = None, workers: int = 1) -> int:
    """Points lying on every hyperplane in ``flat`` and on no other member of ``arr``."""
    avoid, equal = _split_flat(arr, flat)
    return _count(arr, q, avoid, equal, budget, workers)


def count_on_hyperplane(arr: Arrangement, h: Hyperplane, q: int, *,
                        budget: int | None = None, workers: int = 1) -> int:
    return count_on_flat(arr, [h], q, budget=budget, workers=workers)


def enumerate_complement(arr: Arrangement, q: int, *, budget: int | None = None) -> list[tuple[int, ...]]:
    """All complement points in lexicographic order, coordinates in [0, q)."""
    _check_budget(arr, q, budget)
    return list(_Plan(arr.dim, q, list(arr), []).points())


def enumerate_on_flat(arr: Arrangement, flat: Sequence[Hyperplane], q: int, *,
                      budget: int | None = None) -> list[tuple[int, ...]]:
    _check_budget(arr, q, budget)
    avoid, equal = _split_flat(arr, flat)
    return list(_Plan(arr.dim, q, avoid, equal).points())


def in_complement(arr: Arrangement, x: Sequence[int], q: int, flat: Sequence[Hyperplane] = ()) -> bool:
    """Membership test for a single point; the equality-plus-avoidance reading of a restriction."""
    on = set(flat)
    for h in arr:
        hit = sum(a * v for a, v in zip(h.coeffs, x)) % q == h.offset % q
        if hit != (h in on):
            return False
    return True


def sample_counts(arr: Arrangement, qs: Iterable[int], flat: Sequence[Hyperplane] = (), *,
                  budget: int | None = None, workers: int = 1) -> list[CountSample]:
    out = []
    for q in qs:
        if flat:
            c = count_on_flat(arr, flat, q, budget=budget, workers=workers)
        else:
            c = count_complement(arr, q, budget=budget, workers=workers)
        out.append(CountSample(q, c))
    return out


def default_workers() -> int:
    return max(1, (os.cpu_count() or 1))
