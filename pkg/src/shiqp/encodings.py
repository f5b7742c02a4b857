"""Box-and-circle decoder for points of the type C Shi complement.

Labels 1..m are dropped into a row of upper boxes and a row of lower boxes.
Reading the circles clockwise (upper row left to right, then the lower row
right to left) numbers them 0..q-1, and label i sits at coordinate x_i.

Upper box u holds, clockwise: its leader (unlabeled), its own labels
ascending, then one unlabeled slot per label of lower box u. Lower box u
holds its own labels ascending, one unlabeled slot per label of upper box u,
then the reflection of upper box u's leader (omitted for u = 1, whose leader
is position 0 and reflects onto itself). For even q an extra unlabeled side
circle sits at position q/2. Every labeled circle at p is matched with an
unlabeled slot at q - p.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product
from typing import Mapping

from .arrangement import build_shi
from .counting import count_complement, in_complement

DEFAULT_PLACEMENT_BUDGET = 10**6


class EncodingError(ValueError):
    pass


@dataclass(frozen=True)
class BoxLayout:
    m: int
    q: int
    upper: int
    lower: int
    side_circle: bool

    @property
    def parity(self) -> str:
        return "even" if self.q % 2 == 0 else "odd"

    @property
    def placeable(self) -> tuple[str, ...]:
        boxes = [f"U{k}" for k in range(1, self.upper + 1)]
        boxes += [f"L{k}" for k in range(1, self.lower + 1)]
        if not self.side_circle:
            # a label in the lower right box would land on (q+1)/2, i.e. 2x = 1
            boxes.remove(f"L{self.lower}")
        return tuple(boxes)


def build_layout(m: int, q: int) -> BoxLayout:
    if m < 1:
        raise EncodingError("m must be positive")
    if q < 2 * m + 1:
        raise EncodingError(f"need q >= 2m+1 = {2 * m + 1}, got {q}")
    if q % 2:
        u = (q + 1) // 2 - m
        return BoxLayout(m, q, u, u, False)
    u = q // 2 - m
    return BoxLayout(m, q, u, u, True)


@dataclass(frozen=True)
class Placement:
    boxes: Mapping[int, str]  # label -> "U2", "L1", ...

    def to_json(self, layout: BoxLayout) -> dict:
        return {"m": layout.m, "q": layout.q,
                "boxes": {str(k): self.boxes[k] for k in sorted(self.boxes)}}

    @classmethod
    def from_json(cls, obj: dict) -> tuple["Placement", BoxLayout]:
        layout = build_layout(int(obj["m"]), int(obj["q"]))
        return cls({int(k): v for k, v in obj["boxes"].items()}), layout


@dataclass(frozen=True)
class Decoded:
    point: tuple[int, ...]
    circles: tuple[int | None, ...]  # label at each clockwise position, None if unlabeled
    mirror: Mapping[int, int]        # label -> position of its unlabeled partner


def _validate(p: Placement, layout: BoxLayout) -> None:
    if sorted(p.boxes) != list(range(1, layout.m + 1)):
        raise EncodingError(f"placement must assign exactly the labels 1..{layout.m}")
    allowed = set(layout.placeable)
    for label, box in p.boxes.items():
        if box not in allowed:
            raise EncodingError(f"label {label} placed in {box!r}, allowed: {sorted(allowed)}")


def decode(p: Placement, layout: BoxLayout) -> Decoded:
    _validate(p, layout)
    q, U = layout.q, layout.upper
    up = {k: sorted(l for l, b in p.boxes.items() if b == f"U{k}") for k in range(1, U + 1)}
    lo = {k: sorted(l for l, b in p.boxes.items() if b == f"L{k}") for k in range(1, U + 1)}

    # ("lab", i) labeled circle; ("mir", i) partner of label i; ("lead", k)/("refl", k) leader pair
    seq: list[tuple[str, int] | None] = []
    for k in range(1, U + 1):
        seq.append(("lead", k))
        seq += [("lab", l) for l in up[k]]
        seq += [("mir", l) for l in reversed(lo[k])]
    if layout.side_circle:
        seq.append(None)
    for k in range(U, 0, -1):
        seq += [("lab", l) for l in lo[k]]
        seq += [("mir", l) for l in reversed(up[k])]
        if k > 1:
            seq.append(("refl", k))
    if len(seq) != q:
        raise EncodingError(f"internal: built {len(seq)} circles for q={q}")

    x = [0] * layout.m
    mirror = {}
    circles = []
    for pos, c in enumerate(seq):
        if c is not None and c[0] == "lab":
            x[c[1] - 1] = pos
            circles.append(c[1])
        else:
            if c is not None and c[0] == "mir":
                mirror[c[1]] = pos
            circles.append(None)
    return Decoded(tuple(x), tuple(circles), mirror)


def decode_placement(p: Placement, layout: BoxLayout) -> tuple[int, ...]:
    return decode(p, layout).point


def circle_conditions(circles: tuple[int | None, ...], q: int) -> dict[str, bool]:
    """The five circle-sequence properties that make a decoded tuple a complement point."""
    pos = {lab: p for p, lab in enumerate(circles) if lab is not None}
    half = (q + 1) // 2 if q % 2 else q // 2
    return {
        "zero_and_half_unlabeled": circles[0] is None and circles[half] is None,
        "one_label_per_circle": len(pos) == sum(c is not None for c in circles),
        "opposite_unlabeled": all(circles[(q - p) % q] is None for p in pos.values()),
        "predecessor_not_larger": all(
            circles[(p - 1) % q] is None or circles[(p - 1) % q] < s for s, p in pos.items()
        ),
        "after_opposite_free": all(
            circles[(q - p + 1) % q] in (None, t) for t, p in pos.items()
        ),
    }


def all_placements(layout: BoxLayout):
    for combo in product(layout.placeable, repeat=layout.m):
        yield Placement({k + 1: b for k, b in enumerate(combo)})


@dataclass
class EncodingReport:
    m: int
    q: int
    placements: int
    complement_size: int
    passed: bool
    counterexample: dict | None = None
    reason: str | None = None

    def to_json(self) -> dict:
        return {"m": self.m, "q": self.q, "placements": self.placements,
                "complementSize": self.complement_size, "pass": self.passed,
                "counterexample": self.counterexample, "reason": self.reason}


def verify_encoding(m: int, q: int, *, budget: int = DEFAULT_PLACEMENT_BUDGET) -> EncodingReport:
    layout = build_layout(m, q)
    n = len(layout.placeable) ** m
    if n > budget:
        raise EncodingError(f"{n} placements exceed the placement budget of {budget}")
    arr = build_shi("C", m)
    target = count_complement(arr, q)
    report = EncodingReport(m, q, n, target, True)
    seen: dict[tuple[int, ...], Placement] = {}
    for p in all_placements(layout):
        d = decode(p, layout)
        why = None
        if d.point in seen:
            why = f"same point {d.point} as {json.dumps(seen[d.point].to_json(layout)['boxes'])}"
        elif not in_complement(arr, d.point, q):
            why = f"{d.point} is not in the complement"
        elif any((d.point[l - 1] + d.mirror[l]) % q for l in range(1, m + 1)):
            why = f"mirror property broken for {d.point}"
        if why:
            report.passed = False
            report.counterexample = p.to_json(layout)
            report.reason = why
            return report
        seen[d.point] = p
    if len(seen) != target:
        report.passed = False
        report.reason = f"{len(seen)} distinct images but the complement has {target} points"
    return report
