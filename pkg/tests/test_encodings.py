from __future__ import annotations

import pytest

from shiqp.encodings import (
    EncodingError,
    Placement,
    all_placements,
    build_layout,
    circle_conditions,
    decode,
    decode_placement,
    verify_encoding,
)

WORKED = {1: "U2", 2: "U3", 3: "L2", 4: "L2", 5: "L1"}


def test_layouts():
    odd = build_layout(5, 15)
    assert (odd.upper, odd.lower, odd.side_circle) == (3, 3, False)
    assert "L3" not in odd.placeable and len(odd.placeable) == 15 - 10
    even = build_layout(5, 16)
    assert (even.upper, even.lower, even.side_circle) == (3, 3, True)
    assert "L3" in even.placeable and len(even.placeable) == 16 - 10
    small = build_layout(1, 5)
    assert (small.upper, small.lower) == (2, 2) and small.placeable == ("U1", "U2", "L1")


def test_q_too_small():
    with pytest.raises(EncodingError):
        build_layout(3, 6)


def test_worked_examples():
    assert decode_placement(Placement(WORKED), build_layout(5, 15)) == (3, 7, 10, 11, 14)
    assert decode_placement(Placement(WORKED), build_layout(5, 16)) == (3, 7, 11, 12, 15)
    assert decode_placement(Placement({1: "U1"}), build_layout(1, 5)) == (1,)


@pytest.mark.parametrize("boxes", [
    {1: "L3", 2: "U1", 3: "U1", 4: "U1", 5: "U1"},  # lower right box, odd q
    {1: "U1"},                                       # labels missing
    {1: "U9", 2: "U1", 3: "U1", 4: "U1", 5: "U1"},  # no such box
])
def test_malformed_placements(boxes):
    with pytest.raises(EncodingError):
        decode(Placement(boxes), build_layout(5, 15))


@pytest.mark.parametrize("m, q, n", [(2, 7, 9), (1, 5, 3), (2, 8, 16)])
def test_verify_examples(m, q, n):
    r = verify_encoding(m, q)
    assert r.passed and r.placements == r.complement_size == n


@pytest.mark.parametrize("m", [1, 2, 3])
def test_mirror_invariant_and_circle_conditions(m):
    for q in range(2 * m + 1, 2 * m + 9):
        layout = build_layout(m, q)
        for p in all_placements(layout):
            d = decode(p, layout)
            assert all((d.point[l - 1] + d.mirror[l]) % q == 0 for l in range(1, m + 1))
            assert all(circle_conditions(d.circles, q).values())


def test_placement_json():
    layout = build_layout(5, 16)
    obj = Placement(WORKED).to_json(layout)
    back, lay = Placement.from_json(obj)
    assert lay == layout and dict(back.boxes) == WORKED


def test_budget():
    with pytest.raises(EncodingError):
        verify_encoding(3, 13, budget=10)
