from __future__ import annotations

import pytest

from shiqp.arrangement import (
    Arrangement,
    ArrangementError,
    Hyperplane,
    Selector,
    add_hyperplane,
    augmented_b,
    build_shi,
    coord,
    coord2,
    delete_hyperplanes,
    diff,
    selector_to_hyperplane,
    sum_,
)

from _oracle import shi_by_hand


def H(a, b):
    return Hyperplane(tuple(a), b)


@pytest.mark.parametrize("root", ["B", "C", "D"])
@pytest.mark.parametrize("m", [1, 2, 3, 4])
def test_shi_matches_hand_listing(root, m):
    arr = build_shi(root, m)
    assert {(h.coeffs, h.offset) for h in arr} == set(shi_by_hand(root, m))
    expected = 2 * m * (m - 1) + (0 if root == "D" else 2 * m)
    assert len(arr) == expected


def test_b2_listing():
    got = {str(h) for h in build_shi("B", 2)}
    assert got == {"x1 = 0", "x1 = 1", "x2 = 0", "x2 = 1",
                   "x1 - x2 = 0", "x1 - x2 = 1", "x1 + x2 = 0", "x1 + x2 = 1"}


def test_c2_uses_doubled_coordinates():
    coords = [h for h in build_shi("C", 2) if sum(1 for a in h.coeffs if a) == 1]
    assert sorted(h.coeffs for h in coords) == [(0, 2), (0, 2), (2, 0), (2, 0)]


def test_d1_is_empty():
    assert len(build_shi("D", 1)) == 0


def test_bad_m():
    with pytest.raises(ArrangementError):
        build_shi("C", 0)


def test_selector_examples():
    assert selector_to_hyperplane(coord2(1, 0), 2) == H((2, 0), 0)
    assert selector_to_hyperplane(diff(1, 2, 1), 3) == H((1, -1, 0), 1)
    assert selector_to_hyperplane(coord(2, -1), 2) == H((0, 1), -1)
    assert selector_to_hyperplane(sum_(1, 3, 1), 3) == H((1, 0, 1), 1)


@pytest.mark.parametrize("args, m", [
    (("diff", 2, 0, 2), 3),
    (("diff", 1, 0, 4), 3),
    (("coord2", 0, 1), 2),
    (("sum", 1, 2, 2), 2),
    (("coord", 1, 2), 2),
])
def test_selector_rejects_bad_indices(args, m):
    with pytest.raises(ArrangementError):
        selector_to_hyperplane(Selector(*args), m)


def test_deletion_and_addition():
    b2 = build_shi("B", 2)
    assert len(delete_hyperplanes(b2, [H((1, 0), 0)])) == 7
    c2 = build_shi("C", 2)
    assert len(delete_hyperplanes(c2, [H((1, 1), 0), H((1, 1), 1)])) == 6
    with pytest.raises(ArrangementError):
        delete_hyperplanes(build_shi("D", 1), [H((1,), 0)])
    assert len(add_hyperplane(b2, H((0, 1), -1))) == 9
    with pytest.raises(ArrangementError):
        add_hyperplane(build_shi("D", 2), H((1, -1), 0))
    assert len(add_hyperplane(build_shi("D", 2), H((2, 0), 0))) == 5


def test_augmented_b():
    arr = augmented_b(3, 2)
    assert H((0, 1, 0), -1) in arr and len(arr) == len(build_shi("B", 3)) + 1


def test_hyperplanes_are_not_normalized():
    # 2x = 2 and x = 1 differ over Z_q for even q, so they must stay distinct
    assert H((2,), 2) != H((1,), 1)


def test_zero_and_duplicate_rejected():
    with pytest.raises(ArrangementError):
        H((0, 0), 1)
    with pytest.raises(ArrangementError):
        Arrangement(2, (H((1, 0), 0), H((1, 0), 0)))
    with pytest.raises(ArrangementError):
        Arrangement(2, (H((1, 0, 0), 0),))


def test_json_round_trip():
    arr = build_shi("C", 3)
    assert Arrangement.from_json(arr.to_json()) == arr
    assert arr.to_json()["hyperplanes"][0] == {"a": [2, 0, 0], "b": 0}
