import random

import pytest

from app.core.latpath import (
    LatticeVec,
    Ordering,
    adjacent_inversions,
    area,
    clockwise_before,
    convexify,
    cross,
    is_convex,
    parse_path,
    parse_vec,
    path_sum,
    render_path,
    swap_adjacent,
    triangle_is_empty,
)

V = LatticeVec


def test_zero_vector_rejected():
    with pytest.raises(ValueError):
        V(0, 0)


def test_gcd_and_primitivity():
    assert V(-4, 2).gcd == 2
    assert not V(-4, 2).is_primitive
    assert V(-3, 1).is_primitive


def test_clockwise_order_starts_at_negative_vertical():
    assert clockwise_before(V(0, -1), V(-1, 0)) is Ordering.BEFORE
    assert clockwise_before(V(-1, 0), V(0, 1)) is Ordering.BEFORE
    assert clockwise_before(V(0, 1), V(1, 0)) is Ordering.BEFORE
    assert clockwise_before(V(1, 0), V(0, -1)) is Ordering.AFTER


def test_order_within_left_half_plane():
    assert clockwise_before(V(-3, 1), V(-2, 1)) is Ordering.BEFORE
    assert clockwise_before(V(-2, 1), V(-3, 1)) is Ordering.AFTER
    assert clockwise_before(V(-1, 1), V(-2, 2)) is Ordering.TIED


def test_convexity_and_convexify():
    path = (V(-2, 1), V(-3, 1))
    assert not is_convex(path)
    assert convexify(path) == (V(-3, 1), V(-2, 1))
    assert is_convex(convexify(path))
    # tied vectors keep their order
    assert convexify((V(-2, 2), V(-1, 1))) == (V(-2, 2), V(-1, 1))


def test_area():
    assert area((V(-3, 1), V(-2, 1))) == 0
    assert area((V(-2, 1), V(-3, 1))) == 1
    assert area((V(-1, 1), V(-1, 0))) == 1
    assert area((V(-1, 2), V(-1, 0))) == 2


def test_adjacent_inversions_and_swap():
    path = (V(-1, 1), V(-1, 0), V(-1, -1))
    assert adjacent_inversions(path) == [(0, 1), (1, 1)]
    swapped = swap_adjacent(path, 0)
    assert swapped == (V(-1, 0), V(-1, 1), V(-1, -1))


def test_empty_triangle():
    assert triangle_is_empty(V(-1, 0), V(-1, 1))
    assert triangle_is_empty(V(-3, 1), V(-2, 1))
    assert not triangle_is_empty(V(-2, 0), V(-1, 1))
    assert cross(V(-2, 0), V(-1, 1)) == -2


def test_path_sum():
    assert path_sum((V(-3, 1), V(-2, 1))) == V(-5, 2)
    with pytest.raises(ValueError):
        path_sum(())


def test_parse_and_render():
    assert parse_vec(" ( -3, 1 ) ") == V(-3, 1)
    assert render_path(parse_path("(-2,1);(-3,1)")) == "(-2,1);(-3,1)"


@pytest.mark.parametrize("text", ["3,1", "(a,1)", "(0,0)", "(1,2,3)"])
def test_parse_vec_rejects(text):
    with pytest.raises(ValueError):
        parse_vec(text)


def test_parse_path_rejects_empty():
    with pytest.raises(ValueError):
        parse_path(" ; ")


def _random_path(rng, length, left_half_plane=False):
    vectors = []
    while len(vectors) < length:
        n = rng.randint(-3, -1) if left_half_plane else rng.randint(-3, 3)
        k = rng.randint(-3, 3)
        if (n, k) != (0, 0):
            vectors.append(V(n, k))
    return tuple(vectors)


def test_convexify_properties_on_random_paths():
    rng = random.Random(3)
    for _ in range(300):
        path = _random_path(rng, rng.randint(1, 6))
        convex = convexify(path)
        assert convexify(convex) == convex
        assert is_convex(convex)
        assert area(convex) == 0
        assert sorted(convex) == sorted(path)


def test_each_adjacent_swap_lowers_area_by_cross():
    rng = random.Random(5)
    for _ in range(300):
        path = _random_path(rng, rng.randint(2, 6), left_half_plane=True)
        for index, weight in adjacent_inversions(path):
            assert area(swap_adjacent(path, index)) == area(path) - weight


def test_area_vanishes_exactly_on_convex_paths_in_a_half_plane():
    rng = random.Random(9)
    for _ in range(300):
        path = _random_path(rng, rng.randint(1, 6), left_half_plane=True)
        assert (area(path) == 0) == is_convex(path)


def test_antiparallel_inversion_has_zero_area():
    path = (V(1, 1), V(-1, -1))
    assert not is_convex(path)
    assert area(path) == 0
