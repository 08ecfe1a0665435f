import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from fareduce.fixtures import hull_points
from fareduce.frame import Label, conical_frame, convex_extreme_points, frame_labels, membership_oracle
from fareduce.generate import random_points
from fareduce.linalg import Matrix, simplex_feasible_nonneg

seeds = st.integers(0, 2**32 - 1)


def pts(*cols):
    return Matrix.from_columns(cols)


def test_hull_points_convex_and_conic():
    p = hull_points()
    assert convex_extreme_points(p) == [0, 1, 2, 3]
    expected = [j for j in range(6) if not membership_oracle(p, j, "conic")]
    assert conical_frame(p) == expected == [1, 2]


def test_hull_interior_point_is_a_convex_combination():
    assert membership_oracle(hull_points(), 4, "convex")
    assert membership_oracle(hull_points(), 5, "convex")
    assert not membership_oracle(hull_points(), 0, "convex")


def test_small_cones():
    assert conical_frame(pts((1, 0), (0, 1), (1, 1))) == [0, 1]
    assert conical_frame(pts((2, 3))) == [0]
    assert convex_extreme_points(pts((2, 3))) == [0]


def test_square_and_chain_rows():
    assert convex_extreme_points(pts((0, 1), (1, 1), (1, 0), (0, 0))) == [0, 1, 2, 3]
    rows = [(0, F(1, 2)), (F(1, 2), F(1, 2)), (F(1, 2), 0), (0, 0), (1, F(1, 4)), (F(1, 4), F(1, 4))]
    assert convex_extreme_points(pts(*rows)) == [0, 1, 2, 3, 4]


def test_empty_remainder_is_never_a_combination():
    assert not membership_oracle(pts((1, 2)), 0, "convex")
    assert not membership_oracle(pts((1, 2)), 0, "conic")


def test_zero_and_duplicate_columns():
    # conic mode: zero is the empty combination, repeated rays keep the first
    assert conical_frame(pts((0, 0), (1, 0), (2, 0), (0, 1))) == [1, 3]
    assert frame_labels(pts((0, 0), (1, 0)))[0] is Label.DELETED
    # convex mode: the origin is an ordinary point, repeated points keep the first
    assert convex_extreme_points(pts((0, 0), (1, 0), (1, 0), (0, 1), (F(1, 4), F(1, 4)))) == [0, 1, 3]


def test_degenerate_collinear_points():
    line = pts(*[(k, 2 * k) for k in range(1, 7)])
    assert convex_extreme_points(line) == [0, 5]
    assert conical_frame(line) == [0]


def test_labels_partition_the_columns():
    labels = frame_labels(hull_points().vstack(Matrix([[1] * 6])))
    assert set(labels) <= {Label.NECESSARY, Label.DELETED}
    assert labels.count(Label.NECESSARY) == 4


def test_unknown_mode():
    with pytest.raises(ValueError):
        membership_oracle(hull_points(), 0, "affine")


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_pointed_cone_frame_matches_oracle(seed):
    rng = random.Random(seed)
    dim = rng.randint(2, 4)
    p = random_points(rng, dim, rng.randint(1, 8), nonneg=True, distinct_rays=True)
    frame = conical_frame(p)
    assert frame == [j for j in range(p.ncols) if not membership_oracle(p, j, "conic")]
    # every other column is a nonnegative combination of the frame, and none of the frame is
    fm = p.select_columns(frame)
    for j in range(p.ncols):
        if j not in frame:
            c = simplex_feasible_nonneg(fm, p.col(j))
            assert c is not None and fm @ c == p.col(j)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_extreme_points_match_oracle(seed):
    rng = random.Random(seed)
    p = random_points(rng, rng.randint(1, 4), rng.randint(1, 8))
    ext = convex_extreme_points(p)
    assert ext == [j for j in range(p.ncols) if not membership_oracle(p, j, "convex")]
    # idempotent on its own output
    assert convex_extreme_points(p.select_columns(ext)) == list(range(len(ext)))


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_no_vertex_lies_inside_a_segment_of_vertices(seed):
    rng = random.Random(seed)
    p = random_points(rng, 2, rng.randint(3, 8), max_den=3)
    ext = convex_extreme_points(p)
    for i in ext:
        for j in ext:
            for k in ext:
                if len({i, j, k}) < 3:
                    continue
                seg = p.select_columns([j, k])
                c = simplex_feasible_nonneg(seg.vstack(Matrix([[1, 1]])), p.col(i) + (1,))
                assert c is None


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_frame_is_deterministic(seed):
    rng = random.Random(seed)
    p = random_points(rng, 3, 7)
    assert convex_extreme_points(p) == convex_extreme_points(Matrix(p.rows))
