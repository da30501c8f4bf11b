from __future__ import annotations

import pytest

from gridhex.geometry import (
    FULL_MASK,
    N_POINTS,
    PointSet,
    bfs_distance_matrix,
    collinearity_dot,
    is_geodetically_closed,
    is_hyperplane,
    is_subspace,
    label_index,
    point_digits,
    point_index,
    point_label,
)


def test_point_indexing_round_trip():
    seen = set()
    for d1 in range(3):
        for d2 in range(3):
            for d3 in range(3):
                i = point_index(d1, d2, d3)
                assert point_digits(i) == (d1, d2, d3)
                seen.add(i)
    assert seen == set(range(N_POINTS))


def test_label_round_trip():
    for i in range(N_POINTS):
        assert label_index(point_label(i)) == i
    assert point_label(5) == "012"


@pytest.mark.parametrize("bad", ["", "01", "0123", "013", "abc"])
def test_bad_labels_rejected(bad):
    with pytest.raises(ValueError):
        label_index(bad)


def test_bad_digits_and_indices_rejected():
    with pytest.raises(ValueError):
        point_index(0, 3, 0)
    with pytest.raises(ValueError):
        point_digits(27)
    with pytest.raises(ValueError):
        point_digits(-1)


def test_line_census(geometry):
    assert len(geometry.lines) == 27
    by_axis = {1: 0, 2: 0, 3: 0}
    for ln in geometry.lines:
        assert len(set(ln.points)) == 3
        by_axis[ln.axis] += 1
        digits = [point_digits(p) for p in ln.points]
        varying = [
            k for k in range(3) if len({d[k] for d in digits}) == 3
        ]
        assert varying == [ln.axis - 1]
    assert by_axis == {1: 9, 2: 9, 3: 9}
    assert len(geometry.line_mask_set) == 27


def test_three_lines_through_every_point(geometry):
    for p in range(N_POINTS):
        through = geometry.lines_through[p]
        assert len(through) == 3
        assert sorted(ln.axis for ln in through) == [1, 2, 3]


def test_two_points_span_at_most_one_line(geometry):
    for p in range(N_POINTS):
        for q in range(p + 1, N_POINTS):
            common = [
                ln for ln in geometry.lines if p in ln.points and q in ln.points
            ]
            assert len(common) == (1 if geometry.collinear(p, q) else 0)


def test_quad_census(geometry):
    assert len(geometry.quads) == 9
    for quad in geometry.quads:
        assert len(quad.points) == 9
        assert len(quad.internal_lines) == 6
        for ln in quad.internal_lines:
            assert ln.mask & quad.mask == ln.mask
    for p in range(N_POINTS):
        positions = {
            quad.fixed_position for quad in geometry.quads if p in quad.points
        }
        assert positions == {1, 2, 3}


def test_distance_is_hamming_and_matches_bfs(geometry):
    bfs = bfs_distance_matrix()
    for p in range(N_POINTS):
        for q in range(N_POINTS):
            hamming = sum(
                a != b for a, b in zip(point_digits(p), point_digits(q))
            )
            assert geometry.distance(p, q) == hamming == bfs[p][q]


def test_distance_sphere_sizes(geometry):
    for p in range(N_POINTS):
        counts = [0, 0, 0, 0]
        for q in range(N_POINTS):
            counts[geometry.distance(p, q)] += 1
        assert counts == [1, 6, 12, 8]


def test_collinear_and_coplanar_thresholds(geometry):
    for p in range(N_POINTS):
        for q in range(N_POINTS):
            d = geometry.distance(p, q)
            assert geometry.collinear(p, q) == (d == 1)
            assert geometry.coplanar(p, q) == (d <= 2)


def test_pointset_algebra():
    a = PointSet.from_labels(["000", "111", "222"])
    b = PointSet.from_labels(["111", "012"])
    assert len(a) == 3 and len(b) == 2
    assert list(a) == sorted(a)
    assert (a & b).labels() == ("111",)
    assert len(a | b) == 4
    assert len(a ^ b) == 3
    assert (a - b).labels() == ("000", "222")
    assert (a & b) <= a and (a & b) <= b
    assert point_index(1, 1, 1) in a
    assert a.complement().mask == a.mask ^ FULL_MASK
    assert PointSet.full().mask == FULL_MASK
    assert len(PointSet.empty()) == 0
    assert PointSet(a.mask) == a and hash(PointSet(a.mask)) == hash(a)


def test_pointset_is_immutable_and_validates():
    s = PointSet(0)
    with pytest.raises(AttributeError):
        s.mask = 1
    with pytest.raises(ValueError):
        PointSet(1 << N_POINTS)
    with pytest.raises(ValueError):
        PointSet.from_indices([27])


def test_lines_and_quads_are_subspaces(geometry):
    for ln in geometry.lines:
        s = PointSet(ln.mask)
        assert is_subspace(geometry, s)
        assert is_geodetically_closed(geometry, s)
    for quad in geometry.quads:
        s = PointSet(quad.mask)
        assert is_subspace(geometry, s)
        assert is_geodetically_closed(geometry, s)


def test_distance_two_pair_is_not_geodetically_closed(geometry):
    pair = PointSet.from_labels(["000", "011"])
    assert is_subspace(geometry, pair)
    assert not is_geodetically_closed(geometry, pair)


def test_geodetic_check_requires_a_subspace(geometry):
    two_collinear = PointSet.from_labels(["000", "001"])
    assert not is_subspace(geometry, two_collinear)
    with pytest.raises(ValueError):
        is_geodetically_closed(geometry, two_collinear)


def test_a_single_line_is_not_a_hyperplane(geometry):
    assert not is_hyperplane(geometry, PointSet(geometry.lines[0].mask))
    assert not is_hyperplane(geometry, PointSet.full())
    assert not is_hyperplane(geometry, PointSet.empty())


def test_collinearity_dot_shape(geometry):
    dot = collinearity_dot(geometry)
    assert dot.startswith("graph collinearity {")
    assert dot.rstrip().endswith("}")
    assert dot.count("label=") == 27
    assert dot.count(" -- ") == 81
