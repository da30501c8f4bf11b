from __future__ import annotations

import json

import pytest

from gridhex.geometry import FULL_MASK, N_POINTS, PointSet, point_digits, point_index
from gridhex.hyperplanes import (
    HYPERPLANE_CENSUS,
    TYPE_BY_SIZE,
    TYPE_LABELS,
    ZERO,
    catalog_records,
    classify,
    point_order,
    quad_section_type,
    singular_hyperplane,
    vsum,
)

EXPECTED_COUNTS = {"H1": 27, "H2": 54, "H3": 108, "H4": 54, "H5": 12}


def test_census_partition(catalog):
    assert len(catalog) == 255
    assert catalog.type_counts() == EXPECTED_COUNTS
    assert list(catalog.masks()) == sorted(catalog.masks())


def test_census_rows_are_internally_consistent():
    assert sum(row.n_copies for row in HYPERPLANE_CENSUS.values()) == 255
    for row in HYPERPLANE_CENSUS.values():
        assert sum(row.order_profile) == row.n_points
        assert sum(row.quad_profile) == 9
        # each full line is counted by its three order contributions
        assert sum(k * n for k, n in enumerate(row.order_profile)) == 3 * row.n_lines
    assert TYPE_BY_SIZE == {19: "H1", 15: "H2", 13: "H3", 11: "H4", 9: "H5"}


def test_every_hyperplane_matches_its_class_row(catalog):
    for h in catalog.hyperplanes:
        row = HYPERPLANE_CENSUS[h.type_label]
        sig = h.signature
        assert sig.n_points == row.n_points == len(h.points)
        assert sig.n_lines == row.n_lines
        assert sig.order_profile == row.order_profile
        assert sig.quad_profile == row.quad_profile
        assert sig.weight == row.weight


def test_singular_hyperplanes_are_the_h1_class(geometry, catalog):
    masks = {singular_hyperplane(geometry, p).mask for p in range(N_POINTS)}
    assert len(masks) == 27
    assert masks == {h.id for h in catalog.of_type("H1")}
    ball = singular_hyperplane(geometry, point_index(0, 0, 0))
    assert len(ball) == 19
    assert all(geometry.distance(0, q) <= 2 for q in ball)


def test_h1_deep_point_is_recorded(geometry, catalog):
    assert len(catalog.singular) == N_POINTS
    for p in range(N_POINTS):
        h = catalog.singular[p]
        assert h.type_label == "H1"
        assert singular_hyperplane(geometry, p).mask == h.id
        assert point_order(geometry, h.points, p) == 3


def test_digit_sum_planes_are_the_h5_class(catalog):
    masks = set()
    for b in (1, 2):
        for c in (1, 2):
            for k in range(3):
                m = 0
                for p in range(N_POINTS):
                    d1, d2, d3 = point_digits(p)
                    if (d1 + b * d2 + c * d3) % 3 == k:
                        m |= 1 << p
                masks.add(m)
    assert len(masks) == 12
    assert masks == {h.id for h in catalog.of_type("H5")}


def test_vsum_algebra(catalog):
    a = catalog.hyperplanes[0].points
    b = catalog.hyperplanes[1].points
    c = catalog.hyperplanes[2].points
    assert vsum(a, b) == vsum(b, a)
    assert vsum(a, a) == ZERO
    assert vsum(a, ZERO) == a
    assert vsum(vsum(a, b), c) == vsum(a, vsum(b, c))


def test_catalog_sum_closes_and_identifies_zero(catalog):
    a, b = catalog.hyperplanes[0], catalog.hyperplanes[1]
    s = catalog.sum(a, b)
    assert s is not None
    assert s.id == (a.id ^ b.id) ^ FULL_MASK
    assert catalog.sum(a, a) is None
    assert catalog.sum(a, b, catalog.sum(a, b)) is None


def test_point_order_counts_full_lines(geometry, catalog):
    h = catalog.of_type("H2")[0]
    orders = [point_order(geometry, h.points, p) for p in h.points]
    profile = tuple(orders.count(k) for k in range(4))
    assert profile == (0, 6, 6, 3)
    outside = next(p for p in range(N_POINTS) if p not in h.points)
    with pytest.raises(ValueError):
        point_order(geometry, h.points, outside)


def test_quad_sections_match_the_quad_profile(geometry, catalog):
    for label in TYPE_LABELS:
        h = catalog.of_type(label)[0]
        kinds = [quad_section_type(geometry, h.points, qi) for qi in range(9)]
        profile = (kinds.count("deep"), kinds.count("singular"), kinds.count("ovoidal"))
        assert profile == HYPERPLANE_CENSUS[label].quad_profile


def test_classify_rejects_non_hyperplanes(geometry):
    with pytest.raises(ValueError):
        classify(geometry, PointSet(geometry.lines[0].mask))
    with pytest.raises(ValueError):
        classify(geometry, PointSet.full())


def test_weights_by_type(catalog):
    by_type = {label: {h.signature.weight for h in catalog.of_type(label)} for label in TYPE_LABELS}
    assert by_type == {"H1": {1}, "H2": {2}, "H3": {2}, "H4": {3}, "H5": {3}}


def test_catalog_records_are_json_ready(engine):
    engine.orbit_report
    records = catalog_records(engine.catalog)
    assert len(records) == 255
    text = json.dumps(records)
    back = json.loads(text)
    assert back[0]["type"] in TYPE_LABELS
    assert all(len(r["points"]) == r["n_points"] for r in back)
    assert all(r["stabilizer_order"] * r["orbit_size"] == 1296 for r in back)
