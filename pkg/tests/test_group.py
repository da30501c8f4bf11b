from __future__ import annotations

import numpy as np
import pytest

from gridhex.geometry import N_POINTS, PointSet
from gridhex.group import (
    GROUP_ORDER,
    ORDERED_PAIR_ORBIT_COUNTS,
    Permutation,
    generators,
    index_action,
    ordered_pair_orbit_count,
    preserves_lines,
)
from gridhex.hyperplanes import TYPE_LABELS

EXPECTED_ORBIT_STABILIZER = {
    "H1": (27, 48),
    "H2": (54, 24),
    "H3": (108, 12),
    "H4": (54, 24),
    "H5": (12, 108),
}

EXPECTED_GROUP_ORDER_PROFILE = {
    1: 1, 2: 135, 3: 98, 4: 216, 6: 594, 9: 144, 12: 108,
}

EXPECTED_H3_STABILIZER_PROFILE = {1: 1, 2: 7, 3: 2, 6: 2}

# Orbits on ordered pairs of distinct hyperplanes, upper triangle by type.
EXPECTED_PAIR_ORBITS = {
    ("H1", "H1"): 3, ("H1", "H2"): 4, ("H1", "H3"): 6, ("H1", "H4"): 5, ("H1", "H5"): 2,
    ("H2", "H2"): 7, ("H2", "H3"): 9, ("H2", "H4"): 6, ("H2", "H5"): 3,
    ("H3", "H3"): 15, ("H3", "H4"): 10, ("H3", "H5"): 4,
    ("H4", "H4"): 9, ("H4", "H5"): 3,
    ("H5", "H5"): 2,
}


def test_generators_preserve_lines(geometry):
    gens = generators(geometry)
    assert len(gens) == 8
    assert all(preserves_lines(geometry, g) for g in gens)


def test_group_order_and_closure(group):
    assert group.order == GROUP_ORDER == 1296
    assert Permutation.identity() in set(group.elements)
    sample = group.elements[:6] + group.elements[-6:]
    members = set(group.elements)
    for g in sample:
        assert g.inverse() in members
        for h in sample:
            assert g * h in members


def test_permutation_arithmetic():
    e = Permutation.identity()
    swap = Permutation(tuple(range(1, -1, -1)) + tuple(range(2, N_POINTS)))
    assert (swap * swap) == e
    assert swap.inverse() == swap
    assert swap.order() == 2
    assert e.order() == 1
    assert swap.apply_mask(0b01) == 0b10
    assert swap.apply(PointSet(0b01)) == PointSet(0b10)


def test_element_order_profile(group):
    profile = group.element_order_profile()
    assert profile == EXPECTED_GROUP_ORDER_PROFILE
    assert sum(profile.values()) == GROUP_ORDER


def test_point_and_quad_transitivity(geometry, group):
    orbits = group.point_orbits()
    assert [len(o) for o in orbits] == [N_POINTS]
    quad_orbit = group.orbit(PointSet(geometry.quads[0].mask))
    assert len(quad_orbit) == 9


def test_hyperplane_orbits_and_stabilizers(engine):
    assert engine.orbit_report == EXPECTED_ORBIT_STABILIZER
    for h in engine.catalog.hyperplanes:
        sig = h.signature
        assert sig.orbit_size * sig.stabilizer_order == GROUP_ORDER


def test_h3_stabilizer_is_dihedral_of_order_12(engine):
    rep = engine.catalog.of_type("H3")[0]
    stab = engine.group.stabilizer(rep.points)
    assert stab.order == 12
    assert stab.is_closed
    assert stab.element_order_profile() == EXPECTED_H3_STABILIZER_PROFILE


def test_index_action_table(geometry, group):
    table = index_action(group.generators, geometry.line_masks)
    assert table.shape == (len(group.generators), 27)
    for gi, g in enumerate(group.generators):
        for k, m in enumerate(geometry.line_masks):
            assert geometry.line_masks[table[gi, k]] == g.apply_mask(m)


def test_index_action_rejects_a_non_closed_family(geometry, group):
    from gridhex.geometry import ConsistencyError

    masks = geometry.line_masks[:5]
    with pytest.raises(ConsistencyError):
        index_action(group.generators, masks)


def test_identity_row_is_trivial(geometry, group):
    e = Permutation.identity()
    table = index_action((e,), geometry.line_masks)
    assert np.array_equal(table[0], np.arange(27))


def test_frozen_pair_orbit_table():
    assert ORDERED_PAIR_ORBIT_COUNTS == EXPECTED_PAIR_ORBITS
    assert sum(
        n if a == b else 2 * n for (a, b), n in ORDERED_PAIR_ORBIT_COUNTS.items()
    ) == 140


def test_pair_orbit_flood_matches_frozen_table(pair_orbits):
    assert pair_orbits.matrix() == EXPECTED_PAIR_ORBITS


@pytest.mark.parametrize("cell", sorted(EXPECTED_PAIR_ORBITS))
def test_pair_orbit_stabilizer_method(engine, cell):
    a, b = cell
    count = ordered_pair_orbit_count(engine.group, engine.catalog, a, b)
    assert count == EXPECTED_PAIR_ORBITS[cell]


def test_pair_orbits_cover_all_type_cells(pair_orbits):
    cells = set(pair_orbits.orbit_cells)
    assert cells == {(a, b) for a in TYPE_LABELS for b in TYPE_LABELS}
    total = sum(len(v) for v in pair_orbits.orbit_cells.values())
    assert total == 140
