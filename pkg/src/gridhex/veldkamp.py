"""The Veldkamp space of the grid: 255 points, 10,795 lines, 41 line types.

Points are the hyperplanes; a line is {a, b, vsum(a,b)}. Each line's three
members share one common intersection (the core), and the G-orbits of lines
are pinned down by core invariants: point and line counts, how the core lines
sit (concurrent / parallel), the member-type composition, and four finer
refinements (isolated-pair distance, ovoidal quad count, coplanarity count,
and the 4-point distance split). The space coordinatizes as the projective
space PG(7,2) and carries a unique nontrivial invariant bilinear form.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import (
    FULL_MASK,
    N_POINTS,
    ConsistencyError,
    Geometry,
    PointSet,
    label_index,
    point_label,
)
from .group import Group, OrderedPairOrbits, index_action
from .hyperplanes import Hyperplane, HyperplaneCatalog, as_mask, point_order, vsum

ARRANGEMENT_NONE = "none"
ARRANGEMENT_SINGLE = "single"
ARRANGEMENT_CONCURRENT = "concurrent"
ARRANGEMENT_PARALLEL = "parallel"
ARRANGEMENT_MIXED = "mixed"

_MARK_TO_ARRANGEMENT = {"c": ARRANGEMENT_CONCURRENT, "p": ARRANGEMENT_PARALLEL}


@dataclass(frozen=True)
class LineTypeRow:
    """One row of the 41-type line census."""

    type_id: int
    core_points: int
    core_lines: int
    mark: Optional[str]
    refinement: Optional[tuple[str, object]]
    composition: tuple[str, str, str]
    count: int


LINE_TYPE_ROWS: tuple[LineTypeRow, ...] = (
    LineTypeRow(1, 15, 11, None, None, ("H1", "H1", "H1"), 27),
    LineTypeRow(2, 13, 8, None, None, ("H1", "H1", "H2"), 162),
    LineTypeRow(3, 12, 6, None, None, ("H1", "H1", "H3"), 108),
    LineTypeRow(4, 11, 7, None, None, ("H1", "H2", "H2"), 81),
    LineTypeRow(5, 10, 4, None, None, ("H1", "H2", "H3"), 648),
    LineTypeRow(6, 9, 6, None, None, ("H2", "H2", "H2"), 18),
    LineTypeRow(7, 9, 4, None, None, ("H1", "H3", "H3"), 324),
    LineTypeRow(8, 9, 3, "c", ("dist", 2), ("H1", "H2", "H4"), 324),
    LineTypeRow(9, 9, 3, None, None, ("H1", "H3", "H3"), 324),
    LineTypeRow(10, 9, 3, "p", None, ("H2", "H2", "H2"), 18),
    LineTypeRow(11, 9, 3, "c", ("dist", 3), ("H2", "H2", "H2"), 108),
    LineTypeRow(12, 8, 3, None, None, ("H2", "H2", "H3"), 648),
    LineTypeRow(13, 8, 2, None, None, ("H1", "H3", "H4"), 648),
    LineTypeRow(14, 7, 3, None, None, ("H1", "H4", "H4"), 27),
    LineTypeRow(15, 7, 2, "p", None, ("H2", "H3", "H3"), 162),
    LineTypeRow(16, 7, 2, "c", ("dist", 2), ("H2", "H3", "H3"), 324),
    LineTypeRow(17, 7, 2, "c", ("dist", 3), ("H2", "H3", "H3"), 324),
    LineTypeRow(18, 7, 1, None, ("ovoids", 2), ("H2", "H2", "H4"), 162),
    LineTypeRow(19, 7, 1, None, ("ovoids", 1), ("H2", "H3", "H3"), 324),
    LineTypeRow(20, 7, 0, None, None, ("H1", "H3", "H5"), 108),
    LineTypeRow(21, 7, 0, None, None, ("H1", "H4", "H4"), 108),
    LineTypeRow(22, 6, 2, "c", None, ("H2", "H3", "H4"), 648),
    LineTypeRow(23, 6, 2, "p", None, ("H3", "H3", "H3"), 108),
    LineTypeRow(24, 6, 1, None, None, ("H3", "H3", "H3"), 648),
    LineTypeRow(25, 6, 0, None, ("ovoids", 3), ("H1", "H4", "H5"), 216),
    LineTypeRow(26, 6, 0, None, ("ovoids", 2), ("H2", "H2", "H5"), 108),
    LineTypeRow(27, 6, 0, None, ("ovoids", 1), ("H2", "H3", "H4"), 648),
    LineTypeRow(28, 6, 0, None, ("ovoids", 0), ("H3", "H3", "H3"), 36),
    LineTypeRow(29, 5, 1, None, ("ovoids", 1), ("H2", "H4", "H4"), 162),
    LineTypeRow(30, 5, 1, None, ("ovoids", 0), ("H3", "H3", "H4"), 648),
    LineTypeRow(31, 5, 0, None, ("coplanar", 2), ("H2", "H3", "H5"), 324),
    LineTypeRow(32, 5, 0, None, ("coplanar", 2), ("H2", "H4", "H4"), 324),
    LineTypeRow(33, 5, 0, None, ("coplanar", 0), ("H3", "H3", "H4"), 648),
    LineTypeRow(34, 4, 0, None, None, ("H3", "H3", "H5"), 324),
    LineTypeRow(35, 4, 0, None, ("split", "3:1"), ("H3", "H4", "H4"), 216),
    LineTypeRow(36, 4, 0, None, ("split", "2:2"), ("H3", "H4", "H4"), 324),
    LineTypeRow(37, 3, 1, None, None, ("H4", "H4", "H4"), 54),
    LineTypeRow(38, 3, 0, None, ("ovoids", 1), ("H2", "H5", "H5"), 54),
    LineTypeRow(39, 3, 0, None, ("ovoids", 0), ("H3", "H4", "H5"), 216),
    LineTypeRow(40, 2, 0, None, None, ("H4", "H4", "H5"), 108),
    LineTypeRow(41, 0, 0, None, None, ("H5", "H5", "H5"), 4),
)

ROW_BY_TYPE = {row.type_id: row for row in LINE_TYPE_ROWS}

# Line types whose composition features both labels of the cell; diagonal
# cells count types containing the label with multiplicity >= 2.
COMPOSITION_OVERLAP_COUNTS: dict[tuple[str, str], int] = {
    ("H1", "H1"): 3, ("H1", "H2"): 4, ("H1", "H3"): 6, ("H1", "H4"): 5, ("H1", "H5"): 2,
    ("H2", "H2"): 7, ("H2", "H3"): 9, ("H2", "H4"): 6, ("H2", "H5"): 3,
    ("H3", "H3"): 12, ("H3", "H4"): 8, ("H3", "H5"): 4,
    ("H4", "H4"): 8, ("H4", "H5"): 3,
    ("H5", "H5"): 2,
}


@dataclass(frozen=True)
class CoreProfile:
    """Orbit-invariant fingerprint of a line's core."""

    n_points: int
    n_core_lines: int
    arrangement: str
    composition: tuple[str, str, str]
    isolated_pair_distance: Optional[int] = None
    ovoid_quad_count: Optional[int] = None
    coplanarity_count: Optional[int] = None
    four_point_split: Optional[str] = None

    def key(self) -> tuple:
        return (
            self.n_points,
            self.n_core_lines,
            self.arrangement,
            self.composition,
            self.isolated_pair_distance,
            self.ovoid_quad_count,
            self.coplanarity_count,
            self.four_point_split,
        )


@dataclass
class VeldkampLine:
    """A line of the Veldkamp space: three member masks, ascending."""

    members: tuple[int, int, int]
    member_indices: tuple[int, int, int]
    core: int
    profile: Optional[CoreProfile] = None
    type_id: Optional[int] = None


class VeldkampSpace:
    """The point-line structure on the 255 hyperplanes."""

    def __init__(self, catalog: HyperplaneCatalog, lines: list[VeldkampLine]) -> None:
        self.catalog = catalog
        self.geometry = catalog.geometry
        self.lines = tuple(sorted(lines, key=lambda ln: ln.members))
        self.line_index = {ln.members: i for i, ln in enumerate(self.lines)}
        self.index_by_members = {
            ln.member_indices: i for i, ln in enumerate(self.lines)
        }
        by_core: dict[int, list[int]] = {}
        for i, ln in enumerate(self.lines):
            by_core.setdefault(ln.core, []).append(i)
        self.by_core = {c: tuple(v) for c, v in by_core.items()}
        self.basis: Optional[tuple[int, ...]] = None
        self.coords: Optional[dict[int, int]] = None
        self.mask_of_code: Optional[tuple[int, ...]] = None


def core(line: VeldkampLine) -> PointSet:
    """Common intersection of the three members; tripwires pairwise equality."""
    a, b, c = line.members
    if not (a & b) == (a & c) == (b & c) == (a & b & c):
        raise ConsistencyError("pairwise intersections differ from the triple core")
    return PointSet(a & b & c)


def build_space(catalog: HyperplaneCatalog) -> VeldkampSpace:
    """All lines {a, b, vsum(a,b)} over unordered pairs, deduplicated."""
    masks = catalog.masks()
    n = len(masks)
    seen: dict[tuple[int, int, int], VeldkampLine] = {}
    for i in range(n):
        for j in range(i + 1, n):
            a, b = masks[i], masks[j]
            c = (a ^ b) ^ FULL_MASK
            if c == FULL_MASK:
                raise ConsistencyError("sum of distinct hyperplanes is Zero")
            k = catalog.index_by_mask.get(c)
            if k is None:
                raise ConsistencyError("sum escaped the hyperplane catalog")
            members = tuple(sorted((a, b, c)))
            if members in seen:
                continue
            indices = tuple(sorted((i, j, k)))
            cmask = a & b & c
            if not (a & b) == (a & c) == (b & c) == cmask:
                raise ConsistencyError("pairwise intersections differ on a line")
            seen[members] = VeldkampLine(members, indices, cmask)
    if len(seen) != 10795:
        raise ConsistencyError(f"built {len(seen)} lines, expected 10795")
    space = VeldkampSpace(catalog, list(seen.values()))
    per_point = Counter()
    for ln in space.lines:
        for idx in ln.member_indices:
            per_point[idx] += 1
    if set(per_point.values()) != {127} or len(per_point) != 255:
        raise ConsistencyError("some hyperplane is not on exactly 127 lines")
    return space


def coordinatize(space: VeldkampSpace) -> tuple[tuple[int, ...], dict[int, int]]:
    """Greedy basis of 8 independent hyperplanes; codes 1..255 for the rest.

    Independence and addition live in complement space, where vsum is XOR.
    Afterwards every line {a, b, c} satisfies code(a) ^ code(b) == code(c).
    """
    basis: list[int] = []
    reduced: list[int] = []
    for h in space.catalog.hyperplanes:
        v = h.id ^ FULL_MASK
        for b in reduced:
            v = min(v, v ^ b)
        if v:
            basis.append(h.id)
            reduced.append(v)
        if len(basis) == 8:
            break
    if len(basis) != 8:
        raise ConsistencyError("fewer than 8 independent hyperplanes found")

    coords: dict[int, int] = {FULL_MASK: 0}
    for code in range(1, 256):
        acc = 0
        for i in range(8):
            if code >> i & 1:
                acc ^= basis[i] ^ FULL_MASK
        coords[acc ^ FULL_MASK] = code
    covered = set(coords) - {FULL_MASK}
    if covered != set(space.catalog.masks()) or len(coords) != 256:
        raise ConsistencyError("coordinate map is not a bijection onto the catalog")
    for i, bm in enumerate(basis):
        if coords[bm] != 1 << i:
            raise ConsistencyError("basis member does not map to a unit vector")
    for ln in space.lines:
        a, b, c = ln.members
        if coords[a] ^ coords[b] != coords[c]:
            raise ConsistencyError("a line does not map to a collinear coordinate triple")

    mask_of_code = [0] * 256
    for m, code in coords.items():
        mask_of_code[code] = m
    space.basis = tuple(basis)
    space.coords = coords
    space.mask_of_code = tuple(mask_of_code)
    return space.basis, coords


def _core_lines(geometry: Geometry, cmask: int) -> list[int]:
    return [lm for lm in geometry.line_masks if lm & cmask == lm]


def _arrangement(lines: list[int]) -> str:
    if not lines:
        return ARRANGEMENT_NONE
    if len(lines) == 1:
        return ARRANGEMENT_SINGLE
    common = lines[0]
    for lm in lines[1:]:
        common &= lm
    if common:
        return ARRANGEMENT_CONCURRENT
    if all(
        lines[i] & lines[j] == 0
        for i in range(len(lines))
        for j in range(i + 1, len(lines))
    ):
        return ARRANGEMENT_PARALLEL
    return ARRANGEMENT_MIXED


def core_profile(
    geometry: Geometry, catalog: HyperplaneCatalog, line: VeldkampLine
) -> CoreProfile:
    """Compute every core invariant used by the 41-row census."""
    cmask = line.core
    pts = [p for p in range(N_POINTS) if cmask >> p & 1]
    lines = _core_lines(geometry, cmask)
    composition = tuple(
        sorted(catalog.hyperplanes[i].type_label for i in line.member_indices)
    )

    covered = 0
    for lm in lines:
        covered |= lm
    isolated = [p for p in pts if not covered >> p & 1]
    isolated_pair_distance = (
        geometry.distance(isolated[0], isolated[1]) if len(isolated) == 2 else None
    )

    ovoids = 0
    for quad in geometry.quads:
        sect = cmask & quad.mask
        if sect.bit_count() != 3:
            continue
        triple = [p for p in quad.points if sect >> p & 1]
        if all(
            geometry.distance(p, q) != 1
            for i, p in enumerate(triple)
            for q in triple[i + 1 :]
        ):
            ovoids += 1

    coplanarity_count = None
    if len(pts) == 5 and not lines:
        coplanarity_count = sum(
            1
            for p in pts
            if all(geometry.distance(p, q) <= 2 for q in pts if q != p)
        )

    four_point_split = None
    if len(pts) == 4 and composition == ("H3", "H4", "H4"):
        # Degree of each point in the max-distance relation: one point far
        # from the other three gives (3,1,1,1); a single far pair gives
        # (1,1,0,0), splitting the core into that pair and the rest.
        degrees = sorted(
            (
                sum(1 for q in pts if q != p and geometry.distance(p, q) == 3)
                for p in pts
            ),
            reverse=True,
        )
        if degrees == [3, 1, 1, 1]:
            four_point_split = "3:1"
        elif degrees == [1, 1, 0, 0]:
            four_point_split = "2:2"
        else:
            raise ConsistencyError(
                f"4-point core with unexpected far-degree profile {degrees}"
            )

    return CoreProfile(
        n_points=len(pts),
        n_core_lines=len(lines),
        arrangement=_arrangement(lines),
        composition=composition,
        isolated_pair_distance=isolated_pair_distance,
        ovoid_quad_count=ovoids,
        coplanarity_count=coplanarity_count,
        four_point_split=four_point_split,
    )


def _row_matches(row: LineTypeRow, profile: CoreProfile) -> bool:
    if (
        row.core_points != profile.n_points
        or row.core_lines != profile.n_core_lines
        or row.composition != profile.composition
    ):
        return False
    if row.mark is not None and _MARK_TO_ARRANGEMENT[row.mark] != profile.arrangement:
        return False
    if row.refinement is not None:
        kind, value = row.refinement
        got = {
            "dist": profile.isolated_pair_distance,
            "ovoids": profile.ovoid_quad_count,
            "coplanar": profile.coplanarity_count,
            "split": profile.four_point_split,
        }[kind]
        if got != value:
            return False
    return True


@dataclass
class LineClassification:
    """Result of the 41-way orbit classification."""

    type_of_line: tuple[int, ...]
    orbits: dict[int, tuple[int, ...]]
    representative: dict[int, int]
    profiles: dict[int, CoreProfile]

    def cardinalities(self) -> dict[int, int]:
        return {t: len(ix) for t, ix in self.orbits.items()}


def classify_lines(space: VeldkampSpace, group: Group) -> LineClassification:
    """Orbit the 10,795 lines, match each orbit to its census row."""
    geometry = space.geometry
    catalog = space.catalog
    for ln in space.lines:
        ln.profile = core_profile(geometry, catalog, ln)

    table = index_action(group.generators, catalog.masks())
    gen_rows = [list(map(int, row)) for row in table]
    orbit_of = [-1] * len(space.lines)
    orbit_members: list[list[int]] = []
    for start in range(len(space.lines)):
        if orbit_of[start] >= 0:
            continue
        oid = len(orbit_members)
        members = [start]
        orbit_of[start] = oid
        stack = [space.lines[start].member_indices]
        while stack:
            tri = stack.pop()
            for row in gen_rows:
                im = tuple(sorted((row[tri[0]], row[tri[1]], row[tri[2]])))
                li = space.index_by_members[im]
                if orbit_of[li] < 0:
                    orbit_of[li] = oid
                    members.append(li)
                    stack.append(im)
        orbit_members.append(sorted(members))
    if len(orbit_members) != 41:
        raise ConsistencyError(f"found {len(orbit_members)} line orbits, not 41")

    orbits: dict[int, tuple[int, ...]] = {}
    representative: dict[int, int] = {}
    profiles: dict[int, CoreProfile] = {}
    seen_keys: dict[tuple, int] = {}
    type_of_line = [0] * len(space.lines)
    for members in orbit_members:
        rep = space.lines[members[0]]
        key = rep.profile.key()
        for li in members[1:]:
            if space.lines[li].profile.key() != key:
                raise ConsistencyError("core profile is not constant on an orbit")
        matches = [row for row in LINE_TYPE_ROWS if _row_matches(row, rep.profile)]
        if len(matches) != 1:
            raise ConsistencyError(
                f"orbit with profile {rep.profile} matches "
                f"{[r.type_id for r in matches]} census rows"
            )
        row = matches[0]
        if row.type_id in orbits:
            raise ConsistencyError(f"two orbits match census row {row.type_id}")
        if len(members) != row.count:
            raise ConsistencyError(
                f"orbit for row {row.type_id} has {len(members)} lines, "
                f"expected {row.count}"
            )
        if key in seen_keys:
            raise ConsistencyError(
                f"orbits {seen_keys[key]} and {row.type_id} share a profile key"
            )
        seen_keys[key] = row.type_id
        orbits[row.type_id] = tuple(members)
        representative[row.type_id] = members[0]
        profiles[row.type_id] = rep.profile
        for li in members:
            type_of_line[li] = row.type_id
            space.lines[li].type_id = row.type_id
    if sorted(orbits) != [row.type_id for row in LINE_TYPE_ROWS]:
        raise ConsistencyError("orbit types do not cover rows 1..41")
    return LineClassification(tuple(type_of_line), orbits, representative, profiles)


def composition_summary(classification: LineClassification) -> dict[tuple[str, str], int]:
    """Count line types featuring both labels; diagonal needs multiplicity 2."""
    from .hyperplanes import TYPE_LABELS

    out: dict[tuple[str, str], int] = {}
    comps = [classification.profiles[t].composition for t in sorted(classification.orbits)]
    for i, a in enumerate(TYPE_LABELS):
        for b in TYPE_LABELS[i:]:
            if a == b:
                out[(a, b)] = sum(1 for c in comps if c.count(a) >= 2)
            else:
                out[(a, b)] = sum(1 for c in comps if a in c and b in c)
    return out


def composition_statistics(classification: LineClassification) -> dict:
    """Derived composition facts: homogeneous and heterogeneous types, gaps."""
    from itertools import combinations

    from .hyperplanes import TYPE_LABELS

    comps = {t: classification.profiles[t].composition for t in classification.orbits}
    homogeneous = sorted(t for t, c in comps.items() if len(set(c)) == 1)
    heterogeneous = sorted(t for t, c in comps.items() if len(set(c)) == 3)
    realized = {tuple(sorted(set(comps[t]))) for t in heterogeneous}
    missing = sorted(
        combo for combo in combinations(TYPE_LABELS, 3) if combo not in realized
    )
    occurrences = {
        label: sum(1 for c in comps.values() if label in c) for label in TYPE_LABELS
    }
    singles = {
        label: sum(1 for c in comps.values() if c.count(label) == 1)
        for label in TYPE_LABELS
    }
    return {
        "homogeneous_types": homogeneous,
        "heterogeneous_types": heterogeneous,
        "missing_heterogeneous_combinations": missing,
        "type_occurrences": occurrences,
        "single_occurrences": singles,
    }


def symplectic_form(a, b) -> int:
    """0 when the two point sets share an odd number of points, else 1."""
    return ((as_mask(a) & as_mask(b)).bit_count() & 1) ^ 1


def _code_parity_matrix(space: VeldkampSpace) -> np.ndarray:
    """256 x 256 form values indexed by coordinate code (code 0 = Zero)."""
    if space.mask_of_code is None:
        raise ValueError("space is not coordinatized")
    bits = np.zeros((256, N_POINTS), dtype=np.int64)
    for code in range(1, 256):
        m = space.mask_of_code[code]
        for p in range(N_POINTS):
            bits[code, p] = m >> p & 1
    inter = bits @ bits.T
    f = (inter & 1) ^ 1
    f[0, :] = 0
    f[:, 0] = 0
    return f.astype(np.uint8)


def gf2_nullspace(rows: list[int], n_vars: int) -> list[int]:
    """Basis of {x : row . x = 0 over GF(2)} for bitmask equation rows."""
    pivots: dict[int, int] = {}
    for r in rows:
        cur = r
        for c, pr in pivots.items():
            if cur >> c & 1:
                cur ^= pr
        if cur:
            pivots[cur.bit_length() - 1] = cur
    basis = []
    for free in range(n_vars):
        if free in pivots:
            continue
        v = 1 << free
        for c in sorted(pivots):
            row = pivots[c]
            if ((row & ~(1 << c)) & v).bit_count() & 1:
                v |= 1 << c
        basis.append(v)
    return basis


def gf2_rank(rows: list[int]) -> int:
    pivots: dict[int, int] = {}
    for r in rows:
        cur = r
        for c, pr in pivots.items():
            if cur >> c & 1:
                cur ^= pr
        if cur:
            pivots[cur.bit_length() - 1] = cur
    return len(pivots)


def form_matrix(space: VeldkampSpace) -> tuple[tuple[int, ...], ...]:
    """8x8 GF(2) matrix of the form on the coordinate basis."""
    if space.basis is None:
        raise ValueError("space is not coordinatized")
    return tuple(
        tuple(symplectic_form(space.basis[i], space.basis[j]) for j in range(8))
        for i in range(8)
    )


def form_rank(matrix: tuple[tuple[int, ...], ...]) -> int:
    rows = [sum(bit << j for j, bit in enumerate(row)) for row in matrix]
    return gf2_rank(rows)


def _generator_coordinate_matrices(space: VeldkampSpace, group: Group) -> list[np.ndarray]:
    """One 8x8 GF(2) matrix per generator, acting on coordinate columns."""
    coords = space.coords
    out = []
    u_bits = np.zeros((256, 8), dtype=np.uint8)
    for code in range(256):
        for i in range(8):
            u_bits[code, i] = code >> i & 1
    for g in group.generators:
        p = np.zeros((8, 8), dtype=np.uint8)
        for j, bm in enumerate(space.basis):
            image_code = coords[g.apply_mask(bm)]
            for i in range(8):
                p[i, j] = image_code >> i & 1
        image_codes = np.array(
            [coords[g.apply_mask(space.mask_of_code[code])] for code in range(256)]
        )
        expected = (u_bits @ p.T) & 1
        got = u_bits[image_codes]
        if not np.array_equal(got, expected):
            raise ConsistencyError("generator action on coordinates is not linear")
        out.append(p)
    return out


def invariant_form_space(space: VeldkampSpace, group: Group) -> list[tuple[tuple[int, ...], ...]]:
    """All bilinear forms M with Pt M P = M for every generator matrix P.

    Returns the solutions as 8x8 bit matrices; the expected result is exactly
    [zero, B] where B is the intersection-parity form. Also checks, fully
    exhaustively, that B is bilinear, symmetric, alternating, non-degenerate,
    and invariant under all 1296 elements.
    """
    if space.coords is None:
        raise ValueError("space is not coordinatized")
    f = _code_parity_matrix(space)

    u = np.arange(256)
    xor_table = u[:, None] ^ u[None, :]
    if not np.array_equal(f[xor_table], f[:, None, :] ^ f[None, :, :]):
        raise ConsistencyError("the parity form is not bilinear")
    if not np.array_equal(f, f.T):
        raise ConsistencyError("the parity form is not symmetric")
    if f.diagonal().any():
        raise ConsistencyError("the parity form is not alternating")

    b_matrix = form_matrix(space)
    for i in range(8):
        for j in range(8):
            if b_matrix[i][j] != int(f[1 << i, 1 << j]):
                raise ConsistencyError("basis form matrix disagrees with code parity")
    if form_rank(b_matrix) != 8:
        raise ConsistencyError("the parity form is degenerate")

    matrices = _generator_coordinate_matrices(space, group)
    rows: list[int] = []
    for p in matrices:
        for i in range(8):
            for j in range(8):
                row = 0
                for k in range(8):
                    if not p[k, i]:
                        continue
                    for l in range(8):
                        if p[l, j]:
                            row ^= 1 << (8 * k + l)
                row ^= 1 << (8 * i + j)
                rows.append(row)
    solutions = gf2_nullspace(rows, 64)
    if len(solutions) != 1:
        raise ConsistencyError(
            f"invariant form space has dimension {len(solutions)}, not 1"
        )
    b_bits = sum(
        b_matrix[k][l] << (8 * k + l) for k in range(8) for l in range(8)
    )
    if solutions[0] != b_bits:
        raise ConsistencyError("the solved invariant form is not the parity form")
    zero = tuple(tuple(0 for _ in range(8)) for _ in range(8))
    return [zero, b_matrix]


def verify_form_invariance(space: VeldkampSpace, group: Group) -> None:
    """B(ga, gb) = B(a, b) exhaustively over all 1296 elements."""
    if space.coords is None:
        raise ValueError("space is not coordinatized")
    f = _code_parity_matrix(space)
    masks = space.catalog.masks()
    table = index_action(group.elements, masks)
    code_of = np.zeros(len(masks), dtype=np.int64)
    for k, m in enumerate(masks):
        code_of[k] = space.coords[m]
    for gi in range(table.shape[0]):
        perm = np.zeros(256, dtype=np.int64)
        perm[code_of] = code_of[table[gi]]
        if not np.array_equal(f[np.ix_(perm, perm)], f):
            raise ConsistencyError("the form is not invariant under some element")


def isotropic_line_counts(space: VeldkampSpace) -> tuple[int, int]:
    """(isotropic, non-isotropic) counts; both criteria must agree per line."""
    iso = 0
    for ln in space.lines:
        by_core = bool(ln.core.bit_count() & 1)
        a, b, c = ln.members
        by_form = (
            symplectic_form(a, b) == 0
            and symplectic_form(a, c) == 0
            and symplectic_form(b, c) == 0
        )
        if by_core != by_form:
            raise ConsistencyError("isotropy criteria disagree on a line")
        iso += by_core
    return iso, len(space.lines) - iso


def nucleus(geometry: Geometry, h3) -> int:
    """The unique order-zero point of a 13-point hyperplane."""
    pts = PointSet(as_mask(h3))
    zeros = [p for p in pts if point_order(geometry, pts, p) == 0]
    if len(zeros) != 1:
        raise ConsistencyError(f"expected one order-zero point, found {len(zeros)}")
    return zeros[0]


def axis(geometry: Geometry, h3) -> tuple[int, int]:
    """The two points sharing a quad with all 12 non-nucleus points."""
    mask = as_mask(h3)
    rest = mask & ~(1 << nucleus(geometry, PointSet(mask)))
    pts = [p for p in range(N_POINTS) if rest >> p & 1]
    hits = [
        p
        for p in range(N_POINTS)
        if all(geometry.distance(p, q) <= 2 for q in pts)
    ]
    if len(hits) != 2:
        raise ConsistencyError(f"axis candidates number {len(hits)}, not 2")
    return (hits[0], hits[1])


def h3_with_nucleus_axis(
    geometry: Geometry,
    catalog: HyperplaneCatalog,
    nucleus_label: str,
    axis_labels: tuple[str, str],
) -> Hyperplane:
    """The unique 13-point hyperplane with the given nucleus and axis."""
    want_n = label_index(nucleus_label)
    want_axis = tuple(sorted(label_index(s) for s in axis_labels))
    found = [
        h
        for h in catalog.of_type("H3")
        if nucleus(geometry, h.points) == want_n
        and axis(geometry, h.points) == want_axis
    ]
    if len(found) != 1:
        raise ConsistencyError(
            f"{len(found)} hyperplanes have nucleus {nucleus_label}, axis {axis_labels}"
        )
    return found[0]


def lines_with_core(space: VeldkampSpace, s) -> tuple[VeldkampLine, ...]:
    """All lines whose core equals the given point set."""
    return tuple(space.lines[i] for i in space.by_core.get(as_mask(s), ()))


def pair_orbit_type_breakdown(
    space: VeldkampSpace,
    classification: LineClassification,
    pair_orbits: OrderedPairOrbits,
) -> dict[tuple[str, str], dict[int, int]]:
    """Per type-pair cell: how many ordered-pair orbits each line type carries."""
    catalog = space.catalog
    out: dict[tuple[str, str], dict[int, int]] = {}
    for ai, bi in pair_orbits.reps:
        a = catalog.hyperplanes[ai].id
        b = catalog.hyperplanes[bi].id
        members = tuple(sorted((a, b, (a ^ b) ^ FULL_MASK)))
        t = classification.type_of_line[space.line_index[members]]
        cell = (
            catalog.hyperplanes[ai].type_label,
            catalog.hyperplanes[bi].type_label,
        )
        out.setdefault(cell, {})
        out[cell][t] = out[cell].get(t, 0) + 1
    return out


def line_type_records(classification: LineClassification) -> list[dict]:
    """JSON-ready rows for the 41 line types."""
    rows = []
    for row in LINE_TYPE_ROWS:
        profile = classification.profiles[row.type_id]
        rows.append(
            {
                "type": row.type_id,
                "core_points": profile.n_points,
                "core_lines": profile.n_core_lines,
                "arrangement": profile.arrangement,
                "composition": list(profile.composition),
                "isolated_pair_distance": profile.isolated_pair_distance,
                "ovoid_quad_count": profile.ovoid_quad_count,
                "coplanarity_count": profile.coplanarity_count,
                "four_point_split": profile.four_point_split,
                "count": len(classification.orbits[row.type_id]),
            }
        )
    return rows


def line_catalog_rows(space: VeldkampSpace) -> list[list]:
    """CSV-ready rows for all 10,795 lines, in line-index order."""
    rows = []
    for i, ln in enumerate(space.lines):
        a, b, c = ln.members
        rows.append(
            [
                i,
                a,
                b,
                c,
                ln.type_id,
                ln.core,
                int(bool(ln.core.bit_count() & 1)),
            ]
        )
    return rows
