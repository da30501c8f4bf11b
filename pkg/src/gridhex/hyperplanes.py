"""Hyperplanes of the grid: enumeration, classification, census.

A hyperplane meets every line in 1 or 3 points. Under the "complement of the
symmetric difference" sum (vsum below) the 255 hyperplanes together with the
full point set form a GF(2) vector space of dimension 8, spanned by the 27
singular hyperplanes (one per point: everything at distance <= 2 from it).

Classes are keyed H1..H5 by descending point count; each carries the line
count, the profile of point orders, the profile of quad sections, the minimal
number of singular summands (weight), and, once a group is attached, the
stabilizer order and orbit size.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .geometry import (
    FULL_MASK,
    N_POINTS,
    ConsistencyError,
    Geometry,
    PointSet,
    is_hyperplane,
    point_label,
)

TYPE_LABELS = ("H1", "H2", "H3", "H4", "H5")

DEEP = "deep"
SINGULAR = "singular"
OVOIDAL = "ovoidal"


@dataclass(frozen=True)
class CensusRow:
    """Invariants shared by every hyperplane of one class."""

    type_label: str
    n_points: int
    n_lines: int
    order_profile: tuple[int, int, int, int]
    quad_profile: tuple[int, int, int]
    weight: int
    stabilizer_order: int
    n_copies: int
    structure_label: str


HYPERPLANE_CENSUS: dict[str, CensusRow] = {
    "H1": CensusRow("H1", 19, 15, (0, 0, 12, 7), (3, 6, 0), 1, 48, 27, "Z2 wr S3"),
    "H2": CensusRow("H2", 15, 9, (0, 6, 6, 3), (1, 6, 2), 2, 24, 54, "Z2^2 x S3"),
    "H3": CensusRow("H3", 13, 6, (1, 6, 6, 0), (0, 6, 3), 2, 12, 108, "D12"),
    "H4": CensusRow("H4", 11, 3, (4, 6, 0, 1), (0, 3, 6), 3, 24, 54, "S4"),
    "H5": CensusRow("H5", 9, 0, (9, 0, 0, 0), (0, 0, 9), 3, 108, 12, "E9 : S3"),
}

TYPE_BY_SIZE = {row.n_points: label for label, row in HYPERPLANE_CENSUS.items()}

# Identity of the hyperplane sum: the full point set.
ZERO = PointSet(FULL_MASK)


@dataclass
class ClassSignature:
    """Computed invariants of one hyperplane; compared against the census."""

    type_label: str
    n_points: int
    n_lines: int
    order_profile: tuple[int, int, int, int]
    quad_profile: tuple[int, int, int]
    weight: Optional[int] = None
    stabilizer_order: Optional[int] = None
    orbit_size: Optional[int] = None


class Hyperplane:
    """A classified hyperplane. Identity and id are the point mask."""

    __slots__ = ("points", "signature")

    def __init__(self, points: PointSet, signature: ClassSignature) -> None:
        self.points = points
        self.signature = signature

    @property
    def id(self) -> int:
        return self.points.mask

    @property
    def type_label(self) -> str:
        return self.signature.type_label

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Hyperplane) and self.points == other.points

    def __hash__(self) -> int:
        return hash(self.points)

    def __repr__(self) -> str:
        return f"Hyperplane(id={self.id:#09x}, type={self.type_label})"


def as_mask(x) -> int:
    """Coerce a Hyperplane, PointSet, or raw mask to a 27-bit mask."""
    if isinstance(x, Hyperplane):
        return x.points.mask
    if isinstance(x, PointSet):
        return x.mask
    if isinstance(x, int):
        if not 0 <= x <= FULL_MASK:
            raise ValueError(f"mask out of range: {x!r}")
        return x
    raise TypeError(f"cannot interpret {type(x).__name__} as a point mask")


def vsum(a, b) -> PointSet:
    """Complement of the symmetric difference: the hyperplane sum."""
    return PointSet((as_mask(a) ^ as_mask(b)) ^ FULL_MASK)


def singular_hyperplane(geometry: Geometry, x: int) -> PointSet:
    """All points at distance <= 2 from x (x itself is the unique deep point)."""
    return PointSet.from_indices(
        p for p in range(N_POINTS) if geometry.distance(x, p) <= 2
    )


def point_order(geometry: Geometry, h: PointSet, p: int) -> int:
    """Number of lines through p lying entirely inside h."""
    if p not in h:
        raise ValueError(f"point {point_label(p)} is not in the hyperplane")
    return sum(1 for ln in geometry.lines_through[p] if ln.mask & h.mask == ln.mask)


def quad_section_type(geometry: Geometry, h: PointSet, quad_index: int) -> str:
    """Classify how h meets one quad: deep, singular, or ovoidal.

    deep: the whole quad. singular: 5 points forming the two internal lines
    through one point. ovoidal: 3 pairwise non-collinear points (a transversal).
    """
    quad = geometry.quads[quad_index]
    sect = h.mask & quad.mask
    size = sect.bit_count()
    if size == 9:
        return DEEP
    if size == 5:
        pts = [p for p in quad.points if sect >> p & 1]
        for center in pts:
            through = [
                ln
                for ln in quad.internal_lines
                if center in ln.points and ln.mask & sect == ln.mask
            ]
            if len(through) == 2:
                union = through[0].mask | through[1].mask
                if union == sect:
                    return SINGULAR
        raise ConsistencyError("5-point quad section is not a singular pair of lines")
    if size == 3:
        pts = [p for p in quad.points if sect >> p & 1]
        if all(
            geometry.distance(p, q) != 1 for p in pts for q in pts if p < q
        ):
            return OVOIDAL
        raise ConsistencyError("3-point quad section contains collinear points")
    raise ConsistencyError(f"quad section of unrecognized size {size}")


def classify(geometry: Geometry, h: PointSet) -> ClassSignature:
    """Full invariant signature of a hyperplane, checked against the census."""
    if not is_hyperplane(geometry, h):
        raise ValueError("point set is not a hyperplane")
    n_points = len(h)
    n_lines = sum(1 for lm in geometry.line_masks if lm & h.mask == lm)
    orders = [0, 0, 0, 0]
    for p in h:
        orders[point_order(geometry, h, p)] += 1
    counts = {DEEP: 0, SINGULAR: 0, OVOIDAL: 0}
    for qi in range(len(geometry.quads)):
        counts[quad_section_type(geometry, h, qi)] += 1
    quad_profile = (counts[DEEP], counts[SINGULAR], counts[OVOIDAL])

    label = TYPE_BY_SIZE.get(n_points)
    if label is None:
        raise ConsistencyError(f"hyperplane with unexpected point count {n_points}")
    row = HYPERPLANE_CENSUS[label]
    sig = ClassSignature(label, n_points, n_lines, tuple(orders), quad_profile)
    if (n_lines, sig.order_profile, quad_profile) != (
        row.n_lines,
        row.order_profile,
        row.quad_profile,
    ):
        raise ConsistencyError(
            f"signature of a {n_points}-point hyperplane does not match class "
            f"{label}: lines={n_lines}, orders={sig.order_profile}, "
            f"quads={quad_profile}"
        )
    return sig


class HyperplaneCatalog:
    """All 255 hyperplanes, ordered by ascending id."""

    def __init__(self, geometry: Geometry, hyperplanes: list[Hyperplane]) -> None:
        self.geometry = geometry
        self.hyperplanes = tuple(sorted(hyperplanes, key=lambda h: h.id))
        self.by_mask = {h.id: h for h in self.hyperplanes}
        self.index_by_mask = {h.id: i for i, h in enumerate(self.hyperplanes)}
        deeps: dict[int, Hyperplane] = {}
        for h in self.hyperplanes:
            if h.type_label == "H1":
                orders = [
                    p for p in h.points if point_order(geometry, h.points, p) == 3
                ]
                if len(orders) != 7:
                    raise ConsistencyError("H1 does not have 7 points of order 3")
                centers = [
                    p
                    for p in orders
                    if all(geometry.distance(p, q) <= 2 for q in h.points)
                ]
                if len(centers) != 1:
                    raise ConsistencyError("H1 deep point is not unique")
                deeps[centers[0]] = h
        if sorted(deeps) != list(range(N_POINTS)):
            raise ConsistencyError("singular hyperplanes do not cover all points")
        self.singular = tuple(deeps[p] for p in range(N_POINTS))

    def __len__(self) -> int:
        return len(self.hyperplanes)

    def __iter__(self):
        return iter(self.hyperplanes)

    def of_type(self, label: str) -> tuple[Hyperplane, ...]:
        return tuple(h for h in self.hyperplanes if h.type_label == label)

    def masks(self) -> tuple[int, ...]:
        return tuple(h.id for h in self.hyperplanes)

    def sum(self, *items) -> Optional[Hyperplane]:
        """vsum of the arguments; None when the sum is the full set (Zero)."""
        acc = FULL_MASK
        for it in items:
            acc = (acc ^ as_mask(it)) ^ FULL_MASK
        if acc == FULL_MASK:
            return None
        h = self.by_mask.get(acc)
        if h is None:
            raise ConsistencyError("sum escaped the hyperplane catalog")
        return h

    def type_counts(self) -> dict[str, int]:
        counts = {label: 0 for label in TYPE_LABELS}
        for h in self.hyperplanes:
            counts[h.type_label] += 1
        return counts


def _assign_weights(geometry: Geometry, catalog: HyperplaneCatalog) -> None:
    """Minimal number of singular summands per hyperplane (1, 2, or 3)."""
    singles = {catalog.singular[p].id for p in range(N_POINTS)}
    weight2: set[int] = set()
    for p in range(N_POINTS):
        for q in range(p + 1, N_POINTS):
            weight2.add(
                (catalog.singular[p].id ^ catalog.singular[q].id) ^ FULL_MASK
            )
    weight3: set[int] = set()
    for p in range(N_POINTS):
        for q in range(p + 1, N_POINTS):
            for r in range(q + 1, N_POINTS):
                weight3.add(
                    catalog.singular[p].id
                    ^ catalog.singular[q].id
                    ^ catalog.singular[r].id
                )
    for h in catalog.hyperplanes:
        if h.id in singles:
            h.signature.weight = 1
        elif h.id in weight2:
            h.signature.weight = 2
        elif h.id in weight3:
            h.signature.weight = 3
        else:
            raise ConsistencyError(
                f"hyperplane {h.id:#x} needs more than 3 singular summands"
            )
    for label, row in HYPERPLANE_CENSUS.items():
        got = {h.signature.weight for h in catalog.of_type(label)}
        if got != {row.weight}:
            raise ConsistencyError(f"class {label} has mixed weights {got}")


def enumerate_hyperplanes(geometry: Geometry) -> HyperplaneCatalog:
    """Span the 27 singular hyperplanes and classify the resulting 255.

    The span is taken in complement space, where vsum becomes plain XOR.
    """
    singleton = [singular_hyperplane(geometry, p) for p in range(N_POINTS)]
    basis: list[int] = []
    for s in singleton:
        v = s.mask ^ FULL_MASK
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    if len(basis) != 8:
        raise ConsistencyError(f"singular span has dimension {len(basis)}, not 8")

    masks: set[int] = set()
    for combo in range(1, 1 << len(basis)):
        v = 0
        for i, b in enumerate(basis):
            if combo >> i & 1:
                v ^= b
        masks.add(v ^ FULL_MASK)
    if len(masks) != 255:
        raise ConsistencyError(f"span produced {len(masks)} sets, not 255")

    hyperplanes = [Hyperplane(PointSet(m), classify(geometry, PointSet(m))) for m in sorted(masks)]
    catalog = HyperplaneCatalog(geometry, hyperplanes)
    _assign_weights(geometry, catalog)

    counts = catalog.type_counts()
    expected = {label: row.n_copies for label, row in HYPERPLANE_CENSUS.items()}
    if counts != expected:
        raise ConsistencyError(f"census partition {counts} != {expected}")
    return catalog


def brute_force_hyperplane_masks(geometry: Geometry, chunk_bits: int = 24) -> list[int]:
    """Scan all 2^27 point sets for the hyperplane property. The oracle.

    Progressively filters candidate masks line by line using vectorized
    popcounts on the 3 bits each line occupies.
    """
    import numpy as np

    chunk = 1 << chunk_bits
    total = 1 << N_POINTS
    line_bits = [
        tuple(sorted(p for p in range(N_POINTS) if lm >> p & 1))
        for lm in geometry.line_masks
    ]
    found: list[int] = []
    for start in range(0, total, chunk):
        block = np.arange(start, min(start + chunk, total), dtype=np.uint32)
        for a, b, c in line_bits:
            k = (block >> a & 1) + (block >> b & 1) + (block >> c & 1)
            block = block[(k == 1) | (k == 3)]
            if block.size == 0:
                break
        found.extend(int(m) for m in block)
    out = sorted(m for m in found if m != FULL_MASK)
    if FULL_MASK not in found:
        raise ConsistencyError("brute-force scan did not find the full set")
    return out


def catalog_records(catalog: HyperplaneCatalog) -> list[dict]:
    """JSON-ready rows for every hyperplane, in id order."""
    rows = []
    for h in catalog.hyperplanes:
        sig = h.signature
        rows.append(
            {
                "id": h.id,
                "type": sig.type_label,
                "points": list(h.points.labels()),
                "n_points": sig.n_points,
                "n_lines": sig.n_lines,
                "order_profile": list(sig.order_profile),
                "quad_profile": list(sig.quad_profile),
                "weight": sig.weight,
                "stabilizer_order": sig.stabilizer_order,
                "orbit_size": sig.orbit_size,
            }
        )
    return rows
