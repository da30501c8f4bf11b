"""Automorphisms of the grid: the wreath product S3 wr S3, order 1296.

Generated by value permutations inside each digit position (3 x S3) and
permutations of the positions themselves (S3). Elements act on point indices;
everything downstream (hyperplanes, pair orbits, Veldkamp lines) is moved by
acting on 27-bit masks.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from math import gcd

from .geometry import (
    N_POINTS,
    ConsistencyError,
    Geometry,
    PointSet,
    point_digits,
    point_index,
)
from .hyperplanes import TYPE_LABELS, HyperplaneCatalog

GROUP_ORDER = 1296


class Permutation:
    """A permutation of the 27 point indices."""

    __slots__ = ("images",)

    def __init__(self, images) -> None:
        images = tuple(images)
        if sorted(images) != list(range(N_POINTS)):
            raise ValueError("not a permutation of 0..26")
        self.images = images

    @classmethod
    def identity(cls) -> "Permutation":
        return cls(range(N_POINTS))

    def __call__(self, i: int) -> int:
        return self.images[i]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # (self * other)(i) = self(other(i))
        return Permutation(self.images[j] for j in other.images)

    def inverse(self) -> "Permutation":
        inv = [0] * N_POINTS
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(inv)

    def apply_mask(self, mask: int) -> int:
        out = 0
        m = mask
        while m:
            low = m & -m
            out |= 1 << self.images[low.bit_length() - 1]
            m ^= low
        return out

    def apply(self, s: PointSet) -> PointSet:
        return PointSet(self.apply_mask(s.mask))

    def order(self) -> int:
        seen = [False] * N_POINTS
        result = 1
        for start in range(N_POINTS):
            if seen[start]:
                continue
            length = 0
            i = start
            while not seen[i]:
                seen[i] = True
                i = self.images[i]
                length += 1
            result = result * length // gcd(result, length)
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def __repr__(self) -> str:
        return f"Permutation({self.images})"


_SWAP01 = (1, 0, 2)
_CYCLE012 = (1, 2, 0)


def _value_map(position: int, table: tuple[int, int, int]) -> Permutation:
    """Apply `table` to the digit in one position (1-based), fix the others."""
    images = []
    for p in range(N_POINTS):
        d = list(point_digits(p))
        d[position - 1] = table[d[position - 1]]
        images.append(point_index(*d))
    return Permutation(images)


def _position_swap_12() -> Permutation:
    return Permutation(
        point_index(d[1], d[0], d[2])
        for d in map(point_digits, range(N_POINTS))
    )


def _position_cycle() -> Permutation:
    # (d1, d2, d3) -> (d3, d1, d2)
    return Permutation(
        point_index(d[2], d[0], d[1])
        for d in map(point_digits, range(N_POINTS))
    )


def preserves_lines(geometry: Geometry, g: Permutation) -> bool:
    return all(g.apply_mask(lm) in geometry.line_mask_set for lm in geometry.line_masks)


def generators(geometry: Geometry) -> tuple[Permutation, ...]:
    """Eight generators: one swap and one 3-cycle of values per position,
    plus a transposition and a 3-cycle of the positions."""
    gens = []
    for position in (1, 2, 3):
        gens.append(_value_map(position, _SWAP01))
        gens.append(_value_map(position, _CYCLE012))
    gens.append(_position_swap_12())
    gens.append(_position_cycle())
    for g in gens:
        if not preserves_lines(geometry, g):
            raise ConsistencyError("generator does not preserve lines")
    return tuple(gens)


@dataclass(frozen=True)
class Subgroup:
    """A set of elements closed under composition."""

    elements: tuple[Permutation, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    def is_closed(self) -> bool:
        members = set(self.elements)
        return all(a * b in members for a in self.elements for b in self.elements)

    def element_order_profile(self) -> dict[int, int]:
        return dict(Counter(g.order() for g in self.elements))


class Group:
    """The full automorphism group with orbit and stabilizer helpers."""

    def __init__(self, elements: set[Permutation], gens: tuple[Permutation, ...]) -> None:
        self.elements = tuple(sorted(elements, key=lambda g: g.images))
        self.generators = gens
        self.order = len(self.elements)

    def orbit(self, s: PointSet) -> tuple[PointSet, ...]:
        """Orbit of a point set under the generators, sorted by mask."""
        seen = {s.mask}
        queue = deque([s.mask])
        while queue:
            m = queue.popleft()
            for g in self.generators:
                im = g.apply_mask(m)
                if im not in seen:
                    seen.add(im)
                    queue.append(im)
        return tuple(PointSet(m) for m in sorted(seen))

    def stabilizer(self, s: PointSet) -> Subgroup:
        mask = s.mask
        return Subgroup(
            tuple(g for g in self.elements if g.apply_mask(mask) == mask)
        )

    def point_orbits(self) -> tuple[tuple[int, ...], ...]:
        seen: set[int] = set()
        orbits = []
        for p in range(N_POINTS):
            if p in seen:
                continue
            orb = sorted({g(p) for g in self.elements})
            seen.update(orb)
            orbits.append(tuple(orb))
        return tuple(orbits)

    def element_order_profile(self) -> dict[int, int]:
        return dict(Counter(g.order() for g in self.elements))


def enumerate_group(geometry: Geometry) -> Group:
    """Close the generators under composition; must hit order 1296."""
    gens = generators(geometry)
    elements: set[Permutation] = {Permutation.identity()}
    frontier = deque(elements)
    while frontier:
        h = frontier.popleft()
        for g in gens:
            prod = g * h
            if prod not in elements:
                elements.add(prod)
                frontier.append(prod)
    if len(elements) != GROUP_ORDER:
        raise ConsistencyError(f"group closure has order {len(elements)}, not {GROUP_ORDER}")
    return Group(elements, gens)


def index_action(perms, masks: tuple[int, ...]):
    """Table t[g][k] = index of perms[g] applied to masks[k].

    Raises ConsistencyError if the mask family is not closed under the action.
    """
    import numpy as np

    index_of = {m: k for k, m in enumerate(masks)}
    bits = np.zeros((len(masks), N_POINTS), dtype=np.int64)
    for k, m in enumerate(masks):
        for p in range(N_POINTS):
            bits[k, p] = m >> p & 1
    table = np.zeros((len(perms), len(masks)), dtype=np.int32)
    for gi, g in enumerate(perms):
        weight = np.array([1 << g.images[p] for p in range(N_POINTS)], dtype=np.int64)
        moved = bits @ weight
        for k, m in enumerate(moved):
            idx = index_of.get(int(m))
            if idx is None:
                raise ConsistencyError("mask family is not closed under the group")
            table[gi, k] = idx
    return table


def all_preserve_lines(geometry: Geometry, group: Group) -> bool:
    try:
        index_action(group.elements, geometry.line_masks)
    except ConsistencyError:
        return False
    return True


def annotate_catalog(group: Group, catalog: HyperplaneCatalog) -> dict[str, tuple[int, int]]:
    """Fill stabilizer orders and orbit sizes; returns {type: (orbit, stab)}.

    The group must act transitively on each hyperplane class, and the
    orbit-stabilizer product must equal the group order for all 255.
    """
    result: dict[str, tuple[int, int]] = {}
    orbits_per_type: Counter[str] = Counter()
    seen: set[int] = set()
    for h in catalog.hyperplanes:
        if h.id in seen:
            continue
        orbit = group.orbit(h.points)
        orbit_masks = {s.mask for s in orbit}
        labels = {catalog.by_mask[m].type_label for m in orbit_masks}
        if labels != {h.type_label}:
            raise ConsistencyError(f"orbit of {h.type_label} mixes types {labels}")
        stab = group.stabilizer(h.points)
        if len(orbit) * stab.order != group.order:
            raise ConsistencyError("orbit-stabilizer identity fails")
        for m in orbit_masks:
            other = catalog.by_mask[m]
            other.signature.orbit_size = len(orbit)
            other.signature.stabilizer_order = stab.order
        seen.update(orbit_masks)
        orbits_per_type[h.type_label] += 1
        result[h.type_label] = (len(orbit), stab.order)
    if any(n != 1 for n in orbits_per_type.values()):
        raise ConsistencyError(f"some class splits into several orbits: {dict(orbits_per_type)}")
    if len(result) != 5 or len(seen) != len(catalog):
        raise ConsistencyError("hyperplane orbits do not partition into 5 classes")
    return result


def ordered_pair_orbit_count(
    group: Group,
    catalog: HyperplaneCatalog,
    type_a: str,
    type_b: str,
    exclude_equal: bool = True,
) -> int:
    """Number of orbits on ordered pairs (A, B) with the given types.

    Counted as orbits of Stab(A0) on the type-b class for a fixed
    representative A0, which equals the number of (A, B)-orbits by
    transitivity on the first coordinate.
    """
    rep = catalog.of_type(type_a)[0]
    stab = group.stabilizer(rep.points).elements
    targets = [h.id for h in catalog.of_type(type_b)]
    seen: set[int] = set()
    n_orbits = 0
    for m in targets:
        if m in seen:
            continue
        orbit = {g.apply_mask(m) for g in stab}
        seen.update(orbit)
        if exclude_equal and type_a == type_b and rep.id in orbit:
            continue
        n_orbits += 1
    return n_orbits


# Orbit counts on ordered pairs of distinct hyperplanes, upper triangle by
# type (H1..H5 by H1..H5). Pairs (A, A) are excluded. Every entry is confirmed
# by three independent methods (stabilizer orbits, generator flood, Burnside).
ORDERED_PAIR_ORBIT_COUNTS: dict[tuple[str, str], int] = {
    ("H1", "H1"): 3, ("H1", "H2"): 4, ("H1", "H3"): 6, ("H1", "H4"): 5, ("H1", "H5"): 2,
    ("H2", "H2"): 7, ("H2", "H3"): 9, ("H2", "H4"): 6, ("H2", "H5"): 3,
    ("H3", "H3"): 15, ("H3", "H4"): 10, ("H3", "H5"): 4,
    ("H4", "H4"): 9, ("H4", "H5"): 3,
    ("H5", "H5"): 2,
}


class OrderedPairOrbits:
    """Orbits of the group on ordered pairs of distinct hyperplanes.

    Independent of the stabilizer method: floods all 255*254 ordered pairs
    with the generators and buckets the orbits by type pair.
    """

    def __init__(self, group: Group, catalog: HyperplaneCatalog) -> None:
        self.catalog = catalog
        masks = catalog.masks()
        table = index_action(group.generators, masks)
        gen_rows = [list(map(int, row)) for row in table]
        n = len(masks)
        orbit_of: dict[tuple[int, int], int] = {}
        reps: list[tuple[int, int]] = []
        for a in range(n):
            for b in range(n):
                if a == b or (a, b) in orbit_of:
                    continue
                oid = len(reps)
                reps.append((a, b))
                stack = [(a, b)]
                orbit_of[(a, b)] = oid
                while stack:
                    x, y = stack.pop()
                    for row in gen_rows:
                        im = (row[x], row[y])
                        if im not in orbit_of:
                            orbit_of[im] = oid
                            stack.append(im)
        self.orbit_of = orbit_of
        self.reps = tuple(reps)
        cells: dict[tuple[str, str], list[int]] = {}
        for oid, (a, b) in enumerate(reps):
            key = (
                catalog.hyperplanes[a].type_label,
                catalog.hyperplanes[b].type_label,
            )
            cells.setdefault(key, []).append(oid)
        self.orbit_cells = {k: tuple(v) for k, v in cells.items()}

    def count(self, type_a: str, type_b: str) -> int:
        return len(self.orbit_cells.get((type_a, type_b), ()))

    def matrix(self) -> dict[tuple[str, str], int]:
        """Upper-triangle counts; off-diagonal cells merge (a,b) with (b,a)."""
        out = {}
        for i, a in enumerate(TYPE_LABELS):
            for b in TYPE_LABELS[i:]:
                if a == b:
                    out[(a, b)] = self.count(a, a)
                else:
                    if self.count(a, b) != self.count(b, a):
                        raise ConsistencyError("pair-orbit counts are not symmetric")
                    out[(a, b)] = self.count(a, b)
        return out
