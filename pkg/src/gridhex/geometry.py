"""The 3x3x3 grid: 27 points, 27 lines, 9 grid planes.

Points are triples of ternary digits. Two points are collinear exactly when
they differ in one digit position, so each point lies on three lines (one per
position) and every line has three points. The nine "quads" are the maximal
subgrids obtained by freezing one digit position to one value: each is a 3x3
grid carrying 6 of the 27 lines.

Point sets are stored as 27-bit integers throughout; bit i is the point with
index i = 9*d1 + 3*d2 + d3.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

N_POINTS = 27
FULL_MASK = (1 << N_POINTS) - 1
DIGITS = (0, 1, 2)


class ConsistencyError(RuntimeError):
    """An internal cross-check failed while building or classifying."""


def point_index(d1: int, d2: int, d3: int) -> int:
    """Index of the point with digits (d1, d2, d3), base-3 big-endian."""
    for d in (d1, d2, d3):
        if d not in DIGITS:
            raise ValueError(f"digit out of range: {d!r}")
    return 9 * d1 + 3 * d2 + d3


def point_digits(index: int) -> tuple[int, int, int]:
    """Digits (d1, d2, d3) of the point with the given index."""
    if not 0 <= index < N_POINTS:
        raise ValueError(f"point index out of range: {index!r}")
    return (index // 9, (index // 3) % 3, index % 3)


def point_label(index: int) -> str:
    """Three-character digit string, e.g. index 5 -> '012'."""
    d1, d2, d3 = point_digits(index)
    return f"{d1}{d2}{d3}"


def label_index(label: str) -> int:
    """Inverse of point_label."""
    if len(label) != 3 or any(c not in "012" for c in label):
        raise ValueError(f"bad point label: {label!r}")
    return point_index(int(label[0]), int(label[1]), int(label[2]))


class PointSet:
    """Immutable set of points backed by a 27-bit mask."""

    __slots__ = ("mask",)

    def __init__(self, mask: int) -> None:
        if not 0 <= mask <= FULL_MASK:
            raise ValueError(f"mask out of range: {mask!r}")
        object.__setattr__(self, "mask", mask)

    def __setattr__(self, name: str, value: object) -> None:
        raise AttributeError("PointSet is immutable")

    @classmethod
    def from_indices(cls, indices) -> "PointSet":
        mask = 0
        for i in indices:
            if not 0 <= i < N_POINTS:
                raise ValueError(f"point index out of range: {i!r}")
            mask |= 1 << i
        return cls(mask)

    @classmethod
    def from_labels(cls, labels) -> "PointSet":
        return cls.from_indices(label_index(s) for s in labels)

    @classmethod
    def full(cls) -> "PointSet":
        return cls(FULL_MASK)

    @classmethod
    def empty(cls) -> "PointSet":
        return cls(0)

    def complement(self) -> "PointSet":
        return PointSet(self.mask ^ FULL_MASK)

    def __and__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask & other.mask)

    def __or__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask | other.mask)

    def __xor__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask ^ other.mask)

    def __sub__(self, other: "PointSet") -> "PointSet":
        return PointSet(self.mask & ~other.mask)

    def __le__(self, other: "PointSet") -> bool:
        return self.mask & ~other.mask == 0

    def __contains__(self, index: int) -> bool:
        return 0 <= index < N_POINTS and bool(self.mask >> index & 1)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __iter__(self):
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PointSet) and self.mask == other.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return f"PointSet({{{', '.join(self.labels())}}})"

    def labels(self) -> tuple[str, ...]:
        return tuple(point_label(i) for i in self)


@dataclass(frozen=True)
class Line:
    """A line: three points differing only in digit position `axis` (1-based)."""

    points: tuple[int, int, int]
    axis: int

    @property
    def mask(self) -> int:
        a, b, c = self.points
        return 1 << a | 1 << b | 1 << c


@dataclass(frozen=True)
class Quad:
    """A 3x3 subgrid: digit position `fixed_position` (1-based) frozen to `fixed_value`."""

    fixed_position: int
    fixed_value: int
    points: tuple[int, ...]
    internal_lines: tuple[Line, ...]

    @property
    def mask(self) -> int:
        m = 0
        for p in self.points:
            m |= 1 << p
        return m


@dataclass(frozen=True)
class Geometry:
    """The full point-line geometry with its distance function."""

    lines: tuple[Line, ...]
    quads: tuple[Quad, ...]
    dist: tuple[tuple[int, ...], ...] = field(repr=False)

    def distance(self, p: int, q: int) -> int:
        return self.dist[p][q]

    @cached_property
    def line_masks(self) -> tuple[int, ...]:
        return tuple(ln.mask for ln in self.lines)

    @cached_property
    def line_mask_set(self) -> frozenset[int]:
        return frozenset(self.line_masks)

    @cached_property
    def lines_through(self) -> tuple[tuple[Line, ...], ...]:
        through: list[list[Line]] = [[] for _ in range(N_POINTS)]
        for ln in self.lines:
            for p in ln.points:
                through[p].append(ln)
        return tuple(tuple(ls) for ls in through)

    def collinear(self, p: int, q: int) -> bool:
        return self.dist[p][q] == 1

    def coplanar(self, p: int, q: int) -> bool:
        """Whether p and q lie in a common quad (equivalently, distance <= 2)."""
        return self.dist[p][q] <= 2


def _collinearity_adjacency() -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(N_POINTS)]
    for p in range(N_POINTS):
        dp = point_digits(p)
        for q in range(N_POINTS):
            if p != q and sum(a != b for a, b in zip(dp, point_digits(q))) == 1:
                adj[p].append(q)
    return adj


def bfs_distance_matrix() -> tuple[tuple[int, ...], ...]:
    """Graph distance on the collinearity graph, computed by plain BFS.

    Serves as the independent certificate for the Hamming-distance formula.
    """
    adj = _collinearity_adjacency()
    rows: list[tuple[int, ...]] = []
    for start in range(N_POINTS):
        dist = [-1] * N_POINTS
        dist[start] = 0
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                if dist[v] < 0:
                    dist[v] = dist[u] + 1
                    queue.append(v)
        if min(dist) < 0:
            raise ConsistencyError("collinearity graph is not connected")
        rows.append(tuple(dist))
    return tuple(rows)


def build_grid() -> Geometry:
    """Construct the geometry and certify its structure constants."""
    lines: list[Line] = []
    for axis in (1, 2, 3):
        for a in DIGITS:
            for b in DIGITS:
                triple = []
                for v in DIGITS:
                    digits = [a, b]
                    digits.insert(axis - 1, v)
                    triple.append(point_index(*digits))
                lines.append(Line(points=tuple(sorted(triple)), axis=axis))
    if len(lines) != 27 or len({ln.mask for ln in lines}) != 27:
        raise ConsistencyError("line construction did not yield 27 distinct lines")

    quads: list[Quad] = []
    for pos in (1, 2, 3):
        for val in DIGITS:
            pts = tuple(
                p for p in range(N_POINTS) if point_digits(p)[pos - 1] == val
            )
            pmask = 0
            for p in pts:
                pmask |= 1 << p
            internal = tuple(ln for ln in lines if ln.mask & pmask == ln.mask)
            if len(pts) != 9 or len(internal) != 6:
                raise ConsistencyError(
                    f"quad (pos={pos}, val={val}) has {len(pts)} points, "
                    f"{len(internal)} internal lines"
                )
            quads.append(Quad(pos, val, pts, internal))

    hamming = tuple(
        tuple(
            sum(a != b for a, b in zip(point_digits(p), point_digits(q)))
            for q in range(N_POINTS)
        )
        for p in range(N_POINTS)
    )
    if hamming != bfs_distance_matrix():
        raise ConsistencyError("Hamming distance disagrees with BFS graph distance")

    geometry = Geometry(lines=tuple(lines), quads=tuple(quads), dist=hamming)
    for p in range(N_POINTS):
        if len(geometry.lines_through[p]) != 3:
            raise ConsistencyError(f"point {point_label(p)} is not on exactly 3 lines")
    return geometry


def is_subspace(geometry: Geometry, s: PointSet) -> bool:
    """Nonempty, and no line meets s in exactly two points."""
    if s.mask == 0:
        return False
    return all((lm & s.mask).bit_count() != 2 for lm in geometry.line_masks)


def is_geodetically_closed(geometry: Geometry, s: PointSet) -> bool:
    """Subspace containing, for each pair of its points, all shortest paths.

    Raises ValueError if s is not a subspace; closure is only defined there.
    """
    if not is_subspace(geometry, s):
        raise ValueError("geodetic closure is only defined for subspaces")
    pts = list(s)
    for p in pts:
        for q in pts:
            if p >= q:
                continue
            d = geometry.distance(p, q)
            for r in range(N_POINTS):
                if r in s:
                    continue
                if geometry.distance(p, r) + geometry.distance(r, q) == d:
                    return False
    return True


def is_hyperplane(geometry: Geometry, s: PointSet) -> bool:
    """Proper subset meeting every line in 1 or 3 points."""
    if s.mask == FULL_MASK:
        return False
    return all((lm & s.mask).bit_count() in (1, 3) for lm in geometry.line_masks)


def collinearity_dot(geometry: Geometry) -> str:
    """Graphviz source for the collinearity graph (27 nodes, 81 edges)."""
    out = ["graph collinearity {"]
    out.append('  node [shape=circle, fontsize=10];')
    for p in range(N_POINTS):
        out.append(f'  p{p} [label="{point_label(p)}"];')
    edges = sorted(
        (p, q)
        for p in range(N_POINTS)
        for q in range(p + 1, N_POINTS)
        if geometry.distance(p, q) == 1
    )
    for p, q in edges:
        out.append(f"  p{p} -- p{q};")
    out.append("}")
    return "\n".join(out) + "\n"
