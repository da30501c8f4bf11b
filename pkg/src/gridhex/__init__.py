"""Point-line geometry of the 3x3x3 grid and its hyperplane complex.

The package builds the 27-point grid, enumerates its 255 geometric
hyperplanes, classifies the 10,795 lines they span under the automorphism
group, and pins the unique invariant alternating form. Everything is exact
integer combinatorics; the CLI re-derives and re-checks all published
counts on demand.
"""

from __future__ import annotations

from .geometry import (
    ConsistencyError,
    FULL_MASK,
    Geometry,
    Line,
    N_POINTS,
    PointSet,
    Quad,
    build_grid,
    collinearity_dot,
    is_geodetically_closed,
    is_hyperplane,
    is_subspace,
    label_index,
    point_digits,
    point_index,
    point_label,
)
from .group import (
    GROUP_ORDER,
    Group,
    ORDERED_PAIR_ORBIT_COUNTS,
    OrderedPairOrbits,
    Permutation,
    Subgroup,
    annotate_catalog,
    enumerate_group,
    generators,
    index_action,
    ordered_pair_orbit_count,
)
from .hyperplanes import (
    HYPERPLANE_CENSUS,
    Hyperplane,
    HyperplaneCatalog,
    TYPE_LABELS,
    ZERO,
    brute_force_hyperplane_masks,
    classify,
    enumerate_hyperplanes,
    point_order,
    quad_section_type,
    singular_hyperplane,
    vsum,
)
from .veldkamp import (
    COMPOSITION_OVERLAP_COUNTS,
    LINE_TYPE_ROWS,
    LineClassification,
    VeldkampLine,
    VeldkampSpace,
    axis,
    build_space,
    classify_lines,
    composition_statistics,
    composition_summary,
    coordinatize,
    core_profile,
    form_matrix,
    form_rank,
    h3_with_nucleus_axis,
    invariant_form_space,
    isotropic_line_counts,
    lines_with_core,
    nucleus,
    symplectic_form,
    verify_form_invariance,
)

__version__ = "0.1.0"

__all__ = [
    "ConsistencyError",
    "FULL_MASK",
    "Geometry",
    "Line",
    "N_POINTS",
    "PointSet",
    "Quad",
    "build_grid",
    "collinearity_dot",
    "is_geodetically_closed",
    "is_hyperplane",
    "is_subspace",
    "label_index",
    "point_digits",
    "point_index",
    "point_label",
    "GROUP_ORDER",
    "Group",
    "ORDERED_PAIR_ORBIT_COUNTS",
    "OrderedPairOrbits",
    "Permutation",
    "Subgroup",
    "annotate_catalog",
    "enumerate_group",
    "generators",
    "index_action",
    "ordered_pair_orbit_count",
    "HYPERPLANE_CENSUS",
    "Hyperplane",
    "HyperplaneCatalog",
    "TYPE_LABELS",
    "ZERO",
    "brute_force_hyperplane_masks",
    "classify",
    "enumerate_hyperplanes",
    "point_order",
    "quad_section_type",
    "singular_hyperplane",
    "vsum",
    "COMPOSITION_OVERLAP_COUNTS",
    "LINE_TYPE_ROWS",
    "LineClassification",
    "VeldkampLine",
    "VeldkampSpace",
    "axis",
    "build_space",
    "classify_lines",
    "composition_statistics",
    "composition_summary",
    "coordinatize",
    "core_profile",
    "form_matrix",
    "form_rank",
    "h3_with_nucleus_axis",
    "invariant_form_space",
    "isotropic_line_counts",
    "lines_with_core",
    "nucleus",
    "symplectic_form",
    "verify_form_invariance",
    "__version__",
]
