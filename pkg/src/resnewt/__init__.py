"""resnewt: projected Newton polytopes of sparse resultants, exactly.

Given n+1 supports in Z^n and a choice of symbolic coefficients, this
package reconstructs the orthogonal projection of the resultant's Newton
polytope onto those coefficients, using only exact integer and rational
arithmetic.  The polytope is recovered output-sensitively from a vertex
oracle built on the Cayley trick; determinant predicates are accelerated by
a cache of reusable minors, with a compiled kernel when available (set
``RESNEWT_PURE=1`` to force the pure-Python backend).
"""

from .cayley import (
    CayleySystem,
    ProjectionSpec,
    SupportFamily,
    build_cayley,
    check_essential,
    essential_violation,
    family_to_json,
    family_to_text,
    parse_input,
    parse_json,
    parse_text,
    preprocess,
    unproject,
)
from .errors import (
    AmbiguousUnprojection,
    DegenerateInput,
    EmptyIntersection,
    InvalidDirection,
    NotEssential,
    ParseError,
    ResnewtError,
    StaleMinorKey,
)
from .exactlin import MinorCache, det_bareiss
from .geometry import (
    Facet,
    Hyperplane,
    TriangulatedHull,
    clip_halfspace,
    f_vector,
    hull_volume,
    placing_refine,
    regular_subdivision,
)
from .kernels import BACKEND
from .oracle import VertexOracle, vtx, vtx_secondary
from .reconstruct import (
    BuildState,
    RandomReport,
    SandwichReport,
    compute_pi,
    compute_pi_approx,
    compute_pi_random,
    initialize,
    stats,
)

__version__ = "1.0.0"

__all__ = [
    "AmbiguousUnprojection",
    "BACKEND",
    "BuildState",
    "CayleySystem",
    "DegenerateInput",
    "EmptyIntersection",
    "Facet",
    "Hyperplane",
    "InvalidDirection",
    "MinorCache",
    "NotEssential",
    "ParseError",
    "ProjectionSpec",
    "RandomReport",
    "ResnewtError",
    "SandwichReport",
    "StaleMinorKey",
    "SupportFamily",
    "TriangulatedHull",
    "VertexOracle",
    "__version__",
    "build_cayley",
    "check_essential",
    "clip_halfspace",
    "compute_pi",
    "compute_pi_approx",
    "compute_pi_random",
    "det_bareiss",
    "essential_violation",
    "f_vector",
    "family_to_json",
    "family_to_text",
    "hull_volume",
    "initialize",
    "parse_input",
    "parse_json",
    "parse_text",
    "placing_refine",
    "preprocess",
    "regular_subdivision",
    "stats",
    "unproject",
    "vtx",
    "vtx_secondary",
]
