"""Input model: support families, their checks, and the Cayley system.

A problem instance is a family of n+1 supports in Z^n plus a projection
specification marking which coefficients stay symbolic.  This module parses
the two input formats (plain text and JSON), validates essentiality,
performs the specialized-point preprocessing, assembles the Cayley point
configuration with its M matrix, and recovers full-space vertices from
projected ones.
"""

import json
from dataclasses import dataclass
from itertools import combinations

from .errors import AmbiguousUnprojection, NotEssential, ParseError, ResnewtError
from .exactlin import affine_dim, rank_int, solve_exact, vec_sub
from .geometry import TriangulatedHull

__all__ = [
    "SupportFamily",
    "ProjectionSpec",
    "CayleySystem",
    "parse_text",
    "parse_json",
    "parse_input",
    "family_to_text",
    "family_to_json",
    "check_essential",
    "essential_violation",
    "preprocess",
    "build_cayley",
    "unproject",
]

_MODES = ("full", "u-resultant", "implicitization", "custom")

_MODE_ALIASES = {
    "full": "full",
    "u-res": "u-resultant",
    "u-resultant": "u-resultant",
    "ures": "u-resultant",
    "implicit": "implicitization",
    "implicitization": "implicitization",
    "custom": "custom",
}


@dataclass
class ProjectionSpec:
    """Projection mode plus, for custom mode, explicit symbolic points."""

    mode: str
    pairs: list  # list of (block, point-index) pairs; only for custom mode


@dataclass
class SupportFamily:
    """n+1 supports in Z^n with per-point symbolic flags.

    ``supports[i]`` lists the points of the i-th support (input order,
    duplicates forbidden); ``symbolic[i][j]`` is True when the coefficient of
    that point is a projection coordinate.  ``mode`` records how the flags
    were derived.
    """

    n: int
    supports: list
    symbolic: list
    mode: str

    @property
    def num_points(self):
        return sum(len(s) for s in self.supports)

    @property
    def num_symbolic(self):
        return sum(sum(1 for f in flags if f) for flags in self.symbolic)


# -- parsing --------------------------------------------------------------------


def _parse_point(text, n):
    parts = text.split()
    if len(parts) != n:
        raise ParseError("point %r must have %d coordinates" % (text, n))
    try:
        return tuple(int(p) for p in parts)
    except ValueError:
        raise ParseError("non-integer coordinate in point %r" % text) from None


def _apply_projection(n, supports, spec):
    symbolic = [[False] * len(s) for s in supports]
    if spec.mode == "full":
        symbolic = [[True] * len(s) for s in supports]
    elif spec.mode == "u-resultant":
        simplex = {tuple([0] * n)} | {
            tuple(1 if k == i else 0 for k in range(n)) for i in range(n)
        }
        if set(supports[0]) != simplex:
            raise ParseError(
                "u-resultant mode requires support 0 to be the unit simplex"
            )
        symbolic[0] = [True] * len(supports[0])
    elif spec.mode == "implicitization":
        origin = tuple([0] * n)
        for i, s in enumerate(supports):
            if origin not in s:
                raise ParseError(
                    "implicitization mode requires the origin in support %d" % i
                )
            symbolic[i][s.index(origin)] = True
    elif spec.mode == "custom":
        if not spec.pairs:
            raise ParseError("custom projection lists no symbolic points")
        seen = set()
        for (i, j) in spec.pairs:
            if not (0 <= i < len(supports)) or not (0 <= j < len(supports[i])):
                raise ParseError("symbolic pair (%d, %d) out of range" % (i, j))
            if (i, j) in seen:
                raise ParseError("symbolic pair (%d, %d) repeated" % (i, j))
            seen.add((i, j))
            symbolic[i][j] = True
    else:
        raise ParseError("unknown projection mode %r" % spec.mode)
    family = SupportFamily(n, supports, symbolic, spec.mode)
    if family.num_symbolic == 0:
        raise ParseError("no symbolic coefficients selected")
    return family


def _validate_supports(n, supports):
    if n < 1:
        raise ParseError("n must be at least 1")
    if len(supports) != n + 1:
        raise ParseError("expected %d supports, got %d" % (n + 1, len(supports)))
    for i, s in enumerate(supports):
        if not s:
            raise ParseError("support %d is empty" % i)
        if len(set(s)) != len(s):
            raise ParseError("support %d contains duplicate points" % i)


def parse_text(text):
    """Parse the plain-text input format.

    Line 1: n.  Then n+1 lines, one per support, points separated by ';',
    each point n integers.  Then one line ``projection: <mode>`` where mode
    is full | u-res | implicit | custom followed by (block, point) index
    pairs.  '#' starts a comment; blank lines are skipped.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ParseError("empty input")
    try:
        n = int(lines[0])
    except ValueError:
        raise ParseError("first line must be the integer n") from None
    if len(lines) < n + 3:
        raise ParseError("expected %d support lines plus a projection line" % (n + 1))
    supports = []
    for i in range(1, n + 2):
        pieces = [p.strip() for p in lines[i].split(";")]
        pieces = [p for p in pieces if p]
        if not pieces:
            raise ParseError("support line %d lists no points" % i)
        supports.append([_parse_point(p, n) for p in pieces])
    proj_line = lines[n + 2]
    if not proj_line.lower().startswith("projection"):
        raise ParseError("missing projection line")
    rest = proj_line.split(":", 1)
    if len(rest) != 2:
        raise ParseError("projection line must be 'projection: <mode> ...'")
    words = rest[1].replace(",", " ").split()
    if not words:
        raise ParseError("projection line names no mode")
    mode_word = words[0].lower()
    if mode_word not in _MODE_ALIASES:
        raise ParseError("unknown projection mode %r" % words[0])
    mode = _MODE_ALIASES[mode_word]
    pairs = []
    if mode == "custom":
        idx = words[1:]
        if len(idx) % 2 != 0:
            raise ParseError("custom projection needs (block, point) index pairs")
        try:
            nums = [int(x) for x in idx]
        except ValueError:
            raise ParseError("non-integer index in custom projection") from None
        pairs = list(zip(nums[0::2], nums[1::2]))
    elif len(words) > 1:
        raise ParseError("mode %r takes no extra arguments" % mode)
    _validate_supports(n, supports)
    return _apply_projection(n, supports, ProjectionSpec(mode, pairs))


def parse_json(text):
    """Parse the JSON input format.

    ``{"n": ..., "supports": [[[...], ...], ...],
       "projection": {"mode": ..., "symbolic": [[i, j], ...]}}``
    (``symbolic`` only for custom mode; a bare string is accepted for
    ``projection`` as shorthand for {"mode": ...}).
    """
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError("invalid JSON: %s" % exc) from None
    if not isinstance(data, dict):
        raise ParseError("JSON input must be an object")
    try:
        n = int(data["n"])
        raw_supports = data["supports"]
    except (KeyError, TypeError, ValueError):
        raise ParseError("JSON input needs integer 'n' and 'supports'") from None
    supports = []
    for s in raw_supports:
        pts = []
        for p in s:
            if len(p) != n or not all(isinstance(x, int) for x in p):
                raise ParseError("points must be lists of %d integers" % n)
            pts.append(tuple(p))
        supports.append(pts)
    proj = data.get("projection", "full")
    if isinstance(proj, str):
        proj = {"mode": proj}
    mode_word = str(proj.get("mode", "full")).lower()
    if mode_word not in _MODE_ALIASES:
        raise ParseError("unknown projection mode %r" % proj.get("mode"))
    mode = _MODE_ALIASES[mode_word]
    pairs = [tuple(p) for p in proj.get("symbolic", [])] if mode == "custom" else []
    for p in pairs:
        if len(p) != 2 or not all(isinstance(x, int) for x in p):
            raise ParseError("symbolic pairs must be [block, point] integer pairs")
    _validate_supports(n, supports)
    return _apply_projection(n, supports, ProjectionSpec(mode, pairs))


def parse_input(text):
    """Parse either input format (JSON when the text starts with '{')."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return parse_json(text)
    return parse_text(text)


def family_to_text(family):
    """Serialize a family to the plain-text input format."""
    lines = [str(family.n)]
    for s in family.supports:
        lines.append(" ; ".join(" ".join(str(x) for x in p) for p in s))
    if family.mode == "custom":
        pairs = []
        for i, flags in enumerate(family.symbolic):
            for j, f in enumerate(flags):
                if f:
                    pairs.append("%d %d" % (i, j))
        lines.append("projection: custom " + ", ".join(pairs))
    else:
        lines.append("projection: %s" % family.mode)
    return "\n".join(lines) + "\n"


def family_to_json(family):
    """Serialize a family to the JSON input format."""
    proj = {"mode": family.mode}
    if family.mode == "custom":
        proj["symbolic"] = [
            [i, j]
            for i, flags in enumerate(family.symbolic)
            for j, f in enumerate(flags)
            if f
        ]
    data = {
        "n": family.n,
        "supports": [[list(p) for p in s] for s in family.supports],
        "projection": proj,
    }
    return json.dumps(data, indent=2) + "\n"


# -- essentiality ----------------------------------------------------------------


def essential_violation(family):
    """Return None if the family is essential, else the violating blocks.

    An empty tuple means the union fails to affinely span R^n; otherwise the
    smallest (by size, then lexicographically) proper subfamily whose pooled
    within-block edge vectors have rank below its cardinality is returned.
    """
    n = family.n
    all_points = [p for s in family.supports for p in s]
    if affine_dim(all_points) < n:
        return ()
    for size in range(1, n + 1):
        for subset in combinations(range(n + 1), size):
            pooled = []
            for i in subset:
                base = family.supports[i][0]
                pooled.extend(vec_sub(p, base) for p in family.supports[i][1:])
            if (rank_int(pooled) if pooled else 0) < size:
                return subset
    return None


def check_essential(family):
    """Raise ``NotEssential`` (with the violating blocks) unless essential."""
    violation = essential_violation(family)
    if violation is None:
        return
    if violation == ():
        raise NotEssential((), "supports do not jointly affinely span R^%d" % family.n)
    raise NotEssential(
        violation,
        "subfamily %s has Minkowski-sum dimension below %d"
        % (list(violation), len(violation)),
    )


# -- preprocessing -----------------------------------------------------------------


def _in_conv(point, others, n):
    if not others:
        return False
    hull = TriangulatedHull(n)
    for p in others:
        hull.insert(p)
    count = len(hull.points)
    dim = hull.dim
    hull.insert(point)
    return len(hull.points) == count and hull.dim == dim


def preprocess(family):
    """Remove specialized points inside the hull of their block's others.

    A non-symbolic point lying in the convex hull of the *other* non-symbolic
    points of its own block cannot contribute to the projected polytope and
    is dropped; removal repeats until a fixpoint.  Symbolic points are never
    touched.  Returns a new family.
    """
    supports = [list(s) for s in family.supports]
    symbolic = [list(f) for f in family.symbolic]
    changed = True
    while changed:
        changed = False
        for i in range(len(supports)):
            for j in range(len(supports[i])):
                if symbolic[i][j]:
                    continue
                others = [
                    supports[i][k]
                    for k in range(len(supports[i]))
                    if k != j and not symbolic[i][k]
                ]
                if _in_conv(supports[i][j], others, family.n):
                    del supports[i][j]
                    del symbolic[i][j]
                    changed = True
                    break
            if changed:
                break
    return SupportFamily(family.n, supports, symbolic, family.mode)


# -- Cayley system -----------------------------------------------------------------


@dataclass
class CayleySystem:
    """The Cayley point configuration of a support family.

    ``columns`` lists the |A| Cayley points in Z^{2n} in block-major input
    order (point a of block i becomes (a, e_i) with e_0 = 0).  ``projection``
    lists the symbolic column indices (same order); projected vectors use
    that coordinate order.  ``M`` is the (2n+1) x |A| matrix whose column for
    a point a of block i is (a, unit_i) with unit_i in {0,1}^{n+1}; M maps
    exponent vectors to their block-degree/content invariants.
    """

    n: int
    family: SupportFamily
    columns: list
    block_of: list
    blocks: list
    projection: list
    m: int
    M: list
    nr_dim: int

    @property
    def num_columns(self):
        return len(self.columns)

    def is_symbolic(self, col):
        return col in self._symbolic_set

    def __post_init__(self):
        self._symbolic_set = set(self.projection)


def build_cayley(family):
    """Assemble the Cayley system for an essential, preprocessed family."""
    n = family.n
    columns = []
    block_of = []
    blocks = []
    projection = []
    for i, s in enumerate(family.supports):
        ids = []
        unit = tuple(1 if k == i - 1 else 0 for k in range(n))
        for j, p in enumerate(s):
            col = len(columns)
            columns.append(tuple(p) + unit)
            block_of.append(i)
            ids.append(col)
            if family.symbolic[i][j]:
                projection.append(col)
        blocks.append(ids)
    m = len(projection)
    big_m = []
    for r in range(n):
        big_m.append(tuple(columns[c][r] for c in range(len(columns))))
    for i in range(n + 1):
        big_m.append(tuple(1 if block_of[c] == i else 0 for c in range(len(columns))))
    nr_dim = len(columns) - 2 * n - 1
    return CayleySystem(
        n=n,
        family=family,
        columns=columns,
        block_of=block_of,
        blocks=blocks,
        projection=projection,
        m=m,
        M=big_m,
        nr_dim=nr_dim,
    )


def unproject(sys, projected_vertices, rho_ref):
    """Recover full |A|-coordinate vertices from projected ones.

    The invariant M.rho = const across vertices pins the specialized
    coordinates: with C sampled from one full reference vertex, each
    projected vertex B solves M_spec X = C - M_sym B exactly.  Solutions
    must be unique and integral; ``AmbiguousUnprojection`` is raised when
    the specialized columns leave degrees of freedom.
    """
    total = sys.num_columns
    if len(rho_ref) != total:
        raise ValueError("reference vertex has wrong length")
    if sys.m == total:
        return [tuple(int(x) for x in b) for b in projected_vertices]
    c_vec = [sum(row[j] * rho_ref[j] for j in range(total)) for row in sys.M]
    spec_cols = [j for j in range(total) if j not in set(sys.projection)]
    rows = [tuple(row[j] for j in spec_cols) for row in sys.M]
    out = []
    for b in projected_vertices:
        if len(b) != sys.m:
            raise ValueError("projected vertex has wrong length")
        rhs = [
            c_vec[r]
            - sum(sys.M[r][col] * b[k] for k, col in enumerate(sys.projection))
            for r in range(len(sys.M))
        ]
        status, sol = solve_exact(rows, rhs)
        if status == "underdetermined":
            raise AmbiguousUnprojection(
                "specialized columns do not determine the remaining coordinates"
            )
        if status == "inconsistent":
            raise ResnewtError(
                "unprojection system inconsistent; reference vertex mismatch"
            )
        full = [0] * total
        for k, col in enumerate(sys.projection):
            full[col] = int(b[k])
        for k, col in enumerate(spec_cols):
            x = sol[k]
            assert x.denominator == 1, "unprojected coordinate not integral"
            full[col] = int(x)
        out.append(tuple(full))
    return out
