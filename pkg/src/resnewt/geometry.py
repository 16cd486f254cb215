"""Exact convex-hull machinery in general (small) dimension.

Provides an incremental Beneath-and-Beyond hull that maintains its placing
triangulation, works at any intrinsic dimension inside its ambient space,
and accepts a pluggable orientation callback so that hulls over structured
point sets can route predicates through the shared minor cache.  On top of
the hull sit regular subdivisions from liftings, placing refinement,
lattice-normalized volume, halfspace clipping, and f-vector extraction.

All arithmetic is exact (integers and ``fractions.Fraction``); no floating
point is ever used.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import NamedTuple

from .errors import DegenerateInput, EmptyIntersection
from .exactlin import (
    affine_dim,
    canonical_hyperplane,
    det_bareiss,
    dot,
    saturated_basis,
    solve_exact,
    vec_sub,
)

__all__ = [
    "Hyperplane",
    "Facet",
    "TriangulatedHull",
    "RegularSubdivision",
    "LiftedTriangulation",
    "affine_dim",
    "hull_insert",
    "regular_subdivision",
    "placing_refine",
    "hull_volume",
    "clip_halfspace",
    "f_vector",
]


class Hyperplane(NamedTuple):
    """Oriented hyperplane {x : normal.x = offset}; outer side normal.x > offset.

    Normal entries and offset are integers with overall gcd 1.
    """

    normal: tuple
    offset: int


@dataclass(frozen=True)
class Facet:
    """A facet of a full-dimensional hull: its hyperplane + incident vertices."""

    plane: Hyperplane
    vertex_ids: frozenset


class _BoundarySimplex:
    """One (k-1)-simplex of the hull boundary, with an off-plane witness.

    ``inner_sign`` is the orientation sign of (verts..., opp) computed when
    the simplex was created; a candidate point lies beyond the simplex's
    hyperplane exactly when its orientation sign is the negative of it.
    """

    __slots__ = ("verts", "opp", "inner_sign", "alive")

    def __init__(self, verts, opp, inner_sign):
        self.verts = verts
        self.opp = opp
        self.inner_sign = inner_sign
        self.alive = True


def _row_cleared(row):
    mult = 1
    for x in row:
        if isinstance(x, Fraction):
            d = x.denominator
            mult = mult // gcd(mult, d) * d
    if mult == 1:
        return [int(x) for x in row], 1
    return [int(x * mult) for x in row], mult


def _det_rational(rows):
    """Exact determinant of a square matrix with int/Fraction entries."""
    if not rows:
        return Fraction(1)
    cleared = []
    denom = 1
    for row in rows:
        r, m = _row_cleared(row)
        cleared.append(r)
        denom *= m
    return Fraction(det_bareiss(cleared), denom)


def _sign_hom(coords):
    """Sign of det of rows (point_i, 1): orientation of len(coords) points."""
    cleared = []
    for c in coords:
        r, _ = _row_cleared(list(c) + [1])
        cleared.append(r)
    d = det_bareiss(cleared)
    if d > 0:
        return 1
    if d < 0:
        return -1
    return 0


class TriangulatedHull:
    """Incremental convex hull with maintained placing triangulation.

    Points live in ``ambient_dim`` coordinates; the hull tracks its intrinsic
    dimension, growing it as points outside the current affine hull arrive.
    ``orient_fn(hull, ids)`` may return the orientation sign of the points
    with the given ids (in order), or None to fall back to the built-in exact
    determinant; the callback lets structured hulls reuse cached minors.

    ``cells`` holds the placing triangulation: insertion-ordered, each cell a
    (dim+1)-tuple of point ids; cells partition the hull.  ``points`` records
    every point that was a vertex when inserted (a later insertion may make
    an earlier point non-extreme without removing it from this list; that
    never happens when every inserted point is a vertex of the final hull).
    """

    def __init__(self, ambient_dim, orient_fn=None, track_facets=False):
        self.ambient = ambient_dim
        self.orient_fn = orient_fn
        self.track_facets = track_facets
        self.points = []
        self.tags = []
        self.xi = []  # intrinsic coords per point; None once dim == ambient
        self.dim = -1
        self.basis = []  # ambient direction vectors, one per intrinsic coord
        self.cells = []
        self.boundary = []
        self._index = {}
        self._facet_cache = None

    # -- predicates ----------------------------------------------------------

    def _orient(self, ids):
        if self.orient_fn is not None:
            s = self.orient_fn(self, ids)
            if s is not None:
                return s
        if self.dim == self.ambient or self.xi is None:
            coords = [self.points[i] for i in ids]
        else:
            coords = [self.xi[i] for i in ids]
        return _sign_hom(coords)

    # -- bookkeeping ---------------------------------------------------------

    def _record(self, pt, tag, xi_val):
        vid = len(self.points)
        self.points.append(pt)
        self.tags.append(tag)
        if self.xi is not None:
            self.xi.append(xi_val)
        self._index[pt] = vid
        return vid

    def _unrecord(self, vid):
        pt = self.points.pop()
        self.tags.pop()
        if self.xi is not None:
            self.xi.pop()
        del self._index[pt]
        assert vid == len(self.points)

    def alive_boundary(self):
        return [bs for bs in self.boundary if bs.alive]

    # -- insertion -----------------------------------------------------------

    def insert(self, point, tag=None):
        """Insert a point; returns (removed_facets, added_facets).

        Duplicates and points inside the hull are no-ops.  A point outside
        the current affine hull raises the intrinsic dimension by coning the
        whole triangulation.  Facet deltas are reported only when the hull
        was created with ``track_facets`` (and is full-dimensional).
        """
        pt = tuple(point)
        if len(pt) != self.ambient:
            raise ValueError("point has wrong dimension")
        if pt in self._index:
            return ([], [])
        if self.track_facets and self.dim == self.ambient:
            before = dict(self.facet_map())
        else:
            before = {}

        changed = self._insert_inner(pt, tag)
        if not changed:
            return ([], [])

        self._facet_cache = None
        if not self.track_facets:
            return ([], [])
        after = self.facet_map() if self.dim == self.ambient else {}
        removed = [before[k] for k in before if k not in after]
        added = [after[k] for k in after if k not in before]
        return (removed, added)

    def _insert_inner(self, pt, tag):
        if self.dim == -1:
            self._record(pt, tag, ())
            self.dim = 0
            self.cells = [(0,)]
            self.boundary = []
            return True

        if self.dim < self.ambient:
            p0 = self.points[0]
            rows = [tuple(col) for col in zip(*self.basis)] if self.basis else []
            rhs = vec_sub(pt, p0)
            if self.basis:
                status, sol = solve_exact(rows, rhs)
            else:
                status, sol = ("unique", ()) if all(x == 0 for x in rhs) else ("inconsistent", None)
            if status == "inconsistent":
                self._dim_jump(pt, tag)
                return True
            xi_val = tuple(sol)
        else:
            xi_val = None
        return self._standard_insert(pt, tag, xi_val)

    def _dim_jump(self, pt, tag):
        p0 = self.points[0]
        vid = self._record(pt, tag, None)
        self.basis.append(vec_sub(pt, p0))
        old_dim = self.dim
        self.dim += 1
        if self.dim == self.ambient:
            self.xi = None
        elif self.xi is not None:
            zero = Fraction(0)
            for i in range(len(self.xi)):
                if self.xi[i] is not None:
                    self.xi[i] = tuple(self.xi[i]) + (zero,)
            self.xi[vid] = tuple([zero] * old_dim) + (Fraction(1),)

        if old_dim == 0:
            self.cells = [(0, vid)]
            new_boundary = [
                _BoundarySimplex((0,), vid, 0),
                _BoundarySimplex((vid,), 0, 0),
            ]
        else:
            new_boundary = [
                _BoundarySimplex(cell, vid, 0) for cell in self.cells
            ]
            for bs in self.boundary:
                if bs.alive:
                    new_boundary.append(
                        _BoundarySimplex(bs.verts + (vid,), bs.opp, 0)
                    )
            self.cells = [cell + (vid,) for cell in self.cells]
        for bs in new_boundary:
            bs.inner_sign = self._orient(bs.verts + (bs.opp,))
            assert bs.inner_sign != 0
        self.boundary = new_boundary

    def _standard_insert(self, pt, tag, xi_val):
        vid = self._record(pt, tag, xi_val)
        visible = []
        for bs in self.boundary:
            if not bs.alive:
                continue
            side = self._orient(bs.verts + (vid,))
            if side == -bs.inner_sign:
                visible.append(bs)
        if not visible:
            self._unrecord(vid)
            return False
        for bs in visible:
            bs.alive = False
        for bs in visible:
            self.cells.append(bs.verts + (vid,))
        ridge_info = {}
        for bs in visible:
            for ridge in combinations(sorted(bs.verts), len(bs.verts) - 1):
                if ridge in ridge_info:
                    ridge_info[ridge] = None  # internal: two visible cofacets
                else:
                    ridge_info[ridge] = bs
        fresh = []
        for ridge, bs in ridge_info.items():
            if bs is None:
                continue
            opp = next(v for v in bs.verts if v not in ridge)
            verts = ridge + (vid,)
            nb = _BoundarySimplex(verts, opp, 0)
            nb.inner_sign = self._orient(verts + (opp,))
            assert nb.inner_sign != 0
            fresh.append(nb)
        self.boundary = [bs for bs in self.boundary if bs.alive] + fresh
        return True

    # -- facets ----------------------------------------------------------------

    def _bs_plane(self, bs):
        pts = [self.points[i] for i in bs.verts]
        k = self.ambient
        diffs = [vec_sub(p, pts[0]) for p in pts[1:]]
        normal = []
        sgn = 1
        for j in range(k):
            sub = [[row[t] for t in range(k) if t != j] for row in diffs]
            normal.append(sgn * _det_rational(sub))
            sgn = -sgn
        offset = sum(a * b for a, b in zip(normal, pts[0]))
        side_opp = sum(a * b for a, b in zip(normal, self.points[bs.opp])) - offset
        assert side_opp != 0
        if side_opp > 0:
            normal = [-a for a in normal]
            offset = -offset
        mult = 1
        for x in list(normal) + [offset]:
            if isinstance(x, Fraction):
                d = x.denominator
                mult = mult // gcd(mult, d) * d
        ints = [int(x * mult) for x in normal]
        off = int(offset * mult)
        nrm, off = canonical_hyperplane(ints, off)
        return Hyperplane(nrm, off)

    def facet_map(self):
        """Facets of a full-dimensional hull, keyed by canonical hyperplane."""
        if self.dim != self.ambient:
            raise DegenerateInput(
                "facets require a full-dimensional hull (dim %d of %d)"
                % (self.dim, self.ambient)
            )
        if self._facet_cache is not None:
            return self._facet_cache
        groups = {}
        for bs in self.boundary:
            if not bs.alive:
                continue
            plane = self._bs_plane(bs)
            groups.setdefault(plane, set()).update(bs.verts)
        self._facet_cache = {
            plane: Facet(plane, frozenset(verts)) for plane, verts in groups.items()
        }
        return self._facet_cache

    # -- cloning ----------------------------------------------------------------

    def extended_clone(self, orient_fn=None):
        """Clone into one more ambient coordinate (appended, set to 0).

        The triangulation, boundary, intrinsic basis and vertex order carry
        over unchanged; the clone can then take points whose new coordinate
        is nonzero, which raises its intrinsic dimension.
        """
        out = TriangulatedHull(self.ambient + 1, orient_fn=orient_fn)
        out.points = [pt + (0,) for pt in self.points]
        out.tags = list(self.tags)
        if self.xi is not None:
            out.xi = list(self.xi)
        else:
            out.xi = None
        out.dim = self.dim
        out.basis = [tuple(b) + (0,) for b in self.basis]
        out.cells = list(self.cells)
        out.boundary = [
            _BoundarySimplex(bs.verts, bs.opp, bs.inner_sign)
            for bs in self.boundary
            if bs.alive
        ]
        out._index = {pt: i for i, pt in enumerate(out.points)}
        return out


def hull_insert(hull, point, tag=None):
    """Insert a point into a hull; returns (removed_facets, added_facets)."""
    return hull.insert(point, tag=tag)


# -- volume ---------------------------------------------------------------------


def hull_volume(hull):
    """Lattice-normalized volume: sum over cells of |det(edges)| / dim!.

    Full-dimensional hulls use raw coordinates; lower-dimensional hulls are
    re-parameterized over a saturated basis of their affine hull, so integer
    polytopes get their lattice-normalized volume and volume *ratios* of
    hulls sharing one space are parameterization-independent.  A single
    point has volume 1 by convention.
    """
    k = hull.dim
    if k <= 0:
        return Fraction(1)
    if k == hull.ambient:
        coords = hull.points
    else:
        p0 = hull.points[0]
        sat = saturated_basis(
            [vec_sub(p, p0) for p in hull.points[1:]], ambient_dim=hull.ambient
        )
        rows = [tuple(col) for col in zip(*sat)]
        coords = []
        for p in hull.points:
            status, sol = solve_exact(rows, vec_sub(p, p0))
            assert status == "unique"
            coords.append(sol)
    total = Fraction(0)
    for cell in hull.cells:
        edges = [vec_sub(coords[v], coords[cell[0]]) for v in cell[1:]]
        total += abs(_det_rational(edges))
    return total / factorial(k)


# -- halfspace clipping -----------------------------------------------------------


def _is_edge(hull, facet_sets, u, v):
    common = [fs for fs in facet_sets if u in fs and v in fs]
    if not common:
        return len(hull.points) == 2
    inter = frozenset.intersection(*common)
    return inter == {u, v}


def clip_halfspace(hull, plane):
    """Intersect a full-dimensional hull with {x : normal.x <= offset}.

    Returns the same object when nothing is strictly outside; raises
    ``EmptyIntersection`` when everything is strictly outside.  Otherwise
    keeps the inner vertices, adds the rational intersection points of
    crossing edges, and rebuilds the hull from scratch.
    """
    normal, offset = plane.normal, plane.offset
    vals = [dot(normal, p) - offset for p in hull.points]
    if all(v <= 0 for v in vals):
        return hull
    if all(v > 0 for v in vals):
        raise EmptyIntersection("hull lies strictly outside the halfspace")
    facet_sets = [f.vertex_ids for f in hull.facet_map().values()]
    keep = [i for i, v in enumerate(vals) if v <= 0]
    cuts = set()
    for u in range(len(hull.points)):
        if vals[u] >= 0:
            continue
        for v in range(len(hull.points)):
            if vals[v] <= 0:
                continue
            if not _is_edge(hull, facet_sets, u, v):
                continue
            t = Fraction(vals[u], vals[u] - vals[v])
            pu = hull.points[u]
            pv = hull.points[v]
            cut = tuple(Fraction(a) + t * (Fraction(b) - Fraction(a)) for a, b in zip(pu, pv))
            cuts.add(cut)
    out = TriangulatedHull(hull.ambient, track_facets=hull.track_facets)
    for i in keep:
        out.insert(hull.points[i], tag=hull.tags[i])
    for cut in sorted(cuts):
        out.insert(cut)
    return out


# -- f-vector ---------------------------------------------------------------------


def f_vector(hull):
    """Face counts (f_0, ..., f_{dim-1}) from vertex-facet incidence.

    Faces are obtained by closing the facet vertex sets under intersection
    and grading by affine dimension.  Requires a full-dimensional hull (a
    single point gives (1,)).
    """
    if hull.dim == 0:
        return (1,)
    facet_sets = {f.vertex_ids for f in hull.facet_map().values()}
    faces = set(facet_sets)
    frontier = set(facet_sets)
    while frontier:
        new = set()
        for f in frontier:
            for g in facet_sets:
                h = f & g
                if h and h not in faces:
                    new.add(h)
        faces |= new
        frontier = new
    counts = [0] * hull.dim
    for f in faces:
        d = affine_dim([hull.points[i] for i in f])
        counts[d] += 1
    return tuple(counts)


# -- regular subdivisions -----------------------------------------------------------


@dataclass
class RegularSubdivision:
    """Upper-hull subdivision of a point set induced by a lifting.

    ``cells`` are sorted index tuples; a cell holds *every* input index whose
    lifted image lies on that upper facet.  ``functionals`` holds the facet
    hyperplanes of the lifted hull (in intrinsic coordinates), aligned with
    cells; a degenerate (flat) lifting yields the single trivial cell with
    functional None.  ``coords`` are intrinsic integer coordinates of the
    input points in a saturated basis of their affine hull.
    """

    points: list
    lifting: list
    dim: int
    coords: list
    cells: list
    functionals: list


def regular_subdivision(points, lifting, expect_dim=None, insertion_order=None):
    """Regular subdivision of ``points`` induced by ``lifting`` (upper hull).

    ``expect_dim`` (optional) asserts the affine dimension of the input;
    ``DegenerateInput`` is raised on mismatch.  ``insertion_order`` controls
    the placing order used to build the lifted hull (default: given order).
    """
    pts = [tuple(int(x) for x in p) for p in points]
    lifts = [Fraction(x) for x in lifting]
    if len(pts) != len(lifts):
        raise ValueError("one lifting value per point required")
    d = affine_dim(pts)
    if expect_dim is not None and d != expect_dim:
        raise DegenerateInput(
            "points span dimension %d, expected %d" % (d, expect_dim)
        )
    p0 = pts[0]
    sat = saturated_basis([vec_sub(p, p0) for p in pts[1:]], ambient_dim=len(p0))
    rows = [tuple(col) for col in zip(*sat)]
    coords = []
    for p in pts:
        if sat:
            status, sol = solve_exact(rows, vec_sub(p, p0))
            assert status == "unique"
            ints = tuple(int(x) for x in sol)
        else:
            ints = ()
        coords.append(ints)

    hull = TriangulatedHull(d + 1)
    order = insertion_order if insertion_order is not None else range(len(pts))
    for i in order:
        hull.insert(coords[i] + (lifts[i],), tag=i)

    if hull.dim < d + 1:
        cells = [tuple(range(len(pts)))]
        functionals = [None]
        return RegularSubdivision(pts, lifts, d, coords, cells, functionals)

    cells = []
    functionals = []
    for plane in hull.facet_map():
        if plane.normal[-1] <= 0:
            continue
        members = tuple(
            i
            for i in range(len(pts))
            if dot(plane.normal, coords[i] + (lifts[i],)) == plane.offset
        )
        cells.append(members)
        functionals.append(plane)
    paired = sorted(zip(cells, functionals))
    cells = [c for c, _ in paired]
    functionals = [f for _, f in paired]
    return RegularSubdivision(pts, lifts, d, coords, cells, functionals)


@dataclass
class LiftedTriangulation:
    """A triangulation refining a regular subdivision.

    ``simplices`` are (dim+1)-index tuples over the original point set;
    ``cell_of`` gives, per simplex, the index of the subdivision cell it
    refines.
    """

    simplices: list
    cell_of: list


def placing_refine(sub, order=None):
    """Triangulate each cell of a subdivision by placing its points in order.

    ``order`` is a permutation of all point indices (default identity); each
    cell is triangulated by inserting its members in the induced order.
    Simplicial cells pass through unchanged; every output simplex lies in
    exactly one input cell.
    """
    if order is None:
        order = list(range(len(sub.points)))
    simplices = []
    cell_of = []
    for ci, cell in enumerate(sub.cells):
        cell_set = set(cell)
        if len(cell) == sub.dim + 1:
            simplices.append(tuple(sorted(cell)))
            cell_of.append(ci)
            continue
        hull = TriangulatedHull(sub.dim)
        for i in order:
            if i in cell_set:
                hull.insert(sub.coords[i], tag=i)
        for tri in hull.cells:
            simplices.append(tuple(sorted(hull.tags[v] for v in tri)))
            cell_of.append(ci)
    return LiftedTriangulation(simplices, cell_of)
