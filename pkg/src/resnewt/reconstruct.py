"""Incremental reconstruction of the projected polytope from vertex queries.

The polytope is recovered output-sensitively: an initialization phase finds
its affine hull (recording every certified equation), then a Beneath-and-
Beyond loop grows an inner approximation Q inside that affine hull.  Each
facet of Q is either *legal* — certified to support the target polytope — or
queued for a test query in its outward normal direction.  A query either
certifies the facet or supplies a new vertex strictly beyond it.  When the
queue empties, Q equals the target.  Every query also yields an outer
halfspace, so a sandwich Q <= target <= Q_o is available at all times; the
approximation mode stops as soon as vol(Q)/vol(Q_o) reaches a threshold.
"""

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from random import Random

from .exactlin import (
    canonical_direction,
    canonical_hyperplane,
    clear_denominators,
    dot,
    integer_kernel,
    rank_int,
    saturated_basis,
    solve_exact,
    vec_sub,
)
from .geometry import (
    Hyperplane,
    TriangulatedHull,
    clip_halfspace,
    hull_volume,
)
from .oracle import VertexOracle

__all__ = [
    "BuildState",
    "SandwichReport",
    "RandomReport",
    "initialize",
    "compute_pi",
    "compute_pi_approx",
    "compute_pi_random",
    "stats",
]


@dataclass
class BuildState:
    """Everything the reconstruction loop maintains.

    ``hull`` is Q, kept in exact integer intrinsic coordinates: a point x of
    the target satisfies x = p0 + B.xi with B the (saturated) column basis,
    so xi runs over a full-dimensional lattice polytope.  ``legal`` maps a
    facet hyperplane (in xi-space) to the oracle point certifying it;
    ``illegal`` holds hyperplanes still awaiting their test query.
    """

    oracle: VertexOracle
    p0: tuple
    basis: list
    equations: list
    hull: TriangulatedHull
    illegal: deque = field(default_factory=deque)
    queued: set = field(default_factory=set)
    legal: dict = field(default_factory=dict)
    init_calls: int = 0

    @property
    def dim(self):
        return self.hull.dim

    @property
    def m(self):
        return self.oracle.sys.m

    def vertices(self):
        """Vertices found so far, in original coordinates, lexicographic."""
        return sorted(self.hull.tags)

    def to_x(self, xi):
        """Map intrinsic coordinates back to original coordinates."""
        return tuple(
            self.p0[j] + sum(b[j] * t for b, t in zip(self.basis, xi))
            for j in range(self.m)
        )

    def xi_of(self, x):
        """Intrinsic coordinates of a point of the target's affine hull."""
        rows = [tuple(col) for col in zip(*self.basis)]
        status, sol = solve_exact(rows, vec_sub(x, self.p0))
        if status != "unique":
            raise AssertionError("point outside the certified affine hull")
        assert all(t.denominator == 1 for t in sol)
        return tuple(int(t) for t in sol)

    def pullback(self, normal):
        """Direction in original coordinates acting on xi as ``normal``.

        Solves B^T w = normal within the column space of B; the canonical
        integer representative acts on xi as a positive multiple of
        ``normal``, so facet comparisons transfer exactly.
        """
        k = len(self.basis)
        gram = [
            [dot(self.basis[a], self.basis[b]) for b in range(k)]
            for a in range(k)
        ]
        status, y = solve_exact(gram, normal)
        assert status == "unique"
        w = [
            sum(y[a] * self.basis[a][j] for a in range(k))
            for j in range(self.m)
        ]
        return canonical_direction(clear_denominators(w))

    def facets_x(self):
        """Current facets as (normal, offset) in original coordinates."""
        out = []
        for plane, facet in sorted(self.hull.facet_map().items()):
            w = self.pullback(plane.normal)
            vid = min(facet.vertex_ids)
            off = dot(w, self.hull.tags[vid])
            out.append((w, off))
        return sorted(out)


@dataclass
class SandwichReport:
    """Certified volume sandwich vol(Q) <= vol(target) <= vol(Q_o)."""

    inner_volume: Fraction
    outer_volume: Fraction
    ratio: Fraction
    threshold: Fraction
    reached: bool
    outer_hull: TriangulatedHull


@dataclass
class RandomReport:
    """Hull of the oracle's answers over seeded random directions."""

    oracle: VertexOracle
    hull: TriangulatedHull
    directions: int
    dim: int
    volume: Fraction

    def points(self):
        return sorted(self.hull.points)


def _normalize_equation(normal, offset):
    nrm, off = canonical_hyperplane(list(normal), offset)
    lead = next((x for x in nrm if x != 0), 0)
    if lead < 0:
        nrm = tuple(-a for a in nrm)
        off = -off
    return (nrm, off)


def initialize(sys, seed=0, use_cache=True):
    """Find the affine hull of the target and a full-dimensional seed Q.

    Queries the 2m coordinate directions, then repeatedly picks an integer
    direction orthogonal to the points found so far and independent of the
    equations already certified, querying both orientations.  Each round
    either grows the rank of the point set or certifies a new independent
    equation (when max equals min), so rank + #equations reaches m in at
    most m rounds.
    """
    ctx = VertexOracle(sys, seed=seed, use_cache=use_cache)
    m = sys.m
    seen = {}

    def ask(w):
        point, _ = ctx.vtx(w)
        seen.setdefault(point)
        return point

    for i in range(m):
        e = tuple(1 if j == i else 0 for j in range(m))
        ask(e)
        ask(tuple(-x for x in e))

    eq_normals = []
    equations = []
    while True:
        pts = list(seen)
        dirs = [vec_sub(p, pts[0]) for p in pts[1:]]
        r = rank_int(dirs) if dirs else 0
        if r + len(eq_normals) == m:
            break
        kernel = integer_kernel(dirs, ncols=m)
        w = next(
            cand
            for cand in kernel
            if rank_int(eq_normals + [list(cand)]) > len(eq_normals)
        )
        w = canonical_direction(w)
        vp = ask(w)
        vm = ask(tuple(-x for x in w))
        cp = dot(w, vp)
        cm = dot(w, vm)
        if cp == cm:
            eq_normals.append(list(w))
            equations.append(_normalize_equation(w, cp))

    p0 = min(seen)
    diffs = [vec_sub(p, p0) for p in seen if p != p0]
    basis = saturated_basis(diffs, ambient_dim=m)
    k = len(basis)

    hull = TriangulatedHull(k, track_facets=True)
    state = BuildState(
        oracle=ctx,
        p0=p0,
        basis=list(basis),
        equations=equations,
        hull=hull,
    )
    for p in seen:
        hull.insert(state.xi_of(p), tag=p)
    assert hull.dim == k, "seed hull must span the certified affine hull"

    if k > 0:
        for key in sorted(hull.facet_map()):
            state.illegal.append(key)
            state.queued.add(key)
    state.init_calls = ctx.pipeline_runs
    return state


def _enqueue(state, added):
    for key in sorted(f.plane for f in added):
        if key not in state.legal and key not in state.queued:
            state.illegal.append(key)
            state.queued.add(key)


def _process(state, on_call=None):
    """Drain the illegal queue; returns True iff it emptied (Q = target).

    ``on_call(w, v)`` is invoked after each fresh oracle call once Q has been
    updated; returning True stops the loop early (approximation mode).
    """
    ctx = state.oracle
    while state.illegal:
        key = state.illegal.popleft()
        state.queued.discard(key)
        if key not in state.hull.facet_map():
            continue  # facet destroyed since it was queued
        if key in state.legal:
            continue
        w = state.pullback(key.normal)
        if w in ctx.memo:
            # A parallel facet was queried before; its answer lies on this
            # hyperplane and inside Q, so the facet already supports the
            # target.
            state.legal[key] = ctx.memo[w][0]
            continue
        v, _ = ctx.vtx(w)
        xi_v = state.xi_of(v)
        val = dot(key.normal, xi_v)
        if val > key.offset:
            _, added = state.hull.insert(xi_v, tag=v)
            _enqueue(state, added)
        elif val == key.offset:
            state.legal[key] = v
            _, added = state.hull.insert(xi_v, tag=v)
            _enqueue(state, added)
        else:
            raise AssertionError("oracle answer fell below a facet of Q")
        if on_call is not None and on_call(w, v):
            return False
    return True


def compute_pi(sys, seed=0, use_cache=True):
    """Exact reconstruction: returns the final state with Q = target."""
    state = initialize(sys, seed=seed, use_cache=use_cache)
    _process(state)
    return state


def _outer_constraint(state, w, point):
    """The halfspace (in xi) certified by the oracle answer for w.

    Returns None when the direction is constant on the target's affine hull
    (an equation direction): its constraint is trivially true in xi-space.
    """
    normal = tuple(dot(b, w) for b in state.basis)
    if all(a == 0 for a in normal):
        return None
    offset = dot(w, vec_sub(point, state.p0))
    nrm, off = canonical_hyperplane(list(normal), offset)
    return Hyperplane(nrm, off)


def compute_pi_approx(sys, threshold, seed=0, use_cache=True):
    """Stop once vol(Q)/vol(Q_o) reaches ``threshold``.

    Q_o is the intersection of every halfspace the oracle has certified so
    far with a provably large bounding simplex, all in xi-space.  Returns
    (state, SandwichReport); on queue exhaustion both hulls equal the target
    and the ratio is 1.
    """
    if isinstance(threshold, float):
        threshold = Fraction(str(threshold))
    else:
        threshold = Fraction(threshold)
    state = initialize(sys, seed=seed, use_cache=use_cache)
    k = state.hull.dim
    if k == 0:
        report = SandwichReport(
            inner_volume=Fraction(1),
            outer_volume=Fraction(1),
            ratio=Fraction(1),
            threshold=threshold,
            reached=True,
            outer_hull=state.hull,
        )
        return state, report

    # Bounding simplex: |xi_i| is bounded via xi = S (x - p0) with
    # S = (B^T B)^{-1} B^T and the coordinate-wise diameter of the target,
    # which the +-e_j queries already pinned down exactly.
    m = state.m
    gram = [
        [dot(a, b) for b in state.basis] for a in state.basis
    ]
    xs = list(state.hull.tags)
    diam = [
        max(x[j] for x in xs) - min(x[j] for x in xs) for j in range(m)
    ]
    s_cols = []  # column j of S = (B^T B)^{-1} B^T, each of length k
    for j in range(m):
        status, col = solve_exact(gram, [b[j] for b in state.basis])
        assert status == "unique"
        s_cols.append(col)
    radius = Fraction(0)
    for i in range(k):
        bound = sum(abs(s_cols[j][i]) * diam[j] for j in range(m))
        if bound > radius:
            radius = bound
    radius += 1

    outer = TriangulatedHull(k)
    base = tuple(-radius for _ in range(k))
    outer.insert(base)
    for t in range(k):
        apex = tuple(
            (2 * k - 1) * radius if i == t else -radius for i in range(k)
        )
        outer.insert(apex)
    assert outer.dim == k

    for w in sorted(state.oracle.memo):
        point = state.oracle.memo[w][0]
        plane = _outer_constraint(state, w, point)
        if plane is not None:
            outer = clip_halfspace(outer, plane)

    vol_q = hull_volume(state.hull)
    vol_qo = hull_volume(outer)
    ratio = vol_q / vol_qo
    if ratio >= threshold:
        report = SandwichReport(vol_q, vol_qo, ratio, threshold, True, outer)
        return state, report

    def on_call(w, v):
        nonlocal outer, vol_q, vol_qo, ratio
        plane = _outer_constraint(state, w, v)
        if plane is not None:
            outer = clip_halfspace(outer, plane)
        vol_q = hull_volume(state.hull)
        vol_qo = hull_volume(outer)
        ratio = vol_q / vol_qo
        return ratio >= threshold

    _process(state, on_call=on_call)
    vol_q = hull_volume(state.hull)
    vol_qo = hull_volume(outer)
    ratio = vol_q / vol_qo
    report = SandwichReport(
        vol_q, vol_qo, ratio, threshold, ratio >= threshold, outer
    )
    return state, report


def compute_pi_random(sys, k, seed=0, use_cache=True):
    """Hull of vtx answers over k seeded random integer directions.

    Directions are drawn as rounded scaled Gaussian vectors, so for a fixed
    seed the first k1 < k2 directions of a k2-run are exactly the k1-run's.
    Requires k >= m + 1; the resulting hull may still undershoot the target
    (its dimension is reported, not asserted).
    """
    m = sys.m
    if k < m + 1:
        raise ValueError("random mode needs at least m + 1 directions")
    ctx = VertexOracle(sys, seed=seed, use_cache=use_cache)
    rng = Random(f"{seed}|sphere")
    dirs = []
    while len(dirs) < k:
        g = [rng.gauss(0.0, 1.0) for _ in range(m)]
        ints = [round(x * (1 << 20)) for x in g]
        if all(v == 0 for v in ints):
            continue
        dirs.append(canonical_direction(ints))
    hull = TriangulatedHull(m)
    for w in dirs:
        point, _ = ctx.vtx(w)
        hull.insert(point, tag=point)
    return RandomReport(
        oracle=ctx,
        hull=hull,
        directions=k,
        dim=hull.dim,
        volume=hull_volume(hull),
    )


def stats(state):
    """Summary statistics; asserts the output-sensitive call bound."""
    hull = state.hull
    nv = len(hull.points)
    nf = len(hull.facet_map()) if hull.dim == hull.ambient else 0
    total = state.oracle.pipeline_runs
    main = total - state.init_calls
    assert main <= nv + nf, "oracle call bound violated"
    return {
        "oracle_calls": total,
        "init_calls": state.init_calls,
        "main_calls": main,
        "vertices": nv,
        "facets": nf,
        "dim": hull.dim,
        "equations": len(state.equations),
        "cache": state.oracle.cache.stats(),
    }
