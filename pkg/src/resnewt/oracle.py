"""The vertex oracle: direction in, extreme exponent vector out.

Given a direction w in projection space, the oracle lifts the symbolic
Cayley columns by w, builds the placing triangulation refining the induced
upper regular subdivision, classifies mixed simplices, and sums their
volumes into the extreme exponent vector rho; the projection of rho is a
vertex of the projected polytope maximizing w.

One :class:`VertexOracle` per computation: it owns the minor cache, the
cached placing triangulation of the unlifted (non-symbolic) columns — built
once and cloned per call — the per-direction memo (the used-normal set W),
and the seeded insertion orders that stand in for generic perturbation.
"""

from random import Random

from .exactlin import MinorCache, canonical_direction, clear_denominators
from .geometry import TriangulatedHull

__all__ = [
    "VertexOracle",
    "canonical",
    "lift_direction",
    "mixed_cells",
    "rho_vector",
    "phi_vector",
    "vtx",
    "vtx_secondary",
]


def canonical(w):
    """Canonical integer form of a rational direction (orientation kept)."""
    return canonical_direction(clear_denominators(w))


def lift_direction(sys, w):
    """Lifting over all |A| columns: w_k at the k-th symbolic column, else 0."""
    if len(w) != sys.m:
        raise ValueError("direction must have length m = %d" % sys.m)
    lift = [0] * sys.num_columns
    for k, col in enumerate(sys.projection):
        lift[col] = w[k]
    return lift


def mixed_cells(simplices, sys):
    """Classify each simplex: (block, vertex column) if mixed, else None.

    A simplex (2n+1 column indices) is i-mixed when it takes exactly one
    column from block i and exactly two from every other block; the single
    block-i column is the associated mixed-cell vertex.
    """
    out = []
    for simplex in simplices:
        counts = {}
        for col in simplex:
            b = sys.block_of[col]
            counts[b] = counts.get(b, 0) + 1
        singles = [b for b, c in counts.items() if c == 1]
        if len(singles) == 1 and len(counts) == sys.n + 1 and all(
            c == 2 for b, c in counts.items() if b != singles[0]
        ):
            block = singles[0]
            vertex_col = next(c for c in simplex if sys.block_of[c] == block)
            out.append((block, vertex_col))
        else:
            out.append(None)
    return out


def rho_vector(simplices, sys, cache):
    """Extreme exponent vector: rho(a) = sum of volumes of a-mixed simplices."""
    rho = [0] * sys.num_columns
    for simplex, cls in zip(simplices, mixed_cells(simplices, sys)):
        if cls is None:
            continue
        _, vertex_col = cls
        rho[vertex_col] += cache.volume_predicate(simplex)
    return tuple(rho)


def phi_vector(simplices, sys, cache):
    """Secondary vector: phi(a) = sum of volumes of ALL simplices containing a."""
    phi = [0] * sys.num_columns
    for simplex in simplices:
        vol = cache.volume_predicate(simplex)
        for col in simplex:
            phi[col] += vol
    return tuple(phi)


class VertexOracle:
    """Oracle context: minor cache, cached base triangulation, direction memo.

    ``memo`` maps each canonical direction ever queried to its (projected
    point, full rho) answer; its key set is the used-normal set W — opposite
    directions are distinct members.  The placing hull of the non-symbolic
    (never lifted) columns is built once, in input column order, and cloned
    into the lifted space for every query; the symbolic columns are then
    placed in an order drawn from a PRNG seeded by (seed, direction), so
    reruns are reproducible and distinct directions decouple.
    """

    def __init__(self, sys, seed=0, use_cache=True, cache_threshold=10 ** 6):
        self.sys = sys
        self.seed = seed
        self.cache = MinorCache(
            sys.columns, threshold=cache_threshold, use_cache=use_cache
        )
        self.memo = {}
        self.pipeline_runs = 0
        self._t0 = None
        self._full = 2 * sys.n + 1  # columns in a full-dimensional Cayley simplex

    # -- predicate routing ----------------------------------------------------

    def _t0_orient(self, hull, ids):
        if len(ids) == self._full:
            return self.cache.hom_sign([hull.tags[i] for i in ids])
        return None

    def _lifted_orient(self, hull, ids):
        if len(ids) == self._full + 1:
            cols = [hull.tags[i] for i in ids]
            lifts = [hull.points[i][-1] for i in ids]
            return self.cache.orientation(cols, lifts)
        if (
            len(ids) == self._full
            and all(hull.points[i][-1] == 0 for i in ids)
            and all(b[-1] == 0 for b in hull.basis)
        ):
            return self.cache.hom_sign([hull.tags[i] for i in ids])
        return None

    # -- triangulation pipeline -------------------------------------------------

    def _base_hull(self):
        if self._t0 is None:
            hull = TriangulatedHull(2 * self.sys.n, orient_fn=self._t0_orient)
            for col in range(self.sys.num_columns):
                if not self.sys.is_symbolic(col):
                    hull.insert(self.sys.columns[col], tag=col)
            self._t0 = hull
        return self._t0

    def triangulation(self, w):
        """Placing triangulation refining the upper subdivision lifted by w.

        Returns a list of simplices as tuples of column indices.  ``w`` must
        already be canonical.
        """
        sys = self.sys
        lift = lift_direction(sys, w)
        hull = self._base_hull().extended_clone(orient_fn=self._lifted_orient)
        order = list(sys.projection)
        Random(f"{self.seed}|{tuple(w)}").shuffle(order)
        for col in order:
            hull.insert(sys.columns[col] + (lift[col],), tag=col)
        if hull.dim == 2 * sys.n + 1:
            simplices = [
                tuple(hull.tags[i] for i in bs.verts)
                for bs in hull.boundary
                if bs.alive
                and self.cache.hom_sign([hull.tags[i] for i in bs.verts])
                == bs.inner_sign
            ]
        else:
            simplices = [tuple(hull.tags[i] for i in cell) for cell in hull.cells]
        return simplices

    # -- oracle calls --------------------------------------------------------------

    def vtx(self, w):
        """Vertex of the projected polytope extreme in direction w.

        Returns (projected point, full rho vector); memoized per canonical
        direction (the memo key set is W).
        """
        key = canonical(w)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.pipeline_runs += 1
        simplices = self.triangulation(key)
        rho = rho_vector(simplices, self.sys, self.cache)
        point = tuple(rho[c] for c in self.sys.projection)
        answer = (point, rho)
        self.memo[key] = answer
        return answer

    def vtx_secondary(self, w):
        """Same pipeline, but sums over all simplices (secondary vector).

        Returns (projected phi, full phi); not memoized.
        """
        key = canonical(w)
        simplices = self.triangulation(key)
        phi = phi_vector(simplices, self.sys, self.cache)
        return tuple(phi[c] for c in self.sys.projection), phi

    @property
    def used_normals(self):
        return set(self.memo)


def vtx(sys, w, seed=0):
    """One-shot oracle call (fresh context); see VertexOracle.vtx."""
    return VertexOracle(sys, seed=seed).vtx(w)


def vtx_secondary(sys, w, seed=0):
    """One-shot secondary oracle call (fresh context)."""
    return VertexOracle(sys, seed=seed).vtx_secondary(w)
