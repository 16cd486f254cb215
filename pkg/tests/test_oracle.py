"""Tests for the vertex oracle: lifted triangulations, mixed cells, rho/phi."""

import random

import pytest

from conftest import system_from
from golden import (
    BICUBIC,
    CIRCLE_LINE,
    MONOMIAL_SURFACE,
    MONOMIAL_SURFACE_CELLS_MINUS,
    MONOMIAL_SURFACE_CELLS_PLUS,
    MONOMIAL_SURFACE_RHO_MINUS,
    MONOMIAL_SURFACE_RHO_PLUS,
    SYLVESTER,
)

from resnewt.errors import InvalidDirection
from resnewt.oracle import VertexOracle, canonical, lift_direction, mixed_cells, vtx


def _sys(golden, mode):
    return system_from(golden["n"], golden["supports"], mode)


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# -- direction helpers ----------------------------------------------------------


def test_canonical_direction_normalization():
    from fractions import Fraction

    assert canonical([2, -4, 6]) == (1, -2, 3)
    assert canonical([Fraction(1, 2), Fraction(1, 3)]) == (3, 2)
    assert canonical([0, -5]) == (0, -1)
    with pytest.raises(InvalidDirection):
        canonical([0, 0])


def test_lift_direction_places_symbolic_heights():
    sysd = _sys(MONOMIAL_SURFACE, "implicitization")
    lifted = lift_direction(sysd, (3, -1, 7))
    assert lifted == [3, 0, -1, 0, 7, 0]
    with pytest.raises(ValueError):
        lift_direction(sysd, (1, 2))  # wrong length


def test_mixed_cells_classification():
    sysd = _sys(MONOMIAL_SURFACE, "full")
    cells = MONOMIAL_SURFACE_CELLS_PLUS
    kinds = mixed_cells(cells, sysd)
    # Every golden cell takes one column from one block and two from each of
    # the others: i-mixed with the single column recorded.
    assert len(kinds) == len(cells)
    for cell, kind in zip(cells, kinds):
        assert kind is not None
        block, single_col = kind
        assert sysd.block_of[single_col] == block
        assert sum(1 for c in cell if sysd.block_of[c] == block) == 1
    # A simplex missing a block entirely classifies as None.
    syl = _sys(SYLVESTER, "full")
    assert mixed_cells([(0, 1, 2)], syl)[0] is None  # all from block 0
    assert mixed_cells([(0, 1, 3)], syl)[0] == (1, 3)


# -- frozen pipeline evaluations ----------------------------------------------------


def test_triangulation_matches_frozen_cells():
    sysd = _sys(MONOMIAL_SURFACE, "full")
    oracle = VertexOracle(sysd, seed=0)
    plus = oracle.triangulation(canonical([1, 0, 0, 0, 0, 0]))
    minus = oracle.triangulation(canonical([-1, 0, 0, 0, 0, 0]))
    # Cells come back in the lifted hull's stored column order.
    assert sorted(tuple(sorted(c)) for c in plus) == sorted(
        MONOMIAL_SURFACE_CELLS_PLUS
    )
    assert sorted(tuple(sorted(c)) for c in minus) == sorted(
        MONOMIAL_SURFACE_CELLS_MINUS
    )


def test_vtx_frozen_values_full_mode():
    sysd = _sys(MONOMIAL_SURFACE, "full")
    oracle = VertexOracle(sysd, seed=0)
    v_plus, rho_plus = oracle.vtx(canonical([1, 0, 0, 0, 0, 0]))
    v_minus, rho_minus = oracle.vtx(canonical([-1, 0, 0, 0, 0, 0]))
    assert rho_plus == MONOMIAL_SURFACE_RHO_PLUS
    assert rho_minus == MONOMIAL_SURFACE_RHO_MINUS
    # Full mode projects onto all coordinates.
    assert v_plus == MONOMIAL_SURFACE_RHO_PLUS
    assert v_minus == MONOMIAL_SURFACE_RHO_MINUS


def test_vtx_frozen_values_implicit_mode():
    sysd = _sys(MONOMIAL_SURFACE, "implicitization")
    oracle = VertexOracle(sysd, seed=0)
    v, _ = oracle.vtx(canonical([1, 0, 0]))
    assert v == (4, 0, 0)
    v, _ = oracle.vtx(canonical([-1, 0, 0]))
    assert v == (0, 2, 1)


def test_vtx_frozen_value_sylvester():
    sysd = _sys(SYLVESTER, "full")
    v, _ = vtx(sysd, (1, 0, 0, 0, 0))
    assert v == (2, 0, 0, 0, 2)


# -- oracle invariants ---------------------------------------------------------


def test_vtx_memoizes_by_direction():
    sysd = _sys(MONOMIAL_SURFACE, "full")
    oracle = VertexOracle(sysd, seed=0)
    w = canonical([1, -2, 0, 0, 1, 0])
    first = oracle.vtx(w)
    runs = oracle.pipeline_runs
    again = oracle.vtx(w)
    assert again == first
    assert oracle.pipeline_runs == runs
    assert w in oracle.memo
    # Scalar multiples share the canonical key; opposites do not.
    assert canonical([2, -4, 0, 0, 2, 0]) == w
    opposite = canonical([-1, 2, 0, 0, -1, 0])
    assert opposite != w


def test_vtx_answers_are_golden_vertices():
    cases = [
        (_sys(SYLVESTER, "full"), SYLVESTER["vertices"]),
        (_sys(MONOMIAL_SURFACE, "full"), MONOMIAL_SURFACE["mode_full_vertices"]),
        (
            _sys(MONOMIAL_SURFACE, "implicitization"),
            MONOMIAL_SURFACE["mode_implicit_vertices"],
        ),
        (_sys(CIRCLE_LINE, "u-resultant"), CIRCLE_LINE["vertices"]),
    ]
    rng = random.Random(424242)
    for sysd, vertices in cases:
        oracle = VertexOracle(sysd, seed=0)
        hits = set()
        for _ in range(60):
            w = [rng.randint(-9, 9) for _ in range(sysd.m)]
            if all(x == 0 for x in w):
                continue
            w = canonical(w)
            v, rho = oracle.vtx(w)
            assert v in vertices  # extreme answers only
            assert all(isinstance(x, int) for x in v)
            # Extremality: the answer maximizes w over everything seen.
            for u in vertices:
                assert _dot(w, v) >= _dot(w, u)
            hits.add(v)
        # Generic sampling should discover every vertex of these tiny cases.
        assert hits == set(vertices)


def test_rho_satisfies_block_invariant():
    # M.rho is the same vector at every vertex (row sums against rho).
    sysd = _sys(MONOMIAL_SURFACE, "full")
    oracle = VertexOracle(sysd, seed=0)
    rng = random.Random(7)
    expected = None
    for _ in range(25):
        w = [rng.randint(-6, 6) for _ in range(6)]
        if all(x == 0 for x in w):
            continue
        _, rho = oracle.vtx(canonical(w))
        image = tuple(_dot(row, rho) for row in sysd.M)
        if expected is None:
            expected = image
        assert image == expected
    assert expected == (4, 4, 4, 2, 1)


def test_vtx_seed_stability_on_generic_directions():
    # On generic directions the triangulation tie-breaks never fire, so the
    # answer is seed-independent.
    sysd = _sys(MONOMIAL_SURFACE, "full")
    rng = random.Random(99)
    for _ in range(10):
        w = canonical([rng.randint(-50, 50) * 2 + 1 for _ in range(6)])
        answers = {vtx(sysd, w, seed=s)[0] for s in range(4)}
        assert len(answers) == 1


def test_vtx_secondary_relation_to_rho():
    # phi counts every simplex containing a column (times volume); rho only
    # the mixed ones, so phi dominates rho componentwise, and the total mass
    # of phi is (2n+1) times the triangulated volume.
    sysd = _sys(MONOMIAL_SURFACE, "full")
    oracle = VertexOracle(sysd, seed=0)
    from resnewt.oracle import phi_vector, rho_vector

    for wraw in [(1, 0, 0, 0, 0, 0), (0, 0, 1, -1, 0, 2), (-3, 1, 4, 1, -5, 9)]:
        w = canonical(list(wraw))
        simplices = oracle.triangulation(w)
        rho = rho_vector(simplices, sysd, oracle.cache)
        phi = phi_vector(simplices, sysd, oracle.cache)
        assert all(p >= r >= 0 for p, r in zip(phi, rho))
        total_volume = sum(
            oracle.cache.volume_predicate(cell) for cell in simplices
        )
        assert sum(phi) == (2 * sysd.n + 1) * total_volume
        v, phi_again = oracle.vtx_secondary(w)
        assert phi_again == phi
        assert v == tuple(phi[c] for c in sysd.projection)


def test_bicubic_oracle_stays_extreme():
    sysd = _sys(BICUBIC, "implicitization")
    oracle = VertexOracle(sysd, seed=0)
    rng = random.Random(5)
    for _ in range(8):
        w = canonical([rng.randint(-7, 7) or 1 for _ in range(3)])
        v, _ = oracle.vtx(w)
        assert v in BICUBIC["vertices"]


def test_used_normals_reflect_memo():
    sysd = _sys(SYLVESTER, "full")
    oracle = VertexOracle(sysd, seed=0)
    w1 = canonical([1, 0, 0, 0, 0])
    w2 = canonical([0, 1, 0, 0, -1])
    oracle.vtx(w1)
    oracle.vtx(w2)
    assert set(oracle.used_normals) == {w1, w2}
