"""Frozen golden instances and their expected results.

Each instance is a dict with the support family, the projection mode, and the
expected vertex set of the projected polytope.  Expected values were fixed
before the implementation existed: the classical-resultant instances were
derived by hand (explicit resultant polynomials and circuit computations) and
cross-checked with the independent oracles in reference.py.
"""

# --- Sylvester: f0 = a2 x^2 + a1 x + a0, f1 = b1 x^2 + b0 --------------------
# Res = (a0 b1 - a2 b0)^2 + a1^2 b0 b1, monomials a1^2 b1 b0, a0^2 b1^2,
# a2 a0 b1 b0, a2^2 b0^2.  Coordinates ordered (a2, a1, a0, b1, b0).
SYLVESTER = {
    "n": 1,
    "supports": [[(2,), (1,), (0,)], [(2,), (0,)]],
    "mode": "full",
    "vertices": {(0, 2, 0, 1, 1), (0, 0, 2, 2, 0), (2, 0, 0, 0, 2)},
    "lattice_points": 4,
}

# --- Monomial surface parameterization (y1, y2, y3) = (x1 x2, x1 x2^2, x1^2) -
# f0 = c00 - c01 x1 x2, f1 = c10 - c11 x1 x2^2, f2 = c20 - c21 x1^2.
# Res = ±(c00^4 c11^2 c21 - c01^4 c10^2 c20); the polytope is a segment.
MONOMIAL_SURFACE = {
    "n": 2,
    "supports": [[(0, 0), (1, 1)], [(0, 0), (1, 2)], [(0, 0), (2, 0)]],
    "mode_full_vertices": {(4, 0, 0, 2, 0, 1), (0, 4, 2, 0, 1, 0)},
    "mode_implicit_vertices": {(4, 0, 0), (0, 2, 1)},
}

# --- u-resultant of a circle and a line --------------------------------------
# f1 = x1^2 + x2^2 - 4, f2 = x1 - x2 + 2, f0 = u0 + u1 x1 + u2 x2.
CIRCLE_LINE = {
    "n": 2,
    "supports": [
        [(0, 0), (1, 0), (0, 1)],
        [(0, 0), (2, 0), (0, 2)],
        [(0, 0), (1, 0), (0, 1)],
    ],
    "mode": "u-resultant",
    "vertices": {(2, 0, 0), (0, 2, 0), (0, 0, 2)},
}

# --- Bicubic surface implicitization -----------------------------------------
# Three bivariate supports of sizes 7, 6, 14; the symbolic coefficient of each
# polynomial is its constant term.
BICUBIC = {
    "n": 2,
    "supports": [
        [(0, 0), (0, 1), (1, 0), (0, 2), (2, 0), (0, 3), (3, 0)],
        [(0, 0), (0, 1), (1, 0), (2, 0), (0, 3), (3, 0)],
        [
            (0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0), (1, 2),
            (2, 1), (1, 3), (2, 2), (3, 1), (2, 3), (3, 2), (3, 3),
        ],
    ],
    "mode": "implicit",
    "vertices": {
        (0, 0, 1), (0, 1, 0), (1, 0, 0),
        (0, 0, 9), (0, 18, 0), (18, 0, 0),
    },
}

# --- Trinomial system for the minor-reuse counters ---------------------------
# f0 = c00 - c01 x1 x2 + c02 x2, f1 = c10 - c11 x1 x2^2 + c12 x2^2,
# f2 = c20 - c21 x1^2 + c22 x2.  Columns ordered constant terms first:
# (c00, c10, c20, c01, c11, c21, c02, c12, c22).
MINOR_COUNT_COLUMNS = [
    (0, 0, 0, 0),
    (0, 0, 1, 0),
    (0, 0, 0, 1),
    (1, 1, 0, 0),
    (1, 2, 1, 0),
    (2, 0, 0, 1),
    (0, 1, 0, 0),
    (0, 2, 1, 0),
    (0, 1, 0, 1),
]

# Expected two triangulations of the MONOMIAL_SURFACE Cayley points (columns
# in block-major order c00, c01, c10, c11, c20, c21).  Raising c00 keeps it on
# every upper cell; the cells drop one of the other-signed circuit points each.
MONOMIAL_SURFACE_CELLS_PLUS = [(0, 2, 3, 4, 5), (0, 1, 3, 4, 5), (0, 1, 2, 3, 5)]
MONOMIAL_SURFACE_RHO_PLUS = (4, 0, 0, 2, 0, 1)
MONOMIAL_SURFACE_CELLS_MINUS = [(1, 2, 3, 4, 5), (0, 1, 2, 4, 5), (0, 1, 2, 3, 4)]
MONOMIAL_SURFACE_RHO_MINUS = (0, 4, 2, 0, 1, 0)
