"""Shared helpers for the test suite."""

from resnewt.cayley import ProjectionSpec, _apply_projection, build_cayley


def family_from(n, supports, mode, pairs=()):
    """Build a SupportFamily from raw supports and a projection mode."""
    sup = [[tuple(p) for p in s] for s in supports]
    return _apply_projection(n, sup, ProjectionSpec(mode=mode, pairs=list(pairs)))


def system_from(n, supports, mode, pairs=()):
    """Build a CayleySystem straight from raw supports (no preprocessing)."""
    return build_cayley(family_from(n, supports, mode, pairs))
