"""Command-line front end.

``resnewt compute`` parses a support family, checks essentiality, runs the
selected reconstruction mode (exact, approx, random) and prints the result;
``resnewt generate`` emits random essential input families.  All polytope
data on stdout is exact and deterministically ordered, so identical inputs
and seeds produce byte-identical output; timing lives in the optional stats
block on stderr.

Exit codes: 0 success, 2 unusable input (parse/usage), 3 non-essential
family (the violating blocks are printed).
"""

import argparse
import json
import sys as _sys
import time
from dataclasses import dataclass
from fractions import Fraction
from random import Random

from .cayley import (
    ProjectionSpec,
    _MODE_ALIASES,
    _apply_projection,
    build_cayley,
    check_essential,
    essential_violation,
    family_to_json,
    family_to_text,
    parse_input,
    preprocess,
    unproject,
)
from .errors import NotEssential, ParseError, ResnewtError
from .exactlin import saturated_basis, solve_exact, vec_sub
from .geometry import TriangulatedHull, f_vector
from .kernels import BACKEND
from .reconstruct import (
    compute_pi,
    compute_pi_approx,
    compute_pi_random,
    stats as reconstruct_stats,
)

__all__ = ["RunConfig", "run", "gen_random", "main"]


@dataclass
class RunConfig:
    """Everything one ``compute`` invocation needs."""

    input_path: str = "-"
    mode: str = "exact"
    threshold: Fraction = Fraction(9, 10)
    directions: int = 0
    projection: str = ""
    seed: int = 0
    fmt: str = "plain"
    no_hash: bool = False
    no_preprocess: bool = False
    unproject: bool = False
    f_vector: bool = False
    stats: bool = False


def _parse_projection_words(words):
    mode_word = words[0].lower()
    if mode_word not in _MODE_ALIASES:
        raise ParseError("unknown projection mode %r" % words[0])
    mode = _MODE_ALIASES[mode_word]
    pairs = []
    if mode == "custom":
        idx = words[1:]
        if not idx or len(idx) % 2 != 0:
            raise ParseError("custom projection needs (block, point) index pairs")
        try:
            nums = [int(x) for x in idx]
        except ValueError:
            raise ParseError("non-integer index in custom projection") from None
        pairs = list(zip(nums[0::2], nums[1::2]))
    elif len(words) > 1:
        raise ParseError("mode %r takes no extra arguments" % mode)
    return ProjectionSpec(mode, pairs)


def _fr(x):
    return str(Fraction(x))


def _intrinsic_copy(points):
    """Rebuild a hull of the given points over their own affine hull."""
    pts = sorted(set(points))
    p0 = pts[0]
    basis = saturated_basis([vec_sub(p, p0) for p in pts[1:]], ambient_dim=len(p0))
    rows = [tuple(col) for col in zip(*basis)]
    hull = TriangulatedHull(len(basis))
    for p in pts:
        status, sol = solve_exact(rows, vec_sub(p, p0))
        assert status == "unique" and all(t.denominator == 1 for t in sol)
        hull.insert(tuple(int(t) for t in sol), tag=p)
    return hull


def _emit_plain(doc, out):
    w = out.write
    w("mode: %s\n" % doc["mode"])
    w("dim: %d\n" % doc["dim"])
    w("ambient: %d\n" % doc["ambient"])
    key = "points" if doc["mode"] == "random" else "vertices"
    pts = doc[key]
    w("%s: %d\n" % (key, len(pts)))
    for p in pts:
        w("v %s\n" % " ".join(str(x) for x in p))
    if "facets" in doc:
        w("facets: %d\n" % len(doc["facets"]))
        for f in doc["facets"]:
            w(
                "f %s <= %d\n"
                % (" ".join(str(x) for x in f["normal"]), f["offset"])
            )
    if "equations" in doc:
        w("equations: %d\n" % len(doc["equations"]))
        for e in doc["equations"]:
            w(
                "e %s = %d\n"
                % (" ".join(str(x) for x in e["normal"]), e["offset"])
            )
    if "f_vector" in doc:
        w("f-vector: %s\n" % " ".join(str(x) for x in doc["f_vector"]))
    if "volume" in doc:
        w("volume: %s\n" % doc["volume"])
    if "sandwich" in doc:
        s = doc["sandwich"]
        w("sandwich:\n")
        w("  inner-volume: %s\n" % s["inner_volume"])
        w("  outer-volume: %s\n" % s["outer_volume"])
        w("  ratio: %s\n" % s["ratio"])
        w("  threshold: %s\n" % s["threshold"])
        w("  reached: %s\n" % ("yes" if s["reached"] else "no"))
    if "directions" in doc:
        w("directions: %d\n" % doc["directions"])
    if "unprojected" in doc:
        w("unprojected: %d\n" % len(doc["unprojected"]))
        for p in doc["unprojected"]:
            w("u %s\n" % " ".join(str(x) for x in p))


def _emit(doc, fmt, out):
    if fmt == "json":
        out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    else:
        _emit_plain(doc, out)


def _stats_block(lines, err):
    err.write("stats:\n")
    for k, v in lines:
        err.write("  %s: %s\n" % (k, v))


def _cache_stat_lines(cache_stats, wall):
    return [
        ("backend", BACKEND),
        ("minors cached", cache_stats["entries"]),
        (
            "pure misses",
            "%d (hits %d)" % (cache_stats["pure_misses"], cache_stats["pure_hits"]),
        ),
        (
            "hom misses",
            "%d (hits %d)" % (cache_stats["hom_misses"], cache_stats["hom_hits"]),
        ),
        ("cache clears", cache_stats["clears"]),
        ("predicate calls", cache_stats["predicate_calls"]),
        ("predicate time", "%.6fs" % cache_stats["predicate_time"]),
        ("wall time", "%.6fs" % wall),
    ]


def run(config, stdin=None, stdout=None, stderr=None):
    """Execute one compute invocation; returns the process exit code."""
    out = stdout if stdout is not None else _sys.stdout
    err = stderr if stderr is not None else _sys.stderr
    try:
        if config.input_path and config.input_path != "-":
            with open(config.input_path, "r", encoding="utf-8") as fh:
                text = fh.read()
        else:
            text = stdin if stdin is not None else _sys.stdin.read()
    except OSError as exc:
        err.write("error: cannot read input: %s\n" % exc)
        return 2

    try:
        family = parse_input(text)
        if config.projection:
            spec = _parse_projection_words(config.projection.split())
            family = _apply_projection(
                family.n, [list(s) for s in family.supports], spec
            )
        check_essential(family)
        if not config.no_preprocess:
            family = preprocess(family)
        system = build_cayley(family)
    except ParseError as exc:
        err.write("error: %s\n" % exc)
        return 2
    except NotEssential as exc:
        if exc.blocks:
            err.write(
                "error: family is not essential; violating blocks %s\n"
                % list(exc.blocks)
            )
        else:
            err.write(
                "error: family is not essential; supports do not span\n"
            )
        return 3

    use_cache = not config.no_hash
    t0 = time.perf_counter()

    if config.mode == "random":
        if config.directions < max(1, system.m + 1):
            err.write(
                "error: random mode needs --directions >= m + 1 = %d\n"
                % (system.m + 1)
            )
            return 2
        report = compute_pi_random(
            system, config.directions, seed=config.seed, use_cache=use_cache
        )
        wall = time.perf_counter() - t0
        doc = {
            "mode": "random",
            "dim": report.dim,
            "ambient": system.m,
            "points": [list(p) for p in report.points()],
            "volume": _fr(report.volume),
            "directions": report.directions,
        }
        if config.f_vector:
            hull = (
                report.hull
                if report.hull.dim == report.hull.ambient
                else _intrinsic_copy(report.hull.points)
            )
            doc["f_vector"] = list(f_vector(hull))
        if config.unproject and report.hull.points:
            ref = report.oracle.memo[min(report.oracle.memo)][1]
            doc["unprojected"] = [
                list(p)
                for p in sorted(unproject(system, report.points(), ref))
            ]
        _emit(doc, config.fmt, out)
        if config.stats:
            lines = [
                ("oracle calls", report.oracle.pipeline_runs),
            ] + _cache_stat_lines(report.oracle.cache.stats(), wall)
            _stats_block(lines, err)
        return 0

    if config.mode == "approx":
        state, sandwich = compute_pi_approx(
            system, config.threshold, seed=config.seed, use_cache=use_cache
        )
    else:
        state = compute_pi(system, seed=config.seed, use_cache=use_cache)
        sandwich = None
    wall = time.perf_counter() - t0

    doc = {
        "mode": config.mode,
        "dim": state.dim,
        "ambient": state.m,
        "vertices": [list(v) for v in state.vertices()],
    }
    if state.dim > 0:
        doc["facets"] = [
            {"normal": list(wv), "offset": off} for wv, off in state.facets_x()
        ]
    if state.dim < state.m:
        doc["equations"] = [
            {"normal": list(nrm), "offset": off}
            for nrm, off in sorted(state.equations)
        ]
    if config.f_vector:
        doc["f_vector"] = list(f_vector(state.hull))
    if sandwich is not None:
        doc["sandwich"] = {
            "inner_volume": _fr(sandwich.inner_volume),
            "outer_volume": _fr(sandwich.outer_volume),
            "ratio": _fr(sandwich.ratio),
            "threshold": _fr(sandwich.threshold),
            "reached": sandwich.reached,
        }
    if config.unproject:
        ref = state.oracle.memo[min(state.oracle.memo)][1]
        try:
            lifted = unproject(system, state.vertices(), ref)
        except ResnewtError as exc:
            err.write("error: cannot unproject: %s\n" % exc)
            return 2
        doc["unprojected"] = [list(p) for p in sorted(lifted)]
    _emit(doc, config.fmt, out)

    if config.stats:
        st = reconstruct_stats(state)
        lines = [
            ("oracle calls", st["oracle_calls"]),
            ("init calls", st["init_calls"]),
            ("main calls", st["main_calls"]),
            ("vertices", st["vertices"]),
            ("facets", st["facets"]),
        ] + _cache_stat_lines(st["cache"], wall)
        _stats_block(lines, err)
    return 0


# -- random input generation ---------------------------------------------------


def _lattice(n, delta, kind):
    if kind == "dense":
        box = delta
    else:
        box = delta // 2
    pts = []

    def rec(prefix):
        if len(prefix) == n:
            pts.append(tuple(prefix))
            return
        for x in range(box + 1):
            rec(prefix + [x])

    rec([])
    if kind == "dense":
        pts = [p for p in pts if sum(p) <= delta]
    return pts


def gen_random(n, delta, kind, sizes, seed, mode="full"):
    """Random essential support family, reproducible by seed.

    ``dense`` samples each block from the lattice points of the delta-simplex,
    ``sparse`` from the (delta/2)-cube.  Implicitization mode forces the
    origin into every block; u-resultant mode fixes block 0 to the unit
    simplex.  Resamples until the family is essential.
    """
    if len(sizes) != n + 1:
        raise ParseError("need %d block sizes, got %d" % (n + 1, len(sizes)))
    if any(s < 1 for s in sizes):
        raise ParseError("block sizes must be at least 1")
    if mode not in ("full", "implicitization", "u-resultant"):
        raise ParseError("generate supports full, implicit and u-res modes only")
    lattice = sorted(_lattice(n, delta, kind))
    origin = tuple([0] * n)
    unit_simplex = sorted(
        [origin] + [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    )
    rng = Random(f"{seed}|gen")
    for _ in range(10000):
        supports = []
        for i, size in enumerate(sizes):
            if mode == "u-resultant" and i == 0:
                supports.append(list(unit_simplex))
                continue
            pool = list(lattice)
            forced = []
            if mode == "implicitization":
                forced = [origin]
                pool = [p for p in pool if p != origin]
            if size - len(forced) > len(pool):
                raise ParseError(
                    "block %d wants %d points but the lattice has %d"
                    % (i, size, len(pool) + len(forced))
                )
            chosen = forced + rng.sample(pool, size - len(forced))
            supports.append(sorted(chosen))
        spec = ProjectionSpec(mode, [])
        try:
            family = _apply_projection(n, supports, spec)
        except ParseError:
            continue
        if essential_violation(family) is None:
            return family
    raise ResnewtError("could not generate an essential family; enlarge delta")


# -- argument parsing ------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="resnewt",
        description="Projected Newton polytopes of sparse resultants, exactly.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", help="reconstruct a projected polytope")
    c.add_argument("input", nargs="?", default="-", help="input file or - for stdin")
    c.add_argument(
        "--mode", choices=["exact", "approx", "random"], default="exact"
    )
    c.add_argument(
        "--threshold",
        default="0.9",
        help="volume-ratio stop for approx mode, in (0,1)",
    )
    c.add_argument(
        "--directions",
        type=int,
        default=0,
        help="number of random directions (random mode)",
    )
    c.add_argument(
        "--projection",
        default="",
        help="override the input's projection line, e.g. 'implicit'",
    )
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--format", choices=["plain", "json"], default="plain")
    c.add_argument("--no-hash", action="store_true", help="disable the minor cache")
    c.add_argument("--no-preprocess", action="store_true")
    c.add_argument("--unproject", action="store_true")
    c.add_argument("--f-vector", dest="f_vector", action="store_true")
    c.add_argument("--stats", action="store_true")

    g = sub.add_parser("generate", help="emit a random essential input family")
    g.add_argument("n", type=int)
    g.add_argument("delta", type=int)
    g.add_argument("--sizes", required=True, help="comma-separated block sizes")
    g.add_argument("--kind", choices=["dense", "sparse"], default="dense")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument(
        "--projection",
        default="full",
        choices=["full", "implicit", "u-res"],
    )
    g.add_argument("--format", choices=["text", "json"], default="text")
    return parser


def main(argv=None):
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "generate":
        try:
            sizes = [int(x) for x in args.sizes.replace(",", " ").split()]
            family = gen_random(
                args.n,
                args.delta,
                args.kind,
                sizes,
                args.seed,
                mode=_MODE_ALIASES[args.projection],
            )
        except (ParseError, ValueError) as exc:
            _sys.stderr.write("error: %s\n" % exc)
            return 2
        except ResnewtError as exc:
            _sys.stderr.write("error: %s\n" % exc)
            return 2
        if args.format == "json":
            _sys.stdout.write(family_to_json(family))
        else:
            _sys.stdout.write(family_to_text(family))
        return 0

    try:
        threshold = Fraction(args.threshold)
    except (ValueError, ZeroDivisionError):
        _sys.stderr.write("error: threshold must be a rational in (0,1)\n")
        return 2
    if args.mode == "approx" and not (0 < threshold < 1):
        _sys.stderr.write("error: threshold must lie strictly between 0 and 1\n")
        return 2

    config = RunConfig(
        input_path=args.input,
        mode=args.mode,
        threshold=threshold,
        directions=args.directions,
        projection=args.projection,
        seed=args.seed,
        fmt=args.format,
        no_hash=args.no_hash,
        no_preprocess=args.no_preprocess,
        unproject=args.unproject,
        f_vector=args.f_vector,
        stats=args.stats,
    )
    return run(config)


if __name__ == "__main__":
    raise SystemExit(main())
