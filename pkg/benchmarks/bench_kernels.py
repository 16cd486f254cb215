"""Benchmark the determinant kernels: compiled extension vs pure Python.

Runs the same two workloads on every available backend and prints a
comparison table:

* ``det_bareiss`` on batches of random integer matrices of several sizes;
* a ``MinorCache`` predicate stream resembling incremental-hull load:
  orientation/volume queries over heavily overlapping column subsets of one
  tall integer matrix, timed with the minor cache on and off.

Usage::

    python3 benchmarks/bench_kernels.py [--matrices N] [--predicates N] [--seed S]

The workloads are seeded, so numbers for the two backends come from
identical inputs; results are asserted equal across backends before any
timing is reported.
"""

import argparse
import time
from random import Random

from resnewt import _kernels_py

try:
    from resnewt import _kernels
except ImportError:
    _kernels = None


def _random_matrix(rng, size):
    return [[rng.randint(-9, 9) for _ in range(size)] for _ in range(size)]


def _bareiss_batch(backend, matrices):
    t0 = time.perf_counter()
    dets = [backend.det_bareiss(m) for m in matrices]
    return time.perf_counter() - t0, dets


def _predicate_stream(rng, ncols, nrows, count):
    """Column subsets + liftings drawn once and replayed on every backend."""
    stream = []
    for _ in range(count):
        if rng.random() < 0.5:
            # A full-dimensional orientation test: nrows+2 columns, expanded
            # along the lifting row into nrows+1-column homogeneous minors.
            cols = tuple(sorted(rng.sample(range(ncols), nrows + 2)))
            lifting = tuple(rng.randint(-5, 5) for _ in range(nrows + 2))
            stream.append(("orientation", cols, lifting))
        else:
            cols = tuple(sorted(rng.sample(range(ncols), nrows + 1)))
            stream.append(("volume", cols, None))
    return stream


def _cache_run(backend, columns, stream, use_cache):
    cache = backend.MinorCache(columns, use_cache=use_cache)
    t0 = time.perf_counter()
    out = []
    for kind, cols, lifting in stream:
        if kind == "orientation":
            out.append(cache.orientation(cols, lifting))
        else:
            out.append(cache.volume_predicate(cols))
    return time.perf_counter() - t0, out, cache.stats()


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--matrices", type=int, default=300,
                        help="matrices per size in the Bareiss batch")
    parser.add_argument("--predicates", type=int, default=4000,
                        help="length of the minor-cache predicate stream")
    parser.add_argument("--predicates-nocache", type=int, default=40,
                        help="stream length for the cache-off arm (each query"
                        " recomputes every sub-minor, so keep this small)")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)

    backends = [("python", _kernels_py)]
    if _kernels is not None:
        backends.insert(0, ("compiled", _kernels))
    else:
        print("compiled extension not importable; timing pure Python only")

    rng = Random(args.seed)

    print("== det_bareiss (random integer matrices, entries -9..9) ==")
    for size in (5, 7, 9):
        matrices = [_random_matrix(rng, size) for _ in range(args.matrices)]
        rows = []
        reference = None
        for name, impl in backends:
            dt, dets = _bareiss_batch(impl, matrices)
            if reference is None:
                reference = dets
            else:
                assert dets == reference, "backend determinant mismatch"
            rows.append((name, dt))
        line = "  size %d x %d:" % (size, args.matrices)
        for name, dt in rows:
            line += "  %s %.4fs" % (name, dt)
        if len(rows) == 2:
            line += "  speedup %.1fx" % (rows[1][1] / max(rows[0][1], 1e-9))
        print(line)

    nrows, ncols = 7, 26
    columns = [[rng.randint(-6, 6) for _ in range(nrows)] for _ in range(ncols)]
    stream = _predicate_stream(rng, ncols, nrows, args.predicates)
    print("== MinorCache predicate stream (%d rows x %d cols) ==" % (nrows, ncols))
    for use_cache in (True, False):
        # Without the cache every query re-derives its full sub-minor tree,
        # so that arm runs a much shorter prefix of the same stream.
        part = stream if use_cache else stream[: args.predicates_nocache]
        rows = []
        reference = None
        misses = None
        for name, impl in backends:
            dt, out, stats = _cache_run(impl, columns, part, use_cache)
            if reference is None:
                reference = out
                misses = stats["pure_misses"] + stats["hom_misses"]
            else:
                assert out == reference, "backend predicate mismatch"
            rows.append((name, dt))
        line = "  cache %-3s, %4d queries (%8d minor evals):" % (
            "on" if use_cache else "off", len(part), misses)
        for name, dt in rows:
            line += "  %s %.4fs" % (name, dt)
        if len(rows) == 2:
            line += "  speedup %.1fx" % (rows[1][1] / max(rows[0][1], 1e-9))
        print(line)


if __name__ == "__main__":
    main()
