# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled determinant kernels (Cython twin of ``_kernels_py``).

Same API and semantics as the pure-Python module; see that module's
docstrings for the authoritative description.  Values stay arbitrary
precision (Python ints / Fractions); compilation removes interpreter
overhead from the recursion and bookkeeping.
"""

from time import perf_counter

__all__ = ["det_bareiss", "sort_with_parity", "MinorCache"]


def det_bareiss(rows):
    """Exact determinant of a square integer matrix, fraction-free."""
    cdef Py_ssize_t n = len(rows)
    if n == 0:
        return 1
    a = [list(row) for row in rows]
    for row in a:
        if len(row) != n:
            raise ValueError("det_bareiss requires a square matrix")
    cdef int sign = 1
    cdef Py_ssize_t k, i, j, pivot
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            pivot = -1
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    pivot = i
                    break
            if pivot < 0:
                return 0
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        akk = a[k][k]
        ak = a[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (ai[j] * akk - aik * ak[j]) // prev
            ai[k] = 0
        prev = akk
    return sign * a[n - 1][n - 1]


def sort_with_parity(seq):
    """Sort distinct items; return (sorted tuple, permutation parity, perm)."""
    items = list(seq)
    cdef Py_ssize_t n = len(items)
    perm = sorted(range(n), key=items.__getitem__)
    cdef Py_ssize_t inversions = 0
    cdef Py_ssize_t i, j, pi
    for i in range(n):
        pi = perm[i]
        for j in range(i + 1, n):
            if perm[j] < pi:
                inversions += 1
    parity = -1 if inversions & 1 else 1
    return tuple([items[i] for i in perm]), parity, perm


cdef int _sign_of(v):
    if v > 0:
        return 1
    if v < 0:
        return -1
    return 0


cdef class MinorCache:
    """Cache of signed minors of one fixed integer base matrix.

    Compiled counterpart of ``_kernels_py.MinorCache``; identical behavior
    and statistics semantics.
    """

    cdef list _columns
    cdef Py_ssize_t _nrows
    cdef public object threshold
    cdef public bint use_cache
    cdef dict _pure_tab
    cdef dict _hom_tab
    cdef public dict pure_misses
    cdef public dict pure_hits
    cdef public object hom_misses
    cdef public object hom_hits
    cdef public object clears
    cdef public object generation
    cdef public object predicate_calls
    cdef public double predicate_time
    cdef int _depth
    cdef double _t0

    def __init__(self, columns, threshold=10 ** 6, use_cache=True):
        cols = [tuple(int(x) for x in c) for c in columns]
        cdef Py_ssize_t nrows = 0
        if cols:
            nrows = len(cols[0])
            for c in cols:
                if len(c) != nrows:
                    raise ValueError("all columns must have equal length")
        self._columns = cols
        self._nrows = nrows
        self.threshold = threshold
        self.use_cache = use_cache
        self._pure_tab = {}
        self._hom_tab = {}
        self.pure_misses = {}
        self.pure_hits = {}
        self.hom_misses = 0
        self.hom_hits = 0
        self.clears = 0
        self.generation = 0
        self.predicate_calls = 0
        self.predicate_time = 0.0
        self._depth = 0
        self._t0 = 0.0

    # -- bookkeeping -------------------------------------------------------

    @property
    def num_columns(self):
        return len(self._columns)

    @property
    def num_rows(self):
        return self._nrows

    @property
    def entries(self):
        return len(self._pure_tab) + len(self._hom_tab)

    def clear(self):
        """Drop all cached minors (statistics counters are kept)."""
        self._pure_tab.clear()
        self._hom_tab.clear()
        self.clears += 1
        self.generation += 1

    def maintain(self):
        """Clear the tables if the entry count exceeds the threshold."""
        if len(self._pure_tab) + len(self._hom_tab) > self.threshold:
            self.clear()

    def make_key(self, cols):
        """Return a portable key (generation tag, column tuple)."""
        return (self.generation, tuple(cols))

    def cached_value(self, key):
        """Look up a key made by :meth:`make_key` (None if absent)."""
        from resnewt.errors import StaleMinorKey

        tag, cols = key
        if tag != self.generation:
            raise StaleMinorKey(
                "minor key from generation %d, cache is at %d" % (tag, self.generation)
            )
        return self._pure_tab.get(cols)

    def stats(self):
        """Snapshot of all counters as a plain dict."""
        return {
            "pure_misses_by_size": dict(self.pure_misses),
            "pure_hits_by_size": dict(self.pure_hits),
            "pure_misses": sum(self.pure_misses.values()),
            "pure_hits": sum(self.pure_hits.values()),
            "hom_misses": self.hom_misses,
            "hom_hits": self.hom_hits,
            "entries": len(self._pure_tab) + len(self._hom_tab),
            "clears": self.clears,
            "generation": self.generation,
            "predicate_calls": self.predicate_calls,
            "predicate_time": self.predicate_time,
        }

    cdef void _enter(self):
        self._depth += 1
        if self._depth == 1:
            self._t0 = perf_counter()

    cdef void _exit(self):
        self._depth -= 1
        if self._depth == 0:
            self.predicate_time += perf_counter() - self._t0
            self.maintain()

    # -- recursions (cols: strictly increasing tuples) ---------------------

    cdef object _minor(self, tuple cols):
        cdef Py_ssize_t k = len(cols)
        cdef Py_ssize_t row, j
        cdef int sign
        if k == 1:
            return (<tuple> self._columns[<Py_ssize_t> cols[0]])[0]
        if self.use_cache:
            v = self._pure_tab.get(cols)
            if v is not None:
                self.pure_hits[k] = self.pure_hits.get(k, 0) + 1
                return v
        row = k - 1
        total = 0
        sign = -1 if row & 1 else 1
        for j in range(k):
            coef = (<tuple> self._columns[<Py_ssize_t> cols[j]])[row]
            if coef:
                total += sign * coef * self._minor(cols[:j] + cols[j + 1:])
            sign = -sign
        self.pure_misses[k] = self.pure_misses.get(k, 0) + 1
        if self.use_cache:
            self._pure_tab[cols] = total
        return total

    cdef object _hom(self, tuple cols):
        cdef Py_ssize_t k = len(cols)
        cdef Py_ssize_t j
        cdef int sign
        if k == 1:
            return 1
        if self.use_cache:
            v = self._hom_tab.get(cols)
            if v is not None:
                self.hom_hits += 1
                return v
        total = 0
        sign = -1 if (k - 1) & 1 else 1
        for j in range(k):
            total += sign * self._minor(cols[:j] + cols[j + 1:])
            sign = -sign
        self.hom_misses += 1
        if self.use_cache:
            self._hom_tab[cols] = total
        return total

    cdef _check_increasing(self, tuple cols, Py_ssize_t max_len):
        if len(cols) > max_len:
            raise ValueError("too many columns for this base matrix")
        cdef Py_ssize_t prev = -1
        cdef Py_ssize_t ncols = len(self._columns)
        for c in cols:
            if c <= prev or c >= ncols:
                raise ValueError("column indices must be strictly increasing and in range")
            prev = c

    # -- public API ---------------------------------------------------------

    def minor(self, cols):
        """Pure minor: determinant of the top ``len(cols)`` rows of ``cols``."""
        cdef tuple t = tuple(cols)
        self._check_increasing(t, self._nrows)
        self._enter()
        try:
            return self._minor(t)
        finally:
            self._exit()

    def hom_det(self, cols):
        """Homogeneous minor: top ``len(cols)-1`` rows plus an all-ones row."""
        cdef tuple t = tuple(cols)
        self._check_increasing(t, self._nrows + 1)
        self._enter()
        try:
            return self._hom(t)
        finally:
            self._exit()

    def hom_sign(self, cols):
        """Sign of the homogeneous determinant, columns in given order."""
        cdef tuple t = tuple(cols)
        if len(set(t)) != len(t):
            self.predicate_calls += 1
            return 0
        srt, parity, _ = sort_with_parity(t)
        self._check_increasing(srt, self._nrows + 1)
        self._enter()
        try:
            self.predicate_calls += 1
            return parity * _sign_of(self._hom(srt))
        finally:
            self._exit()

    def volume_predicate(self, cols):
        """Absolute homogeneous determinant (normalized simplex volume)."""
        cdef tuple t = tuple(cols)
        if len(set(t)) != len(t):
            self.predicate_calls += 1
            return 0
        cdef tuple srt = tuple(sorted(t))
        self._check_increasing(srt, self._nrows + 1)
        self._enter()
        try:
            self.predicate_calls += 1
            v = self._hom(srt)
            return v if v >= 0 else -v
        finally:
            self._exit()

    def orientation(self, cols, lifting):
        """Sign of the determinant of columns extended by lifting + ones row.

        Expansion runs along the lifting row; every homogeneous sub-minor is
        requested (and cached) even when its lifting coefficient is zero.
        """
        cdef tuple t = tuple(cols)
        if len(t) != len(lifting):
            raise ValueError("lifting must align with cols")
        if len(set(t)) != len(t):
            self.predicate_calls += 1
            return 0
        srt, parity, perm = sort_with_parity(t)
        lift = [lifting[i] for i in perm]
        self._check_increasing(srt, self._nrows + 2)
        cdef Py_ssize_t k = len(srt)
        cdef Py_ssize_t j
        cdef int sign
        self._enter()
        try:
            self.predicate_calls += 1
            total = 0
            sign = -1 if (k - 2) & 1 else 1
            for j in range(k):
                h = self._hom(srt[:j] + srt[j + 1:])
                w = lift[j]
                if w:
                    total += sign * w * h
                sign = -sign
            return parity * _sign_of(total)
        finally:
            self._exit()
