# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled word-scan kernel.

Twin of ``pure.py``: same floating-point operations in the same order, so
results are bit-identical between backends (the extension is compiled with
-ffp-contract=off to rule out FMA contraction).  Keep both files in lockstep.
"""

from libc.math cimport fabs, INFINITY

import numpy as np


BACKEND_NAME = "compiled"

DEF MAX_DEPTH = 64


cdef struct ScanState:
    int n_letters
    int depth
    double eps
    int word[MAX_DEPTH]
    int best_bad_len
    int best_bad[MAX_DEPTH]
    double best_dev
    int best_dev_len
    int best_dev_word[MAX_DEPTH]
    long scanned


cdef double _identity_deviation(double a, double b, double c, double d) noexcept nogil:
    # Inputs are products of det-±1 letters, so they are already normalized
    # up to rounding drift; only the projective sign needs fixing.
    cdef double dev, t
    if (a != 0.0 and a < 0.0) or (a == 0.0 and b < 0.0):
        a = -a
        b = -b
        c = -c
        d = -d
    dev = fabs(a - 1.0)
    t = fabs(b)
    if t > dev:
        dev = t
    t = fabs(c)
    if t > dev:
        dev = t
    t = fabs(d - 1.0)
    if t > dev:
        dev = t
    return dev


cdef bint _word_precedes(int* w, int wlen, int* best, int best_len) noexcept nogil:
    cdef int i
    if best_len < 0:
        return True
    if wlen != best_len:
        return wlen < best_len
    for i in range(wlen):
        if w[i] != best[i]:
            return w[i] < best[i]
    return False


cdef void _scan_visit(ScanState* st, const double[:, ::1] letters,
                      const signed char[:] orientations,
                      double pa, double pb, double pc, double pd,
                      int ori, int level) noexcept nogil:
    cdef int i, j, nori
    cdef double na, nb, nc, nd, tr, dev
    cdef bint hyperbolic
    for i in range(st.n_letters):
        if level > 0 and i == (st.word[level - 1] ^ 1):
            continue
        na = pa * letters[i, 0] + pb * letters[i, 2]
        nb = pa * letters[i, 1] + pb * letters[i, 3]
        nc = pc * letters[i, 0] + pd * letters[i, 2]
        nd = pc * letters[i, 1] + pd * letters[i, 3]
        nori = ori * orientations[i]
        st.word[level] = i
        st.scanned += 1
        hyperbolic = False
        if nori == 1:
            # det(product) = ±1 by construction; |na + nd| is the
            # normalized trace without a cancellation-prone rescale.
            tr = fabs(na + nd)
            hyperbolic = tr > 2.0 + st.eps
            dev = _identity_deviation(na, nb, nc, nd)
            if dev < st.best_dev:
                st.best_dev = dev
                st.best_dev_len = level + 1
                for j in range(level + 1):
                    st.best_dev_word[j] = st.word[j]
        if not hyperbolic:
            if _word_precedes(st.word, level + 1, st.best_bad, st.best_bad_len):
                st.best_bad_len = level + 1
                for j in range(level + 1):
                    st.best_bad[j] = st.word[j]
        if level + 1 < st.depth:
            _scan_visit(st, letters, orientations, na, nb, nc, nd, nori, level + 1)


def hyperbolic_freeness_scan(letters, orientations, int depth, double eps):
    """See the pure twin for the contract."""
    if depth > MAX_DEPTH:
        raise ValueError(f"depth {depth} exceeds compiled kernel limit {MAX_DEPTH}")
    cdef const double[:, ::1] lview = np.ascontiguousarray(letters, dtype=np.float64)
    cdef const signed char[:] oview = np.ascontiguousarray(orientations, dtype=np.int8)
    cdef ScanState st
    st.n_letters = lview.shape[0]
    st.depth = depth
    st.eps = eps
    st.best_bad_len = -1
    st.best_dev = INFINITY
    st.best_dev_len = -1
    st.scanned = 0
    _scan_visit(&st, lview, oview, 1.0, 0.0, 0.0, 1.0, 1, 0)
    first_bad = tuple(st.best_bad[i] for i in range(st.best_bad_len)) if st.best_bad_len >= 0 else None
    dev_word = tuple(st.best_dev_word[i] for i in range(st.best_dev_len)) if st.best_dev_len >= 0 else None
    best_dev = st.best_dev if st.best_dev_len >= 0 else float("inf")
    return first_bad, best_dev, dev_word, st.scanned


cdef long _refine_visit(const double[:, ::1] letters, const double[:, ::1] targets,
                        const double[:] fixed_points, int depth,
                        int[:, ::1] words, double[:] lo, double[:] hi, double[:] points,
                        int* word, double pa, double pb, double pc, double pd,
                        int level, long pos) noexcept nogil:
    cdef int i, j, n_letters = letters.shape[0]
    cdef double t0, t1, x1, x2, fp, p
    for i in range(n_letters):
        if level > 0 and i == (word[level - 1] ^ 1):
            continue
        word[level] = i
        if level + 1 == depth:
            t0 = targets[i, 0]
            t1 = targets[i, 1]
            x1 = (pa * t0 + pb) / (pc * t0 + pd)
            x2 = (pa * t1 + pb) / (pc * t1 + pd)
            fp = fixed_points[i]
            p = (pa * fp + pb) / (pc * fp + pd)
            if x1 <= x2:
                lo[pos] = x1
                hi[pos] = x2
            else:
                lo[pos] = x2
                hi[pos] = x1
            points[pos] = p
            for j in range(depth):
                words[pos, j] = word[j]
            pos += 1
        else:
            pos = _refine_visit(
                letters, targets, fixed_points, depth, words, lo, hi, points, word,
                pa * letters[i, 0] + pb * letters[i, 2],
                pa * letters[i, 1] + pb * letters[i, 3],
                pc * letters[i, 0] + pd * letters[i, 2],
                pc * letters[i, 1] + pd * letters[i, 3],
                level + 1, pos)
    return pos


def refinement_scan(letters, targets, fixed_points, int depth):
    """See the pure twin for the contract."""
    if depth > MAX_DEPTH:
        raise ValueError(f"depth {depth} exceeds compiled kernel limit {MAX_DEPTH}")
    cdef const double[:, ::1] lview = np.ascontiguousarray(letters, dtype=np.float64)
    cdef const double[:, ::1] tview = np.ascontiguousarray(targets, dtype=np.float64)
    cdef const double[:] fview = np.ascontiguousarray(fixed_points, dtype=np.float64)
    cdef int n_letters = lview.shape[0]
    cdef long count = n_letters
    cdef int _level
    for _level in range(depth - 1):
        count *= n_letters - 1
    words_arr = np.empty((count, depth), dtype=np.int32)
    lo_arr = np.empty(count, dtype=np.float64)
    hi_arr = np.empty(count, dtype=np.float64)
    points_arr = np.empty(count, dtype=np.float64)
    cdef int[:, ::1] words = words_arr
    cdef double[:] lo = lo_arr
    cdef double[:] hi = hi_arr
    cdef double[:] points = points_arr
    cdef int word[MAX_DEPTH]
    cdef long pos = _refine_visit(lview, tview, fview, depth, words, lo, hi, points,
                                  word, 1.0, 0.0, 0.0, 1.0, 0, 0)
    assert pos == count
    return words_arr, lo_arr, hi_arr, points_arr
