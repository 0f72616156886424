"""Pure-Python twin of the compiled word-scan kernel.

Both implementations must perform the same floating-point operations in the
same order: the dispatcher guarantees nothing about which one is active, and
the golden-file tests require bit-identical output from either.  Keep any
edit here in lockstep with ``_wordscan.pyx``.

Letter encoding: index 2*(k-1) is generator k, index 2*(k-1)+1 its inverse,
so ``idx ^ 1`` inverts a letter and ascending index order is the canonical
word order (+1 < -1 < +2 < -2 < ...).  A word is reduced iff no letter is
followed by ``letter ^ 1``.
"""

from __future__ import annotations

import math

import numpy as np

BACKEND_NAME = "pure"


def _identity_deviation(a, b, c, d):
    # Inputs are products of det-±1 letters, so they are already normalized
    # up to rounding drift; only the projective sign needs fixing.
    if (a != 0.0 and a < 0.0) or (a == 0.0 and b < 0.0):
        a, b, c, d = -a, -b, -c, -d
    dev = abs(a - 1.0)
    if abs(b) > dev:
        dev = abs(b)
    if abs(c) > dev:
        dev = abs(c)
    if abs(d - 1.0) > dev:
        dev = abs(d - 1.0)
    return dev


def hyperbolic_freeness_scan(letters, orientations, depth, eps):
    """Scan all reduced words of length 1..depth.

    letters: (2n, 4) float64 normalized coefficient rows in canonical order.
    orientations: (2n,) int8 of +1/-1 per letter.

    Returns a 4-tuple:
      first_bad      first word (ordered by (length, letters)) that is not
                     hyperbolic, as a tuple of letter indices, or None
      min_dev        minimum identity deviation over orientation-(+1) words
      min_dev_word   the word attaining it (letter-index tuple), or None
      words_scanned  total count of words visited
    """
    letters = np.ascontiguousarray(letters, dtype=np.float64)
    n_letters = letters.shape[0]
    best_bad = None
    best_dev = math.inf
    best_dev_word = None
    scanned = 0
    word = []

    def visit(pa, pb, pc, pd, ori, level):
        nonlocal best_bad, best_dev, best_dev_word, scanned
        for i in range(n_letters):
            if level > 0 and i == word[-1] ^ 1:
                continue
            row = letters[i]
            na = pa * row[0] + pb * row[2]
            nb = pa * row[1] + pb * row[3]
            nc = pc * row[0] + pd * row[2]
            nd = pc * row[1] + pd * row[3]
            nori = ori * orientations[i]
            word.append(i)
            scanned += 1
            hyperbolic = False
            if nori == 1:
                # det(product) = ±1 by construction; |na + nd| is the
                # normalized trace without a cancellation-prone rescale.
                tr = abs(na + nd)
                hyperbolic = tr > 2.0 + eps
                dev = _identity_deviation(na, nb, nc, nd)
                if dev < best_dev:
                    best_dev = dev
                    best_dev_word = tuple(word)
            if not hyperbolic:
                key = (len(word), tuple(word))
                if best_bad is None or key < best_bad:
                    best_bad = key
            if level + 1 < depth:
                visit(na, nb, nc, nd, nori, level + 1)
            word.pop()

    visit(1.0, 0.0, 0.0, 1.0, 1, 0)
    first_bad = best_bad[1] if best_bad is not None else None
    return first_bad, best_dev, best_dev_word, scanned


def refinement_scan(letters, targets, fixed_points, depth):
    """Cells and sample points for all reduced words of length == depth.

    For a word l_1..l_k the cell is the image of l_k's target interval under
    the prefix l_1..l_{k-1}, and the sample point is the prefix image of
    l_k's fixed point.  Output order is canonical (lexicographic in letter
    indices).

    Returns (words, lo, hi, points): int32 (N, depth) and three float64 (N,).
    """
    letters = np.ascontiguousarray(letters, dtype=np.float64)
    targets = np.ascontiguousarray(targets, dtype=np.float64)
    fixed_points = np.ascontiguousarray(fixed_points, dtype=np.float64)
    n_letters = letters.shape[0]
    count = n_letters if depth == 1 else n_letters * (n_letters - 1) ** (depth - 1)
    words = np.empty((count, depth), dtype=np.int32)
    lo = np.empty(count, dtype=np.float64)
    hi = np.empty(count, dtype=np.float64)
    points = np.empty(count, dtype=np.float64)
    word = []
    pos = 0

    def visit(pa, pb, pc, pd, level):
        nonlocal pos
        for i in range(n_letters):
            if level > 0 and i == word[-1] ^ 1:
                continue
            word.append(i)
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
                row = letters[i]
                visit(
                    pa * row[0] + pb * row[2],
                    pa * row[1] + pb * row[3],
                    pc * row[0] + pd * row[2],
                    pc * row[1] + pd * row[3],
                    level + 1,
                )
            word.pop()

    visit(1.0, 0.0, 0.0, 1.0, 0)
    assert pos == count
    return words, lo, hi, points
