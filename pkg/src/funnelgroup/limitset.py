"""Limit-set approximations and two independent dimension estimators.

Refinement layers: the depth-1 cells are the 2n configured intervals; the
cell of a reduced word l_1..l_k is the image of l_k's target interval under
the prefix l_1..l_{k-1}.  Reducedness makes consecutive layers strictly
nested, so the layers shrink onto the Cantor limit set.

Dimension, method one (spectral pressure): on the 2n letters build the
matrix M(s)[i][j] = r_ij^s over admissible transitions j != i^-1, where
r_ij < 1 is the contraction |letter_i'(p_j)| at the attracting fixed point
p_j of letter_j (equivalently the expanding inverse-branch derivative to the
power -s).  The spectral radius is strictly decreasing in s; bisection on
rho(M(s)) = 1 gives the estimate.

Dimension, method two (box counting): for each layer take eps = the largest
cell length and count the eps-grid boxes that meet the layer's cells; the
least-squares slope of log(count) against log(1/eps) across layers 2..k is
the estimate.  Counting occupied grid boxes (rather than raw cells) keeps
the estimator consistent when cell sizes spread over several orders of
magnitude, which they do as soon as the generators contract at different
rates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import mobius, words
from ._kernels import refinement_scan
from .errors import NestingViolationError, NoBracketError
from .mobius import DEFAULT_EPS, BoundaryInterval
from .schottky import SchottkyGroup


@dataclass(frozen=True)
class RefinementLayer:
    """All depth-k cells, in canonical word order."""

    depth: int
    word_indices: np.ndarray  # (N, depth) int32, kernel letter slots
    lo: np.ndarray
    hi: np.ndarray
    points: np.ndarray

    @property
    def cell_count(self) -> int:
        return len(self.lo)

    @property
    def total_length(self) -> float:
        return float(np.sum(self.hi - self.lo))

    @property
    def max_cell_length(self) -> float:
        return float(np.max(self.hi - self.lo))

    def cell_intervals(self) -> tuple[BoundaryInterval, ...]:
        return tuple(
            BoundaryInterval(float(a), float(b)) for a, b in zip(self.lo, self.hi)
        )

    @property
    def cells(self) -> tuple[tuple[words.Word, BoundaryInterval], ...]:
        return tuple(
            (words.word_from_indices(row), BoundaryInterval(float(a), float(b)))
            for row, a, b in zip(self.word_indices, self.lo, self.hi)
        )

    def parent_index(self, i: int, n_letters: int) -> int:
        """Index of cell i's parent in the depth-(k-1) layer."""
        return i // (n_letters - 1)


def _scan_layer(group: SchottkyGroup, depth: int) -> RefinementLayer:
    coeffs, _ = words.letter_arrays(group.generators)
    config = group.config
    n_letters = 2 * group.rank
    targets = np.empty((n_letters, 2), dtype=np.float64)
    fixed = np.empty(n_letters, dtype=np.float64)
    letters = group.letters()
    for slot in range(n_letters):
        signed = words.index_to_signed(slot)
        iv = config.target_interval(signed)
        targets[slot, 0] = iv.lo
        targets[slot, 1] = iv.hi
        fixed[slot] = mobius.axis(letters[slot]).attracting
    w, lo, hi, points = refinement_scan(coeffs, targets, fixed, depth)
    return RefinementLayer(depth=depth, word_indices=w, lo=lo, hi=hi, points=points)


def refine(
    group: SchottkyGroup, depth: int, eps: float = DEFAULT_EPS, cap: int | None = None
) -> RefinementLayer:
    """Depth-k refinement layer, validated against its parent layer.

    Assumes the group passes verification; a configuration that should have
    failed it surfaces here as NestingViolationError.  The validation
    tolerance is relative: deep cells contract toward fixed points and their
    margins legitimately shrink to the floating-point floor, so only escapes
    beyond eps * scale indicate an unsound configuration.
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    words.check_cap(group.rank, depth, cap)
    layer = _scan_layer(group, depth)
    if depth > 1:
        parent = _scan_layer(group, depth - 1)
        idx = np.arange(layer.cell_count) // (2 * group.rank - 1)
        plo = parent.lo[idx]
        phi = parent.hi[idx]
        tol = eps * np.maximum(1.0, np.maximum(np.abs(plo), np.abs(phi)))
        escaped = (layer.lo < plo - tol) | (layer.hi > phi + tol)
        if escaped.any():
            word = words.word_from_indices(layer.word_indices[int(np.argmax(escaped))])
            raise NestingViolationError(
                f"cell of {word.letters} escapes its parent; "
                "the configuration should have failed verification"
            )
    return layer


@dataclass(frozen=True)
class LimitSetSample:
    """One limit point per depth-k cell.

    The point for a word l_1..l_k is the prefix image of the attracting
    fixed point of the final letter: the limit of the ray l_1..l_{k-1}
    (l_k)^inf, equivalently the attracting fixed point of the final letter
    conjugated by the prefix.  It always lies inside the word's cell.  (The
    fixed point of the evaluated word itself leaves the cell whenever the
    word is not cyclically reduced, so it is not used.)
    """

    depth: int
    points: np.ndarray

    @property
    def count(self) -> int:
        return len(self.points)


def sample_points(
    group: SchottkyGroup, depth: int, eps: float = DEFAULT_EPS, cap: int | None = None
) -> LimitSetSample:
    layer = refine(group, depth, eps, cap)
    return LimitSetSample(depth=depth, points=layer.points)


class DimensionMethod(Enum):
    SPECTRAL_PRESSURE = "spectral_pressure"
    BOX_COUNTING = "box_counting"


@dataclass(frozen=True)
class DimensionEstimate:
    value: float
    method: DimensionMethod
    bracket: tuple[float, float]
    depth: int | None = None
    resolution: float | None = None
    layer_table: tuple[tuple[int, float, float], ...] | None = None  # (depth, log N, log 1/eps)


def _contraction_matrix(letters) -> np.ndarray:
    """Pairwise contraction factors r_ij = |letter_i'(p_j)|, 0 on j = i^-1."""
    m = len(letters)
    fps = [mobius.axis(letter).attracting for letter in letters]
    out = np.zeros((m, m))
    for i in range(m):
        for j in range(m):
            if j == i ^ 1:
                continue
            out[i, j] = abs(mobius.boundary_derivative(letters[i], fps[j]))
    return out


def _spectral_radius(matrix: np.ndarray) -> float:
    """Power iteration with a deterministic all-ones start."""
    m = len(matrix)
    v = [1.0] * m
    lam = 0.0
    for _ in range(5000):
        w = [sum(matrix[i][j] * v[j] for j in range(m)) for i in range(m)]
        total = sum(w)
        if total == 0.0:
            return 0.0
        lam_new = total / sum(v)
        w = [x / total for x in w]
        if abs(lam_new - lam) <= 1e-13 * max(1.0, lam_new):
            return lam_new
        v = w
        lam = lam_new
    return lam


def pressure_spectral_radius(letters, s: float) -> float:
    """rho(M(s)) for a letter list; exposed for the monotonicity checks."""
    return _spectral_radius(_contraction_matrix(letters) ** s)


_BISECTION_LO = 0.001
_BISECTION_HI = 0.999


def estimate_dimension_pressure(
    group_or_letters, resolution: float = 1e-4
) -> DimensionEstimate:
    """Bisection on rho(M(s)) = 1 over s in [0.001, 0.999].

    Rank-1 groups return exactly 0 (two-point limit set).  Accepts a built
    group or any sequence of hyperbolic generator maps.
    """
    if isinstance(group_or_letters, SchottkyGroup):
        if group_or_letters.rank == 1:
            return DimensionEstimate(
                value=0.0,
                method=DimensionMethod.SPECTRAL_PRESSURE,
                bracket=(0.0, 0.0),
                resolution=resolution,
            )
        letters = group_or_letters.letters()
    else:
        letters = words.letter_maps(group_or_letters)
    base = _contraction_matrix(letters)
    lo, hi = _BISECTION_LO, _BISECTION_HI
    if _spectral_radius(base**lo) < 1.0:
        raise NoBracketError(
            f"spectral radius already below 1 at s={lo}; the configuration is degenerate"
        )
    if _spectral_radius(base**hi) > 1.0:
        raise NoBracketError(
            f"spectral radius still above 1 at s={hi}; no root inside the search domain"
        )
    while hi - lo > resolution:
        mid = 0.5 * (lo + hi)
        if _spectral_radius(base**mid) >= 1.0:
            lo = mid
        else:
            hi = mid
    return DimensionEstimate(
        value=0.5 * (lo + hi),
        method=DimensionMethod.SPECTRAL_PRESSURE,
        bracket=(lo, hi),
        resolution=resolution,
    )


def _occupied_boxes(lo: np.ndarray, hi: np.ndarray, eps: float) -> int:
    """Number of eps-grid boxes meeting any of the intervals."""
    first = np.floor(lo / eps).astype(np.int64)
    last = np.floor(hi / eps).astype(np.int64)
    ranges = sorted(zip(first.tolist(), last.tolist()))
    count = 0
    cur_lo, cur_hi = None, None
    for a, b in ranges:
        if cur_hi is None or a > cur_hi + 1:
            if cur_hi is not None:
                count += cur_hi - cur_lo + 1
            cur_lo, cur_hi = a, b
        else:
            cur_hi = max(cur_hi, b)
    if cur_hi is not None:
        count += cur_hi - cur_lo + 1
    return count


def estimate_dimension_boxcount(
    group: SchottkyGroup, depth: int, eps: float = DEFAULT_EPS, cap: int | None = None
) -> DimensionEstimate:
    """Least-squares slope of log(box count) vs log(1/eps) over layers 2..depth."""
    if isinstance(group, SchottkyGroup) and group.rank == 1:
        return DimensionEstimate(
            value=0.0, method=DimensionMethod.BOX_COUNTING, bracket=(0.0, 0.0), depth=depth
        )
    if depth < 3:
        raise ValueError("box counting needs depth >= 3 for a meaningful fit")
    table = []
    xs, ys = [], []
    for k in range(2, depth + 1):
        layer = refine(group, k, eps, cap)
        scale = layer.max_cell_length
        boxes = _occupied_boxes(layer.lo, layer.hi, scale)
        x = math.log(1.0 / scale)
        y = math.log(boxes)
        table.append((k, y, x))
        xs.append(x)
        ys.append(y)
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    slope = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys)) / sum(
        (x - xbar) ** 2 for x in xs
    )
    consecutive = [
        (ys[i + 1] - ys[i]) / (xs[i + 1] - xs[i]) for i in range(len(xs) - 1)
    ]
    return DimensionEstimate(
        value=slope,
        method=DimensionMethod.BOX_COUNTING,
        bracket=(min(consecutive), max(consecutive)),
        depth=depth,
        layer_table=tuple(table),
    )


@dataclass(frozen=True)
class ConvergenceReport:
    dimension: float
    convergence_type: bool
    dimension_at_most_half: bool


def convergence_type_report(estimate: DimensionEstimate) -> ConvergenceReport:
    """Convergence type holds whenever the exponent is below 1 (always here)."""
    return ConvergenceReport(
        dimension=estimate.value,
        convergence_type=estimate.value < 1.0,
        dimension_at_most_half=estimate.value <= 0.5,
    )
