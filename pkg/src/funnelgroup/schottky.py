"""Rank-n Fuchsian Schottky groups from symmetric semicircle configurations.

A configuration lists n disjoint intervals 0 < a_1 < b_1 < ... < a_n < b_n on
the positive half-line; the mirror images (-b_k, -a_k) complete the 2n
pairing semicircles.  Generator k is the composition of the reflection in
the semicircle over (-b_k, -a_k) with the reflection in the vertical axis,
which acts on the boundary as x -> (c*x + c^2 - r^2)/(x + c) for
c = (a_k+b_k)/2, r = (b_k-a_k)/2.  It is hyperbolic with fixed points at
±sqrt(a_k*b_k), sends the whole exterior of the mirrored semicircle into the
interior of the positive one, and maps the endpoint -b_k to b_k and -a_k to
a_k.  (Endpoints map straight across the axis; the open mirrored interval
itself wraps through infinity onto the complement of the closed target.)
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from . import mobius, words
from .errors import (
    DegenerateRankOneError,
    InvalidConfigError,
    PoleHitError,
    PoleInsideIntervalError,
    UseBaseBuilderError,
)
from .mobius import (
    DEFAULT_EPS,
    BoundaryInterval,
    ExtendedMobiusMap,
    IsometryClass,
)


@dataclass(frozen=True)
class Semicircle:
    """Geodesic semicircle over a boundary interval."""

    center: float
    radius: float

    @classmethod
    def over(cls, interval: BoundaryInterval) -> "Semicircle":
        return cls(center=interval.center, radius=interval.radius)


@dataclass(frozen=True)
class SchottkyConfig:
    """The n positive pairing intervals; mirrors are derived, never stored."""

    positive_intervals: tuple[BoundaryInterval, ...]

    def __post_init__(self):
        if not self.positive_intervals:
            raise InvalidConfigError("need at least one interval")
        prev = 0.0
        for iv in self.positive_intervals:
            if not iv.lo > prev:
                raise InvalidConfigError(
                    f"intervals must satisfy 0 < a_1 < b_1 < a_2 < ..., "
                    f"violated at ({iv.lo}, {iv.hi}) after {prev}"
                )
            prev = iv.hi

    @classmethod
    def from_pairs(cls, pairs: Sequence[Sequence[float]]) -> "SchottkyConfig":
        try:
            intervals = tuple(BoundaryInterval(float(a), float(b)) for a, b in pairs)
        except ValueError as exc:
            raise InvalidConfigError(str(exc)) from exc
        return cls(intervals)

    @property
    def rank(self) -> int:
        return len(self.positive_intervals)

    @property
    def mirrored_intervals(self) -> tuple[BoundaryInterval, ...]:
        return tuple(iv.mirrored() for iv in self.positive_intervals)

    def target_interval(self, letter: int) -> BoundaryInterval:
        """Target of a signed letter: +k lands in (a_k, b_k), -k in (-b_k, -a_k)."""
        iv = self.positive_intervals[abs(letter) - 1]
        return iv if letter > 0 else iv.mirrored()

    def all_intervals(self) -> tuple[BoundaryInterval, ...]:
        """The 2n configured intervals in canonical letter order."""
        out = []
        for k in range(1, self.rank + 1):
            out.append(self.target_interval(k))
            out.append(self.target_interval(-k))
        return tuple(out)

    def semicircles(self) -> tuple[Semicircle, ...]:
        return tuple(Semicircle.over(iv) for iv in self.all_intervals())

    @property
    def hull_span(self) -> BoundaryInterval:
        b_n = self.positive_intervals[-1].hi
        return BoundaryInterval(-b_n, b_n)


def _pairing_generator(interval: BoundaryInterval) -> ExtendedMobiusMap:
    mirror = interval.mirrored()
    semi = mobius.reflection_in_semicircle(mirror.center, mirror.radius)
    return mobius.compose(mobius.reflection_in_vertical_line(0.0), semi)


@dataclass(frozen=True)
class SchottkyGroup:
    config: SchottkyConfig
    generators: tuple[ExtendedMobiusMap, ...]

    @property
    def rank(self) -> int:
        return self.config.rank

    def letters(self) -> tuple[ExtendedMobiusMap, ...]:
        return words.letter_maps(self.generators)

    def generator_axis(self, k: int) -> mobius.AxisData:
        return mobius.axis(self.generators[k - 1])


def build_group(config: SchottkyConfig) -> SchottkyGroup:
    """Build the marked group; every generator comes out hyperbolic."""
    gens = []
    for iv in config.positive_intervals:
        g = _pairing_generator(iv)
        if mobius.classify(g) is not IsometryClass.HYPERBOLIC:
            raise InvalidConfigError(f"pairing map for ({iv.lo}, {iv.hi}) is not hyperbolic")
        gens.append(g)
    return SchottkyGroup(config=config, generators=tuple(gens))


@dataclass(frozen=True)
class NestingFailure:
    letter: int
    moved_interval: BoundaryInterval
    image: BoundaryInterval | None  # None when the pole met the moved interval
    target: BoundaryInterval


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of the defining-condition checks; failures recorded, not raised."""

    disjoint: bool
    min_gap: float
    non_tangency: bool
    nesting_ok: bool
    nesting_failures: tuple[NestingFailure, ...]
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.disjoint and self.non_tangency and self.nesting_ok


def verify_schottky_condition(group: SchottkyGroup, eps: float = DEFAULT_EPS) -> VerificationReport:
    """Pairwise disjointness, ping-pong nesting, and the tangency margin.

    Nesting: for every letter and every configured interval other than the
    letter's source, the image must land strictly inside the letter's target.
    Tangency margin: the smallest gap between consecutive closed intervals
    must stay above eps (tangency never occurs for this class, so a
    borderline configuration is reported as a failure).
    """
    config = group.config
    intervals = sorted(config.all_intervals(), key=lambda iv: iv.lo)
    min_gap = math.inf
    for left, right in zip(intervals, intervals[1:]):
        min_gap = min(min_gap, right.lo - left.hi)
    disjoint = min_gap > 0.0
    non_tangency = min_gap > eps

    letters = group.letters()
    failures = []
    for slot, letter_map in enumerate(letters):
        signed = words.index_to_signed(slot)
        target = config.target_interval(signed)
        source = config.target_interval(-signed)
        for moved in config.all_intervals():
            if moved == source:
                continue
            try:
                image = mobius.image_interval(letter_map, moved, eps)
            except (PoleInsideIntervalError, PoleHitError):
                # only possible for a mis-paired group; recorded, not raised
                failures.append(
                    NestingFailure(letter=signed, moved_interval=moved, image=None, target=target)
                )
                continue
            if not target.contains_interval(image):
                failures.append(
                    NestingFailure(letter=signed, moved_interval=moved, image=image, target=target)
                )
    return VerificationReport(
        disjoint=disjoint,
        min_gap=min_gap,
        non_tangency=non_tangency,
        nesting_ok=not failures,
        nesting_failures=tuple(failures),
        tolerance=eps,
    )


@dataclass(frozen=True)
class OrientationSubgroupInfo:
    """Descriptor of the orientation-preserving subgroup of an extended group."""

    index: int
    reversing_generators: tuple[int, ...]
    parity_rule: str = "a word is orientation-preserving iff it uses an even number of reversing letters"


@dataclass(frozen=True)
class ExtendedSchottkyGroup:
    config: SchottkyConfig
    generators: tuple[ExtendedMobiusMap, ...]
    reversing: tuple[bool, ...]

    @property
    def rank(self) -> int:
        return self.config.rank

    def letters(self) -> tuple[ExtendedMobiusMap, ...]:
        return words.letter_maps(self.generators)

    @property
    def orientation_subgroup(self) -> OrientationSubgroupInfo:
        rev = tuple(k + 1 for k, flag in enumerate(self.reversing) if flag)
        return OrientationSubgroupInfo(index=2, reversing_generators=rev)


def build_extended_group(
    config: SchottkyConfig, reversing: Sequence[bool]
) -> ExtendedSchottkyGroup:
    """Variant builder where flagged generators become glide reflections.

    A flagged generator is the base pairing map composed with the reflection
    in the geodesic joining its two fixed points; it pairs its own axis side
    to itself and squares to the translation of twice the base length.
    """
    reversing = tuple(bool(f) for f in reversing)
    if len(reversing) != config.rank:
        raise InvalidConfigError(
            f"need {config.rank} reversing flags, got {len(reversing)}"
        )
    if not any(reversing):
        raise UseBaseBuilderError("no reversing flags set; use build_group")
    gens = []
    for iv, flag in zip(config.positive_intervals, reversing):
        g = _pairing_generator(iv)
        if flag:
            ax = mobius.axis(g)
            radius = abs(ax.attracting)
            g = mobius.compose(g, mobius.reflection_in_semicircle(0.0, radius))
        gens.append(g)
    return ExtendedSchottkyGroup(config=config, generators=tuple(gens), reversing=reversing)


def orientation_subgroup_sample(
    group: ExtendedSchottkyGroup, depth: int, cap: int | None = None
) -> list[ExtendedMobiusMap]:
    """Evaluated reduced words of length 1..depth with orientation product +1."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    out = []
    for length in range(1, depth + 1):
        layer = words.enumerate_layer(group.rank, length, cap)
        for word in layer.words:
            parity = sum(1 for s in word if group.reversing[abs(s) - 1]) % 2
            if parity == 0:
                out.append(words.evaluate(word, group))
    return out


@dataclass(frozen=True)
class NielsenBoundary:
    """Gap geodesics of a depth-k approximation of the Nielsen region."""

    depth: int
    hull_span: BoundaryInterval
    gaps: tuple[BoundaryInterval, ...]
    geodesics: tuple[Semicircle, ...]
    interior_gap_count: int


def nielsen_boundary(group: SchottkyGroup, depth: int = 0) -> NielsenBoundary:
    """Complement of the refinement intervals inside the hull span.

    depth counts refinement steps beyond the base configuration: depth 0 uses
    the 2n configured intervals themselves, and each increment refines once
    more, so the gap geodesics approach the true boundary of the convex hull
    from outside.  Rank 1 has a two-point limit set and degenerates to a
    single geodesic, reported through the error.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if group.rank == 1:
        ax = group.generator_axis(1)
        ends = tuple(sorted((ax.repelling, ax.attracting)))
        raise DegenerateRankOneError(axis_endpoints=ends)
    from .limitset import refine  # deferred: limitset builds on this module

    layer = refine(group, depth + 1)
    span = group.config.hull_span
    cells = sorted(layer.cell_intervals(), key=lambda iv: iv.lo)
    gaps = []
    cursor = span.lo
    for iv in cells:
        if iv.lo > cursor:
            gaps.append(BoundaryInterval(cursor, iv.lo))
        cursor = max(cursor, iv.hi)
    if cursor < span.hi:
        gaps.append(BoundaryInterval(cursor, span.hi))
    interior = sum(1 for g in gaps if g.lo != span.lo and g.hi != span.hi)
    return NielsenBoundary(
        depth=depth,
        hull_span=span,
        gaps=tuple(gaps),
        geodesics=tuple(Semicircle.over(g) for g in gaps),
        interior_gap_count=interior,
    )


@dataclass(frozen=True)
class ClassificationReport:
    """Checklist against the defining conditions of the class.

    verdict is True when hyperbolicity and the disjoint-semicircle
    configuration are both confirmed, False when either fails, and None for
    raw generator lists that pass sampling but carry no configuration.  The
    dimension flag is informational only and never asserted.
    """

    purely_hyperbolic_sample: bool
    offending_word: words.Word | None
    sample_depth: int
    disjoint_semicircles: bool | None
    dimension_value: float | None
    dimension_at_most_half: bool | None
    verdict: bool | None
    note: str = ""


def is_fuchsian_schottky(
    group_or_generators,
    depth: int = 6,
    dimension_estimate=None,
    eps: float = DEFAULT_EPS,
) -> ClassificationReport:
    """Classify a built group or a raw generator list."""
    hyp = words.purely_hyperbolic_sample(group_or_generators, depth, eps)
    note = ""
    if isinstance(group_or_generators, SchottkyGroup):
        report = verify_schottky_condition(group_or_generators, eps)
        disjoint: bool | None = report.passed
        if group_or_generators.rank == 1:
            note = "rank 1: the limit set is a two-point set, both points conical; the conditions hold trivially"
    else:
        disjoint = None
        note = "raw generator list: no semicircle configuration supplied, disjointness not established"

    dim_value = None
    dim_flag = None
    if dimension_estimate is not None:
        dim_value = dimension_estimate.value
        dim_flag = dim_value <= 0.5

    if not hyp.all_hyperbolic or disjoint is False:
        verdict: bool | None = False
    elif disjoint is True:
        verdict = True
    else:
        verdict = None
    return ClassificationReport(
        purely_hyperbolic_sample=hyp.all_hyperbolic,
        offending_word=hyp.offending_word,
        sample_depth=depth,
        disjoint_semicircles=disjoint,
        dimension_value=dim_value,
        dimension_at_most_half=dim_flag,
        verdict=verdict,
        note=note,
    )
