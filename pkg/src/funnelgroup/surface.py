"""Quotient-surface topology, funnel counts, pants reports, and collars.

All counts here are closed-form in the rank; a group is only needed when
hyperbolic lengths of realizable curves should be attached.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import mobius, words
from .errors import NonpositiveLengthError, RankTooSmallError
from .schottky import SchottkyGroup

HYPERBOLIC_CYLINDER = "hyperbolic cylinder"
LOCH_NESS = "finite Loch Ness monster"
JACOBS_LADDER = "finite Jacob's ladder"


@dataclass(frozen=True)
class SurfaceTopology:
    genus: int
    funnels: int
    cusps: int
    euler: int
    surface_name: str


def fuchsian_topology(rank: int) -> SurfaceTopology:
    """Genus and funnel count of the half-plane quotient.

    Rank 1 is the hyperbolic cylinder (no genus, two funnels); even rank
    gives one funnel and rank/2 handles, odd rank two funnels and
    (rank-1)/2 handles.  Euler characteristic is 1 - rank throughout, and
    always equals 2 - 2*genus - funnels - cusps.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    if rank == 1:
        return SurfaceTopology(genus=0, funnels=2, cusps=0, euler=0,
                               surface_name=HYPERBOLIC_CYLINDER)
    if rank % 2 == 0:
        genus, funnels, name = rank // 2, 1, LOCH_NESS
    else:
        genus, funnels, name = (rank - 1) // 2, 2, JACOBS_LADDER
    return SurfaceTopology(genus=genus, funnels=funnels, cusps=0,
                           euler=1 - rank, surface_name=name)


@dataclass(frozen=True)
class FunnelOption:
    divisor: int | None  # None marks the special rank-1 row
    funnels: int
    relation_holds: bool  # whether rank == 2*genus + funnels - 1


@dataclass(frozen=True)
class ClassicalFunnelSet:
    rank: int
    genus: int
    options: tuple[FunnelOption, ...]

    def funnel_counts(self) -> tuple[int, ...]:
        return tuple(opt.funnels for opt in self.options)


def classical_funnels(rank: int) -> ClassicalFunnelSet:
    """Funnel-count options of the sphere-side uniformization.

    For every divisor q of the rank m with 1 <= q < m the option is
    f = m*(m - (2q - 1))/q, always a positive integer; the genus is m.
    Rank 1 is the special two-funnel, genus-zero row.
    """
    if rank < 1:
        raise ValueError("rank must be at least 1")
    if rank == 1:
        return ClassicalFunnelSet(
            rank=1, genus=0,
            options=(FunnelOption(divisor=None, funnels=2, relation_holds=True),),
        )
    options = []
    for q in range(1, rank):
        if rank % q:
            continue
        f, rem = divmod(rank * (rank - (2 * q - 1)), q)
        assert rem == 0 and f > 0, (rank, q)
        options.append(
            FunnelOption(divisor=q, funnels=f, relation_holds=rank == 2 * rank + f - 1)
        )
    return ClassicalFunnelSet(rank=rank, genus=rank, options=tuple(options))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class RankComparison:
    rank: int
    fuchsian_funnels: int
    classical_funnel_options: tuple[int, ...]
    classical_min: int
    classical_max: int
    min_matches_fuchsian_max: bool
    prime: bool


@dataclass(frozen=True)
class FunnelBoundReport:
    """Half-plane maximum vs sphere-side minimum, rank by rank."""

    rows: tuple[RankComparison, ...]
    fuchsian_max: int

    @property
    def equality_ranks(self) -> tuple[int, ...]:
        return tuple(r.rank for r in self.rows if r.min_matches_fuchsian_max)


def funnel_bound_comparison(ranks) -> FunnelBoundReport:
    ranks = tuple(ranks)
    if not ranks:
        raise ValueError("rank range must be nonempty")
    if min(ranks) < 2:
        raise ValueError("comparison is defined for ranks >= 2")
    fuchsian_max = max(fuchsian_topology(m).funnels for m in ranks)
    rows = []
    for m in ranks:
        opts = classical_funnels(m).funnel_counts()
        rows.append(
            RankComparison(
                rank=m,
                fuchsian_funnels=fuchsian_topology(m).funnels,
                classical_funnel_options=opts,
                classical_min=min(opts),
                classical_max=m * (m - 1),
                min_matches_fuchsian_max=min(opts) == 2,
                prime=is_prime(m),
            )
        )
    return FunnelBoundReport(rows=tuple(rows), fuchsian_max=fuchsian_max)


@dataclass(frozen=True)
class GluingEdge:
    piece_a: str
    boundary_a: str
    piece_b: str
    boundary_b: str
    twist: str


@dataclass(frozen=True)
class PantsReport:
    rank: int
    num_pants: int
    twist_count: int
    signature: tuple[int, int]
    fn_length_count: int
    fn_twist_count: int
    bers_bound: int
    euler: int
    pieces: tuple[str, ...]
    edges: tuple[GluingEdge, ...]
    free_boundaries: tuple[str, ...]
    consistency_flags: tuple[str, ...]
    curve_lengths: dict[str, float] | None = None


def _gluing_graph(n: int) -> tuple[tuple[str, ...], tuple[GluingEdge, ...], tuple[str, ...]]:
    """Two Y-pieces per X-piece, X-pieces chained by double matches.

    Pieces Y(2i-1), Y(2i) pair up for i = 1..n-1; consecutive X-pieces are
    joined along two boundaries each.  That spends (n-1) + 2(n-2) = 3n-5
    matches and leaves exactly four boundaries free.
    """
    pieces = tuple(f"Y{j}" for j in range(1, 2 * (n - 1) + 1))
    edges = []
    twist = 0
    for i in range(1, n):
        twist += 1
        edges.append(GluingEdge(f"Y{2*i-1}", f"Y{2*i-1}.b1", f"Y{2*i}", f"Y{2*i}.b1", f"beta{twist}"))
    for j in range(1, n - 1):
        for slot in (2, 3):
            twist += 1
            edges.append(
                GluingEdge(f"Y{2*j}", f"Y{2*j}.b{slot}", f"Y{2*j+1}", f"Y{2*j+1}.b{slot}", f"beta{twist}")
            )
    matched = {e.boundary_a for e in edges} | {e.boundary_b for e in edges}
    free = tuple(
        f"{p}.b{s}" for p in pieces for s in (1, 2, 3) if f"{p}.b{s}" not in matched
    )
    return pieces, tuple(edges), free


def pants_report(rank: int, group: SchottkyGroup | None = None) -> PantsReport:
    """Pants decomposition counts and the concrete gluing pattern.

    Counts follow the closed forms (2(n-1) pants, 3n-2 twist parameters,
    signature (n-2, 4), coordinate counts 3n+2 and 3n-2, bound 31n+21).
    The flags record two discrepancies of those forms, verbatim rather than
    repaired: the coordinate counts sum to 6n, not the stated ambient
    dimension 6n-4, and the concrete gluing pattern spends 3n-5 matches
    against the stated 3n-2 twist parameters.
    """
    n = rank
    if n < 2:
        raise RankTooSmallError("pants decomposition needs rank >= 2")
    pieces, edges, free = _gluing_graph(n)
    flags = (
        f"fenchel_nielsen_count: ({3*n+2}) lengths + ({3*n-2}) twists = {6*n} parameters, "
        f"stated ambient space is R^{6*n-4}",
        f"gluing_matches: pattern uses {3*n-5} boundary matches, twist parameter count is {3*n-2}",
    )
    lengths = None
    if group is not None:
        if group.rank != n:
            raise ValueError(f"group rank {group.rank} does not match requested rank {n}")
        lengths = {}
        for i in range(1, n + 1):
            lengths[f"g{i}"] = mobius.axis(group.generators[i - 1]).translation_length
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                m = words.evaluate(words.Word((i, j)), group)
                lengths[f"g{i}*g{j}"] = mobius.axis(m).translation_length
    return PantsReport(
        rank=n,
        num_pants=2 * (n - 1),
        twist_count=3 * n - 2,
        signature=(n - 2, 4),
        fn_length_count=3 * n + 2,
        fn_twist_count=3 * n - 2,
        bers_bound=31 * n + 21,
        euler=2 - 2 * n,
        pieces=pieces,
        edges=edges,
        free_boundaries=free,
        consistency_flags=flags,
        curve_lengths=lengths,
    )


@dataclass(frozen=True)
class CollarSpec:
    boundary_length: float
    width: float


def collar(boundary_length: float) -> CollarSpec:
    """Half-collar width: sinh(width) * sinh(length/2) = 1."""
    if boundary_length <= 0.0:
        raise NonpositiveLengthError(f"boundary length must be positive, got {boundary_length}")
    width = math.asinh(1.0 / math.sinh(0.5 * boundary_length))
    return CollarSpec(boundary_length=boundary_length, width=width)


@dataclass(frozen=True)
class CoreCurve:
    label: str
    length: float


@dataclass(frozen=True)
class EndDecomposition:
    funnels: int
    cusps: int
    convex_cocompact: bool
    core_curves: tuple[CoreCurve, ...]
    note: str


def end_decomposition(group: SchottkyGroup, topo: SurfaceTopology | None = None) -> EndDecomposition:
    """Funnel ends attached to the compact core; no cusps in this class.

    For rank 1 the compact core degenerates to the single core geodesic and
    both funnels share it; for higher rank the generator axes are the
    computable closed geodesics, while the funnel-boundary geodesics are the
    limits of the outermost gap geodesics of the Nielsen-region refinement.
    """
    topo = topo or fuchsian_topology(group.rank)
    curves = tuple(
        CoreCurve(label=f"g{i+1}", length=mobius.axis(g).translation_length)
        for i, g in enumerate(group.generators)
    )
    if group.rank == 1:
        note = ("compact core is the core geodesic itself; the two funnels are glued "
                "along it from either side")
    else:
        note = ("funnel-boundary lengths are not closed-form; the gap geodesics of "
                "the Nielsen boundary converge to them as depth grows")
    return EndDecomposition(
        funnels=topo.funnels,
        cusps=0,
        convex_cocompact=True,
        core_curves=curves,
        note=note,
    )
