"""Real Möbius maps of the boundary line, with orientation bookkeeping.

Every isometry of the upper half-plane acts on the boundary line as
``x -> (a*x + b) / (c*x + d)`` with real coefficients.  Orientation-preserving
maps have determinant +1 after normalization, orientation-reversing ones
(reflections and glide reflections, which act on points of the plane with a
conjugation) have determinant -1; on the boundary both are the same rational
map, so a single coefficient record with an orientation flag covers the whole
extended isometry group.

Normalization convention: divide by sqrt(|det|), then flip the overall sign
so that the first nonzero coefficient in the order (a, b, c, d) is positive.
This makes equality-to-identity a plain coefficient comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import (
    InfiniteFixedPointError,
    NotHyperbolicError,
    PoleHitError,
    PoleInsideIntervalError,
)

DEFAULT_EPS = 1e-9


class IsometryClass(Enum):
    IDENTITY = "identity"
    HYPERBOLIC = "hyperbolic"
    PARABOLIC = "parabolic"
    ELLIPTIC = "elliptic"
    REFLECTION = "reflection"
    GLIDE_REFLECTION = "glide_reflection"


@dataclass(frozen=True)
class ExtendedMobiusMap:
    """Normalized coefficient record (a, b, c, d) plus orientation sign."""

    a: float
    b: float
    c: float
    d: float
    orientation: int

    @property
    def trace(self) -> float:
        return self.a + self.d

    def coefficients(self) -> tuple[float, float, float, float]:
        return (self.a, self.b, self.c, self.d)

    def __call__(self, x: float, eps: float = DEFAULT_EPS) -> float:
        return apply_boundary(self, x, eps)


def normalize(a: float, b: float, c: float, d: float) -> ExtendedMobiusMap:
    """Scale a raw coefficient quadruple to det ±1 and fix the sign."""
    det = a * d - b * c
    if det == 0.0 or not math.isfinite(det):
        raise ValueError(f"singular or non-finite coefficient record {(a, b, c, d)}")
    s = math.sqrt(abs(det))
    a, b, c, d = a / s, b / s, c / s, d / s
    for coeff in (a, b, c, d):
        if coeff != 0.0:
            if coeff < 0.0:
                a, b, c, d = -a, -b, -c, -d
            break
    return ExtendedMobiusMap(a, b, c, d, 1 if det > 0.0 else -1)


IDENTITY = ExtendedMobiusMap(1.0, 0.0, 0.0, 1.0, 1)


def _sign_fixed(a: float, b: float, c: float, d: float, orientation: int) -> ExtendedMobiusMap:
    for coeff in (a, b, c, d):
        if coeff != 0.0:
            if coeff < 0.0:
                a, b, c, d = -a, -b, -c, -d
            break
    return ExtendedMobiusMap(a, b, c, d, orientation)


def compose(f: ExtendedMobiusMap, g: ExtendedMobiusMap) -> ExtendedMobiusMap:
    """Product f∘g (apply g first); orientations multiply.

    Inputs are normalized, so the product has determinant ±1 by construction;
    rescaling by a recomputed determinant would only inject the cancellation
    error of a*d - b*c (catastrophic for long products with large entries),
    so the product is used as-is, up to the sign convention.
    """
    return _sign_fixed(
        f.a * g.a + f.b * g.c,
        f.a * g.b + f.b * g.d,
        f.c * g.a + f.d * g.c,
        f.c * g.b + f.d * g.d,
        f.orientation * g.orientation,
    )


def inverse(f: ExtendedMobiusMap) -> ExtendedMobiusMap:
    """Adjugate record; undoes f and keeps its orientation flag."""
    return _sign_fixed(f.d, -f.b, -f.c, f.a, f.orientation)


def is_identity(f: ExtendedMobiusMap, eps: float = DEFAULT_EPS) -> bool:
    if f.orientation != 1:
        return False
    return (
        abs(f.a - 1.0) <= eps
        and abs(f.b) <= eps
        and abs(f.c) <= eps
        and abs(f.d - 1.0) <= eps
    )


def approx_equal(f: ExtendedMobiusMap, g: ExtendedMobiusMap, eps: float = DEFAULT_EPS) -> bool:
    """Coefficient-wise agreement of two normalized records."""
    return f.orientation == g.orientation and all(
        abs(x - y) <= eps for x, y in zip(f.coefficients(), g.coefficients())
    )


def classify(f: ExtendedMobiusMap, eps: float = DEFAULT_EPS) -> IsometryClass:
    """Isometry class from the normalized trace (or the square, if reversing).

    Ties at |trace| = 2 resolve to parabolic inside the eps band, so a
    borderline generator fails the purely-hyperbolic check loudly instead of
    slipping through.
    """
    if f.orientation == -1:
        if is_identity(compose(f, f), eps):
            return IsometryClass.REFLECTION
        return IsometryClass.GLIDE_REFLECTION
    t = abs(f.trace)
    if t > 2.0 + eps:
        return IsometryClass.HYPERBOLIC
    if t < 2.0 - eps:
        return IsometryClass.ELLIPTIC
    if is_identity(f, eps):
        return IsometryClass.IDENTITY
    return IsometryClass.PARABOLIC


@dataclass(frozen=True)
class AxisData:
    repelling: float
    attracting: float
    translation_length: float


def boundary_derivative(f: ExtendedMobiusMap, x: float) -> float:
    """Derivative of the boundary action at x (signed).

    Normalized maps have det = orientation exactly; the flag avoids the
    cancellation noise of recomputing a*d - b*c on large entries.
    """
    den = f.c * x + f.d
    return f.orientation / (den * den)


def axis(f: ExtendedMobiusMap, eps: float = DEFAULT_EPS) -> AxisData:
    """Fixed points of a hyperbolic map, labeled by the derivative size.

    |f'| < 1 at the attracting endpoint.  Maps fixing infinity (|c| within
    eps of zero) are rejected: the point at infinity is excluded throughout.
    """
    if classify(f, eps) is not IsometryClass.HYPERBOLIC:
        raise NotHyperbolicError(f"axis requires a hyperbolic map, got {classify(f, eps).value}")
    if abs(f.c) <= eps:
        raise InfiniteFixedPointError("map fixes the point at infinity")
    # Roots of c x^2 + (d - a) x - b = 0.
    disc = math.sqrt(f.trace * f.trace - 4.0)
    x1 = ((f.a - f.d) + disc) / (2.0 * f.c)
    x2 = ((f.a - f.d) - disc) / (2.0 * f.c)
    if abs(boundary_derivative(f, x1)) < 1.0:
        attracting, repelling = x1, x2
    else:
        attracting, repelling = x2, x1
    length = 2.0 * math.acosh(abs(f.trace) / 2.0)
    return AxisData(repelling=repelling, attracting=attracting, translation_length=length)


def apply_boundary(f: ExtendedMobiusMap, x: float, eps: float = DEFAULT_EPS) -> float:
    den = f.c * x + f.d
    if abs(den) <= eps:
        raise PoleHitError(f"denominator vanishes at x={x}")
    return (f.a * x + f.b) / den


@dataclass(frozen=True)
class BoundaryInterval:
    """Open interval (lo, hi) of finite boundary points."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise ValueError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise ValueError(f"need lo < hi, got ({self.lo}, {self.hi})")

    @property
    def length(self) -> float:
        return self.hi - self.lo

    @property
    def center(self) -> float:
        return 0.5 * (self.lo + self.hi)

    @property
    def radius(self) -> float:
        return 0.5 * (self.hi - self.lo)

    def contains(self, x: float, margin: float = 0.0) -> bool:
        return self.lo + margin < x < self.hi - margin

    def contains_interval(self, other: "BoundaryInterval", margin: float = 0.0) -> bool:
        return self.lo + margin < other.lo and other.hi < self.hi - margin

    def mirrored(self) -> "BoundaryInterval":
        return BoundaryInterval(-self.hi, -self.lo)


def image_interval(
    f: ExtendedMobiusMap, interval: BoundaryInterval, eps: float = DEFAULT_EPS
) -> BoundaryInterval:
    """Image of a pole-free interval; monotone, so endpoint images suffice."""
    if abs(f.c) > eps:
        pole = -f.d / f.c
        if interval.lo - eps <= pole <= interval.hi + eps:
            raise PoleInsideIntervalError(
                f"pole {pole} meets the closed interval [{interval.lo}, {interval.hi}]"
            )
    x1 = apply_boundary(f, interval.lo, eps)
    x2 = apply_boundary(f, interval.hi, eps)
    return BoundaryInterval(min(x1, x2), max(x1, x2))


def reflection_in_semicircle(center: float, radius: float) -> ExtendedMobiusMap:
    """Reflection in the geodesic semicircle over (center-radius, center+radius).

    Acts on the boundary as x -> center + radius^2 / (x - center); an
    involution with orientation -1.
    """
    if radius <= 0.0:
        raise ValueError("radius must be positive")
    return normalize(center, radius * radius - center * center, 1.0, -center)


def reflection_in_vertical_line(x0: float = 0.0) -> ExtendedMobiusMap:
    """Reflection in the vertical geodesic over x0 (x -> 2*x0 - x)."""
    return normalize(-1.0, 2.0 * x0, 0.0, 1.0)
