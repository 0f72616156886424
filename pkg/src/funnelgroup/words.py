"""Reduced words of the free group on n generators, and their evaluation.

Words use signed generator indices: +k is generator k, -k its inverse
(1-based).  The canonical order is lexicographic with +1 < -1 < +2 < -2 < ...,
which matches ascending letter-slot order in the kernel encoding.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import mobius
from ._kernels import hyperbolic_freeness_scan
from .errors import DepthOverflowError
from .mobius import DEFAULT_EPS, ExtendedMobiusMap, IsometryClass

DEFAULT_WORD_CAP = 10**6
WORD_CAP_ENV = "FUNNELGROUP_WORD_CAP"


def word_cap() -> int:
    """Active word cap; the environment variable overrides the default."""
    raw = os.environ.get(WORD_CAP_ENV)
    if raw is None:
        return DEFAULT_WORD_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"{WORD_CAP_ENV} must be an integer, got {raw!r}") from exc
    if cap < 2:
        raise ValueError(f"{WORD_CAP_ENV} must be at least 2")
    return cap


def layer_size(rank: int, depth: int) -> int:
    """Number of reduced words of length exactly depth: 2n*(2n-1)^(depth-1)."""
    if depth == 0:
        return 1
    return 2 * rank * (2 * rank - 1) ** (depth - 1)


def check_cap(rank: int, depth: int, cap: int | None = None) -> None:
    cap = word_cap() if cap is None else cap
    size = layer_size(rank, depth)
    if size > cap:
        raise DepthOverflowError(
            f"rank {rank} at depth {depth} needs {size} words, cap is {cap}"
        )


@dataclass(frozen=True)
class Word:
    """Reduced word as a tuple of signed generator indices."""

    letters: tuple[int, ...]

    def __post_init__(self):
        for s in self.letters:
            if s == 0:
                raise ValueError("letter indices are nonzero signed integers")
        for x, y in zip(self.letters, self.letters[1:]):
            if x == -y:
                raise ValueError(f"word {self.letters} is not reduced at {x}, {y}")

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def inverse(self) -> "Word":
        return Word(tuple(-s for s in reversed(self.letters)))


def signed_to_index(s: int) -> int:
    """Kernel letter slot of a signed index (+1,-1,+2,-2,... -> 0,1,2,3,...)."""
    return 2 * (abs(s) - 1) + (1 if s < 0 else 0)


def index_to_signed(i: int) -> int:
    i = int(i)
    k = i // 2 + 1
    return -k if i % 2 else k


def word_from_indices(indices: Iterable[int]) -> Word:
    return Word(tuple(index_to_signed(i) for i in indices))


@dataclass(frozen=True)
class WordLayer:
    depth: int
    words: tuple[Word, ...]


def enumerate_layer(rank: int, depth: int, cap: int | None = None) -> WordLayer:
    """All reduced words of length exactly depth, in canonical order."""
    if rank < 1 or depth < 1:
        raise ValueError("rank and depth must be at least 1")
    check_cap(rank, depth, cap)
    n_letters = 2 * rank
    out: list[Word] = []
    stack: list[int] = []

    def visit(level: int):
        for i in range(n_letters):
            if level > 0 and i == stack[-1] ^ 1:
                continue
            stack.append(i)
            if level + 1 == depth:
                out.append(word_from_indices(stack))
            else:
                visit(level + 1)
            stack.pop()

    visit(0)
    return WordLayer(depth=depth, words=tuple(out))


def generator_maps(group_or_generators) -> tuple[ExtendedMobiusMap, ...]:
    """Accept a built group or a plain sequence of generator maps."""
    gens = getattr(group_or_generators, "generators", group_or_generators)
    return tuple(gens)


def letter_maps(group_or_generators) -> tuple[ExtendedMobiusMap, ...]:
    """Letters in canonical slot order: g1, g1^-1, g2, g2^-1, ..."""
    letters: list[ExtendedMobiusMap] = []
    for g in generator_maps(group_or_generators):
        letters.append(g)
        letters.append(mobius.inverse(g))
    return tuple(letters)


def letter_arrays(group_or_generators) -> tuple[np.ndarray, np.ndarray]:
    """Kernel input arrays: (2n, 4) coefficients and (2n,) orientations."""
    letters = letter_maps(group_or_generators)
    coeffs = np.array([m.coefficients() for m in letters], dtype=np.float64)
    orientations = np.array([m.orientation for m in letters], dtype=np.int8)
    return coeffs, orientations


def evaluate(word: Word | Sequence[int], group_or_generators) -> ExtendedMobiusMap:
    """Left-to-right composition of the word's letters, normalized."""
    if not isinstance(word, Word):
        word = Word(tuple(word))
    letters = letter_maps(group_or_generators)
    result = mobius.IDENTITY
    for s in word:
        result = mobius.compose(result, letters[signed_to_index(s)])
    return result


@dataclass(frozen=True)
class HyperbolicityResult:
    all_hyperbolic: bool
    offending_word: Word | None
    words_scanned: int


def purely_hyperbolic_sample(
    group_or_generators, depth: int, eps: float = DEFAULT_EPS, cap: int | None = None
) -> HyperbolicityResult:
    """True iff every reduced word of length 1..depth classifies hyperbolic.

    The offending word, when any exists, is the first one in canonical order
    (shortest length, then lexicographic).
    """
    if depth < 1:
        raise ValueError("depth must be at least 1")
    gens = generator_maps(group_or_generators)
    check_cap(len(gens), depth, cap)
    coeffs, orientations = letter_arrays(gens)
    first_bad, _, _, scanned = hyperbolic_freeness_scan(coeffs, orientations, depth, eps)
    if first_bad is None:
        return HyperbolicityResult(True, None, int(scanned))
    return HyperbolicityResult(False, word_from_indices(first_bad), int(scanned))


@dataclass(frozen=True)
class FreenessResult:
    min_identity_deviation: float
    closest_word: Word | None
    passed: bool


def freeness_sample(
    group_or_generators, depth: int = 8, eps: float = DEFAULT_EPS, cap: int | None = None
) -> FreenessResult:
    """Check no reduced word of length 1..depth is within eps of ±identity."""
    gens = generator_maps(group_or_generators)
    check_cap(len(gens), depth, cap)
    coeffs, orientations = letter_arrays(gens)
    _, min_dev, dev_word, _ = hyperbolic_freeness_scan(coeffs, orientations, depth, eps)
    min_dev = float(min_dev)
    closest = word_from_indices(dev_word) if dev_word is not None else None
    passed = not math.isfinite(min_dev) or min_dev > eps
    return FreenessResult(min_identity_deviation=min_dev, closest_word=closest, passed=passed)


def classify_word(word: Word, group_or_generators, eps: float = DEFAULT_EPS) -> IsometryClass:
    return mobius.classify(evaluate(word, group_or_generators), eps)
