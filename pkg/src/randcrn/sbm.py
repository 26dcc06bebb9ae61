"""Stochastic block model sampler for random binary reaction networks.

Each edge class ``E_ij`` has edge probability ``n**alpha_ij * p_base``
(``alpha_22`` is fixed at zero).  Sampling is two-stage: the realized count
of a class is drawn from ``Binomial(|E_ij|, p_ij)`` and that many distinct
edges are then chosen uniformly by Floyd's algorithm over edge indices,
which are decoded by :func:`edge_unrank`.  The ``O(n**4)`` edge set is never
materialized.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import NamedTuple

import numpy as np

from .model import (
    EDGE_CLASSES,
    ZERO,
    Complex,
    EdgeClass,
    Reaction,
    ReactionNetwork,
    edge_class_size,
)

MASK64 = (1 << 64) - 1

# float round-off allowance when n**alpha * p lands a hair above one
_ONE_SLACK = 1e-12


class ProbabilityError(ValueError):
    """An effective edge probability exceeds one in strict mode."""


class Alpha(NamedTuple):
    """Control exponents ``(alpha_01, alpha_02, alpha_11, alpha_12)`` as exact rationals."""

    a01: Fraction = Fraction(0)
    a02: Fraction = Fraction(0)
    a11: Fraction = Fraction(0)
    a12: Fraction = Fraction(0)

    @classmethod
    def of(cls, *values) -> "Alpha":
        return cls(*(Fraction(v) for v in values))

    def for_class(self, cls: EdgeClass) -> Fraction:
        return {
            EdgeClass.E01: self.a01,
            EdgeClass.E02: self.a02,
            EdgeClass.E11: self.a11,
            EdgeClass.E12: self.a12,
            EdgeClass.E22: Fraction(0),
        }[cls]

    def __str__(self) -> str:
        return ",".join(str(a) for a in self)


@dataclass(frozen=True)
class BlockModelParams:
    n: int
    p_base: float
    alpha: Alpha = field(default_factory=Alpha)
    permissive: bool = False

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"species count must be positive, got {self.n}")
        if not 0.0 <= self.p_base <= 1.0:
            raise ValueError(f"p_base must lie in [0, 1], got {self.p_base}")
        object.__setattr__(self, "alpha", Alpha(*(Fraction(a) for a in self.alpha)))

    def raw_probability(self, cls: EdgeClass) -> float:
        return float(self.n) ** float(self.alpha.for_class(cls)) * self.p_base

    def clamped_classes(self) -> list[EdgeClass]:
        """Classes whose raw probability exceeds one (clamped in permissive mode)."""
        return [c for c in EDGE_CLASSES if self.raw_probability(c) > 1.0 + _ONE_SLACK]


def edge_probability(cls: EdgeClass, params: BlockModelParams) -> float:
    p = params.raw_probability(cls)
    if p > 1.0 + _ONE_SLACK:
        if not params.permissive:
            raise ProbabilityError(
                f"edge probability {p:.6g} for {cls.name} exceeds 1 "
                f"(n={params.n}, p={params.p_base:.6g}, alpha={params.alpha.for_class(cls)})"
            )
        return 1.0
    return min(p, 1.0)


@dataclass(frozen=True)
class ClassCounts:
    m: dict[EdgeClass, int]
    k: dict[EdgeClass, float]


def expected_counts(params: BlockModelParams) -> dict[EdgeClass, float]:
    return {c: edge_class_size(c, params.n) * edge_probability(c, params) for c in EDGE_CLASSES}


# -- unranking --------------------------------------------------------------


def _pair_unrank(index: int, m: int) -> tuple[int, int]:
    """The ``index``-th pair ``(a, b)``, ``0 <= a < b < m``, in lexicographic order."""
    # pairs before first element a: a*m - a*(a+1)/2 ; solve for the largest a
    a = (2 * m - 1 - isqrt((2 * m - 1) ** 2 - 8 * index)) // 2
    while a > 0 and a * m - a * (a + 1) // 2 > index:
        a -= 1
    while (a + 1) * m - (a + 1) * (a + 2) // 2 <= index:
        a += 1
    b = index - (a * m - a * (a + 1) // 2) + a + 1
    return a, b


def _pair_rank(a: int, b: int, m: int) -> int:
    return a * m - a * (a + 1) // 2 + (b - a - 1)


def binary_unrank(k: int, n: int) -> Complex:
    """The ``k``-th binary complex ``S_i + S_j`` (``i <= j``), lexicographic in ``(i, j)``."""
    # multisets {i <= j} on n symbols biject with pairs a < b on n+1 symbols via b = j + 1
    a, b = _pair_unrank(k, n + 1)
    return Complex.of(a + 1, b)


def binary_rank(c: Complex, n: int) -> int:
    i, j = c.expanded()
    return _pair_rank(i - 1, j, n + 1)


def edge_unrank(cls: EdgeClass, index: int, n: int) -> tuple[Complex, Complex]:
    """Decode an edge index into its (lower, higher) complex pair.

    Within a class, edges are ordered lexicographically by the canonical
    complex indices ``(a, b)`` with ``a < b`` where complexes are indexed
    ``0``, ``S1..Sn``, then binaries in lexicographic order.
    """
    size = edge_class_size(cls, n)
    if not 0 <= index < size:
        raise IndexError(f"index {index} out of range for {cls.name} with n={n} (size {size})")
    if cls is EdgeClass.E01:
        return ZERO, Complex.of(index + 1)
    if cls is EdgeClass.E02:
        return ZERO, binary_unrank(index, n)
    if cls is EdgeClass.E11:
        a, b = _pair_unrank(index, n)
        return Complex.of(a + 1), Complex.of(b + 1)
    if cls is EdgeClass.E12:
        i, k = divmod(index, n * (n + 1) // 2)
        return Complex.of(i + 1), binary_unrank(k, n)
    a, b = _pair_unrank(index, n * (n + 1) // 2)
    return binary_unrank(a, n), binary_unrank(b, n)


def edge_rank(cls: EdgeClass, low: Complex, high: Complex, n: int) -> int:
    """Inverse of :func:`edge_unrank`."""
    if cls is EdgeClass.E01:
        return high.expanded()[0] - 1
    if cls is EdgeClass.E02:
        return binary_rank(high, n)
    if cls is EdgeClass.E11:
        return _pair_rank(low.expanded()[0] - 1, high.expanded()[0] - 1, n)
    if cls is EdgeClass.E12:
        return (low.expanded()[0] - 1) * (n * (n + 1) // 2) + binary_rank(high, n)
    return _pair_rank(binary_rank(low, n), binary_rank(high, n), n * (n + 1) // 2)


# -- sampling ----------------------------------------------------------------


def splitmix64(x: int) -> int:
    """SplitMix64 step: add the golden gamma, then apply the finalizer."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def trial_seed(master_seed: int, n: int, trial: int) -> int:
    """Counter-derived seed, independent of the order trials are executed in.

    The cell key is mixed before the trial index is folded in; a flat
    ``mix(n) ^ mix(trial)`` would give cells (n, t) and (t, n) equal seeds.
    """
    cell = splitmix64((master_seed & MASK64) ^ splitmix64(n))
    return splitmix64(cell ^ splitmix64(trial))


def floyd_sample(rng: np.random.Generator, population: int, count: int) -> list[int]:
    """``count`` distinct indices from ``range(population)``, uniformly, sorted."""
    if count >= population:
        return list(range(population))
    chosen: set[int] = set()
    for j in range(population - count, population):
        t = int(rng.integers(0, j + 1))
        chosen.add(j if t in chosen else t)
    return sorted(chosen)


def sample_network(params: BlockModelParams, seed: int) -> tuple[ReactionNetwork, ClassCounts]:
    """Draw one network; identical ``(params, seed)`` give identical networks.

    Every sampled reversible pair contributes both directed reactions.
    Isolated complexes never appear since complexes come from reactions.
    """
    rng = np.random.Generator(np.random.PCG64(seed & MASK64))
    n = params.n
    reactions: list[Reaction] = []
    m: dict[EdgeClass, int] = {}
    k: dict[EdgeClass, float] = {}
    for cls in EDGE_CLASSES:
        size = edge_class_size(cls, n)
        p = edge_probability(cls, params)
        k[cls] = size * p
        count = int(rng.binomial(size, p)) if 0.0 < p < 1.0 else (size if p >= 1.0 else 0)
        m[cls] = count
        for idx in floyd_sample(rng, size, count) if count else ():
            low, high = edge_unrank(cls, idx, n)
            reactions.append(Reaction(low, high))
            reactions.append(Reaction(high, low))
    return ReactionNetwork(n, frozenset(reactions)), ClassCounts(m, k)

