"""Species, complexes, reactions and reaction networks.

Species are the integers ``1..n``.  A complex is a canonical multiset of
species; a network is determined entirely by its set of directed reactions.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from math import comb
from typing import Iterable


@dataclass(frozen=True, order=False)
class Complex:
    """A non-negative integer combination of species.

    ``terms`` holds ``(species, coefficient)`` pairs sorted by species with
    positive coefficients.  The empty tuple is the zero complex.
    """

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        prev = 0
        for species, coeff in self.terms:
            if species <= prev:
                raise ValueError(f"terms not strictly ascending: {self.terms!r}")
            if coeff < 1:
                raise ValueError(f"non-positive coefficient in {self.terms!r}")
            prev = species

    @classmethod
    def of(cls, *species: int) -> "Complex":
        """Build a complex from a list of species with repetition, e.g. ``of(1, 1)`` is 2S1."""
        return canonicalize_complex((s, 1) for s in species)

    @property
    def order(self) -> int:
        return sum(c for _, c in self.terms)

    @property
    def species(self) -> tuple[int, ...]:
        return tuple(s for s, _ in self.terms)

    def expanded(self) -> tuple[int, ...]:
        """Species listed with multiplicity, ascending."""
        return tuple(s for s, c in self.terms for _ in range(c))

    def sort_key(self) -> tuple:
        return (self.order, self.expanded())

    def __lt__(self, other: "Complex") -> bool:
        return self.sort_key() < other.sort_key()

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"S{s}" if c == 1 else f"{c} S{s}" for s, c in self.terms)


ZERO = Complex()


def canonicalize_complex(raw_terms: Iterable[tuple[int, int]]) -> Complex:
    """Merge duplicate species, drop zero coefficients and sort."""
    merged: dict[int, int] = {}
    for species, coeff in raw_terms:
        if coeff < 0:
            raise ValueError(f"negative coefficient {coeff} for species {species}")
        merged[species] = merged.get(species, 0) + coeff
    return Complex(tuple(sorted((s, c) for s, c in merged.items() if c > 0)))


@dataclass(frozen=True)
class Reaction:
    source: Complex
    product: Complex

    def __post_init__(self):
        if self.source == self.product:
            raise ValueError(f"reaction with identical source and product: {self.source}")

    def reversed(self) -> "Reaction":
        return Reaction(self.product, self.source)

    def sort_key(self) -> tuple:
        return (self.source.sort_key(), self.product.sort_key())

    def __str__(self) -> str:
        return f"{self.source} -> {self.product}"


def reaction_vector(r: Reaction, n: int) -> list[int]:
    """Net change ``product - source`` as a dense vector of length ``n``."""
    vec = [0] * n
    for sign, cplx in ((-1, r.source), (1, r.product)):
        for species, coeff in cplx.terms:
            if species > n:
                raise ValueError(f"species S{species} exceeds species count {n}")
            vec[species - 1] += sign * coeff
    return vec


@dataclass(frozen=True)
class ReactionNetwork:
    """A reaction network fully specified by its reactions.

    Complexes and species are derived from the reactions.  ``n_species`` is
    the number of declared species, which may exceed the number used.
    """

    n_species: int
    reactions: frozenset[Reaction] = frozenset()
    complexes: tuple[Complex, ...] = field(init=False, repr=False, compare=False)
    species_used: frozenset[int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        reactions = frozenset(self.reactions)
        object.__setattr__(self, "reactions", reactions)
        cplx = {c for r in reactions for c in (r.source, r.product)}
        object.__setattr__(self, "complexes", tuple(sorted(cplx, key=Complex.sort_key)))
        used = frozenset(s for c in cplx for s in c.species)
        object.__setattr__(self, "species_used", used)
        if used and max(used) > self.n_species:
            raise ValueError(f"species S{max(used)} exceeds species count {self.n_species}")

    @classmethod
    def from_reactions(cls, reactions: Iterable[Reaction], n_species: int | None = None):
        reactions = frozenset(reactions)
        if n_species is None:
            n_species = max((s for r in reactions for s in r.source.species + r.product.species),
                            default=0)
        return cls(n_species, reactions)

    def sorted_reactions(self) -> list[Reaction]:
        return sorted(self.reactions, key=Reaction.sort_key)

    def with_reactions(self, extra: Iterable[Reaction]) -> "ReactionNetwork":
        return ReactionNetwork(self.n_species, self.reactions | frozenset(extra))

    def __len__(self) -> int:
        return len(self.reactions)

    def is_empty(self) -> bool:
        return not self.reactions


def reversible(a: Complex, b: Complex) -> tuple[Reaction, Reaction]:
    return Reaction(a, b), Reaction(b, a)


def total_complex_count(n: int) -> int:
    """Number of complexes of order at most two on ``n`` species."""
    return (n * n + 3 * n + 2) // 2


class EdgeClass(enum.Enum):
    """Reversible reactions grouped by the orders of their two complexes."""

    E01 = (0, 1)
    E02 = (0, 2)
    E11 = (1, 1)
    E12 = (1, 2)
    E22 = (2, 2)

    @property
    def orders(self) -> tuple[int, int]:
        return self.value

    @property
    def weight(self) -> int:
        """``i + j``, the growth exponent of the class size."""
        return sum(self.value)


EDGE_CLASSES = tuple(EdgeClass)


def edge_class_size(cls: EdgeClass, n: int) -> int:
    binaries = n * (n + 1) // 2
    return {
        EdgeClass.E01: n,
        EdgeClass.E02: binaries,
        EdgeClass.E11: n * (n - 1) // 2,
        EdgeClass.E12: n * n * (n + 1) // 2,
        EdgeClass.E22: comb(binaries, 2),
    }[cls]


def classify_edge(r: Reaction) -> EdgeClass:
    orders = sorted((r.source.order, r.product.order))
    if orders[1] > 2:
        raise ValueError(f"complex of order {orders[1]} in {r}: not a binary network")
    return EdgeClass(tuple(orders))
